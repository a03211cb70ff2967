// Thin pybind11 layer over the core library. Structured results cross the
// boundary as the same JSON documents the CLI prints with --format machine.

#include "cfcheck/analysis.hpp"
#include "cfcheck/bundled.hpp"
#include "cfcheck/cli.hpp"
#include "cfcheck/error.hpp"
#include "cfcheck/output.hpp"
#include "cfcheck/scenario_file.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace cfcheck;

namespace
{

// A validated scenario together with its possible worlds.
class Model
{
    WorldSet _candidates;
    WorldSet _possible;

public:
    Model( std::shared_ptr< const Scenario > scenario, std::size_t max_worlds )
        : _candidates( enumerate_candidates( std::move( scenario ), max_worlds ) ),
          _possible( filter_possible( _candidates ) )
    {
    }

    [[nodiscard]] const Scenario& scenario() const { return _possible.scenario(); }

    [[nodiscard]] std::vector< std::string > format( const WorldSet& worlds ) const
    {
        std::vector< std::string > out;
        for ( const auto& w : worlds )
            out.push_back( scenario().format_world( w ) );
        return out;
    }

    [[nodiscard]] std::vector< std::string > candidates() const { return format( _candidates ); }
    [[nodiscard]] std::vector< std::string > possible() const { return format( _possible ); }

    [[nodiscard]] std::string worlds() const { return render_worlds( _candidates, Format::machine ); }

    [[nodiscard]] std::string eval( const std::string& world, const std::string& formula ) const
    {
        auto w = parse_world( scenario(), world );
        auto f = parse_formula( formula, scenario() );
        return render_eval( f, w, eval_at( f, w, _possible ), _possible, Format::machine );
    }

    [[nodiscard]] std::string check_property( const std::string& id, const std::string& formula ) const
    {
        if ( id != "I" && id != "II" )
            throw py::value_error( "property must be 'I' or 'II'" );
        auto report = cfcheck::check_property( _possible, id == "I" ? property_one() : property_two(),
                                               parse_formula( formula, scenario() ) );
        return render_property( report, _possible, Format::machine );
    }

    [[nodiscard]] std::string strict( const std::string& antecedent, const std::string& consequent ) const
    {
        auto a = parse_formula( antecedent, scenario() );
        auto b = parse_formula( consequent, scenario() );
        return render_strict( a, b, strict_implies( a, b, _possible ), _possible, Format::machine );
    }

    [[nodiscard]] std::string locality( const std::string& region, const std::string& formula ) const
    {
        auto f = parse_formula( formula, scenario() );
        return render_locality( locality_analysis( f, region, _possible ), _possible, Format::machine );
    }

    [[nodiscard]] std::string canonical( const std::string& formula ) const
    {
        return print( parse_formula( formula, scenario() ) );
    }
};

std::shared_ptr< const Scenario > shared( Scenario scenario )
{
    return std::make_shared< const Scenario >( std::move( scenario ) );
}

} // namespace

PYBIND11_MODULE( _cfcheck, m )
{
    m.doc() = "Counterfactual model checker core";

    auto base = py::register_exception< validation_error >( m, "ValidationError", PyExc_ValueError );
    py::register_exception< parse_error >( m, "ParseError", base.ptr() );
    py::register_exception< size_guard_error >( m, "SizeGuardError", PyExc_ValueError );
    py::register_exception< evaluation_error >( m, "EvaluationError", PyExc_ValueError );

    m.attr( "DEFAULT_MAX_WORLDS" ) = default_max_worlds;
    m.def( "bundled_her_scenario", [] { return std::string{ bundled_her_scenario() }; } );
    m.def( "bundled_sr_formula", [] { return std::string{ bundled_sr_formula() }; } );
    m.def( "corpus_formulas", &corpus_formulas );

    py::class_< Model >( m, "Model" )
        .def_static(
            "from_text",
            []( const std::string& text, std::size_t max_worlds ) { return Model( shared( read_scenario( text ) ), max_worlds ); },
            py::arg( "text" ), py::arg( "max_worlds" ) = default_max_worlds )
        .def_static(
            "from_file",
            []( const std::string& path, std::size_t max_worlds ) { return Model( shared( load_scenario( path ) ), max_worlds ); },
            py::arg( "path" ), py::arg( "max_worlds" ) = default_max_worlds )
        .def_static(
            "builtin", []( std::size_t max_worlds ) { return Model( her_scenario(), max_worlds ); },
            py::arg( "max_worlds" ) = default_max_worlds )
        .def_property_readonly( "name", []( const Model& model ) { return model.scenario().name(); } )
        .def_property_readonly( "scenario_text", []( const Model& model ) { return write_scenario( model.scenario() ); } )
        .def( "candidates", &Model::candidates )
        .def( "possible", &Model::possible )
        .def( "worlds_json", &Model::worlds )
        .def( "eval_json", &Model::eval, py::arg( "world" ), py::arg( "formula" ) )
        .def( "check_property_json", &Model::check_property, py::arg( "property" ), py::arg( "formula" ) )
        .def( "strict_json", &Model::strict, py::arg( "antecedent" ), py::arg( "consequent" ) )
        .def( "locality_json", &Model::locality, py::arg( "region" ), py::arg( "formula" ) )
        .def( "canonical", &Model::canonical, py::arg( "formula" ) );

    m.def(
        "report_json",
        []( const std::string& text, const std::string& formula, std::size_t max_worlds ) {
            auto config = default_report_config();
            config.max_worlds = max_worlds;
            if ( !formula.empty() )
                config.formula = formula;
            auto scenario = text.empty() ? her_scenario() : shared( read_scenario( text ) );
            return render_report( her_report( scenario, config ), Format::machine );
        },
        py::arg( "text" ), py::arg( "formula" ), py::arg( "max_worlds" ) = default_max_worlds );

    m.def(
        "run_cli",
        []( const std::vector< std::string >& args ) {
            std::ostringstream out, err;
            int code = cfcheck::run_cli( args, out, err );
            return py::make_tuple( code, out.str(), err.str() );
        },
        py::arg( "args" ) );
}
