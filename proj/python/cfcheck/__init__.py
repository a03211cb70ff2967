"""Counterfactual model checker for spacelike-separated measurement scenarios.

Structured results are plain dicts with the same layout as the command-line
tool's ``--format machine`` output.
"""

from __future__ import annotations

import json
import os
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import _cfcheck
from ._cfcheck import (
    DEFAULT_MAX_WORLDS,
    EvaluationError,
    ParseError,
    SizeGuardError,
    ValidationError,
)

__all__ = [
    "DEFAULT_MAX_WORLDS",
    "EvaluationError",
    "ParseError",
    "Scenario",
    "SizeGuardError",
    "ValidationError",
    "corpus_formulas",
    "her",
    "report",
    "run_cli",
    "sr_formula",
]


def sr_formula() -> str:
    """The bundled SR formula text."""
    return _cfcheck.bundled_sr_formula()


def corpus_formulas() -> List[str]:
    """The bundled formula corpus, one formula per entry."""
    return list(_cfcheck.corpus_formulas())


class Scenario:
    """A validated scenario and its possible worlds."""

    def __init__(self, model: "_cfcheck.Model") -> None:
        self._model = model

    @classmethod
    def from_text(cls, text: str, max_worlds: int = DEFAULT_MAX_WORLDS) -> "Scenario":
        return cls(_cfcheck.Model.from_text(text, max_worlds))

    @classmethod
    def from_file(cls, path: "os.PathLike[str] | str", max_worlds: int = DEFAULT_MAX_WORLDS) -> "Scenario":
        return cls(_cfcheck.Model.from_file(os.fspath(path), max_worlds))

    @property
    def name(self) -> str:
        return self._model.name

    def to_text(self) -> str:
        """The scenario in file format; from_text() of it gives the same scenario."""
        return self._model.scenario_text

    def candidates(self) -> List[str]:
        return list(self._model.candidates())

    def possible(self) -> List[str]:
        return list(self._model.possible())

    def worlds(self) -> Dict[str, Any]:
        return json.loads(self._model.worlds_json())

    def eval(self, world: str, formula: str) -> Dict[str, Any]:
        return json.loads(self._model.eval_json(world, formula))

    def check_property(self, prop: str, formula: Optional[str] = None) -> Dict[str, Any]:
        return json.loads(self._model.check_property_json(prop, formula or sr_formula()))

    def strict(self, antecedent: str, consequent: str) -> Dict[str, Any]:
        return json.loads(self._model.strict_json(antecedent, consequent))

    def locality(self, region: str, formula: Optional[str] = None) -> Dict[str, Any]:
        return json.loads(self._model.locality_json(region, formula or sr_formula()))

    def canonical(self, formula: str) -> str:
        """Fully parenthesised form of a formula."""
        return self._model.canonical(formula)

    def report(self, formula: Optional[str] = None, max_worlds: int = DEFAULT_MAX_WORLDS) -> Dict[str, Any]:
        return report(self.to_text(), formula, max_worlds)


def her(max_worlds: int = DEFAULT_MAX_WORLDS) -> Scenario:
    """The bundled HER scenario."""
    return Scenario(_cfcheck.Model.builtin(max_worlds))


def report(text: Optional[str] = None, formula: Optional[str] = None,
           max_worlds: int = DEFAULT_MAX_WORLDS) -> Dict[str, Any]:
    """Full pipeline report; ``text=None`` uses the bundled scenario."""
    return json.loads(_cfcheck.report_json(text or "", formula or "", max_worlds))


def run_cli(args: Sequence[str]) -> Tuple[int, str, str]:
    """Runs one command-line invocation in-process: (exit code, stdout, stderr)."""
    code, out, err = _cfcheck.run_cli(list(args))
    return code, out, err
