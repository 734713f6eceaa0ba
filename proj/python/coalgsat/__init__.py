"""Satisfiability of coalgebraic modal formulas under global assumptions."""

import json

from ._core import ParseError, ResourceLimit, render
from . import _core

__all__ = ["decide", "oracle", "model_check", "render", "ParseError", "ResourceLimit"]


def decide(formula, assumption="true", logic="k", algorithm="worklist",
           hybrid=False, kripke=False, emit_model=True, stats=False):
    """Returns {"verdict": ..., "model"?: ..., "root"?: ..., "stats"?: ...}."""
    return json.loads(_core.decide_json(assumption, formula, logic, algorithm,
                                        hybrid, kripke, emit_model, stats))


def oracle(formula, assumption="true", logic="k", max_states=3, weight_bound=4):
    """Bounded brute-force model search; {"found", "exhausted", "model"?}."""
    return json.loads(_core.oracle_json(assumption, formula, logic, max_states, weight_bound))


def model_check(model, formula, logic="k"):
    """Per-state truth of formula in a model given as a dict in the JSON schema."""
    return _core.model_check_json(json.dumps(model), formula, logic)
