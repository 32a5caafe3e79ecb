"""The ``.isl`` scenario language: parser, printer and evaluator."""

from .evaluator import evaluate, run_file, run_text
from .syntax import ParseError, ScenarioError, parse, parse_expr, print_scenario

__all__ = ["ParseError", "ScenarioError", "evaluate", "parse", "parse_expr", "print_scenario",
           "run_file", "run_text"]
