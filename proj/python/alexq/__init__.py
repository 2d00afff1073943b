"""Alexander modules and quandles of link diagrams."""

import json

from ._alexq import (
    CapacityError,
    Diagram,
    DomainError,
    Error,
    ParseError,
    UsageError,
    alexander_matrix,
    coloring_exponent,
    decompose,
    elementary_ideal,
    module_dimension,
    quandle,
    run_cli,
)

__all__ = [
    "CapacityError",
    "Diagram",
    "DomainError",
    "Error",
    "ParseError",
    "UsageError",
    "alexander_matrix",
    "cli_json",
    "coloring_exponent",
    "decompose",
    "elementary_ideal",
    "module_dimension",
    "quandle",
    "run_cli",
]


def cli_json(*args):
    """Run a subcommand and return (exit_code, parsed JSON output)."""
    code, out, _ = run_cli([str(a) for a in args])
    return code, json.loads(out)
