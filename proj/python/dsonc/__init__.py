"""Python access to the dsonc circuit-cone toolkit."""

import json

from ._dsonc import (
    DsoncError,
    check_circuit,
    circuit_numbers,
    equilibrium,
    normalize_document,
    run_cli,
)

__all__ = [
    "DsoncError",
    "check_circuit",
    "circuit_numbers",
    "equilibrium",
    "normalize_document",
    "run_cli",
    "run",
]


def run(*args):
    """Run a CLI subcommand in-process and return (exit_code, parsed JSON)."""
    code, out, _ = run_cli([str(a) for a in args])
    return code, json.loads(out)
