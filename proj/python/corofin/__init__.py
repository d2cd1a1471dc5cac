"""Co-rotational beam solver and Fin-Ray finger design studies.

Documents (structures, parameters, loads, sweep specs) are plain dicts with
the same layout as the JSON files used by the ``corofin`` command-line tool.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from . import _core
from ._core import CorofinError, IncrementRecord, SolveResult

__all__ = [
    "CorofinError",
    "IncrementRecord",
    "SolveResult",
    "contact_load",
    "generate",
    "probe_max_force",
    "solve",
    "solve_csv",
    "sweep",
]


def _dump(doc: Mapping[str, Any]) -> str:
    return json.dumps(doc)


def generate(params: Mapping[str, Any] | None = None, **overrides: Any) -> dict:
    """Build a finger model; ``overrides`` take precedence over ``params``."""
    merged = {**(params or {}), **overrides}
    return json.loads(_core.generate(_dump(merged)))


def contact_load(params: Mapping[str, Any], rank: int, magnitude: float) -> dict:
    """Load document for ``magnitude`` N along the inward normal at contact node ``rank``."""
    return json.loads(_core.contact_load(_dump(params), rank, magnitude))


def solve(
    structure: Mapping[str, Any],
    loads: Mapping[str, Any],
    *,
    n_inc: int = 10,
    tolerance: float = 1e-3,
    maxiter: int = 100,
    stop_on_unstable_tangent: bool = True,
) -> SolveResult:
    return _core.solve(
        _dump(structure), _dump(loads), n_inc, tolerance, maxiter, stop_on_unstable_tangent
    )


def solve_csv(structure: Mapping[str, Any], result: SolveResult) -> str:
    return _core.solve_csv(_dump(structure), result)


def probe_max_force(
    structure: Mapping[str, Any],
    pattern: Mapping[str, Any],
    f_lo: float,
    f_hi: float,
    resolution: float,
    *,
    n_inc: int = 10,
    tolerance: float = 1e-3,
    maxiter: int = 100,
) -> float:
    return _core.probe_max_force(
        _dump(structure), _dump(pattern), f_lo, f_hi, resolution, n_inc, tolerance, maxiter
    )


def sweep(
    spec: Mapping[str, Any], *, probe_max_force: bool = False, parallel: bool = False
) -> tuple[str, dict]:
    """Run a design study; returns the CSV text and the parsed summary."""
    csv, summary = _core.sweep(_dump(spec), probe_max_force, parallel)
    return csv, json.loads(summary)
