"""Mahler measures and Fuglede-Kadison determinants over integral group rings."""

import json as _json

from ._fkdet import (
    BudgetError,
    ConfigError,
    DomainError,
    InternalError,
    ParseError,
    __version__,
    approx_chain,
    canonical_polynomial,
    exact_constants,
    fk_det_finite,
    fk_det_zd,
    lehmer_scan,
    mahler,
    run,
    torsion_bound,
)


def run_json(**options):
    """Runs a subcommand and returns the parsed JSON report.

    Raises RuntimeError carrying the structured error on a nonzero exit.
    """
    code, report, error = run(options)
    if code != 0:
        raise RuntimeError(_json.loads(error))
    return _json.loads(report)


__all__ = [
    "BudgetError",
    "ConfigError",
    "DomainError",
    "InternalError",
    "ParseError",
    "__version__",
    "approx_chain",
    "canonical_polynomial",
    "exact_constants",
    "fk_det_finite",
    "fk_det_zd",
    "lehmer_scan",
    "mahler",
    "run",
    "run_json",
    "torsion_bound",
]
