"""Certified quantum scattering bounds from L1 residual norms.

Thin convenience layer over the compiled ``scatterbound._core`` module: job
configs may be passed as dicts, and JSON reports come back parsed.  The raw
string-in / string-out entry points live on ``scatterbound._core`` and emit
byte-identical content to the command-line tool's output files.
"""

import json as _json

from . import _core
from ._core import (
    ConfigError,
    Potential,
    amplitude_bound_from_gamma,
    bound_parameters,
    coulomb_plus_short_range,
    coulomb_sigma,
    cross_section,
    cross_section_interval,
    delta_1d_transmission,
    evaluate,
    expectation_tuning,
    exponential_potential,
    free_scattering_bound,
    gamma_star,
    gaussian_potential,
    instability_scan,
    inverse_square_cutoff,
    inverse_square_exponents,
    nonconservation_demo,
    phase_shift,
    phase_shift_error_bound,
    pointwise_f_bound,
    ramp_plateau,
    square_well,
    tail_class,
    vslow_demo,
    xi_linf_full_state,
    xi_linf_numerical,
    xi_linf_transfer_1d,
    zero_potential,
)

__all__ = [
    "ConfigError",
    "Potential",
    "amplitude_bound_from_gamma",
    "bound",
    "bound_parameters",
    "coulomb_plus_short_range",
    "coulomb_sigma",
    "cross_section",
    "cross_section_interval",
    "delta_1d_transmission",
    "evaluate",
    "expectation_tuning",
    "exponential_potential",
    "free_scattering_bound",
    "gamma_star",
    "gaussian_potential",
    "instability_scan",
    "inverse_square_cutoff",
    "inverse_square_exponents",
    "nonconservation_demo",
    "oracle",
    "pathology",
    "phase_shift",
    "phase_shift_error_bound",
    "pointwise_f_bound",
    "ramp_plateau",
    "solve",
    "square_well",
    "tail_class",
    "vslow_demo",
    "xi_linf_full_state",
    "xi_linf_numerical",
    "xi_linf_transfer_1d",
    "zero_potential",
]


def _config_text(config):
    if isinstance(config, str):
        return config
    return _json.dumps(config)


def solve(config, seed=None):
    """Minimizes the L1 residual for the given job config.

    Returns a dict with the parsed ``report`` and ``ansatz``, the raw
    ``trace_csv`` text, and the CLI-compatible ``exit_code`` (0 on clean
    convergence, 2 when the line search stalled first).
    """
    raw = _core.solve(_config_text(config), seed=seed)
    return {
        "report": _json.loads(raw["report"]),
        "trace_csv": raw["trace_csv"],
        "ansatz": _json.loads(raw["ansatz"]),
        "exit_code": raw["exit_code"],
    }


def oracle(config, seed=None):
    """Reference phase shifts and cross section for the given job config."""
    raw = _core.oracle(_config_text(config), seed=seed)
    return {"report": _json.loads(raw["report"]), "csv": raw["csv"]}


def bound(config, seed=None):
    """Certified bounds for externally supplied norms (parsed report)."""
    return _json.loads(_core.bound(_config_text(config), seed=seed))


def pathology(case_name="all", scan=False, seed=None):
    """Runs the counterexample demos; returns table text and pass flag."""
    return _core.pathology(case_name, scan, seed=seed)
