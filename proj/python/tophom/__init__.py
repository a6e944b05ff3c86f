"""Random simplicial complexes: phased collapsing, top homology, threshold constants."""

import json as _json

from . import _core
from ._core import (
    Complex,
    ConvergenceError,
    SolverError,
    binomial,
    estimate_gamma_series,
    expected_s_density,
    fixed_point_beta,
    gamma_recurrence,
    h_d,
    rank_face,
    run_process,
    select_k_star,
    solve_beta,
    solve_c_star,
    solve_tangency,
    theta_collapse,
    threshold_constants,
    threshold_scan,
    unrank_face,
)


def run_phases(complex, max_phases=1 << 20):
    """Summary of phased collapsing: f_d, zeta_star, s_star, phases_run, histograms."""
    return _json.loads(_core.run_phases(complex, max_phases))


def sample_summary(n, d, c, seed, p=2, with_homology=True):
    return _json.loads(_core.sample_summary(n, d, c, seed, p, with_homology))


def process_experiment(n, d, trials, seed, threads=1, p=2):
    """Returns (records, aggregate) for the face-by-face process."""
    records, aggregate = _core.process_experiment(n, d, trials, seed, threads, p)
    return records, _json.loads(aggregate)


__all__ = [name for name in dir() if not name.startswith("_")]
