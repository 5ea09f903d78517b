"""Built-in verification checks behind `qubitprep verify`.

Fast, deterministic cross-checks of the integrator against closed forms
and of the scalar tier against the density-matrix oracle.  Each check
reports a measured value and its threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .montecarlo import ExperimentConfig, _simulate_chunk, run_ensemble
from .policies import Jacobs, Robust
from .sde import NoiseSpec, wiener_increments


@dataclass
class CheckResult:
    name: str
    measured: float
    threshold: float
    passed: bool
    comparison: str = "<="


def check_closed_form(n_paths: int = 200, dt: float = 1e-4,
                      horizon: float = 1.0, seed: int = 0) -> CheckResult:
    """EM on d delta = sqrt(8) delta dW vs the exact lognormal solution."""
    n_steps = int(round(horizon / dt))
    errors = np.empty(n_paths)
    for p in range(n_paths):
        dW = wiener_increments(NoiseSpec(seed=seed, dt=dt, n_steps=n_steps, path_id=p))
        delta = math.pi
        for w in dW:
            delta = delta + math.sqrt(8.0) * delta * w
        exact = math.pi * math.exp(math.sqrt(8.0) * dW.sum() - 4.0 * horizon)
        errors[p] = abs(delta - exact) / exact
    med = float(np.median(errors))
    return CheckResult("closed-form EM error (median rel.)", med, 5e-2, med <= 5e-2)


def oracle_divergence(config: ExperimentConfig, n_paths: int,
                      stride: int = 10) -> tuple[float, float]:
    """Max |angle(rho) - delta| over matched-noise scalar vs matrix paths.

    Returns (true-state divergence, nominal-state divergence).
    """
    ids = np.arange(n_paths)
    scalar = _simulate_chunk(replace(config, tier="scalar_coupled"),
                             ids, stride, record_raw=True)
    matrix = _simulate_chunk(replace(config, tier="matrix_coupled"),
                             ids, stride, record_raw=True)
    d_true = float(np.max(np.abs(scalar["delta"] - matrix["delta"])))
    d_nom = float(np.max(np.abs(scalar["delta_nominal"] - matrix["delta_nominal"])))
    return d_true, d_nom


def check_oracle(scheme, name: str, Delta: float = 1e-2, n_paths: int = 8,
                 horizon: float = 0.5, seed: int = 0) -> CheckResult:
    """Scalar vs density-matrix tier under matched noise.

    Uses a start inside the contracting basin and a refined step: matched
    Euler-Maruyama paths of the two tiers differ by a discretization
    residual that is amplified exponentially along locally expanding
    stretches of the trajectory, so the comparison is only well
    conditioned away from the antipodal point and at small dt.
    """
    config = ExperimentConfig(scheme=scheme, tier="scalar_coupled",
                              Delta_true=Delta, Delta_nominal=Delta,
                              delta0=1.0, dt=2e-5, horizon=horizon,
                              n_paths=n_paths, seed=seed)
    d_true, d_nom = oracle_divergence(config, n_paths)
    worst = max(d_true, d_nom)
    return CheckResult(f"oracle equivalence ({name})", worst, 5e-2, worst <= 5e-2)


def check_convergence(seed: int = 0) -> CheckResult:
    """Folded mean under the robust loop must be small by T = 3."""
    config = ExperimentConfig(scheme=Robust(k=4.0, alpha=0.5), horizon=3.0,
                              n_paths=500, seed=seed)
    stats = run_ensemble(config)
    final = float(stats.delta.mean[-1])
    return CheckResult("robust folded mean at T=3", final, 0.1, final <= 0.1)


def check_determinism(seed: int = 123) -> CheckResult:
    """Two identical small ensembles must agree bit for bit."""
    config = ExperimentConfig(scheme=Jacobs(kappa=1.0), horizon=0.5,
                              n_paths=300, seed=seed)
    a = run_ensemble(config)
    b = run_ensemble(config)
    same = (np.array_equal(a.delta.mean, b.delta.mean)
            and np.array_equal(a.delta.m2, b.delta.m2))
    diff = 0.0 if same else float(np.max(np.abs(a.delta.mean - b.delta.mean)))
    return CheckResult("ensemble determinism (max diff)", diff, 0.0, same)


def run_all_checks(seed: int = 0) -> list[CheckResult]:
    return [
        check_closed_form(seed=seed),
        check_oracle(Robust(k=4.0, alpha=0.5), "robust", seed=seed),
        check_oracle(Jacobs(kappa=1.0), "jacobs", seed=seed),
        check_convergence(seed=seed),
        check_determinism(),
    ]
