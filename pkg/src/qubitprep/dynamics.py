"""Equations of motion at three tiers.

Tier (a): the scalar Bloch-angle SDE.  For a measured axis at angle
theta_m with strength k and a detuning disturbance Delta rotating the
state about y, the angle obeys

    d delta = [2 Delta - 2 k sin(2 (delta - theta_m))] dt
              + sqrt(8 k) sin(delta - theta_m) dW.

Closing the loop with a policy (theta_m, k as functions of the angle)
specializes this single form to every scheme: robust (theta_m =
alpha * delta), Jacobs (theta_m = delta - pi/2, k = kappa * fold(delta)^2),
and their true/nominal filtered pairs.

Tier (b): the full 2x2 stochastic master equation, measurement record and
nominal filter, used as the ground-truth oracle for tier (a).

Tier (c): the linearization of the robust closed loop about the target.

All integration is Euler-Maruyama in the Ito sense.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .policies import Jacobs, Robust, JacobsConstant, SchemeConfig
from .qubit import SIGMA_X, SIGMA_Z


class PositivityError(RuntimeError):
    """A density-matrix step left the positive cone beyond tolerance (dt too large)."""

    def __init__(self, message: str, min_eigenvalue: float):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


@dataclass(frozen=True)
class ScalarDriftDiffusion:
    """dt and dW coefficients of the scalar angle equation."""
    drift: float
    diffusion: float


def scalar_coeffs(delta, theta_m, k, Delta):
    """Unified drift/diffusion of the scalar angle SDE (vectorized).

    a = 2 Delta - 2 k sin(2 (delta - theta_m)),  b = sqrt(8 k) sin(delta - theta_m).
    """
    k = np.asarray(k, dtype=float)
    if np.any(k < 0.0):
        raise ValueError("measurement strength k must be >= 0")
    phi = np.asarray(delta, dtype=float) - np.asarray(theta_m, dtype=float)
    a = 2.0 * Delta - 2.0 * k * np.sin(2.0 * phi)
    b = np.sqrt(8.0 * k) * np.sin(phi)
    return a, b


def scalar_drift_diffusion(delta: float, theta_m: float, k: float,
                           Delta: float) -> ScalarDriftDiffusion:
    """Scalar convenience wrapper around ``scalar_coeffs``."""
    a, b = scalar_coeffs(delta, theta_m, k, Delta)
    return ScalarDriftDiffusion(float(a), float(b))


def step_scalar_closed_loop(delta, scheme: SchemeConfig, Delta, dt, dW,
                            milstein: bool = False):
    """One EM step of the closed loop with the policy evaluated at delta itself.

    This is the known-disturbance setting: the controller sees the true
    angle.  With ``milstein=True`` (robust or constant-strength schemes
    only, where the diffusion derivative is smooth) the Milstein
    correction 0.5 b b' (dW^2 - dt) is added.
    """
    delta = np.asarray(delta, dtype=float)
    theta_m, k = scheme.action_arrays(delta)
    a, b = scalar_coeffs(delta, theta_m, k, Delta)
    out = delta + a * dt + b * dW
    if milstein:
        if isinstance(scheme, Robust):
            beta = 1.0 - scheme.alpha
            db = np.sqrt(8.0 * scheme.k) * beta * np.cos(beta * delta)
        elif isinstance(scheme, JacobsConstant):
            db = 0.0
        else:
            raise ValueError("Milstein correction requires a smooth diffusion; "
                             "not available for the quadratic-strength scheme")
        out = out + 0.5 * b * db * (np.asarray(dW) ** 2 - dt)
    return out


def step_linearized(delta, k: float, alpha: float, Delta, dt, dW):
    """One EM step of the robust loop linearized about the target.

    d delta = 2 Delta dt - 4 k beta delta dt + sqrt(8 k) beta delta dW,
    with beta = 1 - alpha.
    """
    if not k > 0.0:
        raise ValueError(f"k must be > 0, got {k!r}")
    beta = 1.0 - alpha
    delta = np.asarray(delta, dtype=float)
    return delta + 2.0 * Delta * dt - 4.0 * k * beta * delta * dt \
        + np.sqrt(8.0 * k) * beta * delta * dW


def step_coupled(delta_true, delta_nominal, scheme: SchemeConfig,
                 Delta_true, Delta_nominal, dt, dW):
    """One EM step of the true/nominal pair sharing a single dW (vectorized).

    The policy is evaluated at the nominal angle.  Within the step: the
    true angle is advanced with dW, the record dy = cos(delta - theta_m) dt
    + dW is formed from the pre-step true angle, the innovation
    d nu = dy - cos(delta' - theta_m) dt drives the nominal update.

    Returns (delta_true, delta_nominal, dy).
    """
    delta_true = np.asarray(delta_true, dtype=float)
    delta_nominal = np.asarray(delta_nominal, dtype=float)
    theta_m, k = scheme.action_arrays(delta_nominal)

    a_t, b_t = scalar_coeffs(delta_true, theta_m, k, Delta_true)
    dy = np.cos(delta_true - theta_m) * dt + dW
    dnu = dy - np.cos(delta_nominal - theta_m) * dt
    a_n, b_n = scalar_coeffs(delta_nominal, theta_m, k, Delta_nominal)

    new_true = delta_true + a_t * dt + b_t * dW
    new_nominal = delta_nominal + a_n * dt + b_n * dnu
    return new_true, new_nominal, dy


# -- matrix tier -------------------------------------------------------------

def _axis_matrices(theta_m) -> np.ndarray:
    """sigma(theta) for a batch of angles; shape (..., 2, 2)."""
    theta_m = np.asarray(theta_m, dtype=float)
    return (np.multiply.outer(np.sin(theta_m), SIGMA_X)
            + np.multiply.outer(np.cos(theta_m), SIGMA_Z))


def _sigma_expectation(rho: np.ndarray, theta_m) -> np.ndarray:
    """tr(sigma(theta) rho) for batched rho (..., 2, 2); real-valued."""
    theta_m = np.asarray(theta_m, dtype=float)
    tx = (rho[..., 0, 1] + rho[..., 1, 0]).real
    tz = (rho[..., 0, 0] - rho[..., 1, 1]).real
    return np.sin(theta_m) * tx + np.cos(theta_m) * tz


POSITIVITY_TOL = 5e-2


def _project_density(rho: np.ndarray, pos_tol: float = POSITIVITY_TOL,
                     purify: bool = False) -> np.ndarray:
    """Hermitize, clamp a slightly negative eigenvalue, renormalize the trace.

    EM does not preserve the state manifold; this projection restores it
    after every step.  Per-step negative excursions scale like k*dt, so
    the abort threshold is well above that at sane step sizes and trips
    when dt is genuinely too large.

    With purify=True the Bloch vector is additionally renormalized to
    unit length.  The exact equation preserves purity of pure states;
    projecting the EM step back onto that invariant manifold removes an
    O(k*dt) random walk in the purity that would otherwise distort the
    diffusion coefficient of the Bloch angle.
    """
    rho = 0.5 * (rho + np.conj(np.swapaxes(rho, -1, -2)))
    tr = (rho[..., 0, 0] + rho[..., 1, 1]).real
    half = 0.5 * tr
    det = (rho[..., 0, 0] * rho[..., 1, 1] - rho[..., 0, 1] * rho[..., 1, 0]).real
    gap = np.sqrt(np.maximum(half * half - det, 0.0))
    eig_min = half - gap
    worst = float(np.min(eig_min))
    if worst < -pos_tol:
        raise PositivityError(
            f"density matrix eigenvalue {worst:.3e} below -{pos_tol:g} "
            "(dt too large)", worst)
    rho = rho / tr[..., None, None]
    if purify:
        # rho = I/2 + (rho - I/2); scale the traceless part to unit Bloch length
        purity = np.einsum("...ij,...ji->...", rho, rho).real
        length = np.sqrt(np.maximum(2.0 * purity - 1.0, 1e-30))
        half_eye = 0.5 * np.eye(2)
        rho = half_eye + (rho - half_eye) / length[..., None, None]
    else:
        neg = eig_min < 0.0
        if np.any(neg):
            shift = np.where(neg, -eig_min / tr, 0.0)
            rho = rho + shift[..., None, None] * np.eye(2)
            rho = rho / (1.0 + 2.0 * shift)[..., None, None]
    return rho


def _sme_generators(rho: np.ndarray, sigma: np.ndarray, k):
    """Deterministic measurement part and back-action part of the SME.

    Returns (drift_meas, backaction) where
      drift_meas = -k [sigma, [sigma, rho]] = -2 k (rho - sigma rho sigma),
      backaction = sqrt(2 k) (sigma rho + rho sigma - 2 tr(sigma rho) rho).
    """
    k = np.asarray(k, dtype=float)
    srs = sigma @ rho @ sigma
    drift_meas = -2.0 * k[..., None, None] * (rho - srs)
    sr = sigma @ rho
    rs = rho @ sigma
    expect = (sr[..., 0, 0] + sr[..., 1, 1]).real
    back = np.sqrt(2.0 * k)[..., None, None] * (
        sr + rs - 2.0 * expect[..., None, None] * rho)
    return drift_meas, back


def _hamiltonian_drift(rho: np.ndarray, Delta) -> np.ndarray:
    """-i Delta [sigma_y, rho] for batched rho, worked out entrywise.

    Real symmetric rho stays real symmetric under this generator, which
    keeps on-plane dynamics exactly on the x-z plane.
    """
    out = np.empty_like(rho)
    out[..., 0, 0] = -(rho[..., 0, 1] + rho[..., 1, 0])
    out[..., 1, 1] = rho[..., 0, 1] + rho[..., 1, 0]
    out[..., 0, 1] = rho[..., 0, 0] - rho[..., 1, 1]
    out[..., 1, 0] = rho[..., 0, 0] - rho[..., 1, 1]
    return float(Delta) * out


def step_sme(rho: np.ndarray, theta_m, k, Delta, dt, dW,
             pos_tol: float = POSITIVITY_TOL, purify: bool = False) -> np.ndarray:
    """One EM step of the true stochastic master equation (vectorized).

    d rho = -i Delta [sigma_y, rho] dt - k [sigma, [sigma, rho]] dt
            + sqrt(2 k) (sigma rho + rho sigma - 2 tr(sigma rho) rho) dW,
    followed by projection back onto the density-matrix manifold.
    """
    k = np.asarray(k, dtype=float)
    if np.any(k < 0.0):
        raise ValueError("measurement strength k must be >= 0")
    rho = np.asarray(rho, dtype=complex)
    sigma = _axis_matrices(theta_m)
    drift_meas, back = _sme_generators(rho, sigma, k)
    dW = np.asarray(dW, dtype=float)
    new = rho + (_hamiltonian_drift(rho, Delta) + drift_meas) * dt \
        + back * dW[..., None, None]
    return _project_density(new, pos_tol, purify)


def record_increment(rho: np.ndarray, theta_m, dt, dW):
    """Measurement record increment dy = tr(sigma(theta) rho) dt + dW."""
    return _sigma_expectation(np.asarray(rho, dtype=complex), theta_m) * dt + dW


def step_filter(rho_nominal: np.ndarray, theta_m, k, Delta_nominal, dt, dy,
                pos_tol: float = POSITIVITY_TOL, purify: bool = False) -> np.ndarray:
    """One EM step of the nominal filter, driven by the innovation.

    Same generators as the true SME but with the assumed detuning and the
    back-action multiplied by d nu = dy - tr(sigma rho') dt.
    """
    k = np.asarray(k, dtype=float)
    if np.any(k < 0.0):
        raise ValueError("measurement strength k must be >= 0")
    rho = np.asarray(rho_nominal, dtype=complex)
    sigma = _axis_matrices(theta_m)
    drift_meas, back = _sme_generators(rho, sigma, k)
    dnu = np.asarray(dy, dtype=float) - _sigma_expectation(rho, theta_m) * dt
    new = rho + (_hamiltonian_drift(rho, Delta_nominal) + drift_meas) * dt \
        + back * dnu[..., None, None]
    return _project_density(new, pos_tol, purify)


def fidelity_path(delta) -> np.ndarray:
    """Target fidelity along an angle path: (1 + cos(delta)) / 2 elementwise."""
    return (1.0 + np.cos(np.asarray(delta, dtype=float))) / 2.0
