"""Two-level system basics: Pauli algebra and Bloch-sphere geometry on the x-z plane.

Pure states on the x-z great circle are parameterized by a single angle
delta, with delta = 0 the target state |0> and delta = pi the antipodal
state |1>.  The angle is kept as an unconstrained real during simulation;
``fold`` maps it to the angular distance from the target in [0, pi].
"""

from __future__ import annotations

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)


def fold(delta):
    """Angular distance to the target: |((delta + pi) mod 2pi) - pi|, in [0, pi].

    Even in delta, 2pi-periodic, and the identity on [0, pi].  Accepts
    scalars or arrays.
    """
    return np.abs(np.mod(np.asarray(delta) + np.pi, 2.0 * np.pi) - np.pi)


def axis_observable(theta: float) -> np.ndarray:
    """Observable sigma(theta) = sigma_x sin(theta) + sigma_z cos(theta).

    Hermitian, traceless and involutory for every theta: its eigenstates
    sit at Bloch angles theta and theta + pi on the x-z great circle.
    """
    if not np.isfinite(theta):
        raise ValueError(f"measurement axis angle must be finite, got {theta!r}")
    return SIGMA_X * np.sin(theta) + SIGMA_Z * np.cos(theta)


def state_from_angle(delta: float) -> np.ndarray:
    """Density matrix of the pure state cos(delta/2)|0> + sin(delta/2)|1>."""
    if not np.isfinite(delta):
        raise ValueError(f"Bloch angle must be finite, got {delta!r}")
    c, s = np.cos(delta / 2.0), np.sin(delta / 2.0)
    psi = np.array([c, s], dtype=complex)
    return np.outer(psi, psi.conj())


def bloch_angle(rho: np.ndarray, plane_tol: float = 1e-6,
                purity_tol: float = 1e-6) -> float:
    """Invert ``state_from_angle``: the Bloch angle in (-pi, pi] of a pure x-z state.

    Raises ValueError (with the violated quantity) if the state is off the
    x-z plane by more than ``plane_tol`` or mixed beyond ``purity_tol``.
    """
    rho = np.asarray(rho, dtype=complex)
    ty = float(np.trace(SIGMA_Y @ rho).real)
    if abs(ty) > plane_tol:
        raise ValueError(f"state off the x-z plane: |tr(sigma_y rho)| = {abs(ty):.3e}")
    purity = float(np.trace(rho @ rho).real)
    if purity < 1.0 - purity_tol:
        raise ValueError(f"state is mixed: purity = {purity:.9f}")
    tx = float(np.trace(SIGMA_X @ rho).real)
    tz = float(np.trace(SIGMA_Z @ rho).real)
    return float(np.arctan2(tx, tz))


def check_density(rho: np.ndarray, herm_tol: float = 1e-12, trace_tol: float = 1e-9,
                  eig_tol: float = 1e-9) -> np.ndarray:
    """Validate a 2x2 density matrix: Hermitian, unit trace, positive semidefinite.

    Returns the input unchanged on success; raises ValueError naming the
    violated quantity otherwise.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"density matrix must be 2x2, got shape {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > herm_tol:
        raise ValueError(f"density matrix not Hermitian: max |rho - rho^dag| = {herm:.3e}")
    tr = rho[0, 0].real + rho[1, 1].real
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"density matrix trace {tr!r} differs from 1")
    eigs = np.linalg.eigvalsh(rho)
    if eigs.min() < -eig_tol:
        raise ValueError(f"density matrix has negative eigenvalue {eigs.min():.3e}")
    return rho


def expectation(theta: float, rho: np.ndarray) -> float:
    """<sigma(theta)> = tr(sigma(theta) rho); equals cos(delta - theta) for pure angle delta."""
    rho = np.asarray(rho, dtype=complex)
    tx = np.trace(SIGMA_X @ rho).real
    tz = np.trace(SIGMA_Z @ rho).real
    return float(np.sin(theta) * tx + np.cos(theta) * tz)


def transition_probs(delta: float, alpha: float) -> tuple[float, float]:
    """Probabilities of projecting onto the +/- eigenstates of the bisecting axis.

    The + eigenstate of sigma(alpha*delta) sits at Bloch angle alpha*delta,
    dividing the arc between target and current state in ratio
    alpha : (1 - alpha); the overlaps give p+/- = (1 +/- cos((1-alpha) delta))/2.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    beta = 1.0 - alpha
    c = np.cos(beta * delta)
    return (1.0 + c) / 2.0, (1.0 - c) / 2.0


def fidelity_target(rho: np.ndarray) -> float:
    """Fidelity <0|rho|0> with the target state; (1 + cos(delta))/2 for pure x-z states."""
    rho = np.asarray(rho, dtype=complex)
    return float(rho[0, 0].real)
