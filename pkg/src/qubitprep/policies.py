"""Adaptive measurement laws mapping the (nominal) Bloch angle to an action.

Two schemes are implemented.  Jacobs' scheme measures the axis
perpendicular to the current state with a strength that vanishes
quadratically at the target.  The robust scheme measures the axis that
divides the arc between target and current state in ratio alpha:(1-alpha)
with a constant strength, so the back-action keeps pulling even at the
target.  A constant-strength variant of Jacobs' axis is kept around as a
comparison fixture only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .qubit import fold


@dataclass(frozen=True)
class MeasurementAction:
    """Axis angle and nonnegative strength of one continuous measurement setting."""
    theta_m: float
    strength: float

    def __post_init__(self):
        if not np.isfinite(self.theta_m):
            raise ValueError(f"theta_m must be finite, got {self.theta_m!r}")
        if not self.strength >= 0.0:
            raise ValueError(f"strength must be >= 0, got {self.strength!r}")


@dataclass(frozen=True)
class Jacobs:
    """Perpendicular axis, strength kappa * fold(delta)^2."""
    kappa: float

    def __post_init__(self):
        if not self.kappa > 0.0:
            raise ValueError(f"kappa must be > 0, got {self.kappa!r}")

    def action_arrays(self, delta):
        return np.asarray(delta) - np.pi / 2.0, self.kappa * fold(delta) ** 2


@dataclass(frozen=True)
class Robust:
    """Bisecting-family axis at alpha * delta, constant strength k."""
    k: float
    alpha: float

    def __post_init__(self):
        if not self.k > 0.0:
            raise ValueError(f"k must be > 0, got {self.k!r}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha!r}")

    def action_arrays(self, delta):
        delta = np.asarray(delta, dtype=float)
        return self.alpha * delta, np.full_like(delta, self.k)


@dataclass(frozen=True)
class JacobsConstant:
    """Jacobs' perpendicular axis with constant strength; comparison fixture only."""
    k: float

    def __post_init__(self):
        if not self.k > 0.0:
            raise ValueError(f"k must be > 0, got {self.k!r}")

    def action_arrays(self, delta):
        delta = np.asarray(delta, dtype=float)
        return delta - np.pi / 2.0, np.full_like(delta, self.k)


SchemeConfig = Union[Jacobs, Robust, JacobsConstant]


def jacobs_policy(delta_nominal: float, kappa: float) -> MeasurementAction:
    """Jacobs' law: axis perpendicular to the state, strength kappa * fold(delta)^2.

    The strength uses the folded distance so it stays bounded and symmetric
    if the nominal angle wanders outside [0, pi].
    """
    theta, k = Jacobs(kappa).action_arrays(float(delta_nominal))
    return MeasurementAction(float(theta), float(k))


def robust_policy(delta_nominal: float, k: float, alpha: float) -> MeasurementAction:
    """Robust law: axis at alpha * delta between state and target, constant strength."""
    theta, kk = Robust(k, alpha).action_arrays(float(delta_nominal))
    return MeasurementAction(float(theta), float(kk))


def policy_action(scheme: SchemeConfig, delta):
    """Vectorized (theta_m, strength) for an array of nominal angles."""
    return scheme.action_arrays(delta)


def fidelity_drift(delta, alpha: float, k: float, Delta: float):
    """Deterministic rate of change of the target fidelity <0|rho|0>.

    Under the robust scheme with disturbance Delta the dt-coefficient is
    -Delta sin(delta) + k (cos(2 alpha delta - delta) - cos(delta)).
    """
    if not k > 0.0:
        raise ValueError(f"k must be > 0, got {k!r}")
    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha < 0.0) or np.any(alpha > 1.0):
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    delta = np.asarray(delta, dtype=float)
    out = -Delta * np.sin(delta) + k * (np.cos(2.0 * alpha * delta - delta) - np.cos(delta))
    return float(out) if out.ndim == 0 else out


def optimal_alpha() -> float:
    """The axis-division ratio maximizing the deterministic fidelity gain: 1/2.

    cos(2 alpha delta - delta) peaks exactly when the measured axis bisects
    the arc, for every delta in (0, pi).
    """
    return 0.5
