"""Measurement policies and the fidelity drift."""

import numpy as np
import pytest

from qubitprep.policies import (Jacobs, JacobsConstant, MeasurementAction, Robust,
                                fidelity_drift, jacobs_policy, optimal_alpha,
                                policy_action, robust_policy)
from qubitprep.qubit import fold


def test_measurement_action_validation():
    MeasurementAction(theta_m=0.5, strength=0.0)
    with pytest.raises(ValueError, match="theta_m"):
        MeasurementAction(theta_m=np.nan, strength=1.0)
    with pytest.raises(ValueError, match="strength"):
        MeasurementAction(theta_m=0.0, strength=-1.0)


def test_jacobs_axis_perpendicular():
    act = jacobs_policy(1.3, kappa=2.0)
    assert np.isclose(act.theta_m, 1.3 - np.pi / 2.0)
    assert np.isclose(act.strength, 2.0 * 1.3**2)


def test_jacobs_strength_vanishes_at_target():
    assert jacobs_policy(0.0, kappa=1.0).strength == 0.0
    # folded distance keeps the strength bounded outside [0, pi]
    act = jacobs_policy(2.0 * np.pi - 0.1, kappa=1.0)
    assert np.isclose(act.strength, 0.1**2)


def test_jacobs_vectorized():
    d = np.array([-0.5, 0.0, 1.0, 4.0])
    theta, k = Jacobs(kappa=3.0).action_arrays(d)
    assert np.allclose(theta, d - np.pi / 2.0)
    assert np.allclose(k, 3.0 * fold(d) ** 2)


def test_robust_bisects():
    act = robust_policy(2.0, k=4.0, alpha=0.5)
    assert np.isclose(act.theta_m, 1.0)
    assert act.strength == 4.0


def test_robust_vectorized_constant_strength():
    d = np.linspace(-1.0, 3.0, 7)
    theta, k = Robust(k=4.0, alpha=0.25).action_arrays(d)
    assert np.allclose(theta, 0.25 * d)
    assert np.all(k == 4.0)


def test_jacobs_constant_fixture():
    d = np.array([0.2, 3.0])
    theta, k = JacobsConstant(k=4.0).action_arrays(d)
    assert np.allclose(theta, d - np.pi / 2.0)
    assert np.all(k == 4.0)


def test_scheme_validation():
    with pytest.raises(ValueError, match="kappa"):
        Jacobs(kappa=0.0)
    with pytest.raises(ValueError, match="k must"):
        Robust(k=-1.0, alpha=0.5)
    with pytest.raises(ValueError, match="alpha"):
        Robust(k=4.0, alpha=1.5)
    with pytest.raises(ValueError, match="k must"):
        JacobsConstant(k=0.0)


def test_policy_action_dispatch():
    d = np.array([0.5, 1.5])
    t1, k1 = policy_action(Jacobs(kappa=1.0), d)
    t2, k2 = Jacobs(kappa=1.0).action_arrays(d)
    assert np.array_equal(t1, t2) and np.array_equal(k1, k2)


def test_fidelity_drift_formula():
    # alpha = 1/2, delta = pi/2, k = 4, no disturbance: rate k (1 - 0) = 4
    assert np.isclose(fidelity_drift(np.pi / 2.0, 0.5, 4.0, 0.0), 4.0)
    # the disturbance term is -Delta sin(delta)
    d = 0.7
    assert np.isclose(fidelity_drift(d, 0.5, 4.0, 0.1)
                      - fidelity_drift(d, 0.5, 4.0, 0.0), -0.1 * np.sin(d))
    # perpendicular axis (alpha -> the Jacobs limit at alpha=1 is measured
    # through the state): cos(delta) - cos(delta) = 0 at alpha = 1
    assert np.isclose(fidelity_drift(d, 1.0, 4.0, 0.0), 4.0 * (np.cos(d) - np.cos(d)))


def test_fidelity_drift_maximized_at_half():
    alphas = np.arange(0.0, 1.0 + 1e-9, 1e-3)
    for d in (0.1, 0.5, 1.0, 2.0, 3.0):
        drifts = fidelity_drift(d, alphas, 4.0, 0.0)
        assert np.isclose(alphas[np.argmax(drifts)], 0.5)
    assert optimal_alpha() == 0.5


def test_fidelity_drift_validation():
    with pytest.raises(ValueError, match="k must"):
        fidelity_drift(1.0, 0.5, 0.0, 0.0)
    with pytest.raises(ValueError, match="alpha"):
        fidelity_drift(1.0, -0.1, 4.0, 0.0)
