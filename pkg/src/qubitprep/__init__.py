"""Qubit state preparation by adaptive continuous measurement."""

__version__ = "0.1.0"

from .qubit import (axis_observable, bloch_angle, check_density, expectation,
                    fidelity_target, fold, state_from_angle, transition_probs)
from .policies import (Jacobs, JacobsConstant, MeasurementAction, Robust,
                       SchemeConfig, fidelity_drift, jacobs_policy,
                       optimal_alpha, robust_policy)
from .sde import (IntegrationError, NoiseSpec, PathRecord, TimeGrid,
                  integrate, wiener_increments)
from .dynamics import (PositivityError, ScalarDriftDiffusion, fidelity_path,
                       record_increment, scalar_coeffs, step_coupled,
                       step_filter, step_linearized, step_scalar_closed_loop,
                       step_sme)
from .montecarlo import (EnsembleStats, ExperimentConfig, StreamingMoments,
                         long_run_error, run_ensemble, run_sample_paths)
