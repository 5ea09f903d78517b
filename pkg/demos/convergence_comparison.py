"""Convergence of the two adaptive schemes without disturbance.

Runs both feedback laws from the antipodal state with Delta = 0 and a
modest ensemble, and prints the folded distance to the target over time.
The quadratic-strength scheme converges (its angle is a martingale whose
folded distance collapses), and so does the constant-strength bisecting
scheme -- but a constant strength along Jacobs' *perpendicular* axis does
not, which is the point of the comparison fixture at the end.
"""

import numpy as np

from qubitprep import ExperimentConfig, run_ensemble
from qubitprep.policies import Jacobs, JacobsConstant, Robust

N_PATHS = 2000
HORIZON = 5.0

schemes = {
    "robust (k=4, alpha=1/2)": Robust(k=4.0, alpha=0.5),
    "jacobs (kappa=1)": Jacobs(kappa=1.0),
    "jacobs axis, constant k=4": JacobsConstant(k=4.0),
}

results = {}
for label, scheme in schemes.items():
    config = ExperimentConfig(scheme=scheme, Delta_true=0.0, horizon=HORIZON,
                              n_paths=N_PATHS, seed=0)
    results[label] = run_ensemble(config, workers=4)
    print(f"simulated {label}")

times = next(iter(results.values())).times
print("\n  t     " + "  ".join(f"{label:>28s}" for label in results))
for t in (0.0, 0.5, 1.0, 2.0, 5.0):
    i = int(np.argmin(np.abs(times - t)))
    row = "  ".join(f"{stats.delta.mean[i]:28.5f}" for stats in results.values())
    print(f"{times[i]:5.2f} {row}")

print("\nBoth adaptive schemes drive the mean folded distance to ~0 by T=5;")
print("the constant-strength perpendicular axis freezes the back-action's")
print("pull toward the target and the ensemble never converges.")
