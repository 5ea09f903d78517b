"""Scalar angle SDE vs the full density-matrix tier, path by path.

Feeds the same Wiener increments to the scalar true/nominal pair and to
the stochastic master equation + quantum filter, and prints the maximum
pathwise angle discrepancy at two step sizes.  The two discretizations
differ by an O(dt) residual that shrinks as dt is refined -- direct
evidence that the scalar reduction and the matrix dynamics describe the
same process.
"""

import numpy as np

from qubitprep.montecarlo import ExperimentConfig
from qubitprep.policies import Jacobs, Robust
from qubitprep.verify import oracle_divergence

for label, scheme in (("robust", Robust(k=4.0, alpha=0.5)),
                      ("jacobs", Jacobs(kappa=1.0))):
    print(f"\n{label} scheme, matched Delta = Delta' = 1e-2, 8 paths, T = 0.5,")
    print("start delta0 = 1.0 (inside the contracting basin):")
    for dt in (1e-4, 5e-5, 2e-5):
        config = ExperimentConfig(scheme=scheme, tier="scalar_coupled",
                                  Delta_true=1e-2, Delta_nominal=1e-2,
                                  delta0=1.0, dt=dt, horizon=0.5,
                                  n_paths=8, seed=0)
        d_true, d_nom = oracle_divergence(config, 8)
        print(f"  dt = {dt:7.0e}: max |angle(rho) - delta| = {d_true:.3e} "
              f"(true), {d_nom:.3e} (nominal)")

print("\nThe discrepancy shrinks as the step is refined.  Note that from")
print("the antipodal start delta0 = pi, or with a mismatched filter, the")
print("closed loop amplifies this residual exponentially and matched paths")
print("eventually take different branches -- pathwise comparison is only")
print("well conditioned where the loop is contracting.")
