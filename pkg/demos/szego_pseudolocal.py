"""Szegő projection of a cap indicator on the disc.

d = P(chi) - 1 on the cap is smooth away from the cap ends: its derivative
in the middle third does not change when N doubles, while near the ends it
doubles with N, tracking the logarithmic singularity.
"""

import numpy as np

from hardysplit import CurveSpec, SzegoProjector, build_curve, pseudolocal_experiment

cap = (np.pi / 2, 3 * np.pi / 2)
rep = pseudolocal_experiment(CurveSpec.disc(n=256), cap, lambda c: np.ones(c.n))
for k, v in rep.to_dict().items():
    print(f"{k:>26}: {v}")

ellipse = build_curve(CurveSpec.ellipse(n=512))
P = SzegoProjector(ellipse)
u = np.exp(3j * ellipse.t) + np.cos(ellipse.t)
print(f"ellipse: idempotence {P.idempotence_defect(u):.1e},"
      f" self-adjointness {P.self_adjointness_defect(u, np.sin(2 * ellipse.t)):.1e}")
