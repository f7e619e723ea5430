"""Harmonic extension on the unit disc, three ways.

h(z) + H(1/conj z), 2 Re C u - u0 and the Poisson integral should agree to
rounding once the trapezoid rule resolves the Poisson kernel at the
outermost ring of targets.
"""

import numpy as np

from hardysplit import (
    CurveSpec,
    FourierData,
    build_curve,
    dirichlet_disc,
    dirichlet_disc_real,
    poisson_field,
)
from hardysplit.io import grid_points

u_data = FourierData.random(10, np.random.default_rng(0), real=True)
pts = grid_points({"kind": "polar", "nr": 20, "ntheta": 50, "rmax": 0.95})
for n in (256, 512, 1024):
    c = build_curve(CurveSpec.disc(n=n))
    u = u_data(c.t).real
    a = dirichlet_disc(c, u, pts).values
    b = dirichlet_disc_real(c, u, pts).values
    p = poisson_field(c, u, pts).values
    print(f"N={n:5d}  |split - 2Re C| = {np.abs(a - b).max():.1e}"
          f"  |split - Poisson| = {np.abs(a - p).max():.1e}")
