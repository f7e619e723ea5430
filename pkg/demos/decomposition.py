"""Split rational boundary data on a star-shaped curve into Hardy parts.

The datum 1/(w - 0.3) + 1/(w - 2.5) has one pole inside and one outside, so
the exact split is known.  The error falls geometrically with N.
"""

import numpy as np

from hardysplit import CurveSpec, RationalData, build_curve, decompose, rational_split

data = RationalData.simple(0.3, 2.5)
print(f"{'N':>6} {'error':>10} {'C(h) - h':>10}")
for n in (64, 128, 256, 512):
    curve = build_curve(CurveSpec.star(n=n))
    h, H = rational_split(data, curve)
    dec = decompose(curve, data.sample(curve))
    err = max(np.abs(dec.h.values - h.values).max(), np.abs(dec.H.values - H.values).max())
    print(f"{n:6d} {err:10.2e} {dec.projection_defect:10.2e}")

# corners slow things down but graded panels keep the error small
square = build_curve(CurveSpec.polygon([(1, 1), (-1, 1), (-1, -1), (1, -1)]))
data = RationalData.simple(0.3 + 0.4j, 2.5 - 1j)
h, _ = rational_split(data, square)
dec = decompose(square, data.sample(square))
print(f"square ({square.n} nodes): error {np.abs(dec.h.values - h.values).max():.2e}")
