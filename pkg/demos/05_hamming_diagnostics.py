"""Diagnostics around the dense-regime machinery.

Shows the regime classifier's sign change, the neighborhood-fiber
partition (injective at this scale), and a small covering-ball probe.
"""

import math

from satlab import gen_gnp
from satlab.constructions import Params, degree_interval
from satlab.hamming import (
    ball_cover_probe,
    classify_regime,
    phi_classes,
    points_from_vertices,
)
from satlab._bits import mask_of

print("regime by p:", {p: classify_regime(p) for p in (0.5, 0.6, 0.63, 0.65, 0.7, 0.8)})

n = 2048
host = gen_gnp(n, 0.5, seed=1)
a1 = list(range(26))
pc = phi_classes(host, range(26, n), a1)
print(f"fibers: {len(pc.classes)} classes, histogram {pc.histogram}, regime {pc.regime}")

window = degree_interval(n, 0.5, 0.1, 0.45)
pts = points_from_vertices(host, range(26, n), a1, window)[:120]
a1m = mask_of(a1)
carriers = [v for v in range(26, n)
            if window[0] <= (host.row(v) & a1m).bit_count() <= window[1]][:11]
rep = ball_cover_probe(host, a1, carriers, pts, Params(eps=0.1), gamma=5.0)
print(f"ball cover: {rep.covered}/{rep.points} covered, "
      f"{rep.clique_failures}/{rep.clique_checks} clique failures")
