"""The linear-regime constructions at a glance.

Runs the anchor/harvest construction for a 4-cycle family and the
pattern-witness variant for the 6-cycle, then prints the per-phase edge
accounting from the reports.
"""

from satlab import DeferredGnp, Family, cycle
from satlab.constructions import Params, construct_bipartite_family, construct_ntriangle

g = DeferredGnp(512, 0.5, seed=3)
final, rep = construct_bipartite_family(g, Family.of(cycle(4)), Params(seed=3))
print("== 4-cycle family ==")
print(rep.to_kv())
print(f"e(H)/n = {final.edge_count / 512:.3f}\n")

g = DeferredGnp(512, 0.5, seed=3)
final, rep = construct_ntriangle(g, cycle(6), Params(seed=3))
print("== 6-cycle pattern ==")
print(rep.to_kv())
print(f"e(H)/n = {final.edge_count / 512:.3f}")
