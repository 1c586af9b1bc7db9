"""Generate a seeded random graph, saturate it greedily, verify, and save.

Walks the smallest complete loop through the library: host generation,
a baseline saturated subgraph, the verifier, and the edge-list format.
"""

from satlab import Family, clique, gen_gnp, greedy_saturate, is_saturated
from satlab.graphs import write_edge_list

host = gen_gnp(n=200, p=0.5, seed=7)
print(f"host: {host.n} vertices, {host.edge_count} edges")

triangle = Family.of(clique(3))
h = greedy_saturate(host, triangle, seed=7)
print(f"greedy triangle-saturated subgraph: {h.edge_count} edges")

verdict = is_saturated(host, h, triangle)
print(f"free={verdict.free} maximal={verdict.maximal} -> saturated={verdict.saturated}")

write_edge_list(h, "/tmp/triangle_saturated.el")
print("wrote /tmp/triangle_saturated.el")
