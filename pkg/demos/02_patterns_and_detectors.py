"""Tour of the pattern analysis toolbox.

For each catalog pattern: chromatic data, the two routing detectors, and
the block decomposition. The detectors decide which construction a
pattern is eligible for.
"""

from satlab import clique, complete_multipartite, cycle, path, star
from satlab.pattern_props import (
    blocks,
    detect_ntriangle,
    detect_star,
    optimal_colourings,
)

catalog = [
    path(4), cycle(4), cycle(5), cycle(6),
    clique(3), clique(4),
    complete_multipartite([1, 1, 2]),
    complete_multipartite([1, 2, 2]),
    star(3),
]

for pat in catalog:
    w = optimal_colourings(pat)
    nt = detect_ntriangle(pat)
    st = detect_star(pat)
    print(
        f"{pat.name:8s} chi={w.chi} colourings={len(w.partitions):2d} "
        f"s*={w.max_class_size} blocks={len(blocks(pat.graph))} "
        f"pendant-class={'yes' if nt else 'no ':3s} witness-edge={'yes' if st else 'no'}"
    )
