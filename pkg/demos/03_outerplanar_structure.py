# # Outerplanar structure
#
# Recognition returns either an embedding (outer cycle plus chords per block)
# or a K4 / K2,3 minor witness.  Embeddings give faces, exterior and interior
# edges and the combinatorial curvature of each vertex.

from curvlab.enumeration import g8
from curvlab.graph import Graph, complete_bipartite, complete_graph
from curvlab.outerplanar import (
    classify_edge,
    combinatorial_curvature,
    embed,
    is_outerplanar,
    suppress_degree2,
    suppression_sites,
)

for name, g in [("K4", complete_graph(4)), ("K2,3", complete_bipartite(2, 3))]:
    res = is_outerplanar(g)
    print(name, "outerplanar:", bool(res), "minor:", res.minor.kind,
          [sorted(s) for s in res.minor.branch_sets])

# G8: a square whose four sides each carry a triangle.
emb = embed(g8())
print("G8 outer cycle", emb.outer_cycle)
print("G8 inner faces", emb.inner_faces())
print("central square edges:", [classify_edge(emb, e) for e in [(0, 1), (1, 2), (2, 3), (0, 3)]])
print("phi:", [str(combinatorial_curvature(emb, v)) for v in range(8)])

# Two triangles sharing a vertex.  The outer boundary is a closed walk
# through the cut vertex, and that vertex sees the outer face once.
bowtie = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
emb = embed(bowtie)
print("bowtie outer walk", emb.outer_walk, "phi(0) =", combinatorial_curvature(emb, 0))

# Suppression: drop a degree-2 vertex of a 4-face and join its neighbors.
house = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4)])
print("house suppression sites", suppression_sites(house))
s = suppress_degree2(house, 2)
print("after suppressing 2:", s.graph.edges, "new edge", s.new_edge, "relabel", s.relabel)
