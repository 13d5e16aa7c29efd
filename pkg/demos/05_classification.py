# # The positively curved graphs
#
# Scan every connected outerplanar graph with minimum degree two up to 11
# vertices and keep those whose curvature is positive on every pair.

import tempfile
import time
from collections import Counter
from pathlib import Path

from curvlab.curvature import format_fraction
from curvlab.enumeration import classify_maximal_outerplanar, classify_positively_curved, write_dot_directory

t0 = time.perf_counter()
rep = classify_positively_curved(11)
print(f"classified in {time.perf_counter() - t0:.1f}s")
for n, count in rep.counts().items():
    print(f"  n={n:>2}: {count:>3} of {rep.scanned[n]}")
print("total", rep.total)

degrees = Counter(c.graph.max_degree() for c in rep.graphs)
print("max degree histogram", dict(sorted(degrees.items())))

# The largest ones, with their smallest edge curvature.
for c in rep.graphs:
    if c.n == 10:
        low = min(c.edge_kappa.values())
        print(c.graph6, "min edge curvature", format_fraction(low))

tri = classify_maximal_outerplanar(11)
print("triangulations by order", tri.counts())

out = Path(tempfile.mkdtemp()) / "dot"
paths = write_dot_directory(rep, out)
print(f"wrote {len(paths)} DOT files to {out}")
print(paths[-1].read_text())
