# # Enumerating outerplanar graphs
#
# 2-connected outerplanar graphs are polygon dissections.  Graphs of minimum
# degree two are glued together from those blocks, with bridges allowed
# between them.  Everything is deduplicated with canonical graph6 codes.

import time

from curvlab.enumeration import (
    enumerate_2connected_outerplanar,
    enumerate_maximal_outerplanar,
    enumerate_outerplanar_min_deg2,
)
from curvlab.graph import canonicalize, encode_graph6

print(f"{'n':>3} {'2-conn':>7} {'maximal':>8} {'min deg 2':>10}  seconds")
t0 = time.perf_counter()
for n in range(3, 11):
    a = len(enumerate_2connected_outerplanar(n))
    b = len(enumerate_maximal_outerplanar(n))
    c = len(enumerate_outerplanar_min_deg2(n))
    print(f"{n:>3} {a:>7} {b:>8} {c:>10}  {time.perf_counter() - t0:6.1f}")

# Canonical labels come with automorphism orbits.
for g in enumerate_outerplanar_min_deg2(6)[:5]:
    c = canonicalize(g)
    print(encode_graph6(g), "orbits", [sorted(o) for o in c.orbits])
