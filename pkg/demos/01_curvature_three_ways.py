# # Curvature of a vertex pair, three ways
#
# curvlab computes the Lin-Lu-Yau curvature exactly, as a Fraction.  Edges go
# through an integer transportation problem; any pair can also be handled by
# minimizing over integer 1-Lipschitz potentials, or by evaluating the lazy
# random walk curvature just below idleness 1.  The three should always agree.

from fractions import Fraction

from curvlab.curvature import (
    kappa_adjacent,
    kappa_adjacent_detail,
    kappa_alpha,
    kappa_limit_check,
    kappa_lipschitz,
    kappa_lipschitz_detail,
)
from curvlab.graph import complete_graph, cycle_graph, path_graph, star_graph

# Cycles first.  Short cycles are positively curved, from length 6 on the
# edge curvature is exactly zero.

for n in range(3, 9):
    g = cycle_graph(n)
    values = (kappa_adjacent(g, 0, 1), kappa_lipschitz(g, 0, 1), kappa_limit_check(g, 0, 1))
    print(f"C{n}: " + "  ".join(str(v) for v in values))

# The transport route also hands back the integer masses and an optimal
# coupling.  On a star the leaf has nothing to move, the center spreads over
# the other leaves.

res = kappa_adjacent_detail(star_graph(3), 0, 1)
print("star K1,3 center-leaf:", res.kappa)
print("  masses", dict(res.pair.mu_x), "->", dict(res.pair.mu_y), "cost", res.min_cost)

# The potential route works for pairs at any distance and returns the
# optimizing potential on N[x] and N[y].

lip = kappa_lipschitz_detail(path_graph(3), 0, 2)
print("P3 endpoints:", lip.kappa, "potential", lip.potential)

# Lazy curvature as a function of the idleness.  Past one half the ratio
# kappa_alpha / (1 - alpha) stops changing.

g = cycle_graph(5)
for alpha in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(9, 10)):
    k = kappa_alpha(g, 0, 1, alpha)
    print(f"C5 alpha={alpha}: kappa_alpha={k}, ratio={k / (1 - alpha)}")

print("K4 edge:", kappa_adjacent(complete_graph(4), 0, 1))
