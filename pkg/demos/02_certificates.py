# # Lower-bound certificates
#
# Any integer coupling between the two mass distributions of an edge gives a
# lower bound on its curvature.  The same coupling can be turned into a signed
# coupling of the plain random walks whose four balance conditions are checked
# one by one.

import random

from curvlab.curvature import (
    StarCoupling,
    StarCouplingError,
    check_star_coupling,
    coupling_lower_bound,
    kappa_adjacent_detail,
    mass_pair,
    random_coupling,
    star_coupling_bound,
    star_coupling_from_sigma,
)
from curvlab.graph import Graph

# x = 0 has degree 3, y = 1 has degree 4 and they share the neighbor 2.
g = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (1, 5), (2, 4)])
mp = mass_pair(g, 0, 1)
print("lcm", mp.lcm, "c_x", mp.c_x, "c_y", mp.c_y)
print("mu_x", dict(mp.mu_x), "mu_y", dict(mp.mu_y))

# A hand-made coupling of cost 14 already proves positivity.
sigma = {(2, 4): 1, (1, 4): 1, (3, 4): 1, (3, 5): 3}
print("bound from the cost-14 coupling:", coupling_lower_bound(g, 0, 1, sigma))

exact = kappa_adjacent_detail(g, 0, 1)
print("exact curvature:", exact.kappa, "optimal cost", exact.min_cost)

# Random feasible couplings never beat the optimum.
rng = random.Random(1)
bounds = sorted(coupling_lower_bound(g, 0, 1, random_coupling(mp, rng)) for _ in range(10))
print("random coupling bounds:", [str(b) for b in bounds])

# The signed coupling built from the optimal one certifies the same number.
B = star_coupling_from_sigma(g, 0, 1, exact.coupling)
for (u, v), b in B.values.items():
    print(f"  B({u},{v}) = {b}")
print("certificate bound:", star_coupling_bound(g, B))

# Breaking the zero-sum condition is caught and reported by number.
broken = dict(B.values)
broken[(2, 2)] = broken[(2, 2)] - 1 if (2, 2) in broken else -1
try:
    check_star_coupling(g, StarCoupling(0, 1, broken))
except StarCouplingError as exc:
    print("rejected, condition", exc.condition, "-", exc)
