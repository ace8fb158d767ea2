"""Graphs on n+1 vertices with any prescribed number of triangles up to C(n,3)."""

import random
from math import comb

from homrec import complement, complement_triangle_formula, construct_triangle_graph, direct_triangle_count

n = 130
rnd = random.Random(0)
for h in [0, comb(n, 3), *rnd.sample(range(comb(n - 1, 3), comb(n, 3)), 3)]:
    G = construct_triangle_graph(n, h)
    # G is the complement of a forest; count both ways
    print(h, G.order, direct_triangle_count(G), complement_triangle_formula(complement(G)))
