"""Build coined walks and check the edge-space form of each step.

A coined walk lives on coin x walker space and advances by S (C x 1).
The same dynamics can be written on the span of directed edges; here we
build both forms and confirm they agree to machine precision.
"""

import numpy as np

from qwl import graphs, walks
from qwl.rng import seeded_unitary

print("== cycle walk on 8 vertices ==")
w = walks.cycle_walk(8)
print(f"coin dim {w.coin_dim}, walker dim {w.walker_dim}, shift order {walks.shift_order(w)}")
s = walks.shift_matrix(w)
print("shift is a permutation:", np.all((s == 0) | (s == 1)))

print("\n== 2d lattice, 3 x 3 ==")
lat = walks.lattice_walk(3, 2)
print(f"coin dim {lat.coin_dim}, walker dim {lat.walker_dim}, shift order {walks.shift_order(lat)}")
a = graphs.adjacency(lat.graph)
print("every vertex has degree", int(a.real.sum(axis=0)[0]))

print("\n== complete graph on 4 vertices, 3 coin results ==")
k4 = walks.example_walk()
print(f"shift order {walks.shift_order(k4)} (each coin result is a perfect matching)")
vals = np.linalg.eigvalsh(graphs.adjacency(k4.graph))
print("adjacency spectrum:", np.round(vals, 10))

print("\n== edge-space equivalence ==")
for name, walk in [("cycle:8", w), ("lattice:3,2", lat), ("example", k4)]:
    coin = seeded_unitary(walk.coin_dim, 7)
    res = walks.intertwining_residual(walk, coin)
    print(f"{name:12s} chi S (C x 1) = W C~ chi residual: {res:.3e}")
