"""
Attack geometry on d-dimensional boards
=======================================

How squares, directions and attack lines fit together.
"""

# %%
# A board is an n^d hypercube. Squares use 1-based coordinates, flattened with
# the first coordinate varying fastest.
import numpy as np

from hdqueens import BoardSpec, attacks, directions, enumerate_lines
from hdqueens.board import adjacency_masks

spec = BoardSpec(4, 3)
print(spec, spec.num_squares, "squares")
print(spec.square((2, 1, 3)))

# %%
# Two squares attack when every nonzero coordinate difference has the same size.
print(attacks(spec, (1, 1, 1), (3, 3, 1)))   # planar diagonal
print(attacks(spec, (1, 1, 1), (4, 4, 4)))   # space diagonal
print(attacks(spec, (1, 1, 1), (2, 3, 1)))   # knight-like offset, no attack

# %%
# Only half the sign vectors are needed, since eps and -eps span the same line.
for d in range(1, 7):
    print(d, len(directions(d)), (3 ** d - 1) // 2)

# %%
# The maximal lines of length >= 2 partition the attacking pairs.
lines = enumerate_lines(spec)
sizes, counts = np.unique([len(line) for line in lines], return_counts=True)
print(len(lines), "lines; by length:", dict(zip(sizes.tolist(), counts.tolist())))

# %%
# Degree of every square in the attack graph. Centre squares see far more of
# the board than corners, which is why greedy placements start at corners.
adj = adjacency_masks(spec)
deg = np.array([bin(m).count("1") for m in adj]).reshape((spec.n,) * spec.d, order="F")
print("corner", deg[0, 0, 0], "centre", deg[1, 1, 1])
print("mean degree %.2f of %d other squares" % (deg.mean(), spec.num_squares - 1))
