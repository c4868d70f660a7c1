"""
Modular constructions
=====================

Full solutions, one queen per last-axis line, from a linear rule mod n.
"""

# %%
import numpy as np

from hdqueens import BoardSpec, verify
from hdqueens.heuristics import (
    ModularScheme,
    full_solution_guaranteed,
    greedy_random,
    modular_construct,
    search_scheme,
)

# %%
# The classic 5-queens answer: column = 1 + 2*(row-1) mod 5.
p = modular_construct(ModularScheme(5, 2, (2,), 0))
board = np.zeros((5, 5), dtype=int)
for x, y in p.queens:
    board[y - 1, x - 1] = 1
print(board)

# %%
# A full solution is guaranteed when n shares no factor with (2^d - 1)!.
for n, d in [(5, 2), (7, 2), (11, 3), (13, 3), (17, 4), (5, 3), (6, 2)]:
    print((n, d), full_solution_guaranteed(n, d))

# %%
# The scan over coefficient tuples finds a valid rule quickly when one exists.
for n, d in [(11, 3), (13, 3), (17, 4)]:
    scheme = search_scheme(n, d)
    q = modular_construct(scheme)
    print((n, d), scheme.coeffs, len(q), "queens, conflicts:", len(verify(q)))

# %%
# On boards without a full solution the scan comes back empty; random greedy
# still gives a valid, if weaker, placement.
print(search_scheme(4, 2))
print(len(greedy_random(BoardSpec(4, 2), seed=0, restarts=50)))
print(len(greedy_random(BoardSpec(6, 3), seed=0, restarts=50)), "on (6,3), optimum 21")
