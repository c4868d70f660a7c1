"""
Exact optimum by branch and bound
=================================

Maximum non-attacking queens on the desk-scale boards, plus the
"k+1 is impossible" check.
"""

# %%
import time

from hdqueens import BoardSpec, known, solve, verify
from hdqueens.solver import SolveLimits, aggregation_presolve, prove_infeasible

boards = [(3, 3), (4, 3), (5, 3), (3, 4), (4, 4), (3, 5)]

# %%
# Solve each board and check the answer against the registry of known optima.
for n, d in boards:
    t = time.perf_counter()
    res = solve(BoardSpec(n, d))
    assert verify(res.best) == []
    print(f"({n},{d}) {res.primal:3d}  registry {known(n, d)}  nodes {res.nodes:6d}  {time.perf_counter() - t:.2f}s")

# %%
# One certificate in full. Queens are sorted by last coordinate, then earlier ones.
best = solve(BoardSpec(4, 3)).best
print(best.queens)

# %%
# Proving infeasibility of k+1 is the same search with a target; no primal
# improvement is needed, only a bound that never reaches k+1.
for n, d, k in [(3, 3, 4), (4, 3, 7), (5, 3, 13)]:
    print((n, d), k + 1, prove_infeasible(BoardSpec(n, d), k + 1))

# %%
# When k+1 exceeds the number of axis-parallel lines, summing one line family
# settles it and no search is run.
print(aggregation_presolve(BoardSpec(11, 3), 122), aggregation_presolve(BoardSpec(5, 3), 14))

# %%
# With limits the solver reports the best placement so far and a valid bound.
res = solve(BoardSpec(6, 3), limits=SolveLimits(time_limit=2.0))
print(res.status.value, res.primal, "<= Q <=", res.dual_bound)
