"""
Valid inequalities and LP files
===============================

The cut families, what they add to the model, and the files handed to an
external MIP solver.
"""

# %%
import warnings
from collections import Counter

from hdqueens import BoardSpec
from hdqueens.bounds import cube_cliques, layer_ineqs, star_cliques
from hdqueens.model import Family, Variant, build, emit_dimacs, emit_lp

spec = BoardSpec(5, 3)

# %%
# A cube clique is the 2^d corners of a side-h sub-cube, plus its centre when h
# is even. Every pair attacks, so at most one queen fits.
c = cube_cliques(spec, 2)[0]
print([spec.square_at(i).coords for i in c.squares])

# %%
# A star clique is a centre square and its 2d axis neighbours at distance h.
s = star_cliques(spec, 1)[0]
print([spec.square_at(i).coords for i in s.squares])

# %%
# Layers cap each axis slice by the optimum one dimension down.
for ineq in layer_ineqs(BoardSpec(4, 4))[:3]:
    print(ineq.meta["axes"], ineq.meta["values"], "sum <=", ineq.rhs)

# %%
# Constraint counts per variant.
for family in Family:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        model = build(BoardSpec(4, 4), Variant(family))
    print(f"{model.name:10s}", model.counts())

# %%
# The LP file itself. A small board keeps the listing short.
print(emit_lp(build(BoardSpec(3, 2))))

# %%
# The feasibility variant fixes the count at k+1 and drops the objective.
text = emit_lp(build(spec, Variant(infeasibility_at=14)))
print(text[text.index(" card_0"):].splitlines()[0][:60], "...")

# %%
# The same attack graph in DIMACS form, for clique/MIS codes.
dimacs = emit_dimacs(BoardSpec(3, 3)).splitlines()
print(next(line for line in dimacs if line.startswith("p")), Counter(line[0] for line in dimacs))
