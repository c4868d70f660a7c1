"""Maximum sets of non-attacking queens on d-dimensional boards."""
from .board import (
    AttackLine,
    BoardError,
    BoardSpec,
    Direction,
    Square,
    attack_neighbors,
    attacks,
    coord_to_index,
    directions,
    enumerate_lines,
    index_to_coord,
)
from .bounds import (
    Exact,
    Inequality,
    InequalityKind,
    KnownValues,
    LowerBound,
    UnavailableBoundError,
    Unknown,
    cube_cliques,
    known,
    layer_ineqs,
    star_cliques,
    subsolution_ineqs,
)
from .heuristics import ModularScheme, greedy_random, modular_construct, search_scheme
from .model import Family, IpModel, Variant, build, emit_dimacs, emit_lp, emit_warmstart
from .solver import (
    Feasible,
    Infeasible,
    OptResult,
    Placement,
    SolveLimits,
    Status,
    Undecided,
    aggregation_presolve,
    greedy_initial,
    prove_infeasible,
    solve,
    verify,
)

__version__ = "0.1.0"
