import itertools
import re
import warnings
from pathlib import Path

import numpy as np
import pytest
from scipy.optimize import Bounds, LinearConstraint, milp

from hdqueens.board import BoardSpec, attacks, index_to_coord
from hdqueens.bounds import InequalityKind, UnavailableBoundError
from hdqueens.model import (
    Family,
    IpModel,
    ModelError,
    Objective,
    Sense,
    Variant,
    WarmstartError,
    build,
    cut_family,
    emit_dimacs,
    emit_lp,
    emit_warmstart,
    read_dimacs,
)
from hdqueens.solver import Placement

from oracles import all_squares, collinear_classes

GOLDEN = Path(__file__).parent / "golden"


def parse_lp(text):
    """Tiny reader for the dialect emit_lp writes: rows of unit coefficients."""
    sections = re.split(r"^(Maximize|Minimize|Subject To|Binaries|End)\s*$", text, flags=re.M)
    body = dict(zip(sections[1::2], sections[2::2]))
    binaries = body["Binaries"].split()
    rows = []
    for match in re.finditer(r"^ (\w+): (.*?)(<=|>=|=) (\d+)$", body["Subject To"], flags=re.M | re.S):
        name, expr, sense, rhs = match.groups()
        names = [t for t in expr.replace("+", " ").split() if t]
        rows.append((name, names, sense, int(rhs)))
    return ("Maximize" in body), binaries, rows


def solve_lp_text(text):
    maximize, names, rows = parse_lp(text)
    col = {v: i for i, v in enumerate(names)}
    a = np.zeros((len(rows), len(names)))
    lo, hi = [], []
    for r, (_, vars_, sense, rhs) in enumerate(rows):
        for v in vars_:
            a[r, col[v]] = 1
        lo.append(-np.inf if sense == "<=" else rhs)
        hi.append(np.inf if sense == ">=" else rhs)
    c = -np.ones(len(names)) if maximize else np.zeros(len(names))
    cons = [LinearConstraint(a, lo, hi)] if rows else []
    return milp(c, constraints=cons, integrality=np.ones(len(names)), bounds=Bounds(0, 1))


def test_base_counts():
    m = build(BoardSpec(3, 2))
    assert m.num_variables == 9
    assert m.counts()["line"] == 12 and len(m.constraints) == 12
    assert m.objective is Objective.MAXIMIZE_COUNT and m.cardinality is None


def test_trivial_board():
    m = build(BoardSpec(1, 1))
    assert m.num_variables == 1 and m.constraints == []
    res = solve_lp_text(emit_lp(m))
    assert round(-res.fun) == 1


def test_inf_variant():
    m = build(BoardSpec(5, 3), Variant(infeasibility_at=14))
    assert m.objective is Objective.FEASIBILITY_ONLY
    assert m.cardinality == (Sense.EQ, 14)
    assert m.name == "inf_base"
    text = emit_lp(m)
    assert re.search(r"^ card_0: .* = 14$", text, flags=re.M | re.S)
    assert text.count("card_0") == 1


def test_model_invariants():
    spec = BoardSpec(3, 2)
    with pytest.raises(ValueError):
        IpModel(spec, [], Objective.FEASIBILITY_ONLY, None)
    with pytest.raises(ValueError):
        IpModel(spec, [], Objective.MAXIMIZE_COUNT, (Sense.EQ, 3))


@pytest.mark.parametrize("n,d", [(3, 2), (4, 3), (3, 4)])
def test_lines_cover_each_attack_line_once(n, d):
    m = build(BoardSpec(n, d))
    got = [frozenset(index_to_coord(m.spec, s) for s in ineq.squares) for ineq in m.inequalities(InequalityKind.LINE)]
    assert len(got) == len(set(got))
    assert set(got) == {g for _, g in collinear_classes(n, d)}


def test_variant_families():
    spec = BoardSpec(4, 4)
    for family, kinds in [
        (Family.BASE, set()),
        (Family.CUBE, {"cube"}),
        (Family.STAR, {"star"}),
        (Family.CUBE_STAR, {"cube", "star"}),
        (Family.ALL, {"cube", "star", "layer", "subsolution"}),
    ]:
        counts = build(spec, Variant(family)).counts()
        assert {k for k, v in counts.items() if v and k != "line"} == kinds


def test_all_variant_warns_below_four_dimensions():
    with pytest.warns(UserWarning):
        cut_family(BoardSpec(2, 3), Family.ALL)


def test_all_variant_names_missing_bound():
    with pytest.raises(UnavailableBoundError) as info:
        build(BoardSpec(8, 5), Variant(Family.ALL))
    assert (info.value.n, info.value.d) == (8, 4)


def test_h_lists_restrict_families():
    spec = BoardSpec(5, 3)
    m = build(spec, Variant(Family.CUBE_STAR, cube_h=[2], star_h=[1]))
    assert m.counts()["cube"] == 27 and m.counts()["star"] == 27


# frozen statistics for instances too large to solve here; cross-checked against
# closed-form family counts and the collinear line oracle when first recorded
LARGE_STATS = {
    (7, 3, Family.BASE): {"line": 973, "cube": 0, "star": 0, "subsolution": 0, "layer": 0},
    (7, 3, Family.CUBE_STAR): {"line": 973, "cube": 441, "star": 153, "subsolution": 0, "layer": 0},
    (8, 3, Family.CUBE): {"line": 1324, "cube": 784, "star": 0, "subsolution": 0, "layer": 0},
    (6, 4, Family.ALL): {"line": 13560, "cube": 979, "star": 272, "subsolution": 978, "layer": 24},
    (7, 4, Family.ALL): {"line": 23400, "cube": 2275, "star": 707, "subsolution": 2274, "layer": 28},
}


@pytest.mark.parametrize("key", list(LARGE_STATS))
def test_large_instance_statistics(key):
    n, d, family = key
    assert build(BoardSpec(n, d), Variant(family)).counts() == LARGE_STATS[key]


@pytest.mark.parametrize("name,n,d", [("base_n1_d1", 1, 1), ("base_n3_d2", 3, 2), ("base_n5_d3", 5, 3)])
def test_lp_golden(name, n, d):
    assert emit_lp(build(BoardSpec(n, d))) == (GOLDEN / f"{name}.lp").read_text()


def test_lp_golden_names():
    text = (GOLDEN / "base_n3_d2.lp").read_text()
    _, names, rows = parse_lp(text)
    assert [r[0] for r in rows] == [f"line_{i}" for i in range(12)]
    assert names == [f"x_{a}_{b}" for b in range(1, 4) for a in range(1, 4)]


def test_lp_deterministic():
    spec = BoardSpec(4, 4)
    v = Variant(Family.ALL)
    assert emit_lp(build(spec, v)) == emit_lp(build(spec, v))


@pytest.mark.parametrize("n,d,opt", [(3, 2, 2), (4, 2, 4), (3, 3, 4), (4, 3, 7)])
def test_lp_solves_to_known_optimum(n, d, opt):
    res = solve_lp_text(emit_lp(build(BoardSpec(n, d))))
    assert res.success and round(-res.fun) == opt


@pytest.mark.parametrize("n,d,family,opt", [(4, 3, Family.CUBE_STAR, 7), (3, 4, Family.ALL, 6)])
def test_strengthened_lp_same_optimum(n, d, family, opt):
    res = solve_lp_text(emit_lp(build(BoardSpec(n, d), Variant(family))))
    assert round(-res.fun) == opt


@pytest.mark.parametrize("n,d,k", [(3, 3, 4), (4, 3, 7)])
def test_inf_lp_is_infeasible_exactly_above_optimum(n, d, k):
    spec = BoardSpec(n, d)
    above = solve_lp_text(emit_lp(build(spec, Variant(infeasibility_at=k + 1))))
    at = solve_lp_text(emit_lp(build(spec, Variant(infeasibility_at=k))))
    assert above.status == 2  # infeasible
    assert at.success


def _independent_sets(n, d):
    squares = all_squares(n, d)
    for r in range(len(squares) + 1):
        found = False
        for combo in itertools.combinations(squares, r):
            if all(not attacks(BoardSpec(n, d), a, b) for a, b in itertools.combinations(combo, 2)):
                found = True
                yield combo
        if not found:
            return


@pytest.mark.parametrize("n,d", [(2, 2), (3, 2), (2, 3)])
def test_base_feasible_sets_are_placements(n, d):
    spec = BoardSpec(n, d)
    m = build(spec)
    rows = [set(c.ineq.squares) for c in m.constraints]
    feasible = set()
    for bits in itertools.product((0, 1), repeat=spec.num_squares):
        chosen = {i for i, b in enumerate(bits) if b}
        if all(len(chosen & r) <= 1 for r in rows):
            feasible.add(frozenset(chosen))
    placements = {frozenset(spec.square(q).index for q in combo) for combo in _independent_sets(n, d)}
    assert feasible == placements


@pytest.mark.parametrize("n,d,family", [(3, 3, Family.CUBE_STAR), (2, 4, Family.ALL), (4, 2, Family.CUBE_STAR),
                                        (3, 4, Family.ALL), (4, 3, Family.CUBE_STAR)])
def test_cuts_hold_for_every_placement(n, d, family):
    spec = BoardSpec(n, d)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        cuts = cut_family(spec, family)
    assert cuts
    placements = [set(spec.square(q).index for q in combo) for combo in _independent_sets(n, d)] if n ** d <= 27 \
        else _maximal_placements(spec)
    for chosen in placements:
        assert all(c.holds(chosen) for c in cuts)


def _maximal_placements(spec, limit=20000):
    """Greedy-completed independent sets from many orders; cheap stand-in for full enumeration."""
    import random

    from hdqueens.board import adjacency_masks

    adj = adjacency_masks(spec)
    out = []
    rng = random.Random(0)
    for _ in range(limit // 10):
        order = list(range(spec.num_squares))
        rng.shuffle(order)
        chosen, blocked = set(), 0
        for v in order:
            if not blocked >> v & 1:
                chosen.add(v)
                blocked |= adj[v] | 1 << v
        out.append(chosen)
    return out


def test_dimacs_examples():
    num, edges = read_dimacs(emit_dimacs(BoardSpec(2, 2)))
    assert num == 4 and len(edges) == 6
    num, edges = read_dimacs(emit_dimacs(BoardSpec(1, 3)))
    assert num == 1 and edges == []


@pytest.mark.parametrize("n,d", [(3, 2), (3, 3), (4, 3)])
def test_dimacs_edges_are_attack_relation(n, d):
    spec = BoardSpec(n, d)
    num, edges = read_dimacs(emit_dimacs(spec))
    expected = {
        (i + 1, j + 1)
        for i, j in itertools.combinations(range(spec.num_squares), 2)
        if attacks(spec, index_to_coord(spec, i), index_to_coord(spec, j))
    }
    assert num == spec.num_squares
    assert set(edges) == expected and len(edges) == len(expected)
    assert all(i < j for i, j in edges)


def test_dimacs_deterministic_and_rejects_bad_input():
    assert emit_dimacs(BoardSpec(3, 3)) == emit_dimacs(BoardSpec(3, 3))
    with pytest.raises(ValueError):
        read_dimacs("p edge 2 1\n")
    with pytest.raises(ValueError):
        read_dimacs("x 1 2\n")


def test_warmstart_thirteen():
    spec = BoardSpec(5, 3)
    from hdqueens.solver import solve

    cert = solve(spec).best
    assert len(cert) == 13
    text = emit_warmstart(build(spec, Variant(warmstart=cert)))
    entries = [ln for ln in text.splitlines() if not ln.startswith("#")]
    assert len(entries) == 13 and all(ln.endswith(" 1") for ln in entries)


def test_warmstart_empty_and_conflict():
    spec = BoardSpec(3, 2)
    empty = emit_warmstart(build(spec, Variant(warmstart=Placement(spec, ()))))
    assert [ln for ln in empty.splitlines() if not ln.startswith("#")] == []
    bad = Placement(spec, ((1, 1), (2, 2)))
    with pytest.raises(WarmstartError) as info:
        emit_warmstart(build(spec, Variant(warmstart=bad)))
    assert info.value.pair == ((1, 1), (2, 2))
    with pytest.raises(ModelError):
        emit_warmstart(build(spec))
