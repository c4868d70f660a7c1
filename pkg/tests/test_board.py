import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdqueens.board import (
    BoardError,
    BoardSpec,
    attack_neighbors,
    attacks,
    coord_to_index,
    directions,
    enumerate_lines,
    index_to_coord,
)

from oracles import collinear_classes, literal_attack


@pytest.mark.parametrize(
    "n,d,coords,expected",
    [(3, 2, (1, 1), 0), (3, 2, (3, 3), 8), (3, 3, (2, 1, 3), 19)],
)
def test_coord_to_index(n, d, coords, expected):
    # (2,1,3) on n=3: 1*1 + 0*3 + 2*9
    assert coord_to_index(BoardSpec(n, d), coords) == expected
    assert index_to_coord(BoardSpec(n, d), expected) == coords


@pytest.mark.parametrize("coords", [(0, 1), (1, 4), (1, 1, 1), (2,)])
def test_coord_to_index_rejects_bad_coords(coords):
    with pytest.raises(BoardError):
        coord_to_index(BoardSpec(3, 2), coords)


def test_board_spec_validation():
    with pytest.raises(BoardError):
        BoardSpec(0, 2)
    with pytest.raises(BoardError):
        BoardSpec(3, 0)
    assert BoardSpec(4, 3).num_squares == 64


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 4), st.data())
def test_index_round_trip(n, d, data):
    spec = BoardSpec(n, d)
    idx = data.draw(st.integers(0, spec.num_squares - 1))
    assert coord_to_index(spec, index_to_coord(spec, idx)) == idx


def test_index_bijection_small_boards():
    for n, d in [(1, 3), (2, 4), (3, 3), (5, 2)]:
        spec = BoardSpec(n, d)
        seen = {coord_to_index(spec, c) for c in itertools.product(range(1, n + 1), repeat=d)}
        assert seen == set(range(spec.num_squares))


@pytest.mark.parametrize("d,count", [(1, 1), (2, 4), (3, 13), (4, 40), (5, 121), (6, 364)])
def test_direction_count(d, count):
    dirs = directions(d)
    assert len(dirs) == count == (3 ** d - 1) // 2
    assert dirs == sorted(dirs)
    assert all(next(e for e in x.eps if e) == 1 for x in dirs)


@pytest.mark.parametrize(
    "n,d,a,b,expected",
    [
        (3, 2, (1, 1), (2, 2), True),
        (5, 3, (1, 2, 3), (1, 2, 5), True),
        (3, 3, (1, 1, 1), (2, 3, 2), False),
        (3, 3, (2, 2, 2), (2, 2, 2), False),
    ],
)
def test_attacks_examples(n, d, a, b, expected):
    assert attacks(BoardSpec(n, d), a, b) is expected


@pytest.mark.parametrize("n,d", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)])
def test_attacks_matches_literal_scan(n, d):
    spec = BoardSpec(n, d)
    squares = list(itertools.product(range(1, n + 1), repeat=d))
    for a in squares:
        for b in squares:
            assert attacks(spec, a, b) == literal_attack(n, d, a, b)


def test_attacks_accepts_square_objects():
    spec = BoardSpec(4, 2)
    assert attacks(spec, spec.square((1, 1)), spec.square((4, 4)))


def test_lines_examples():
    assert enumerate_lines(BoardSpec(1, 3)) == []
    assert len(enumerate_lines(BoardSpec(3, 2))) == 12
    # frozen from the component oracle in tests/oracles.py
    assert len(enumerate_lines(BoardSpec(3, 3))) == 109


@pytest.mark.parametrize("n,d", [(1, 2), (2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (4, 3), (3, 4)])
def test_lines_match_collinear_oracle(n, d):
    spec = BoardSpec(n, d)
    got = {(line.direction.eps, frozenset(s.coords for s in line.squares)) for line in enumerate_lines(spec)}
    assert got == set(collinear_classes(n, d))


@pytest.mark.parametrize("n,d", [(3, 2), (4, 3), (3, 4)])
def test_line_structure(n, d):
    spec = BoardSpec(n, d)
    lines = enumerate_lines(spec)
    keys = [(line.direction.eps, line.squares[0].index) for line in lines]
    assert keys == sorted(keys)
    for line in lines:
        assert len(line) >= 2
        eps = line.direction.eps
        for p, q in zip(line.squares, line.squares[1:]):
            assert tuple(b - a for a, b in zip(p.coords, q.coords)) == eps
        before = tuple(a - e for a, e in zip(line.squares[0].coords, eps))
        after = tuple(a + e for a, e in zip(line.squares[-1].coords, eps))
        assert not spec.contains(before) and not spec.contains(after)


@pytest.mark.parametrize("n,d", [(3, 2), (4, 2), (3, 3), (4, 3)])
def test_line_partition_of_attacking_pairs(n, d):
    spec = BoardSpec(n, d)
    count = {}
    for line in enumerate_lines(spec):
        for p, q in itertools.combinations(line.indices, 2):
            key = (min(p, q), max(p, q))
            count[key] = count.get(key, 0) + 1
    squares = spec.squares()
    for p, q in itertools.combinations(squares, 2):
        hits = count.get((p.index, q.index), 0)
        assert hits == (1 if attacks(spec, p, q) else 0)


def test_attack_neighbors_examples():
    assert [s.coords for s in attack_neighbors(BoardSpec(2, 2), (1, 1))] == [(2, 1), (1, 2), (2, 2)]
    assert len(attack_neighbors(BoardSpec(3, 2), (2, 2))) == 8


@pytest.mark.parametrize("n,d", [(3, 3), (4, 3), (3, 4)])
def test_attack_neighbors_against_pairwise(n, d):
    spec = BoardSpec(n, d)
    squares = spec.squares()
    for q in squares:
        expected = [s.index for s in squares if literal_attack(n, d, q.coords, s.coords)]
        got = [s.index for s in attack_neighbors(spec, q)]
        assert got == expected


def test_attack_neighbors_symmetric():
    spec = BoardSpec(4, 3)
    nb = {s.index: {t.index for t in attack_neighbors(spec, s)} for s in spec.squares()}
    assert all(p in nb[q] for p in nb for q in nb[p])
