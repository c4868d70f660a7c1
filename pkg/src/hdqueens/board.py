"""Geometry of the d-dimensional queens board.

Squares are addressed externally by 1-based coordinate tuples and
internally by their mixed-radix index ``sum((a_i - 1) * n**(i - 1))``, so the
first coordinate varies fastest.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union


class BoardError(ValueError):
    """A coordinate, index or board size outside the valid domain."""


@dataclass(frozen=True)
class BoardSpec:
    n: int
    d: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not isinstance(self.d, int):
            raise BoardError(f"board size must be integers, got n={self.n!r}, d={self.d!r}")
        if self.n < 1 or self.d < 1:
            raise BoardError(f"board needs n >= 1 and d >= 1, got n={self.n}, d={self.d}")

    @property
    def num_squares(self) -> int:
        return self.n ** self.d

    @cached_property
    def strides(self) -> tuple[int, ...]:
        return tuple(self.n ** i for i in range(self.d))

    def square(self, coords: Sequence[int]) -> "Square":
        return Square(tuple(coords), coord_to_index(self, coords))

    def square_at(self, index: int) -> "Square":
        return Square(index_to_coord(self, index), index)

    def squares(self) -> list["Square"]:
        return [self.square_at(i) for i in range(self.num_squares)]

    def contains(self, coords: Sequence[int]) -> bool:
        return len(coords) == self.d and all(1 <= a <= self.n for a in coords)


@dataclass(frozen=True, order=True)
class Square:
    coords: tuple[int, ...]
    index: int


SquareLike = Union[Square, Sequence[int]]


def _coords(sq: SquareLike) -> tuple[int, ...]:
    return sq.coords if isinstance(sq, Square) else tuple(sq)


@dataclass(frozen=True, order=True)
class Direction:
    eps: tuple[int, ...]

    def __post_init__(self):
        nz = [e for e in self.eps if e != 0]
        if not nz or any(e not in (-1, 0, 1) for e in self.eps):
            raise BoardError(f"invalid direction {self.eps}")
        if nz[0] != 1:
            raise BoardError(f"direction {self.eps} is not canonical (first nonzero must be +1)")

    @property
    def support(self) -> int:
        return sum(1 for e in self.eps if e)


@dataclass(frozen=True)
class AttackLine:
    direction: Direction
    squares: tuple[Square, ...]

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(s.index for s in self.squares)

    def __len__(self):
        return len(self.squares)


def coord_to_index(spec: BoardSpec, coords: Sequence[int]) -> int:
    if len(coords) != spec.d:
        raise BoardError(f"expected {spec.d} coordinates, got {len(coords)}: {tuple(coords)}")
    idx = 0
    for a, stride in zip(coords, spec.strides):
        if not 1 <= a <= spec.n:
            raise BoardError(f"coordinate {a} outside [1, {spec.n}] in {tuple(coords)}")
        idx += (a - 1) * stride
    return idx


def index_to_coord(spec: BoardSpec, index: int) -> tuple[int, ...]:
    if not 0 <= index < spec.num_squares:
        raise BoardError(f"index {index} outside [0, {spec.num_squares})")
    out = []
    for _ in range(spec.d):
        index, r = divmod(index, spec.n)
        out.append(r + 1)
    return tuple(out)


def directions(d: int) -> list[Direction]:
    """All canonical attack directions for dimension ``d``, lexicographically ordered."""
    if d < 1:
        raise BoardError(f"dimension must be >= 1, got {d}")
    out = []
    for eps in itertools.product((-1, 0, 1), repeat=d):
        nz = next((e for e in eps if e), 0)
        if nz == 1:
            out.append(Direction(eps))
    return out


def attacks(spec: BoardSpec, q1: SquareLike, q2: SquareLike) -> bool:
    a, b = _coords(q1), _coords(q2)
    if a == b:
        return False
    step = 0
    for ai, bi in zip(a, b):
        diff = abs(ai - bi)
        if diff == 0:
            continue
        if step == 0:
            step = diff
        elif diff != step:
            return False
    return True


def _line_from(spec: BoardSpec, start: tuple[int, ...], eps: tuple[int, ...]) -> list[tuple[int, ...]]:
    pts = []
    cur = start
    while spec.contains(cur):
        pts.append(cur)
        cur = tuple(c + e for c, e in zip(cur, eps))
    return pts


def enumerate_lines(spec: BoardSpec) -> list[AttackLine]:
    """Maximal attack lines with at least two squares.

    Ordered by direction, then by the index of the line's starting square
    (the end from which the direction vector walks the line).
    """
    lines = []
    for direction in directions(spec.d):
        eps = direction.eps
        for idx in range(spec.num_squares):
            start = index_to_coord(spec, idx)
            before = tuple(c - e for c, e in zip(start, eps))
            if spec.contains(before):
                continue
            pts = _line_from(spec, start, eps)
            if len(pts) >= 2:
                lines.append(AttackLine(direction, tuple(spec.square(p) for p in pts)))
    return lines


def attack_neighbors(spec: BoardSpec, q: SquareLike) -> list[Square]:
    base = _coords(q)
    if not spec.contains(base):
        raise BoardError(f"square {base} is not on the ({spec.n},{spec.d})-board")
    found = set()
    for direction in directions(spec.d):
        for sign in (1, -1):
            cur = base
            while True:
                cur = tuple(c + sign * e for c, e in zip(cur, direction.eps))
                if not spec.contains(cur):
                    break
                found.add(coord_to_index(spec, cur))
    return [spec.square_at(i) for i in sorted(found)]


def line_key(spec: BoardSpec, coords: Sequence[int], eps: Sequence[int]) -> tuple[int, ...]:
    """Starting square of the line through ``coords`` along ``eps``."""
    back = min(a - 1 if e == 1 else spec.n - a for a, e in zip(coords, eps) if e)
    return tuple(a - back * e for a, e in zip(coords, eps))


def adjacency_masks(spec: BoardSpec, lines: Iterable[AttackLine] | None = None) -> list[int]:
    """Attack graph as one bitmask of neighbours per square index."""
    if lines is None:
        lines = enumerate_lines(spec)
    adj = [0] * spec.num_squares
    for line in lines:
        mask = 0
        for i in line.indices:
            mask |= 1 << i
        for i in line.indices:
            adj[i] |= mask
    for i in range(spec.num_squares):
        adj[i] &= ~(1 << i)
    return adj
