"""Primal constructions: linear modular schemes and randomized greedy."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

import numpy as np

from .board import BoardSpec, adjacency_masks, directions
from .solver import Placement, greedy_initial


@dataclass(frozen=True)
class ModularScheme:
    """Queen at ``(x_1..x_{d-1}, 1 + (sum c_j (x_j - 1) + offset) mod n)`` for every prefix."""

    n: int
    d: int
    coeffs: tuple[int, ...]
    offset: int = 0

    def __post_init__(self):
        if len(self.coeffs) != self.d - 1:
            raise ValueError(f"need {self.d - 1} coefficients for d={self.d}, got {len(self.coeffs)}")
        if self.n > 1 and any(not 1 <= c <= self.n - 1 for c in self.coeffs):
            raise ValueError(f"coefficients must lie in [1, {self.n - 1}]")
        if not 0 <= self.offset < self.n:
            raise ValueError(f"offset must lie in [0, {self.n - 1}]")


def full_solution_guaranteed(n: int, d: int) -> bool:
    """Whether gcd(n, (2^d - 1)!) = 1, the classical existence condition."""
    return math.gcd(n, math.factorial(2 ** d - 1)) == 1


def _scheme_coords(scheme: ModularScheme) -> np.ndarray:
    n, d = scheme.n, scheme.d
    if d == 1:
        return np.array([[1 + scheme.offset % n]], dtype=np.int64)
    grids = np.meshgrid(*[np.arange(n)] * (d - 1), indexing="ij")
    # first coordinate fastest, so rows come out in square-index order
    prefix = np.stack([g.ravel() for g in reversed(grids)], axis=1)
    last = (prefix @ np.asarray(scheme.coeffs, dtype=np.int64) + scheme.offset) % n
    return np.column_stack([prefix, last]) + 1


def modular_construct(scheme: ModularScheme) -> Placement:
    """All n**(d-1) queens of the scheme; they are not checked for attacks."""
    coords = _scheme_coords(scheme)
    return Placement(BoardSpec(scheme.n, scheme.d), tuple(map(tuple, coords.tolist())))


def _line_ids(coords: np.ndarray, n: int, eps: np.ndarray) -> np.ndarray:
    nz = eps != 0
    back = np.where(eps[nz] == 1, coords[:, nz] - 1, n - coords[:, nz]).min(axis=1)
    start = coords - back[:, None] * eps
    return (start - 1) @ (n ** np.arange(coords.shape[1], dtype=np.int64))


def _attack_free(coords: np.ndarray, n: int, dirs: list[np.ndarray]) -> bool:
    for eps in dirs:
        ids = _line_ids(coords, n, eps)
        if np.unique(ids).size != ids.size:
            return False
    return True


def search_scheme(n: int, d: int, budget: int = 10 ** 6) -> ModularScheme | None:
    """First attack-free scheme in lexicographic coefficient order, offset 0.

    Returns None when no candidate among the first ``budget`` works.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    # a function graph never has two queens on a pure last-axis line
    dirs = [np.array(x.eps) for x in directions(d) if any(x.eps[:-1])]
    values = range(1, n) if n > 1 else range(1, 2)
    for tried, coeffs in enumerate(itertools.product(values, repeat=d - 1)):
        if tried >= budget:
            break
        scheme = ModularScheme(n, d, coeffs, 0)
        if _attack_free(_scheme_coords(scheme), n, dirs):
            return scheme
    return None


def greedy_random(spec: BoardSpec, seed: int = 0, restarts: int = 1) -> Placement:
    """Best of ``restarts`` shuffled greedy passes; ties go to the lexicographically smallest placement."""
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    adj = adjacency_masks(spec)
    rng = random.Random(seed)
    best = None
    for _ in range(restarts):
        cand = greedy_initial(spec, rng.getrandbits(64), adj)
        key = (-len(cand), cand.indices())
        if best is None or key < best[0]:
            best = (key, cand)
    return best[1]
