"""Valid inequalities for the queens IP and the registry of known optima."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Union

from .board import BoardError, BoardSpec, coord_to_index, enumerate_lines


class InequalityKind(enum.Enum):
    LINE = "line"
    CUBE_CLIQUE = "cube"
    STAR_CLIQUE = "star"
    SUBSOLUTION = "subsolution"
    LAYER = "layer"

    @property
    def is_clique(self) -> bool:
        return self in (InequalityKind.LINE, InequalityKind.CUBE_CLIQUE, InequalityKind.STAR_CLIQUE)


@dataclass(frozen=True)
class Inequality:
    """``sum(x_s for s in squares) <= rhs`` over square indices."""

    kind: InequalityKind
    squares: tuple[int, ...]
    rhs: int
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if not self.squares:
            raise ValueError("inequality support must be nonempty")
        if len(set(self.squares)) != len(self.squares):
            raise ValueError(f"duplicate squares in {self.kind.value} inequality")
        if self.rhs < 1:
            raise ValueError(f"rhs must be positive, got {self.rhs}")
        if self.kind.is_clique and self.rhs != 1:
            raise ValueError(f"{self.kind.value} inequality must have rhs 1")

    def holds(self, chosen: set[int]) -> bool:
        return sum(1 for s in self.squares if s in chosen) <= self.rhs


class UnavailableBoundError(LookupError):
    """A bound family needs an exact optimum the registry does not hold."""

    def __init__(self, n: int, d: int):
        super().__init__(f"no exact Q_max value known for the ({n},{d})-board")
        self.n = n
        self.d = d


@dataclass(frozen=True)
class Exact:
    k: int


@dataclass(frozen=True)
class LowerBound:
    k: int


@dataclass(frozen=True)
class Unknown:
    pass


KnownValue = Union[Exact, LowerBound, Unknown]


class KnownValues:
    """Lookup table of known optima, seeded from a plain-text data file."""

    def __init__(self, entries: dict[tuple[int, int], KnownValue] | None = None):
        self._entries = dict(entries or {})

    @classmethod
    def parse(cls, text: str) -> "KnownValues":
        entries: dict[tuple[int, int], KnownValue] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ValueError(f"line {lineno}: expected 'n d status k', got {raw!r}")
            n, d, status, k = int(parts[0]), int(parts[1]), parts[2].lower(), int(parts[3])
            if status == "exact":
                entries[n, d] = Exact(k)
            elif status == "lower":
                entries[n, d] = LowerBound(k)
            else:
                raise ValueError(f"line {lineno}: unknown status {parts[2]!r}")
        return cls(entries)

    @classmethod
    def from_file(cls, path: str | Path) -> "KnownValues":
        return cls.parse(Path(path).read_text())

    @classmethod
    def default(cls) -> "KnownValues":
        text = resources.files("hdqueens").joinpath("data/known_values.txt").read_text()
        return cls.parse(text)

    def lookup(self, n: int, d: int) -> KnownValue:
        if n < 1 or d < 1:
            raise BoardError(f"board needs n >= 1 and d >= 1, got n={n}, d={d}")
        if n <= 2:
            return Exact(1)
        return self._entries.get((n, d), Unknown())

    def exact(self, n: int, d: int) -> int:
        value = self.lookup(n, d)
        if not isinstance(value, Exact):
            raise UnavailableBoundError(n, d)
        return value.k

    def items(self):
        return sorted(self._entries.items())


_DEFAULT: KnownValues | None = None


def default_registry() -> KnownValues:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = KnownValues.default()
    return _DEFAULT


def known(n: int, d: int) -> KnownValue:
    return default_registry().lookup(n, d)


def _support(spec: BoardSpec, points: Iterable[tuple[int, ...]]) -> tuple[int, ...]:
    return tuple(sorted(coord_to_index(spec, p) for p in points))


def line_ineqs(spec: BoardSpec) -> list[Inequality]:
    return [
        Inequality(InequalityKind.LINE, tuple(sorted(line.indices)), 1, {"direction": line.direction.eps})
        for line in enumerate_lines(spec)
    ]


def cube_cliques(spec: BoardSpec, h: int) -> list[Inequality]:
    """Corners of every axis-aligned cube with side ``h``; even ``h`` adds the centre."""
    n, d = spec.n, spec.d
    if not 1 <= h <= n - 1:
        raise BoardError(f"cube side h={h} outside [1, {n - 1}]")
    corners = list(itertools.product((0, h), repeat=d))
    out = []
    for anchor in itertools.product(range(1, n - h + 1), repeat=d):
        # anchors enumerated with the first coordinate fastest, matching index order
        s = anchor[::-1]
        pts = [tuple(si + ci for si, ci in zip(s, c)) for c in corners]
        if h % 2 == 0:
            pts.append(tuple(si + h // 2 for si in s))
        out.append(Inequality(InequalityKind.CUBE_CLIQUE, _support(spec, pts), 1, {"h": h, "anchor": s}))
    return out


def star_cliques(spec: BoardSpec, h: int) -> list[Inequality]:
    """A centre plus its 2d axis neighbours at distance ``h``."""
    n, d = spec.n, spec.d
    out = []
    if h < 1:
        return out
    for center in itertools.product(range(1 + h, n - h + 1), repeat=d):
        s = center[::-1]
        pts = [s]
        for i in range(d):
            for sign in (1, -1):
                p = list(s)
                p[i] += sign * h
                pts.append(tuple(p))
        out.append(Inequality(InequalityKind.STAR_CLIQUE, _support(spec, pts), 1, {"h": h, "center": s}))
    return out


def _subcube(spec: BoardSpec, anchor: tuple[int, ...], m: int) -> list[tuple[int, ...]]:
    return [tuple(a + o for a, o in zip(anchor, off)) for off in itertools.product(range(m), repeat=spec.d)]


def subsolution_ineqs(spec: BoardSpec, m: int, known: KnownValues | None = None) -> list[Inequality]:
    """One bound per contiguous ``m**d`` subcube, with rhs the optimum of the smaller board."""
    known = known or default_registry()
    if not 2 <= m < spec.n:
        raise BoardError(f"subcube size m={m} outside [2, {spec.n - 1}]")
    rhs = known.exact(m, spec.d)
    kind = InequalityKind.SUBSOLUTION
    out = []
    for anchor in itertools.product(range(1, spec.n - m + 2), repeat=spec.d):
        s = anchor[::-1]
        out.append(Inequality(kind, _support(spec, _subcube(spec, s, m)), rhs, {"m": m, "anchor": s}))
    return out


def _slices(spec: BoardSpec, axes: tuple[int, ...], values: tuple[int, ...]) -> list[tuple[int, ...]]:
    free = [i for i in range(spec.d) if i not in axes]
    pts = []
    for rest in itertools.product(range(1, spec.n + 1), repeat=len(free)):
        p = [0] * spec.d
        for i, v in zip(axes, values):
            p[i] = v
        for i, v in zip(free, rest):
            p[i] = v
        pts.append(tuple(p))
    return pts


def layer_ineqs(spec: BoardSpec, known: KnownValues | None = None, recursive: bool = False) -> list[Inequality]:
    """Bounds on every slice with ``depth`` coordinates fixed.

    Depth 1 (the n*d layers) needs the exact optimum for dimension d-1 and
    raises if it is missing.  With ``recursive`` deeper slices follow for as
    long as exact values exist and the slice keeps at least two free axes.
    """
    known = known or default_registry()
    n, d = spec.n, spec.d
    if d < 2:
        raise BoardError("layer inequalities need d >= 2")
    out = []
    max_depth = d - 2 if recursive else 1
    for depth in range(1, max(max_depth, 1) + 1):
        try:
            rhs = known.exact(n, d - depth)
        except UnavailableBoundError:
            if depth == 1:
                raise
            break
        for axes in itertools.combinations(range(d), depth):
            for values in itertools.product(range(1, n + 1), repeat=depth):
                pts = _slices(spec, axes, values)
                meta = {"axes": axes, "values": values, "depth": depth}
                out.append(Inequality(InequalityKind.LAYER, _support(spec, pts), rhs, meta))
    return out


def trivial_upper_bound(n: int, d: int) -> int:
    return n ** (d - 1)
