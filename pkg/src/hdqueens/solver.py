"""Exact maximum independent set search on the queens attack graph.

The search is a clique-cover branch and bound on bitsets (Python ints).  The
complement view is the classic coloring-bound max-clique scheme: every node
partitions its candidate squares into cliques of the attack graph, and any
placement extending the node can use at most one square per clique.
"""
from __future__ import annotations

import enum
import json
import logging
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .board import BoardError, BoardSpec, adjacency_masks, attacks, directions, enumerate_lines, line_key
from .bounds import Inequality

log = logging.getLogger(__name__)


class PlacementError(ValueError):
    """Malformed placement: wrong arity or repeated square."""


@dataclass(frozen=True)
class Placement:
    spec: BoardSpec
    queens: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        qs = [tuple(int(a) for a in q) for q in self.queens]
        for q in qs:
            if len(q) != self.spec.d:
                raise PlacementError(f"queen {q} has {len(q)} coordinates, board has d={self.spec.d}")
        seen = set()
        for q in qs:
            if q in seen:
                raise PlacementError(f"square {q} appears twice")
            seen.add(q)
        # reversed coordinates order queens exactly like square indices
        object.__setattr__(self, "queens", tuple(sorted(qs, key=lambda q: q[::-1])))

    @classmethod
    def from_indices(cls, spec: BoardSpec, indices: Iterable[int]) -> "Placement":
        return cls(spec, tuple(spec.square_at(i).coords for i in indices))

    def __len__(self):
        return len(self.queens)

    def indices(self) -> list[int]:
        return [self.spec.square(q).index for q in self.queens]

    def to_json(self) -> dict:
        return {"n": self.spec.n, "d": self.spec.d, "queens": [list(q) for q in self.queens]}

    @classmethod
    def from_json(cls, data: dict) -> "Placement":
        try:
            spec = BoardSpec(int(data["n"]), int(data["d"]))
            queens = tuple(tuple(q) for q in data["queens"])
        except (KeyError, TypeError) as exc:
            raise PlacementError(f"certificate is missing or mistypes a field: {exc}") from exc
        if any(not isinstance(a, int) or isinstance(a, bool) for q in queens for a in q):
            raise PlacementError("queen coordinates must be integers")
        return cls(spec, queens)

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json()) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "Placement":
        return cls.from_json(json.loads(Path(path).read_text()))


Conflict = tuple[tuple[int, ...], tuple[int, ...]]


def verify(p: Placement) -> list[Conflict]:
    """Every attacking pair of queens, ordered by the pair's square indices.

    An empty list means the placement is valid.  Queens are grouped by the
    attack line they sit on, so this is linear in the number of queens per
    direction rather than quadratic.
    """
    spec = p.spec
    off = [q for q in p.queens if not spec.contains(q)]
    if off:
        raise BoardError(f"queens off the ({spec.n},{spec.d})-board: {off}")
    pairs = set()
    for direction in directions(spec.d):
        groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
        for q in p.queens:
            groups.setdefault(line_key(spec, q, direction.eps), []).append(q)
        for members in groups.values():
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    pairs.add((members[i], members[j]))
    return sorted(pairs, key=lambda pr: (pr[0][::-1], pr[1][::-1]))


class Status(enum.Enum):
    OPTIMAL = "optimal"
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    BOUND_ONLY = "bound_only"


@dataclass
class SolveLimits:
    time_limit: float = 600.0
    node_limit: int | None = None
    target: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.time_limit < 0 or (self.node_limit is not None and self.node_limit < 0):
            raise ValueError("limits must be nonnegative")
        if self.target is not None and self.target < 1:
            raise ValueError("target must be >= 1")


@dataclass
class OptResult:
    best: Placement
    primal: int
    dual_bound: int
    status: Status
    nodes: int
    elapsed: float
    root_bound: int = 0
    violated_cuts: list[int] = field(default_factory=list)

    def report(self) -> dict:
        return {
            "n": self.best.spec.n,
            "d": self.best.spec.d,
            "primal": self.primal,
            "dual_bound": self.dual_bound,
            "status": self.status.value,
            "nodes": self.nodes,
            "seconds": round(self.elapsed, 3),
        }


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def greedy_initial(spec: BoardSpec, seed: int = 0, adj: Sequence[int] | None = None) -> Placement:
    """Shuffle the squares with ``seed`` and keep every square that is not attacked yet."""
    if adj is None:
        adj = adjacency_masks(spec)
    order = list(range(spec.num_squares))
    random.Random(seed).shuffle(order)
    blocked = 0
    chosen = []
    for v in order:
        if not blocked >> v & 1:
            chosen.append(v)
            blocked |= adj[v] | (1 << v)
    return Placement.from_indices(spec, chosen)


def aggregation_presolve(spec: BoardSpec, k_plus_1: int) -> bool:
    """True when ``k_plus_1`` queens cannot fit by summing one parallel line family.

    The n**(d-1) axis lines of any fixed axis partition the board and each
    holds at most one queen, so the LP relaxation already caps the count there.
    """
    return k_plus_1 > spec.n ** (spec.d - 1)


def is_clique(adj: Sequence[int], indices: Sequence[int]) -> bool:
    m = _mask(indices)
    return all((adj[v] | (1 << v)) & m == m for v in indices)


def _root_order(adj: Sequence[int], pool: Sequence[int], num: int) -> tuple[list[int], int]:
    """Static vertex order from a greedy clique cover of the whole board.

    Each step seeds at the uncovered square with fewest uncovered neighbours,
    grows a maximal clique by most-common-neighbours, and compares it with the
    best pool clique through that seed; pool cliques win ties.
    """
    by_vertex: list[list[int]] = [[] for _ in range(num)]
    for c in pool:
        for v in _bits(c):
            by_vertex[v].append(c)
    uncovered = (1 << num) - 1
    order: list[int] = []
    cliques = 0
    while uncovered:
        verts = _bits(uncovered)
        seed = min(verts, key=lambda v: ((adj[v] & uncovered).bit_count(), v))
        grown = 1 << seed
        cand = adj[seed] & uncovered
        while cand:
            u = max(_bits(cand), key=lambda v: ((adj[v] & cand).bit_count(), -v))
            grown |= 1 << u
            cand &= adj[u]
        chosen = grown
        best_pool = max((c & uncovered for c in by_vertex[seed]), key=lambda c: (c.bit_count(), -c), default=0)
        if best_pool.bit_count() >= grown.bit_count():
            chosen = best_pool
        order.extend(_bits(chosen))
        uncovered &= ~chosen
        cliques += 1
    return order, cliques


class _Stop(Exception):
    pass


class _Search:
    """Clique-cover branch and bound over a relabeled attack graph.

    Bit k of every mask is the k-th square of the static order, so the
    sequential greedy cover at each node walks squares in that order.
    """

    def __init__(self, adj: Sequence[int], floor: int, target: int | None,
                 deadline: float, node_budget: int | None):
        num = len(adj)
        full = (1 << num) - 1
        self.adj = adj
        self.nonadj = [full & ~adj[k] & ~(1 << k) for k in range(num)]
        self.best: list[int] = []
        self.floor = floor
        self.target = target
        self.deadline = deadline
        self.node_budget = node_budget
        self.nodes = 0
        self.root_class: int | None = None
        self.root_bound = num

    def cover(self, cand: int) -> list[int]:
        classes = []
        adj = self.adj
        while cand:
            q = cand
            cls = 0
            while q:
                low = q & -q
                cls |= low
                q &= adj[low.bit_length() - 1]
            cand &= ~cls
            classes.append(cls)
        return classes

    def _tick(self):
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise _Stop
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _Stop

    def expand(self, chosen: list[int], cand: int, depth: int):
        self._tick()
        classes = self.cover(cand)
        size = len(chosen)
        for ci in range(len(classes) - 1, -1, -1):
            if size + ci + 1 <= self.floor:
                return
            if depth == 0:
                self.root_class = ci
            cls = classes[ci]
            while cls:
                low = cls & -cls
                cls ^= low
                self.branch(chosen, low.bit_length() - 1, cand, depth)
                cand &= ~low
                if size + ci + 1 <= self.floor:
                    return

    def branch(self, chosen: list[int], v: int, cand: int, depth: int):
        chosen.append(v)
        sub = cand & self.nonadj[v]
        if sub:
            self.expand(chosen, sub, depth + 1)
        elif len(chosen) > self.floor:
            self._improve(chosen)
        chosen.pop()

    def _improve(self, chosen):
        self.best = list(chosen)
        self.floor = len(chosen)
        log.info("event=bound primal=%d dual=%d nodes=%d", self.floor, self.dual(), self.nodes)
        if self.target is not None and self.floor >= self.target:
            raise _Stop

    def dual(self) -> int:
        bound = self.root_bound if self.root_class is None else min(self.root_bound, self.root_class + 1)
        return max(bound, len(self.best))


_WORKER: dict = {}


def _worker_init(adj, target):
    _WORKER["adj"] = adj
    _WORKER["target"] = target


def _worker_branch(v, cand, floor, deadline, node_budget):
    search = _Search(_WORKER["adj"], floor, _WORKER["target"], deadline, node_budget)
    stopped = False
    try:
        search.branch([], v, cand, 1)
    except _Stop:
        stopped = True
    return search.best, search.nodes, stopped


def _parallel_root(search: _Search, threads: int) -> bool:
    """Run the root's branches in worker processes, a batch of ``threads`` at a time.

    Batches are reduced in branch order (largest placement, then earliest
    branch), so results depend on ``threads`` but never on scheduling.
    """
    from concurrent.futures import ProcessPoolExecutor

    num = len(search.adj)
    cand = (1 << num) - 1
    search.nodes = 1
    tasks = []
    for ci, cls in reversed(list(enumerate(search.cover(cand)))):
        for v in _bits(cls):
            tasks.append((ci, v, cand))
            cand &= ~(1 << v)
    with ProcessPoolExecutor(threads, initializer=_worker_init, initargs=(search.adj, search.target)) as pool:
        i = 0
        while i < len(tasks):
            batch = [t for t in tasks[i:i + threads] if t[0] + 1 > search.floor]
            if not batch:
                return True
            search.root_class = batch[0][0]
            budget = None if search.node_budget is None else search.node_budget - search.nodes
            futures = [pool.submit(_worker_branch, v, c, search.floor, search.deadline, budget) for _, v, c in batch]
            results = [f.result() for f in futures]
            stopped = False
            for best, nodes, halted in results:
                search.nodes += nodes
                stopped |= halted
                if len(best) > search.floor:
                    search.best, search.floor = best, len(best)
            if search.target is not None and search.floor >= search.target:
                return False
            if stopped or (search.node_budget is not None and search.nodes > search.node_budget):
                return False
            i += threads
    return True


def clique_pool(spec: BoardSpec, cuts: Iterable[Inequality], adj: Sequence[int], lines=None) -> list[int]:
    """Line cliques plus every rhs-1 cut whose support really is a clique."""
    if lines is None:
        lines = enumerate_lines(spec)
    pool = {_mask(line.indices) for line in lines}
    for ineq in cuts:
        if ineq.rhs != 1:
            continue
        if is_clique(adj, ineq.squares):
            pool.add(_mask(ineq.squares))
        else:
            log.warning("ignoring rhs-1 %s cut whose support is not a clique", ineq.kind.value)
    return sorted(pool, key=lambda c: (-c.bit_count(), c))


def solve(spec: BoardSpec, cuts: Sequence[Inequality] = (), limits: SolveLimits | None = None,
          threads: int = 1) -> OptResult:
    """Maximum placement of mutually non-attacking queens.

    Cuts with rhs 1 and a clique support join the lines as the clique pool
    that orders the search; other cuts are only checked against the answer.
    With ``limits.target`` the search only looks for placements of at least
    that size and stops at the first one.  ``threads > 1`` explores root
    branches in worker processes; the optimum does not depend on it.
    """
    limits = limits or SolveLimits()
    start = time.monotonic()
    lines = enumerate_lines(spec)
    adj = adjacency_masks(spec, lines)
    num = spec.num_squares
    pool = clique_pool(spec, cuts, adj, lines)
    order, root_bound = _root_order(adj, pool, num)
    pos = {v: k for k, v in enumerate(order)}
    relabeled = [_mask(pos[u] for u in _bits(adj[v])) for v in order]

    incumbent = greedy_initial(spec, limits.seed, adj).indices()
    target = limits.target
    floor = len(incumbent) if target is None else max(len(incumbent), target - 1)
    log.info("event=bound primal=%d dual=%d nodes=0", len(incumbent), root_bound)

    search = _Search(relabeled, floor, target, start + limits.time_limit, limits.node_limit)
    search.root_bound = root_bound
    search.best = [pos[v] for v in incumbent]
    if limits.node_limit == 0 or (target is not None and len(incumbent) >= target):
        finished = False
    elif threads > 1:
        finished = _parallel_root(search, threads)
    else:
        try:
            search.expand([], (1 << num) - 1, 0)
            finished = True
        except _Stop:
            finished = False
    best = Placement.from_indices(spec, sorted(order[k] for k in search.best))
    primal = len(best)

    if target is not None and primal >= target:
        status = Status.FEASIBLE
        dual = max(primal, root_bound)
    elif finished:
        dual = primal if target is None else target - 1
        status = Status.OPTIMAL if primal == dual else Status.INFEASIBLE
    else:
        dual = search.dual()
        status = Status.BOUND_ONLY if search.nodes == 0 else Status.FEASIBLE
    elapsed = time.monotonic() - start
    chosen = set(best.indices())
    violated = [i for i, c in enumerate(cuts) if not c.holds(chosen)]
    if violated:
        log.warning("best placement violates %d supplied cuts", len(violated))
    log.info("event=bound primal=%d dual=%d nodes=%d", primal, dual, search.nodes)
    return OptResult(best, primal, dual, status, search.nodes, elapsed, root_bound, violated)


@dataclass(frozen=True)
class Infeasible:
    pass


@dataclass(frozen=True)
class Feasible:
    placement: Placement


@dataclass(frozen=True)
class Undecided:
    result: OptResult


def prove_infeasible(spec: BoardSpec, k_plus_1: int, cuts: Sequence[Inequality] = (), limits: SolveLimits | None = None):
    """Decide whether a placement of ``k_plus_1`` queens exists.

    Returns ``Infeasible()``, ``Feasible(placement)`` or ``Undecided(result)``
    when a limit stopped the search first.
    """
    if k_plus_1 < 1:
        raise ValueError("k_plus_1 must be >= 1")
    if aggregation_presolve(spec, k_plus_1):
        return Infeasible()
    limits = limits or SolveLimits()
    limits = SolveLimits(limits.time_limit, limits.node_limit, k_plus_1, limits.seed)
    res = solve(spec, cuts, limits)
    if res.primal >= k_plus_1:
        return Feasible(res.best)
    if res.status in (Status.INFEASIBLE, Status.OPTIMAL):
        return Infeasible()
    return Undecided(res)


def pairwise_conflicts(p: Placement) -> list[Conflict]:
    """Quadratic reference check used where an independent route is wanted."""
    qs = p.queens
    return [(qs[i], qs[j]) for i in range(len(qs)) for j in range(i + 1, len(qs)) if attacks(p.spec, qs[i], qs[j])]
