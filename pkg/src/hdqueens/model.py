"""Integer program for the queens problem and its text serializations.

One binary per square, one "at most one queen" row per attack line, plus
optional cut families. Other formulations are not emitted.
"""
from __future__ import annotations

import enum
import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .board import BoardSpec, adjacency_masks, index_to_coord
from .bounds import (
    Exact,
    Inequality,
    InequalityKind,
    KnownValues,
    cube_cliques,
    default_registry,
    layer_ineqs,
    line_ineqs,
    star_cliques,
    subsolution_ineqs,
)
from .solver import Placement, verify


class Sense(enum.Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class Objective(enum.Enum):
    MAXIMIZE_COUNT = "max"
    FEASIBILITY_ONLY = "feasibility"


class Family(enum.Enum):
    BASE = "base"
    CUBE = "cube"
    STAR = "star"
    CUBE_STAR = "cube_star"
    ALL = "all"


@dataclass
class Variant:
    family: Family = Family.BASE
    infeasibility_at: int | None = None
    warmstart: Placement | None = None
    cube_h: Sequence[int] | None = None
    star_h: Sequence[int] | None = None

    @property
    def name(self) -> str:
        parts = [self.family.value]
        if self.infeasibility_at is not None:
            parts.insert(0, "inf")
        if self.warmstart is not None:
            parts.insert(0, "ws")
        return "_".join(parts)


@dataclass
class Constraint:
    ineq: Inequality
    sense: Sense = Sense.LE


@dataclass
class IpModel:
    spec: BoardSpec
    constraints: list[Constraint]
    objective: Objective = Objective.MAXIMIZE_COUNT
    cardinality: tuple[Sense, int] | None = None
    warmstart: Placement | None = None
    name: str = "base"

    def __post_init__(self):
        if (self.cardinality is None) != (self.objective is Objective.MAXIMIZE_COUNT):
            raise ValueError("a cardinality constraint goes with the feasibility objective only")
        num = self.spec.num_squares
        for c in self.constraints:
            if any(not 0 <= s < num for s in c.ineq.squares):
                raise ValueError(f"{c.ineq.kind.value} constraint references a square off the board")

    @property
    def num_variables(self) -> int:
        return self.spec.num_squares

    def inequalities(self, kind: InequalityKind | None = None) -> list[Inequality]:
        return [c.ineq for c in self.constraints if kind is None or c.ineq.kind is kind]

    def counts(self) -> dict[str, int]:
        tally = Counter(c.ineq.kind.value for c in self.constraints)
        out = {k.value: tally.get(k.value, 0) for k in InequalityKind}
        if self.cardinality is not None:
            out["cardinality"] = 1
        return out


class ModelError(ValueError):
    pass


class WarmstartError(ModelError):
    def __init__(self, pair):
        super().__init__(f"warmstart certificate has attacking queens {pair[0]} and {pair[1]}")
        self.pair = pair


def _cube_family(spec: BoardSpec, hs: Iterable[int] | None) -> list[Inequality]:
    hs = range(1, spec.n) if hs is None else hs
    return [ineq for h in hs for ineq in cube_cliques(spec, h)]


def _star_family(spec: BoardSpec, hs: Iterable[int] | None) -> list[Inequality]:
    hs = range(1, spec.n) if hs is None else hs
    return [ineq for h in hs for ineq in star_cliques(spec, h)]


def cut_family(spec: BoardSpec, family: Family, known: KnownValues | None = None,
               cube_h=None, star_h=None) -> list[Inequality]:
    """The strengthening inequalities a variant adds on top of the line constraints."""
    known = known or default_registry()
    cuts: list[Inequality] = []
    if family in (Family.CUBE, Family.CUBE_STAR, Family.ALL):
        cuts += _cube_family(spec, cube_h)
    if family in (Family.STAR, Family.CUBE_STAR, Family.ALL):
        cuts += _star_family(spec, star_h)
    if family is Family.ALL:
        if spec.d < 4:
            warnings.warn("the All variant is meant for d >= 4", stacklevel=3)
        if spec.d >= 2:
            cuts += layer_ineqs(spec, known, recursive=True)
        for m in range(2, spec.n):
            if isinstance(known.lookup(m, spec.d), Exact):
                cuts += subsolution_ineqs(spec, m, known)
    return cuts


def build(spec: BoardSpec, variant: Variant | None = None, known: KnownValues | None = None) -> IpModel:
    variant = variant or Variant()
    constraints = [Constraint(ineq) for ineq in line_ineqs(spec)]
    constraints += [Constraint(ineq) for ineq in
                    cut_family(spec, variant.family, known, variant.cube_h, variant.star_h)]
    objective, card = Objective.MAXIMIZE_COUNT, None
    if variant.infeasibility_at is not None:
        objective, card = Objective.FEASIBILITY_ONLY, (Sense.EQ, variant.infeasibility_at)
    return IpModel(spec, constraints, objective, card, variant.warmstart, variant.name)


def var_name(coords: Sequence[int]) -> str:
    return "x_" + "_".join(str(a) for a in coords)


def _terms(names: Sequence[str], per_line: int = 8) -> list[str]:
    chunks = []
    for i in range(0, len(names), per_line):
        chunks.append(" + ".join(names[i:i + per_line]))
    return chunks


def emit_lp(model: IpModel) -> str:
    spec = model.spec
    names = [var_name(index_to_coord(spec, i)) for i in range(spec.num_squares)]
    out = [f"\\ ({spec.n},{spec.d})-queens, variant {model.name}"]
    if model.objective is Objective.MAXIMIZE_COUNT:
        out.append("Maximize")
        body = _terms(names)
        out.append(" obj: " + body[0])
        out += ["   + " + b for b in body[1:]]
    else:
        out.append("Minimize")
        out.append(f" obj: 0 {names[0]}")
    out.append("Subject To")
    rows = [(c.ineq.kind.value, c.ineq.squares, c.sense, c.ineq.rhs) for c in model.constraints]
    if model.cardinality is not None:
        sense, k = model.cardinality
        rows.append(("card", range(spec.num_squares), sense, k))
    counters: Counter = Counter()
    for label, support, sense, rhs in rows:
        name = f"{label}_{counters[label]}"
        counters[label] += 1
        body = _terms([names[s] for s in support])
        out.append(f" {name}: " + body[0])
        out += ["   + " + b for b in body[1:]]
        out[-1] += f" {sense.value} {rhs}"
    out.append("Binaries")
    out += [" " + " ".join(names[i:i + 8]) for i in range(0, len(names), 8)]
    out.append("End")
    return "\n".join(out) + "\n"


def emit_dimacs(spec: BoardSpec) -> str:
    adj = adjacency_masks(spec)
    edges = []
    for i, mask in enumerate(adj):
        higher = mask >> (i + 1)
        j = i + 1
        while higher:
            if higher & 1:
                edges.append((i + 1, j + 1))
            higher >>= 1
            j += 1
    lines = [f"c ({spec.n},{spec.d})-queens attack graph, vertex i is square index i-1",
             f"p edge {spec.num_squares} {len(edges)}"]
    lines += [f"e {i} {j}" for i, j in edges]
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Vertex count and 1-based edge list of a DIMACS ``p edge`` file."""
    num, declared, edges = None, None, []
    for lineno, line in enumerate(text.splitlines(), 1):
        tok = line.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] != "edge":
                raise ValueError(f"line {lineno}: bad problem line {line!r}")
            num, declared = int(tok[2]), int(tok[3])
        elif tok[0] == "e":
            edges.append((int(tok[1]), int(tok[2])))
        else:
            raise ValueError(f"line {lineno}: unknown record {line!r}")
    if num is None:
        raise ValueError("missing 'p edge' line")
    if declared != len(edges):
        raise ValueError(f"header declares {declared} edges, found {len(edges)}")
    return num, edges


def emit_warmstart(model: IpModel) -> str:
    """MIP start listing the certificate's variables at value 1."""
    if model.warmstart is None:
        raise ModelError("model has no warmstart certificate")
    cert = model.warmstart
    if cert.spec != model.spec:
        raise ModelError(f"certificate is for the ({cert.spec.n},{cert.spec.d})-board")
    conflicts = verify(cert)
    if conflicts:
        raise WarmstartError(conflicts[0])
    lines = [f"# MIP start: {len(cert)} queens on the ({model.spec.n},{model.spec.d})-board"]
    lines += [f"{var_name(q)} 1" for q in cert.queens]
    return "\n".join(lines) + "\n"
