"""The free strictly commutative algebra on one generator, with its partial sum.

A configuration of weight m and degree n is an unordered m-tuple of "points",
each point being a column of 1+n values (one value per simplicial level), with
all m values at any fixed level distinct.  The action, faces and degeneracies
work levelwise; the sum of two configurations juxtaposes their columns and is
defined exactly when the level sets are disjoint (their union is finite, hence
automatically co-infinite), which is box membership for minimal supports.
The weight-0 configuration is the unit at every degree.

Normal form sorts columns lexicographically starting at level 0; values at a
fixed level are distinct, so the order is already determined by level 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .emss import Simplex, em_act
from .errors import (
    ArityMismatch,
    IndexOutOfRange,
    MalformedLiteral,
    NotSummable,
)
from .gen import Sampler
from .msets import STAR, FiniteInjFamily
from .papinj import InjN, PAPInj, identity
from .upsets import EMPTY, UPSet


@dataclass(frozen=True)
class StarConfig:
    levels: int  # 1 + degree
    columns: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.levels < 1:
            raise MalformedLiteral("a configuration needs at least one level")
        for col in self.columns:
            if len(col) != self.levels:
                raise MalformedLiteral("columns must all have one value per level")
            if not all(isinstance(v, int) and v >= 1 for v in col):
                raise MalformedLiteral("entries must be positive integers")
        for k in range(self.levels):
            row = [col[k] for col in self.columns]
            if len(set(row)) != len(row):
                raise MalformedLiteral(f"level {k} values must be distinct")
        object.__setattr__(self, "columns", tuple(sorted(self.columns)))

    @property
    def weight(self) -> int:
        return len(self.columns)

    @property
    def degree(self) -> int:
        return self.levels - 1

    def level_values(self, k: int) -> frozenset[int]:
        if not (0 <= k <= self.degree):
            raise IndexOutOfRange(f"level {k} out of range")
        return frozenset(col[k] for col in self.columns)

    def k_support(self, k: int) -> UPSet:
        return UPSet.finite(self.level_values(k))

    def is_k_supported_on(self, k: int, part: UPSet) -> bool:
        vals = self.level_values(k)
        comp = part.complement()
        cosmall = comp.is_finite() and comp.cardinality() <= 1
        return all(v in part for v in vals) or cosmall

    def face(self, i: int) -> "StarConfig":
        if self.degree == 0 or not (0 <= i <= self.degree):
            raise IndexOutOfRange(f"face {i} out of range")
        return StarConfig(
            self.levels - 1,
            tuple(col[:i] + col[i + 1 :] for col in self.columns),
        )

    def degeneracy(self, i: int) -> "StarConfig":
        if not (0 <= i <= self.degree):
            raise IndexOutOfRange(f"degeneracy {i} out of range")
        return StarConfig(
            self.levels + 1,
            tuple(col[: i + 1] + col[i:] for col in self.columns),
        )

    def act(self, maps: Sequence[PAPInj]) -> "StarConfig":
        if len(maps) != self.levels:
            raise ArityMismatch("need one injection per level")
        return StarConfig(
            self.levels,
            tuple(tuple(m.eval(v) for m, v in zip(maps, col)) for col in self.columns),
        )

    def __str__(self) -> str:
        cols = ",".join("[%s]" % ",".join(str(v) for v in col) for col in self.columns)
        return "cfg{m=%d, cols=[%s]}" % (self.weight, cols)


def unit(degree: int) -> StarConfig:
    return StarConfig(degree + 1, ())


def summable(a: StarConfig, b: StarConfig) -> None | NotSummable:
    if a.levels != b.levels:
        return NotSummable(-1, "degree mismatch")
    for k in range(a.levels):
        if a.level_values(k) & b.level_values(k):
            return NotSummable(k, "level values overlap")
    return None


def sum_configs(a: StarConfig, b: StarConfig) -> StarConfig:
    """Juxtapose two configurations; defined when levelwise disjoint."""
    obstacle = summable(a, b)
    if obstacle is not None:
        raise obstacle
    return StarConfig(a.levels, a.columns + b.columns)


def i_action(frame: Sequence[InjN], operands: Sequence[StarConfig]) -> StarConfig:
    """Act by an operadic frame: postcompose operand j levelwise with the j-th
    frame components, then juxtapose.  Disjointness comes from the frames."""
    if not frame:
        raise ArityMismatch("frame must be nonempty")
    arity = frame[0].arity
    if any(f.arity != arity for f in frame):
        raise ArityMismatch("frame levels must share one arity")
    if len(operands) != arity:
        raise ArityMismatch("need one operand per frame slot")
    levels = len(frame)
    if any(op.levels != levels for op in operands):
        raise ArityMismatch("operand degrees must match the frame length")
    cols = []
    for j, op in enumerate(operands, start=1):
        maps = [f.component(j) for f in frame]
        cols.extend(
            tuple(m.eval(v) for m, v in zip(maps, col)) for col in op.columns
        )
    return StarConfig(levels, tuple(cols))


def as_simplex(cfg: StarConfig) -> Simplex:
    """The underlying simplex over the finite-injection family on 1..weight."""
    fam = FiniteInjFamily(frozenset(range(1, cfg.weight + 1)))
    coords = []
    for k in range(cfg.levels):
        coords.append(
            fam.elt(tuple((i + 1, col[k]) for i, col in enumerate(cfg.columns)))
        )
    return Simplex(tuple(coords))


def enumerate_configs(
    weight: int, degree: int, entry_bound: int
) -> list[StarConfig]:
    """All weight-m configurations of the given degree with entries bounded."""
    levels = degree + 1
    if weight == 0:
        return [unit(degree)]
    rows = list(itertools.permutations(range(1, entry_bound + 1), weight))
    out = []
    seen = set()
    for combo in itertools.product(rows, repeat=levels):
        cols = tuple(tuple(combo[k][i] for k in range(levels)) for i in range(weight))
        cfg = StarConfig(levels, cols)
        if cfg.columns not in seen:
            seen.add(cfg.columns)
            out.append(cfg)
    return out


@dataclass
class CMonReport:
    unit_checked: int = 0
    commutativity_checked: int = 0
    associativity_checked: int = 0
    simplicial_checked: int = 0
    action_checked: int = 0
    relation_checked: int = 0
    empty_support_checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_cmon(
    seed: int = 0,
    trials: int = 300,
    entry_bound: int = 8,
    max_degree: int = 2,
    exhaustive_weight: int = 2,
) -> CMonReport:
    """Check the commutative-monoid axioms for the partial sum, compatibility
    with the simplicial and action structure, and the operadic consistency of
    the induced algebra action."""
    from .boxprod import BoxWitness, box_membership
    from .operadic import phi_inverse

    rep = CMonReport()
    sampler = Sampler(seed)
    rng = sampler.rng

    def random_config(levels: int, weight: int | None = None) -> StarConfig:
        m = rng.randrange(0, 3) if weight is None else weight
        cols = []
        used = [set() for _ in range(levels)]
        for _ in range(m):
            col = []
            for k in range(levels):
                v = rng.randrange(1, 40)
                while v in used[k]:
                    v = rng.randrange(1, 40)
                used[k].add(v)
                col.append(v)
            cols.append(tuple(col))
        return StarConfig(levels, tuple(cols))

    # unit and commutativity, exhaustively on small pools
    for degree in range(max_degree + 1):
        for weight in range(exhaustive_weight + 1):
            for cfg in enumerate_configs(weight, degree, entry_bound):
                rep.unit_checked += 1
                if sum_configs(cfg, unit(degree)) != cfg or sum_configs(unit(degree), cfg) != cfg:
                    rep.failures.append(f"unit law at {cfg}")
    done = 0
    while done < trials:
        levels = rng.randrange(1, max_degree + 2)
        a, b = random_config(levels), random_config(levels)
        if summable(a, b) is not None:
            continue
        rep.commutativity_checked += 1
        if sum_configs(a, b) != sum_configs(b, a):
            rep.failures.append(f"commutativity at {a}, {b}")
        done += 1

    # associativity on box-compatible triples
    done = 0
    while done < trials:
        levels = rng.randrange(1, max_degree + 2)
        a, b, c = (random_config(levels) for _ in range(3))
        if any(
            summable(x, y) is not None
            for x, y in [(a, b), (a, c), (b, c)]
        ):
            continue
        if summable(sum_configs(a, b), c) is not None:
            continue
        rep.associativity_checked += 1
        if sum_configs(sum_configs(a, b), c) != sum_configs(a, sum_configs(b, c)):
            rep.failures.append(f"associativity at {a}, {b}, {c}")
        done += 1

    # faces, degeneracies, and the levelwise action are sum homomorphisms
    done = 0
    while done < trials:
        levels = rng.randrange(2, max_degree + 2)
        a, b = random_config(levels), random_config(levels)
        if summable(a, b) is not None:
            continue
        rep.simplicial_checked += 1
        i = rng.randrange(levels)
        lhs = sum_configs(a, b).face(i)
        rhs = sum_configs(a.face(i), b.face(i))
        if lhs != rhs:
            rep.failures.append(f"face compatibility at {a}, {b}")
        j = rng.randrange(levels)
        if sum_configs(a, b).degeneracy(j) != sum_configs(a.degeneracy(j), b.degeneracy(j)):
            rep.failures.append(f"degeneracy compatibility at {a}, {b}")
        maps = sampler.pap_tuple(levels)
        rep.action_checked += 1
        if sum_configs(a, b).act(maps) != sum_configs(a.act(maps), b.act(maps)):
            rep.failures.append(f"action compatibility at {a}, {b}")
        done += 1

    # the operadic action with the inverse-comparison frame recovers the sum
    done = 0
    while done < max(1, trials // 2):
        levels = rng.randrange(1, max_degree + 2)
        a, b = random_config(levels), random_config(levels)
        if a.weight == 0 and b.weight == 0:
            continue
        if summable(a, b) is not None:
            continue
        witness = box_membership([as_simplex(a), as_simplex(b)])
        if not isinstance(witness, BoxWitness):
            rep.failures.append(f"summable pair outside the box product: {a}, {b}")
            done += 1
            continue
        cls = phi_inverse([as_simplex(a), as_simplex(b)], witness)
        rep.relation_checked += 1
        if i_action(cls.frame, [a, b]) != sum_configs(a, b):
            rep.failures.append(f"operadic action disagrees with sum at {a}, {b}")
        # equivariance: absorbing a levelwise action into the frame
        maps = sampler.pap_tuple(levels)
        moved_frame = tuple(f.precompose([maps[k], maps[k]]) for k, f in enumerate(cls.frame))
        if i_action(moved_frame, [a, b]) != i_action(cls.frame, [a.act(maps), b.act(maps)]):
            rep.failures.append(f"operadic equivariance fails at {a}, {b}")
        done += 1

    # no positive-weight vertex is supported on the empty set
    for weight in range(1, exhaustive_weight + 1):
        for cfg in enumerate_configs(weight, 0, entry_bound):
            rep.empty_support_checked += 1
            if cfg.is_k_supported_on(0, EMPTY):
                rep.failures.append(f"empty support at {cfg}")
    return rep
