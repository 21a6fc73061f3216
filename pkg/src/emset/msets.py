"""Monoid actions with exact support theory.

The built-in families of actions of the injection monoid, each equipped with
an exact structural decision for "x is fixed by every injection that fixes A
pointwise".  Throughout, "minimal support" means the least co-infinite
supporting set; sets whose complement has at most one element support every
element (no injection can move anything then), so a least supporting set
without the co-infiniteness restriction rarely exists and is never what the
intersection and action laws consume.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import papinj as pj
from .errors import (
    MalformedLiteral,
    NotCoinfinite,
    PreconditionFailed,
    SearchExhausted,
)
from .papinj import PAPInj, enumerator, glue, identity, order_embed
from .upsets import EMPTY, EVENS, OMEGA, UPSet, union_all


class Classification(enum.Enum):
    TAME = "Tame"
    MILD_NOT_TAME = "MildNotTame"
    NOT_MILD = "NotMild"


@dataclass(frozen=True)
class NoMinimal:
    """Returned when no least co-infinite supporting set exists.

    reason 'not-mild': there is no co-infinite supporting set at all.
    reason 'no-least': co-infinite supporting sets exist but have no minimum.
    """

    reason: str
    components: tuple = ()


def _cosmall(part: UPSet) -> bool:
    # complements with at most one point leave no room to move anything;
    # canonically that means a full tail and at most one gap below the threshold
    return (
        part.period == 1
        and part._rmask == 1
        and part.threshold - part._emask.bit_count() <= 1
    )


@lru_cache(maxsize=65536)
def _finite_image(values: tuple[int, ...]) -> UPSet:
    return UPSet.finite(values)


class Family:
    """Interface shared by the built-in families."""

    def act(self, f: PAPInj, payload):
        raise NotImplementedError

    def equal(self, x, y) -> bool:
        raise NotImplementedError

    def is_supported_on(self, payload, part: UPSet) -> bool:
        raise NotImplementedError

    def minimal_support(self, payload) -> UPSet | NoMinimal:
        raise NotImplementedError

    def support_core(self, payload) -> UPSet | None:
        """A co-infinite supporting set that is least up to finite error, or
        None when the element has no co-infinite supporting set at all."""
        s = self.minimal_support(payload)
        return None if isinstance(s, NoMinimal) else s

    def classify(self, payload) -> Classification:
        raise NotImplementedError

    def validate(self, payload):
        raise NotImplementedError

    def elt(self, payload) -> "MElt":
        return MElt(self, self.validate(payload))


@dataclass(frozen=True)
class MElt:
    family: Family
    payload: object

    def act(self, f: PAPInj) -> "MElt":
        return MElt(self.family, self.family.act(f, self.payload))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MElt) or self.family != other.family:
            return NotImplemented
        return self.family.equal(self.payload, other.payload)

    def __hash__(self) -> int:
        return hash((id(type(self.family)),))

    def is_supported_on(self, part: UPSet) -> bool:
        return self.family.is_supported_on(self.payload, part)

    def minimal_support(self) -> UPSet | NoMinimal:
        return self.family.minimal_support(self.payload)

    def classify(self) -> Classification:
        return self.family.classify(self.payload)

    def __str__(self) -> str:
        return self.family.describe(self.payload)  # type: ignore[attr-defined]


# -- injections out of a finite set ------------------------------------------------


@dataclass(frozen=True)
class FiniteInjFamily(Family):
    """Injections A -> omega for a finite A, acted on by postcomposition.

    Every element is supported on exactly the supersets of its image (and on
    the co-small sets), so the family is tame."""

    source: frozenset[int]

    def validate(self, payload) -> tuple[tuple[int, int], ...]:
        tab = dict(payload)
        if set(tab) != set(self.source):
            raise MalformedLiteral("table must be defined exactly on the source set")
        vals = list(tab.values())
        if len(set(vals)) != len(vals):
            raise MalformedLiteral("table must be injective")
        if not all(isinstance(v, int) and v >= 1 for v in vals):
            raise MalformedLiteral("values must be positive integers")
        return tuple(sorted(tab.items()))

    def act(self, f: PAPInj, payload):
        return tuple(sorted((a, f.eval(v)) for a, v in payload))

    def equal(self, x, y) -> bool:
        return x == y

    def image(self, payload) -> UPSet:
        return _finite_image(tuple(v for _, v in payload))

    def is_supported_on(self, payload, part: UPSet) -> bool:
        return all(v in part for _, v in payload) or _cosmall(part)

    def minimal_support(self, payload) -> UPSet:
        return self.image(payload)

    def classify(self, payload) -> Classification:
        return Classification.TAME

    def elements(self, entry_bound: int) -> list[MElt]:
        """All elements with values bounded by entry_bound, in a fixed order."""
        src = sorted(self.source)
        out: list[MElt] = []

        def rec(i, used, acc):
            if i == len(src):
                out.append(MElt(self, tuple(sorted(zip(src, acc)))))
                return
            for v in range(1, entry_bound + 1):
                if v not in used:
                    rec(i + 1, used | {v}, acc + [v])

        rec(0, set(), [])
        return out

    def describe(self, payload) -> str:
        body = ",".join(f"{a}:{v}" for a, v in payload)
        src = ",".join(str(a) for a in sorted(self.source))
        return "inj{A=[%s], table={%s}}" % (src, body)


TERMINAL_FAMILY = FiniteInjFamily(frozenset())
STAR = TERMINAL_FAMILY.elt(())


# -- injections out of an infinite ultimately periodic set ---------------------------


@dataclass(frozen=True)
class InjUPFamily(Family):
    """Injections A -> omega for an infinite ultimately periodic A, encoded as
    piecewise-arithmetic maps with domain A."""

    source: UPSet

    def __post_init__(self):
        if self.source.is_finite():
            raise MalformedLiteral("source must be infinite; use the finite family otherwise")

    def validate(self, payload: PAPInj) -> PAPInj:
        if payload.domain != self.source:
            raise MalformedLiteral("payload domain must equal the source set")
        return payload.validate()

    def act(self, f: PAPInj, payload: PAPInj) -> PAPInj:
        return f.compose(payload)

    def equal(self, x: PAPInj, y: PAPInj) -> bool:
        return x == y

    def is_supported_on(self, payload: PAPInj, part: UPSet) -> bool:
        return payload.image().subset_of(part) or _cosmall(part)

    def minimal_support(self, payload: PAPInj) -> UPSet | NoMinimal:
        img = payload.image()
        if img.is_coinfinite():
            return img
        return NoMinimal("not-mild")

    def classify(self, payload: PAPInj) -> Classification:
        return (
            Classification.MILD_NOT_TAME
            if payload.image().is_coinfinite()
            else Classification.NOT_MILD
        )

    def describe(self, payload) -> str:
        return "injup{%s}" % payload


# -- the monoid acting on itself ------------------------------------------------------


@dataclass(frozen=True)
class SelfMFamily(Family):
    """The injection monoid acting on itself by postcomposition, with elements
    restricted to the piecewise-arithmetic fragment.

    u is fixed by everything fixing A pointwise iff the image of u lies in A,
    except for co-small A (complement of size at most one), which support
    every element: an injection fixing all of A must send the single leftover
    point to itself.  Minimal supports are therefore taken among co-infinite
    sets; bijections and other co-finitely-surjective elements have none."""

    def validate(self, payload: PAPInj) -> PAPInj:
        if not payload.is_total:
            raise MalformedLiteral("elements of the self-action are total injections")
        return payload.validate()

    def act(self, f: PAPInj, payload: PAPInj) -> PAPInj:
        return f.compose(payload)

    def equal(self, x: PAPInj, y: PAPInj) -> bool:
        return x == y

    def is_supported_on(self, payload: PAPInj, part: UPSet) -> bool:
        return payload.image().subset_of(part) or _cosmall(part)

    def minimal_support(self, payload: PAPInj) -> UPSet | NoMinimal:
        img = payload.image()
        if img.is_coinfinite():
            return img
        return NoMinimal("not-mild")

    def classify(self, payload: PAPInj) -> Classification:
        return (
            Classification.MILD_NOT_TAME
            if payload.image().is_coinfinite()
            else Classification.NOT_MILD
        )

    def describe(self, payload) -> str:
        return "selfm{%s}" % payload


SELF_M = SelfMFamily()


# -- the quotient identifying maps that agree on almost all evens ----------------------


@dataclass(frozen=True)
class WarningQuotientFamily(Family):
    """The quotient of the self-action by: f ~ g iff f and g agree on all but
    finitely many even arguments.  Elements are stored as representatives.

    A class [f] is fixed by everything fixing A pointwise iff either the
    complement of A is finite (nothing movable outside A can be moved
    infinitely often) or all but finitely many of the f-values at even
    arguments lie in A.  With V = f(evens), the supporting sets are exactly
    {A : V minus A finite} plus the co-finite sets; V is infinite, so the
    family is mild but no element has a least co-infinite support."""

    def validate(self, payload: PAPInj) -> PAPInj:
        if not payload.is_total:
            raise MalformedLiteral("representatives are total injections")
        return payload.validate()

    def act(self, f: PAPInj, payload: PAPInj) -> PAPInj:
        return f.compose(payload)

    def equal(self, x: PAPInj, y: PAPInj) -> bool:
        return x.disagreement(y).intersect(EVENS).is_finite()

    def even_values(self, payload: PAPInj) -> UPSet:
        return payload.image(EVENS)

    def is_supported_on(self, payload: PAPInj, part: UPSet) -> bool:
        if part.complement().is_finite():
            return True
        return self.even_values(payload).difference(part).is_finite()

    def minimal_support(self, payload: PAPInj) -> NoMinimal:
        return NoMinimal("no-least")

    def support_core(self, payload: PAPInj) -> UPSet:
        return self.even_values(payload)

    def classify(self, payload: PAPInj) -> Classification:
        # supported on f(evens), which is co-infinite; never on a finite set
        return Classification.MILD_NOT_TAME

    def moving_witness(self, payload: PAPInj, part: UPSet) -> PAPInj:
        """For a class not supported on `part`, an explicit element fixing
        `part` pointwise that moves the class: shift along V minus part."""
        stray = self.even_values(payload).difference(part)
        if stray.is_finite():
            raise PreconditionFailed("not-supported", "class is supported on the given set")
        target = stray.difference(UPSet.finite(stray.first_n(1)))
        return glue(
            [(stray, order_embed(stray, target)), (stray.complement(), identity())]
        )

    def describe(self, payload) -> str:
        return "warn{%s}" % payload


WARNING_QUOTIENT = WarningQuotientFamily()


def warning_level_set(n: int) -> UPSet:
    """The co-infinite sets {k even : k >= 2n} with empty intersection."""
    if n <= 0:
        return EVENS
    return EVENS.intersect(UPSet(2 * n - 1, frozenset(), 1, frozenset({0})))


# -- finite products --------------------------------------------------------------------


@dataclass(frozen=True)
class ProductFamily(Family):
    factors: tuple[Family, ...]

    def validate(self, payload) -> tuple:
        if len(payload) != len(self.factors):
            raise MalformedLiteral("payload length must match factor count")
        return tuple(fam.validate(p) for fam, p in zip(self.factors, payload))

    def act(self, f: PAPInj, payload):
        return tuple(fam.act(f, p) for fam, p in zip(self.factors, payload))

    def equal(self, x, y) -> bool:
        return all(fam.equal(a, b) for fam, a, b in zip(self.factors, x, y))

    def is_supported_on(self, payload, part: UPSet) -> bool:
        return all(fam.is_supported_on(p, part) for fam, p in zip(self.factors, payload))

    def minimal_support(self, payload) -> UPSet | NoMinimal:
        """The union of the componentwise minimal supports, when these exist
        and the union is itself co-infinite; otherwise NoMinimal carrying the
        componentwise record."""
        parts = [fam.minimal_support(p) for fam, p in zip(self.factors, payload)]
        if any(isinstance(s, NoMinimal) for s in parts):
            reason = (
                "not-mild"
                if any(isinstance(s, NoMinimal) and s.reason == "not-mild" for s in parts)
                else "no-least"
            )
            return NoMinimal(reason, tuple(parts))
        union = union_all(parts)
        if union.is_coinfinite():
            return union
        return NoMinimal("not-mild", tuple(parts))

    def support_core(self, payload) -> UPSet | None:
        cores = []
        for fam, p in zip(self.factors, payload):
            core = fam.support_core(p)
            if core is None:
                return None
            cores.append(core)
        union = union_all(cores)
        return union if union.is_coinfinite() else None

    def classify(self, payload) -> Classification:
        kinds = [fam.classify(p) for fam, p in zip(self.factors, payload)]
        if all(k == Classification.TAME for k in kinds):
            return Classification.TAME
        if any(k == Classification.NOT_MILD for k in kinds):
            return Classification.NOT_MILD
        # all components mild: jointly mild iff the union of their cores is
        # co-infinite (finite slack in a quotient core never matters)
        return (
            Classification.MILD_NOT_TAME
            if self.support_core(payload) is not None
            else Classification.NOT_MILD
        )

    def describe(self, payload) -> str:
        return "prod[%s]" % "; ".join(
            fam.describe(p) for fam, p in zip(self.factors, payload)
        )


# -- the constructive content of the support laws -----------------------------------------


@dataclass(frozen=True)
class WitnessChain:
    """The explicit chain of injections certifying that an element supported on
    two co-infinite sets is fixed by anything fixing their intersection."""

    case: int
    maps: tuple[tuple[str, PAPInj], ...]
    checks: tuple[tuple[str, bool], ...]

    def ok(self) -> bool:
        return all(v for _, v in self.checks)

    def named(self, name: str) -> PAPInj:
        return dict(self.maps)[name]


def intersection_support_witness(
    x: MElt, part_a: UPSet, part_b: UPSet, f: PAPInj
) -> WitnessChain:
    """Certify f.x = x for f fixing A∩B pointwise, x supported on co-infinite
    A and B, by the two-case chain of explicitly constructed injections."""
    if not part_a.is_coinfinite():
        raise PreconditionFailed("A-coinfinite")
    if not part_b.is_coinfinite():
        raise PreconditionFailed("B-coinfinite")
    if not x.is_supported_on(part_a):
        raise PreconditionFailed("x-supported-on-A")
    if not x.is_supported_on(part_b):
        raise PreconditionFailed("x-supported-on-B")
    meet = part_a.intersect(part_b)
    if not f.fixes_pointwise(meet):
        raise PreconditionFailed("f-fixes-intersection")

    comp_a = part_a.complement()
    fa = f.image(part_a)
    checks: list[tuple[str, bool]] = []
    if comp_a.difference(fa).is_infinite():
        # route one: push the complement of A into the part of it missed by f(A)
        room = comp_a.difference(fa)
        f1 = glue([(part_a, f), (comp_a, order_embed(comp_a, room))])
        f2 = glue([(part_a, identity()), (comp_a, f1.restrict(comp_a))])
        checks.append(("f1-agrees-with-f-on-A", f1.equal_on(f, part_a)))
        checks.append(("f1-maps-Ac-into-Ac", f1.image(comp_a).subset_of(comp_a)))
        checks.append(("f2-agrees-with-f1-on-B", f2.equal_on(f1, part_b)))
        checks.append(("f2-fixes-A", f2.fixes_pointwise(part_a)))
        x1 = x.act(f1)
        x2 = x.act(f2)
        checks.append(("f.x-equals-f1.x", x.act(f) == x1))
        checks.append(("f1.x-equals-f2.x", x1 == x2))
        checks.append(("f2.x-equals-x", x2 == x))
        checks.append(("f.x-equals-x", x.act(f) == x))
        return WitnessChain(1, (("f1", f1), ("f2", f2)), tuple(checks))

    # route two: A-complement minus f(B) is infinite instead
    comp_b = part_b.complement()
    fb = f.image(part_b)
    room = comp_a.difference(fb)
    outside = comp_b.union(part_b.difference(part_a))  # = omega minus A∩B
    psihat = order_embed(outside, room)
    g1 = glue([(part_b, f), (comp_b, psihat.restrict(comp_b))])
    psi = psihat.restrict(part_b.difference(part_a))
    g2 = glue(
        [
            (part_b.difference(part_a), psi),
            (part_b.difference(part_a).complement(), g1),
        ]
    )
    g3 = glue([(part_a, identity()), (comp_a, g2.restrict(comp_a))])
    checks.append(("g1-agrees-with-f-on-B", g1.equal_on(f, part_b)))
    checks.append(("g1-maps-Bc-into-Ac", g1.image(comp_b).subset_of(comp_a)))
    checks.append(
        (
            "psi-avoids-g1-image",
            psi.image().intersect(g1.image()).is_empty()
            and psi.image().subset_of(comp_a),
        )
    )
    checks.append(("g2-agrees-with-g1-on-A", g2.equal_on(g1, part_a)))
    checks.append(("g2-pulls-A-into-A", g2.preimage(part_a).subset_of(part_a)))
    checks.append(("g3-fixes-A", g3.fixes_pointwise(part_a)))
    checks.append(("g3-agrees-with-g2-on-B", g3.equal_on(g2, part_b)))
    x1 = x.act(g1)
    x2 = x.act(g2)
    x3 = x.act(g3)
    checks.append(("f.x-equals-g1.x", x.act(f) == x1))
    checks.append(("g1.x-equals-g2.x", x1 == x2))
    checks.append(("g2.x-equals-g3.x", x2 == x3))
    checks.append(("g3.x-equals-x", x3 == x))
    checks.append(("f.x-equals-x", x.act(f) == x))
    return WitnessChain(2, (("g1", g1), ("g2", g2), ("g3", g3)), tuple(checks))


def stabilizing_chi(
    part: UPSet, maps: Sequence[PAPInj], period_bound: int = 64
) -> PAPInj:
    """An injection fixing `part` pointwise such that the union of the images
    of the composites (map ∘ chi) stays co-infinite.

    Found by a deterministic deepening search: carve an infinite progression C
    out of omega minus the union of the map-images of `part`, and retract the
    complement of `part` onto points whose map-values miss C."""
    if not part.is_coinfinite():
        raise PreconditionFailed("A-coinfinite")
    hit = union_all(m.image(part) for m in maps) if maps else EMPTY
    if not hit.is_coinfinite():
        raise PreconditionFailed("union-of-images-coinfinite")
    free = hit.complement()
    outside = part.complement()
    base = enumerator(free)
    stride = 1
    while stride <= period_bound:
        for strand in range(1, stride + 1):
            carved = base.image(UPSet.progression(stride, {strand % stride}))
            room = outside
            for m in maps:
                room = room.difference(m.preimage(carved))
            if room.is_infinite():
                chi = glue(
                    [(part, identity()), (outside, order_embed(outside, room))]
                )
                union = union_all(m.compose(chi).image() for m in maps) if maps else EMPTY
                if union.is_coinfinite():
                    return chi
        stride *= 2
    raise SearchExhausted(period_bound)


class ModMAResult(enum.Enum):
    EQUAL = "Equal"
    UNKNOWN = "Unknown"


def equal_mod_MA(
    part: UPSet, us: Sequence[PAPInj], vs: Sequence[PAPInj]
) -> ModMAResult:
    """Decide equality of tuple classes under simultaneous right translation by
    injections fixing `part`.  Equality is certified when the tuples agree on
    `part` and the union of the u-images of `part` is co-infinite; the
    criterion is sufficient only, so everything else reports Unknown."""
    if len(us) != len(vs):
        raise PreconditionFailed("equal-lengths")
    if not part.is_coinfinite():
        raise PreconditionFailed("A-coinfinite")
    if all(u == v for u, v in zip(us, vs)):
        return ModMAResult.EQUAL
    if all(u.equal_on(v, part) for u, v in zip(us, vs)) and union_all(
        u.image(part) for u in us
    ).is_coinfinite():
        return ModMAResult.EQUAL
    return ModMAResult.UNKNOWN
