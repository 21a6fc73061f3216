"""The box product of mild truncated simplicial objects.

A tuple of same-degree simplices lies in the (unbiased) box product when at
every level the coordinates admit pairwise disjoint supporting sets whose
union is co-infinite.  Over families with least co-infinite supports this is
decided exactly by the minimal supports: any valid witness dominates the
minimal one, so disjointness plus co-infinite union of the minimal supports
is both necessary and sufficient.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .emss import Simplex, TruncEMSS
from .errors import (
    ArityMismatch,
    FiniteSetError,
    MalformedLiteral,
    NoMinimalSupport,
    UnsupportedFamily,
    VerificationFailed,
)
from .msets import (
    STAR,
    Classification,
    FiniteInjFamily,
    MElt,
    NoMinimal,
)
from .upsets import EMPTY, UPSet, union_all


@dataclass(frozen=True)
class BoxWitness:
    """Per level, one supporting set per coordinate: pairwise disjoint with
    co-infinite union, each supporting its coordinate."""

    levels: tuple[tuple[UPSet, ...], ...]

    def verify(self, simplices: Sequence[Simplex]) -> None:
        for k, parts in enumerate(self.levels):
            if len(parts) != len(simplices):
                raise VerificationFailed("witness-arity")
            for i, part in enumerate(parts):
                if not simplices[i].is_k_supported_on(k, part):
                    raise VerificationFailed(f"support(level={k}, coordinate={i})")
                for part2 in parts[i + 1 :]:
                    if not part.disjoint_from(part2):
                        raise VerificationFailed(f"disjointness(level={k})")
            if not union_all(parts).is_coinfinite():
                raise VerificationFailed(f"coinfinite-union(level={k})")


@dataclass(frozen=True)
class NotInBox:
    level: int
    reason: str  # 'disjointness' | 'union-not-coinfinite' | 'no-coinfinite-support'
    coordinate: int | None = None

    def __str__(self) -> str:
        return f"NotInBox({self.reason}, k={self.level})"


def _level_supports(simplices: Sequence[Simplex], k: int) -> list[UPSet] | NotInBox:
    parts = []
    for i, s in enumerate(simplices):
        sup = s.k_support(k)
        if isinstance(sup, NoMinimal):
            if sup.reason == "not-mild":
                return NotInBox(k, "no-coinfinite-support", i)
            raise NoMinimalSupport(
                f"coordinate {i} has no least co-infinite support at level {k}"
            )
        parts.append(sup)
    return parts


def box_membership(simplices: Sequence[Simplex]) -> BoxWitness | NotInBox:
    """Decide membership in the unbiased box product via minimal supports."""
    if not simplices:
        raise MalformedLiteral("box membership needs at least one simplex")
    degree = simplices[0].degree
    if any(s.degree != degree for s in simplices):
        raise ArityMismatch("box membership needs simplices of equal degree")
    levels = []
    for k in range(degree + 1):
        parts = _level_supports(simplices, k)
        if isinstance(parts, NotInBox):
            return parts
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                if not parts[i].disjoint_from(parts[j]):
                    return NotInBox(k, "disjointness", j)
        if not union_all(parts).is_coinfinite():
            return NotInBox(k, "union-not-coinfinite")
        levels.append(tuple(parts))
    # the loop above checked disjointness and co-infinite unions on the
    # minimal supports, which support their coordinates by construction
    return BoxWitness(tuple(levels))


def in_box(simplices: Sequence[Simplex]) -> bool:
    return isinstance(box_membership(simplices), BoxWitness)


def refine_supports(
    x: Simplex,
    y: Simplex,
    k: int,
    part_a: UPSet,
    part_b: UPSet,
    part_d: UPSet,
) -> tuple[UPSet, UPSet, UPSet]:
    """Shrink a pair witness (A, B) for (x, y) at level k against a joint
    support D of the pair: the refined sets are A∩D, B∩D and their union,
    every support claim re-verified exactly."""
    for name, cond in [
        ("A-coinfinite", part_a.is_coinfinite()),
        ("B-coinfinite", part_b.is_coinfinite()),
        ("D-coinfinite", part_d.is_coinfinite()),
        ("A-B-disjoint", part_a.disjoint_from(part_b)),
        ("x-supported-on-A", x.is_k_supported_on(k, part_a)),
        ("y-supported-on-B", y.is_k_supported_on(k, part_b)),
        ("pair-supported-on-D", x.is_k_supported_on(k, part_d) and y.is_k_supported_on(k, part_d)),
    ]:
        if not cond:
            raise VerificationFailed(name)
    ra = part_a.intersect(part_d)
    rb = part_b.intersect(part_d)
    rd = ra.union(rb)
    for name, cond in [
        ("x-supported-on-refined-A", x.is_k_supported_on(k, ra)),
        ("y-supported-on-refined-B", y.is_k_supported_on(k, rb)),
        ("pair-supported-on-refined-D", x.is_k_supported_on(k, rd) and y.is_k_supported_on(k, rd)),
    ]:
        if not cond:
            raise VerificationFailed(name)
    return ra, rb, rd


@dataclass(frozen=True)
class MonoidalReport:
    kind: str
    ok: bool
    detail: str = ""


def _pair_simplex(x: Simplex, y: Simplex) -> Simplex:
    from .msets import ProductFamily

    fam = ProductFamily((x.family, y.family))
    return Simplex(
        tuple(
            MElt(fam, (a.payload, b.payload))
            for a, b in zip(x.coords, y.coords)
        )
    )


def monoidal_witness(kind: str, simplices: Sequence[Simplex]) -> MonoidalReport:
    """Transport box membership across the structural isomorphisms.

    assoc: ((x,y),z) in (X box Y) box Z implies (x,(y,z)) in X box (Y box Z),
    running the support-refinement argument at every level; symm swaps the
    two inputs; unit pairs with the one-point object."""
    if kind == "assoc":
        if len(simplices) != 3:
            raise ArityMismatch("associativity transport needs three simplices")
        x, y, z = simplices
        inner = box_membership([x, y])
        if not isinstance(inner, BoxWitness):
            return MonoidalReport(kind, False, f"pair not in box: {inner}")
        outer = box_membership([_pair_simplex(x, y), z])
        if not isinstance(outer, BoxWitness):
            return MonoidalReport(kind, False, f"outer pair not in box: {outer}")
        for k in range(x.degree + 1):
            a_k, b_k = inner.levels[k]
            d_k, c_k = outer.levels[k]
            ra, rb, rd = refine_supports(x, y, k, a_k, b_k, d_k)
            if not rb.disjoint_from(c_k):
                return MonoidalReport(kind, False, f"B'∩C nonempty at level {k}")
            if not rb.union(c_k).is_coinfinite():
                return MonoidalReport(kind, False, f"B'∪C not co-infinite at level {k}")
            if not ra.disjoint_from(rb.union(c_k)):
                return MonoidalReport(kind, False, f"A' meets B'∪C at level {k}")
            if not ra.union(rb).union(c_k).is_coinfinite():
                return MonoidalReport(kind, False, f"triple union not co-infinite at {k}")
        right_inner = box_membership([y, z])
        if not isinstance(right_inner, BoxWitness):
            return MonoidalReport(kind, False, "right pair not in box")
        right_outer = box_membership([x, _pair_simplex(y, z)])
        if not isinstance(right_outer, BoxWitness):
            return MonoidalReport(kind, False, "right outer pair not in box")
        unbiased = box_membership([x, y, z])
        if not isinstance(unbiased, BoxWitness):
            return MonoidalReport(kind, False, "unbiased membership failed")
        return MonoidalReport(kind, True)

    if kind == "symm":
        if len(simplices) != 2:
            raise ArityMismatch("symmetry transport needs two simplices")
        x, y = simplices
        fwd = box_membership([x, y])
        bwd = box_membership([y, x])
        ok = isinstance(fwd, BoxWitness) == isinstance(bwd, BoxWitness)
        return MonoidalReport(kind, ok, "" if ok else "asymmetric membership")

    if kind == "unit":
        if len(simplices) != 1:
            raise ArityMismatch("unit transport needs one simplex")
        x = simplices[0]
        star = Simplex(tuple(STAR for _ in range(x.degree + 1)))
        res = box_membership([x, star])
        mild = x.is_mild()
        ok = isinstance(res, BoxWitness) == mild
        return MonoidalReport(kind, ok, "" if ok else "unit pairing mismatch")

    raise MalformedLiteral("kind must be assoc, symm, or unit")


# -- the coproduct isomorphism for finite-injection families ------------------------------


@dataclass(frozen=True)
class CoproductIsoReport:
    left_count: int
    right_count: int
    bijective: bool
    degree: int
    entry_bound: int


def inj_coproduct_iso(
    src_a: frozenset[int], src_b: frozenset[int], degree: int, entry_bound: int = 8
) -> CoproductIsoReport:
    """Exhaustively verify that restriction identifies the simplices on the
    disjoint union A ⊔ B with the box pairs of simplices on A and on B,
    within the entry bound.  The sources must be disjoint finite sets."""
    if src_a & src_b:
        raise MalformedLiteral("sources must be disjoint")
    fam_ab = FiniteInjFamily(frozenset(src_a | src_b))
    fam_a = FiniteInjFamily(frozenset(src_a))
    fam_b = FiniteInjFamily(frozenset(src_b))

    space_ab = TruncEMSS(fam_ab, depth=max(degree, 0))
    left = space_ab.simplices(degree, entry_bound) if degree >= 0 else []

    verts_a = fam_a.elements(entry_bound)
    verts_b = fam_b.elements(entry_bound)
    right = 0
    seen_images = set()
    for tup_a in itertools.product(verts_a, repeat=degree + 1):
        sa = Simplex(tup_a)
        for tup_b in itertools.product(verts_b, repeat=degree + 1):
            sb = Simplex(tup_b)
            if isinstance(box_membership([sa, sb]), BoxWitness):
                right += 1
                glued = tuple(
                    tuple(sorted((dict(a.payload) | dict(b.payload)).items()))
                    for a, b in zip(tup_a, tup_b)
                )
                seen_images.add(glued)
    restriction_hits = set()
    for s in left:
        key = tuple(c.payload for c in s.coords)
        restriction_hits.add(key)
    bij = (len(left) == right) and (seen_images == restriction_hits)
    return CoproductIsoReport(len(left), right, bij, degree, entry_bound)
