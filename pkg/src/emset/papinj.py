"""Piecewise-arithmetic injections of omega, and tuples of them.

A PAPInj is an injective map given by a finite table below a threshold and
affine pieces on residue classes above it.  The class contains the identity,
all finite-support permutations, x -> x+1, x -> 2x, and the order-preserving
enumerations of all infinite ultimately periodic sets, and it is closed under
composition.  Instances may carry a restricted UPSet domain; the monoid
elements are the total ones (domain omega).  Restricted instances are the
working representation for injections A -> omega and for the partial maps
(ranks, order embeddings, partial inverses) from which gluing constructions
are assembled.

Canonical form: the period is always a multiple of the domain period, pieces
on residue classes that never meet the domain are stored as None, the period
is minimal among such divisors, and the threshold is minimal down to the
domain threshold.  Two instances denote the same map iff they are
field-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    FiniteSetError,
    MalformedLiteral,
    NotCoinfinite,
    NotInjective,
)
from .upsets import (
    EMPTY,
    OMEGA,
    UPSet,
    _prime_factors,
    _replicate,
    union_all,
    union_points_aps,
)

Piece = tuple[Fraction, Fraction]


def _as_frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise MalformedLiteral(f"expected integer or fraction, got {v!r}")


@dataclass(frozen=True)
class PAPInj:
    threshold: int
    table: tuple[tuple[int, int], ...]
    period: int
    pieces: tuple[Piece | None, ...]
    domain: UPSet = OMEGA

    # -- canonicalization -----------------------------------------------------

    def __post_init__(self) -> None:
        n, p, dom = self.threshold, self.period, self.domain
        if not (isinstance(n, int) and n >= 0):
            raise MalformedLiteral(f"threshold must be a natural number, got {n!r}")
        if not (isinstance(p, int) and p >= 1):
            raise MalformedLiteral(f"period must be positive, got {p!r}")
        if len(self.pieces) != p:
            raise MalformedLiteral("pieces must list one entry per residue class")
        tab: dict[int, int] = {}
        for k, v in self.table:
            if not (isinstance(k, int) and 1 <= k <= n and k in dom):
                raise MalformedLiteral(f"table key {k} outside domain cap {n}")
            if not (isinstance(v, int) and v >= 1):
                raise MalformedLiteral(f"table value {v!r} is not in omega")
            if k in tab:
                raise MalformedLiteral(f"duplicate table key {k}")
            tab[k] = v
        pieces = []
        for entry in self.pieces:
            if entry is None:
                pieces.append(None)
                continue
            a, b = entry
            a, b = _as_frac(a), _as_frac(b)
            if a <= 0:
                raise MalformedLiteral("piece slopes must be positive")
            pieces.append((a, b))

        # Working period and threshold: refine by the domain pattern.
        big_p = math.lcm(p, dom.period)
        big_n = max(n, dom.threshold)

        def constrained(c: int) -> bool:
            return dom.has_class(c)

        wide: list[Piece | None] = []
        for c in range(big_p):
            if constrained(c):
                pc = pieces[c % p]
                if pc is None:
                    raise MalformedLiteral(f"missing piece for inhabited residue class {c}")
                if (pc[0] * big_p).denominator != 1:
                    raise MalformedLiteral("slope times period must be integral")
                wide.append(pc)
            else:
                wide.append(None)
        for x in range(n + 1, big_n + 1):
            if x in dom:
                pc = pieces[x % p]
                if pc is None:
                    raise MalformedLiteral(f"missing piece covering domain point {x}")
                val = pc[0] * x + pc[1]
                if val.denominator != 1 or val < 1:
                    raise MalformedLiteral(f"piece value at {x} is not in omega")
                tab[x] = int(val)
        for c in range(big_p):
            pc = wide[c]
            if pc is None:
                continue
            x0 = big_n + 1 + ((c - big_n - 1) % big_p)
            val = pc[0] * x0 + pc[1]
            if val.denominator != 1 or val < 1:
                raise MalformedLiteral(f"piece value at {x0} is not in omega")

        # Minimal period by prime-step folding, staying a multiple of the
        # domain period (valid periods are gcd-closed under that constraint).
        while True:
            for q in _prime_factors(big_p):
                d = big_p // q
                if d % dom.period:
                    continue
                head = wide[:d]
                if all(wide[k * d : (k + 1) * d] == head for k in range(1, q)):
                    big_p, wide = d, head
                    break
            else:
                break

        # Minimal threshold, floored at the domain threshold.
        while big_n > dom.threshold:
            if big_n in dom:
                pc = wide[big_n % big_p]
                if pc is None:
                    break
                val = pc[0] * big_n + pc[1]
                if val.denominator != 1 or val < 1 or tab.get(big_n) != int(val):
                    break
                del tab[big_n]
            big_n -= 1

        object.__setattr__(self, "threshold", big_n)
        object.__setattr__(self, "table", tuple(sorted(tab.items())))
        object.__setattr__(self, "period", big_p)
        object.__setattr__(self, "pieces", tuple(wide))
        object.__setattr__(self, "_memo", {})

    # -- basic inspection -------------------------------------------------------

    @property
    def is_total(self) -> bool:
        return self.domain == OMEGA

    def _tab(self) -> dict[int, int]:
        memo = self._memo  # type: ignore[attr-defined]
        if "tab" not in memo:
            memo["tab"] = dict(self.table)
        return memo["tab"]

    def eval(self, x: int) -> int:
        if x not in self.domain:
            raise ValueError(f"{x} is outside the domain of this map")
        if x <= self.threshold:
            return self._tab()[x]
        a, b = self.pieces[x % self.period]
        return int(a * x + b)

    def __call__(self, x: int) -> int:
        return self.eval(x)

    def _tail_aps(self) -> list[tuple[int, int, int, Piece]]:
        """(class, start value, step, piece) for each inhabited residue class."""
        memo = self._memo  # type: ignore[attr-defined]
        if "aps" not in memo:
            out = []
            n, p = self.threshold, self.period
            for c in range(p):
                pc = self.pieces[c]
                if pc is None:
                    continue
                x0 = n + 1 + ((c - n - 1) % p)
                start = int(pc[0] * x0 + pc[1])
                step = int(pc[0] * p)
                out.append((c, start, step, pc))
            memo["aps"] = out
        return memo["aps"]

    # -- images and preimages ----------------------------------------------------

    def image(self, subset: UPSet | None = None) -> UPSet:
        if subset is None:
            memo = self._memo  # type: ignore[attr-defined]
            if "image" not in memo:
                memo["image"] = self._image_of(self.domain)
            return memo["image"]
        return self._image_of(subset.intersect(self.domain))

    def _image_of(self, s: UPSet) -> UPSet:
        bound = max(self.threshold, s.threshold)
        pts = [self.eval(x) for x in s.members_up_to(bound)]
        aps = []
        big = math.lcm(self.period, s.period)
        for c in range(big):
            if not s.has_class(c):
                continue
            x0 = bound + 1 + ((c - bound - 1) % big)
            a, _ = self.pieces[c % self.period]
            aps.append((self.eval(x0), int(a * big)))
        return union_points_aps(pts, aps)

    def _argument_period(self, value_period: int) -> int:
        """The least argument period (multiple of this map's period) along
        which every tail piece advances by a multiple of value_period."""
        big = 1
        for _, _, step, _ in self._tail_aps():
            big = math.lcm(big, value_period // math.gcd(step, value_period))
        return self.period * big

    def preimage(self, target: UPSet) -> UPSet:
        # Beyond a class-stable bound, membership of the value in the target
        # is periodic in the argument along the derived argument period.
        big = self._argument_period(target.period)
        bound = max(self.threshold, self.domain.threshold)
        for _, _, _, (a, b) in self._tail_aps():
            if target.threshold >= 1:
                bound = max(bound, math.floor((target.threshold - b) / a))
        exc = frozenset(
            x for x in range(1, bound + 1) if x in self.domain and self.eval(x) in target
        )
        res = set()
        for c in range(big):
            if not self.domain.has_class(c):
                continue
            x0 = bound + 1 + ((c - bound - 1) % big)
            if self.eval(x0) in target:
                res.add(c)
        return UPSet(bound, exc, big, frozenset(res))

    # -- composition and restriction ----------------------------------------------

    def compose(self, inner: "PAPInj") -> "PAPInj":
        """self after inner; the image of inner must lie in the domain of self."""
        if not inner.image().subset_of(self.domain):
            raise MalformedLiteral("composition undefined: inner image leaves outer domain")
        big = inner._argument_period(self.period)
        bound = max(inner.threshold, inner.domain.threshold)
        for _, _, _, (a, b) in inner._tail_aps():
            if self.threshold >= 1:
                bound = max(bound, math.floor((self.threshold - b) / a))
        tab = {x: self.eval(inner.eval(x)) for x in inner.domain.members_up_to(bound)}
        pieces: list[Piece | None] = []
        for c in range(big):
            if not inner.domain.has_class(c):
                pieces.append(None)
                continue
            a1, b1 = inner.pieces[c % inner.period]
            x0 = bound + 1 + ((c - bound - 1) % big)
            y0 = int(a1 * x0 + b1)
            a2, b2 = self.pieces[y0 % self.period]
            pieces.append((a2 * a1, a2 * b1 + b2))
        return PAPInj(bound, tuple(sorted(tab.items())), big, tuple(pieces), inner.domain)

    def restrict(self, part: UPSet) -> "PAPInj":
        dom = self.domain.intersect(part)
        tab = tuple((k, v) for k, v in self.table if k in dom)
        return PAPInj(self.threshold, tab, self.period, self.pieces, dom)

    def partial_inverse(self) -> "PAPInj":
        """The inverse map, defined on the image.  Assumes injectivity."""
        img = self.image()
        tab = {v: k for k, v in self.table}
        aps = self._tail_aps()
        big = math.lcm(img.period, *(step for _, _, step, _ in aps)) if aps else img.period
        bound = max([img.threshold] + [start for _, start, _, _ in aps] + list(tab))
        pieces: list[Piece | None] = [None] * big
        for c, start, step, (a, b) in aps:
            x0 = self.threshold + 1 + ((c - self.threshold - 1) % self.period)
            y, x = start, x0
            while y <= bound:
                tab[y] = x
                y += step
                x += self.period
            for cc in range(big):
                if cc % step == start % step:
                    if pieces[cc] is not None:
                        raise NotInjective(x0, x0, "overlapping tail images")
                    pieces[cc] = (1 / a, -b / a)
        return PAPInj(bound, tuple(sorted(tab.items())), big, tuple(pieces), img)

    # -- comparison ------------------------------------------------------------------

    def disagreement(self, other: "PAPInj") -> UPSet:
        """The set of common-domain points where the two maps differ."""
        dom = self.domain.intersect(other.domain)
        bound = max(self.threshold, other.threshold, dom.threshold)
        big = math.lcm(self.period, other.period, dom.period)
        exc = [
            x
            for x in dom.members_up_to(bound)
            if self.eval(x) != other.eval(x)
        ]
        out = UPSet.finite(exc) if exc else EMPTY
        for c in range(big):
            if not dom.has_class(c):
                continue
            p1 = self.pieces[c % self.period]
            p2 = other.pieces[c % other.period]
            if p1 == p2:
                continue
            cls = UPSet(bound, frozenset(), big, frozenset({c}))
            if p1[0] != p2[0]:
                # affine pieces with distinct slopes agree in at most one point
                meet = (p2[1] - p1[1]) / (p1[0] - p2[0])
                if meet.denominator == 1 and int(meet) > bound and int(meet) % big == c:
                    cls = cls.difference(UPSet.finite({int(meet)}))
            out = out.union(cls)
        return out

    def equal_on(self, other: "PAPInj", part: UPSet) -> bool:
        return self.disagreement(other).intersect(part).is_empty()

    def fixes_pointwise(self, part: UPSet) -> bool:
        """Membership test for the submonoid of maps fixing `part` elementwise."""
        return self.equal_on(identity(), part)

    def agrees_nowhere_outside(self, part: UPSet) -> bool:
        return self.disagreement(identity()).subset_of(part)

    # -- injectivity --------------------------------------------------------------

    def validate(self) -> "PAPInj":
        """Return self if globally injective, else raise NotInjective with a
        colliding argument pair."""
        seen: dict[int, int] = {}
        for k, v in self.table:
            if v in seen:
                raise NotInjective(seen[v], k)
            seen[v] = k
        aps = self._tail_aps()
        if aps:
            # two upward progressions overlap iff their starts agree modulo the
            # gcd of the steps, i.e. they share a residue class at the common
            # scale; detect that on per-step class masks, then witness by CRT
            by_step: dict[int, int] = {}
            clash = None
            for _, start, step, _ in aps:
                bit = 1 << (start % step)
                if by_step.get(step, 0) & bit:
                    clash = (step, step)
                    break
                by_step[step] = by_step.get(step, 0) | bit
            if clash is None:
                steps = sorted(by_step)
                for i, d1 in enumerate(steps):
                    for d2 in steps[i + 1 :]:
                        scale = math.lcm(d1, d2)
                        if _replicate(by_step[d1], d1, scale) & _replicate(
                            by_step[d2], d2, scale
                        ):
                            clash = (d1, d2)
                            break
                    if clash:
                        break
            if clash is not None:
                e1, e2 = clash
                for i in range(len(aps)):
                    _, s1, d1, (a1, b1) = aps[i]
                    if d1 not in clash:
                        continue
                    for _, s2, d2, (a2, b2) in aps[i + 1 :]:
                        if d2 not in clash:
                            continue
                        g = math.gcd(d1, d2)
                        if s1 % g != s2 % g:
                            continue
                        step2 = d2 // g
                        t = (
                            (((s2 - s1) // g) * pow(d1 // g, -1, step2)) % step2
                            if step2 > 1
                            else 0
                        )
                        y = s1 + d1 * t
                        lcm = d1 // g * d2
                        if y < s2:
                            y += ((s2 - y + lcm - 1) // lcm) * lcm
                        x1 = (Fraction(y) - b1) / a1
                        x2 = (Fraction(y) - b2) / a2
                        raise NotInjective(int(x1), int(x2))
        for v, k in seen.items():
            for _, s, d, (a, b) in aps:
                if v >= s and (v - s) % d == 0:
                    x2 = (Fraction(v) - b) / a
                    raise NotInjective(k, int(x2))
        return self

    def is_bijection(self) -> bool:
        return self.is_total and self.image() == OMEGA

    # -- printing --------------------------------------------------------------------

    def __str__(self) -> str:
        parts = []
        if self.table:
            parts.append(
                "table={%s}" % ",".join(f"{k}:{v}" for k, v in self.table)
            )
            parts.append(f"N={self.threshold}")
        parts.append(f"p={self.period}")
        chunks = []
        for r, pc in enumerate(self.pieces):
            if pc is None:
                continue
            a, b = pc
            off = str(b.numerator) if b.denominator == 1 else f"{b.numerator}/{b.denominator}"
            chunks.append(f"({r}, {a.numerator}/{a.denominator}, {off})")
        parts.append("pieces=[%s]" % ", ".join(chunks))
        if not self.is_total:
            parts.append(f"domain={self.domain}")
        return "pap{%s}" % ", ".join(parts)


# -- stock elements -------------------------------------------------------------------


def identity() -> PAPInj:
    return PAPInj(0, (), 1, ((Fraction(1), Fraction(0)),))


def affine(slope: int, offset: int) -> PAPInj:
    """x -> slope*x + offset, requiring slope >= 1 and slope + offset >= 1."""
    return PAPInj(0, (), 1, ((Fraction(slope), Fraction(offset)),))


def succ() -> PAPInj:
    return affine(1, 1)


def double() -> PAPInj:
    return affine(2, 0)


def swap(a: int, b: int) -> PAPInj:
    if a == b or a < 1 or b < 1:
        raise MalformedLiteral("swap needs two distinct positive integers")
    n = max(a, b)
    tab = {x: x for x in range(1, n + 1)}
    tab[a], tab[b] = b, a
    return PAPInj(n, tuple(sorted(tab.items())), 1, ((Fraction(1), Fraction(0)),))


def from_permutation(mapping: dict[int, int]) -> PAPInj:
    """The finite-support permutation given by `mapping`, identity elsewhere."""
    n = max(list(mapping.keys()) + list(mapping.values()), default=0)
    tab = {x: x for x in range(1, n + 1)}
    tab.update(mapping)
    out = PAPInj(n, tuple(sorted(tab.items())), 1, ((Fraction(1), Fraction(0)),))
    return out.validate()


def interleave(n: int, j: int) -> PAPInj:
    """The j-th strand x -> n*x - j + 1 of the standard n-fold interleaving."""
    if not (1 <= j <= n):
        raise MalformedLiteral("strand index must lie in 1..n")
    return affine(n, 1 - j)


# -- enumerators, ranks, embeddings, gluing ---------------------------------------------


def enumerator(s: UPSet) -> PAPInj:
    """The order-preserving bijection omega -> s (k maps to the k-th smallest
    element).  Raises FiniteSetError when s is finite."""
    if s.is_finite():
        raise FiniteSetError(f"cannot enumerate the finite set {s}")
    exc = sorted(s.exceptional)
    f = len(exc)
    firsts = s._first_tail_elements()
    m = len(firsts)
    tab = {k + 1: exc[k] for k in range(f)}
    pieces: list[Piece | None] = [None] * m
    for sidx, t in enumerate(firsts):
        r = (f + 1 + sidx) % m
        slope = Fraction(s.period, m)
        pieces[r] = (slope, Fraction(t) - slope * (f + 1 + sidx))
    return PAPInj(f, tuple(sorted(tab.items())), m, tuple(pieces))


def rank_of(s: UPSet) -> PAPInj:
    """The order isomorphism s -> omega (inverse of the enumerator)."""
    return enumerator(s).partial_inverse()


def order_embed(src: UPSet, dst: UPSet) -> PAPInj:
    """The order-preserving injection src -> dst hitting the smallest
    |src| elements of dst.  Requires dst infinite (or at least as large)."""
    if src.is_empty():
        return PAPInj(0, (), 1, (None,), EMPTY)
    if src.is_finite():
        elems = sorted(src.exceptional)
        targets = dst.first_n(len(elems))
        if len(targets) < len(elems):
            raise FiniteSetError("target set too small for order embedding")
        tab = tuple(sorted(zip(elems, targets)))
        return PAPInj(max(elems), tab, 1, (None,), src)
    return enumerator(dst).compose(rank_of(src))


def glue(branches: Sequence[tuple[UPSet, PAPInj]]) -> PAPInj:
    """Assemble one injection from maps prescribed on pairwise disjoint parts.

    Each part must lie inside the domain of its map; the result is defined on
    the union of the parts and validated for global injectivity."""
    branches = [(part, m) for part, m in branches if not part.is_empty()]
    for i, (part, m) in enumerate(branches):
        if not part.subset_of(m.domain):
            raise MalformedLiteral("glue branch leaves the domain of its map")
        for part2, _ in branches[i + 1 :]:
            if not part.disjoint_from(part2):
                raise MalformedLiteral("glue branches overlap")
    dom = union_all(part for part, _ in branches)
    if dom.is_empty():
        return PAPInj(0, (), 1, (None,), EMPTY)
    big = math.lcm(dom.period, *(math.lcm(part.period, m.period) for part, m in branches))
    bound = max(
        [dom.threshold]
        + [max(part.threshold, m.threshold) for part, m in branches]
    )
    tab = {}
    for part, m in branches:
        for x in part.members_up_to(bound):
            tab[x] = m.eval(x)
    pieces: list[Piece | None] = [None] * big
    for c in range(big):
        if not dom.has_class(c):
            continue
        for part, m in branches:
            if part.has_class(c):
                pieces[c] = m.pieces[c % m.period]
                break
    out = PAPInj(bound, tuple(sorted(tab.items())), big, tuple(pieces), dom)
    return out.validate()


def agreeing_bijection(f: PAPInj, part: UPSet) -> PAPInj:
    """A bijection of omega agreeing with f on the co-infinite set `part`:
    f itself there, the order isomorphism between the complements elsewhere."""
    if not part.is_coinfinite():
        raise NotCoinfinite(f"{part} is not co-infinite")
    fpart = f.image(part)
    rest_src = part.complement()
    rest_dst = fpart.complement()
    if not rest_dst.is_infinite():
        raise NotCoinfinite("the complement of the image is finite")
    h = glue([(part, f), (rest_src, order_embed(rest_src, rest_dst))])
    if not h.is_bijection():
        raise NotCoinfinite("agreeing bijection failed to be onto")
    return h


# -- tuples of injections with disjoint images (n-ary operad operations) -----------------


@dataclass(frozen=True)
class InjN:
    components: tuple[PAPInj, ...]

    def __post_init__(self) -> None:
        if len(self.components) < 1:
            raise MalformedLiteral("arity must be at least 1")
        for u in self.components:
            if not u.is_total:
                raise MalformedLiteral("components must be total injections")
        for i, u in enumerate(self.components):
            for v in self.components[i + 1 :]:
                if not u.image().disjoint_from(v.image()):
                    raise MalformedLiteral("component images must be pairwise disjoint")

    @property
    def arity(self) -> int:
        return len(self.components)

    def component(self, j: int) -> PAPInj:
        """The composite with the j-th coordinate embedding (1-based)."""
        return self.components[j - 1]

    def eval(self, j: int, t: int) -> int:
        return self.components[j - 1].eval(t)

    def image(self) -> UPSet:
        return union_all(u.image() for u in self.components)

    def precompose(self, blocks: Sequence[PAPInj]) -> "InjN":
        """Precompose with the block map sending (j, t) to (j, blocks[j-1](t))."""
        if len(blocks) != self.arity:
            raise MalformedLiteral("block count must match arity")
        return InjN(tuple(c.compose(u) for c, u in zip(self.components, blocks)))

    def __str__(self) -> str:
        return "injn[%s]" % "; ".join(str(c) for c in self.components)


def standard_interleaving(n: int) -> InjN:
    return InjN(tuple(interleave(n, j) for j in range(1, n + 1)))


def identity_injn() -> InjN:
    return InjN((identity(),))


def operad_compose(outer: InjN, inners: Sequence[InjN]) -> InjN:
    """Operadic composition: substitute the inner operations into the outer one.

    The (j, i)-th component of the result is outer_j after inner_{j,i}; the
    result has arity equal to the sum of the inner arities."""
    if len(inners) != outer.arity:
        raise MalformedLiteral("need one inner operation per outer slot")
    comps = []
    for j, inner in enumerate(inners, start=1):
        outer_j = outer.component(j)
        for i in range(1, inner.arity + 1):
            comps.append(outer_j.compose(inner.component(i)))
    return InjN(tuple(comps))
