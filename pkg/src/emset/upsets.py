"""Exact algebra of ultimately periodic subsets of omega = {1, 2, 3, ...}.

A UPSet denotes

    S = exceptional  ∪  {x > threshold : x mod period ∈ residues}

and this class of sets is closed under union, intersection, complement in
omega, and under images and preimages along piecewise-arithmetic injections.
Every instance is stored in canonical form (minimal period, then minimal
threshold), so two UPSets denote the same set iff they are field-identical.

The residue set is kept as a bitmask of width `period`; the periodic algebra
(alignment, folding to the minimal period, boolean combinations) then runs on
machine integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import MalformedLiteral


@dataclass(frozen=True)
class Finite:
    size: int


@dataclass(frozen=True)
class Cofinite:
    missing: int


@dataclass(frozen=True)
class BiInfinite:
    pass


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _replicate(mask: int, width: int, total: int) -> int:
    """Tile a width-bit pattern out to total bits (width must divide total)."""
    out, w = mask, width
    while w * 2 <= total:
        out |= out << w
        w *= 2
    rem = total - w
    if rem:
        out |= (out & ((1 << rem) - 1)) << w
    return out


def _reduce_period(mask: int, p: int) -> tuple[int, int]:
    """Minimal period of a p-periodic bit pattern, by prime-step folding."""
    while True:
        for q in _prime_factors(p):
            d = p // q
            low = mask & ((1 << d) - 1)
            if _replicate(low, d, p) == mask:
                mask, p = low, d
                break
        else:
            return mask, p


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class UPSet:
    __slots__ = ("threshold", "_emask", "period", "_rmask")

    def __init__(self, threshold: int, exceptional, period: int, residues):
        if not (isinstance(threshold, int) and threshold >= 0):
            raise MalformedLiteral(f"threshold must be a natural number, got {threshold!r}")
        if not (isinstance(period, int) and period >= 1):
            raise MalformedLiteral(f"period must be positive, got {period!r}")
        excmask = 0
        for x in exceptional:
            if not (isinstance(x, int) and 1 <= x <= threshold):
                raise MalformedLiteral(f"exceptional part must lie in 1..{threshold}")
            excmask |= 1 << x
        mask = 0
        for r in residues:
            if not (isinstance(r, int) and 0 <= r < period):
                raise MalformedLiteral(f"residues must lie in 0..{period - 1}")
            mask |= 1 << r
        n, excmask, p, mask = _canonical(threshold, excmask, period, mask)
        object.__setattr__(self, "threshold", n)
        object.__setattr__(self, "_emask", excmask)
        object.__setattr__(self, "period", p)
        object.__setattr__(self, "_rmask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("UPSet instances are immutable")

    @property
    def residues(self) -> frozenset[int]:
        return frozenset(_bits(self._rmask))

    @property
    def exceptional(self) -> frozenset[int]:
        return frozenset(_bits(self._emask))

    def __eq__(self, other) -> bool:
        if not isinstance(other, UPSet):
            return NotImplemented
        return (
            self.threshold == other.threshold
            and self.period == other.period
            and self._rmask == other._rmask
            and self._emask == other._emask
        )

    def __hash__(self) -> int:
        return hash((self.threshold, self._emask, self.period, self._rmask))

    def __repr__(self) -> str:
        return (
            f"UPSet(threshold={self.threshold}, exceptional={set(self.exceptional) or '{}'}, "
            f"period={self.period}, residues={set(self.residues) or '{}'})"
        )

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def finite(elements: Iterable[int]) -> "UPSet":
        elems = frozenset(elements)
        if not all(isinstance(x, int) and x >= 1 for x in elems):
            raise MalformedLiteral("finite sets must consist of positive integers")
        n = max(elems, default=0)
        return UPSet(n, elems, 1, ())

    @staticmethod
    def progression(period: int, residues: Iterable[int]) -> "UPSet":
        return UPSet(0, (), period, residues)

    @staticmethod
    def arithmetic(start: int, step: int) -> "UPSet":
        """{start, start+step, start+2*step, ...} for start >= 1, step >= 1."""
        if start < 1 or step < 1:
            raise MalformedLiteral("arithmetic progression needs start, step >= 1")
        return UPSet(start - 1, (), step, (start % step,))

    # -- membership and inspection -------------------------------------------

    def __contains__(self, x: int) -> bool:
        if x < 1:
            return False
        if x <= self.threshold:
            return bool((self._emask >> x) & 1)
        return bool((self._rmask >> (x % self.period)) & 1)

    def canonicalize(self) -> "UPSet":
        """Idempotent; instances are already stored canonically."""
        return self

    def has_class(self, c: int) -> bool:
        """Whether the residue class of c modulo this period lies in the tail."""
        return bool((self._rmask >> (c % self.period)) & 1)

    def classify(self) -> Finite | Cofinite | BiInfinite:
        count = self._rmask.bit_count()
        if count == 0:
            return Finite(self._emask.bit_count())
        if count == self.period:
            return Cofinite(self.threshold - self._emask.bit_count())
        return BiInfinite()

    def is_empty(self) -> bool:
        return not self._emask and not self._rmask

    def is_finite(self) -> bool:
        return self._rmask == 0

    def is_infinite(self) -> bool:
        return self._rmask != 0

    def is_coinfinite(self) -> bool:
        """True iff omega minus this set is infinite."""
        return self._rmask.bit_count() < self.period

    def cardinality(self) -> int | None:
        """Size when finite, None otherwise."""
        return self._emask.bit_count() if self.is_finite() else None

    def min_element(self) -> int | None:
        if self._emask:
            return (self._emask & -self._emask).bit_length() - 1
        firsts = self._first_tail_elements()
        return firsts[0] if firsts else None

    def _first_tail_elements(self) -> list[int]:
        """The smallest tail element of each residue class, sorted."""
        n, p = self.threshold, self.period
        return sorted(n + 1 + ((r - n - 1) % p) for r in _bits(self._rmask))

    def __iter__(self) -> Iterator[int]:
        yield from _bits(self._emask)
        firsts = self._first_tail_elements()
        if not firsts:
            return
        block = 0
        while True:
            for t in firsts:
                yield t + block * self.period
            block += 1

    def members_up_to(self, n: int) -> list[int]:
        return [x for x in range(1, n + 1) if x in self]

    def first_n(self, k: int) -> list[int]:
        out = []
        for x in self:
            out.append(x)
            if len(out) == k:
                break
        return out

    # -- boolean algebra -------------------------------------------------------

    def _segment_mask(self, n: int) -> int:
        """Bits 1..n of the set, as one integer."""
        return self._emask | _tail_tiling(self._rmask, self.period, self.threshold + 1, n)

    def _aligned(self, other: "UPSet") -> tuple[int, int, int, int, int, int]:
        n = max(self.threshold, other.threshold)
        p = math.lcm(self.period, other.period)
        m1 = _replicate(self._rmask, self.period, p)
        m2 = _replicate(other._rmask, other.period, p)
        return n, p, m1, m2, self._segment_mask(n), other._segment_mask(n)

    def union(self, other: "UPSet") -> "UPSet":
        n, p, m1, m2, e1, e2 = self._aligned(other)
        return _from_masks(n, e1 | e2, p, m1 | m2)

    def intersect(self, other: "UPSet") -> "UPSet":
        n, p, m1, m2, e1, e2 = self._aligned(other)
        return _from_masks(n, e1 & e2, p, m1 & m2)

    def complement(self) -> "UPSet":
        n, p = self.threshold, self.period
        seg = (((1 << (n + 1)) - 1) ^ 1) ^ self._segment_mask(n)
        return _from_masks(n, seg, p, ((1 << p) - 1) ^ self._rmask)

    def difference(self, other: "UPSet") -> "UPSet":
        return self.intersect(other.complement())

    def subset_of(self, other: "UPSet") -> bool:
        return self.intersect(other) == self

    def disjoint_from(self, other: "UPSet") -> bool:
        return self.intersect(other).is_empty()

    # -- printing ---------------------------------------------------------------

    def __str__(self) -> str:
        if self.is_finite():
            return "up{finite=[%s]}" % ",".join(str(x) for x in sorted(self.exceptional))
        if self.threshold == 0 and not self.exceptional:
            return "up{mod %d in [%s]}" % (
                self.period,
                ",".join(str(r) for r in sorted(self.residues)),
            )
        return "up{N=%d, exc=[%s], p=%d, res=[%s]}" % (
            self.threshold,
            ",".join(str(x) for x in sorted(self.exceptional)),
            self.period,
            ",".join(str(r) for r in sorted(self.residues)),
        )


def _tail_tiling(mask: int, p: int, lo: int, hi: int) -> int:
    """Bits lo..hi of the p-periodic pattern (bit x set iff x mod p in mask)."""
    if mask == 0 or hi < lo:
        return 0
    width = ((hi // p) + 2) * p
    tiled = _replicate(mask, p, width)
    return tiled & (((1 << (hi + 1)) - 1) ^ ((1 << lo) - 1))


def _canonical(n: int, excmask: int, p: int, mask: int):
    """Canonicalize from bit masks (excmask holds bits 1..n, mask the residue
    pattern): minimal period by prime-step folding, then the threshold is the
    highest position where the exceptional region disagrees with the tail."""
    if mask == 0:
        p = 1
        diff = excmask
    else:
        mask, p = _reduce_period(mask, p)
        diff = (excmask ^ _tail_tiling(mask, p, 1, n)) & (((1 << (n + 1)) - 1) ^ 1)
    n = max(diff.bit_length() - 1, 0)
    excmask &= (1 << (n + 1)) - 1
    return n, excmask, p, mask


def _from_masks(n: int, excmask: int, p: int, mask: int) -> UPSet:
    n, excmask, p, mask = _canonical(n, excmask, p, mask)
    out = object.__new__(UPSet)
    object.__setattr__(out, "threshold", n)
    object.__setattr__(out, "_emask", excmask)
    object.__setattr__(out, "period", p)
    object.__setattr__(out, "_rmask", mask)
    return out


def union_all(sets: Iterable[UPSet]) -> UPSet:
    out = EMPTY
    for s in sets:
        out = out.union(s)
    return out


def union_points_aps(points: Iterable[int], aps: Iterable[tuple[int, int]]) -> UPSet:
    """The union of a finite set with upward progressions {start, start+step, ...},
    materialized in one pass (one canonicalization at the end).

    Progressions are grouped by step so the wide tilings happen once per
    distinct step rather than once per progression."""
    aps = list(aps)
    points = list(points)
    if not aps:
        return UPSet.finite(points)
    period = math.lcm(*(d for _, d in aps))
    bound = max([s for s, _ in aps] + points)
    seg = bound + 1
    excmask = 0
    for x in points:
        excmask |= 1 << x
    by_step: dict[int, int] = {}
    first: dict[tuple[int, int], int] = {}
    for start, step in aps:
        r = start % step
        by_step[step] = by_step.get(step, 0) | (1 << r)
        key = (step, r)
        if key not in first or start < first[key]:
            first[key] = start
    pattern = 0
    for step, group in by_step.items():
        pattern |= _replicate(group, step, period)
    window = (1 << seg) - 1
    for (step, r), start in first.items():
        if start <= bound:
            ray = _replicate(1 << r, step, ((seg // step) + 2) * step)
            excmask |= ray & window & ~((1 << start) - 1)
    return _from_masks(bound, excmask, period, pattern)


def intersect_all(sets: Iterable[UPSet]) -> UPSet:
    out = OMEGA
    for s in sets:
        out = out.intersect(s)
    return out


EMPTY = UPSet(0, (), 1, ())
OMEGA = UPSet(0, (), 1, (0,))
EVENS = UPSet(0, (), 2, (0,))
ODDS = UPSet(0, (), 2, (1,))
