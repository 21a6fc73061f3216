"""Degree-truncated simplicial structures over the action families.

For an action family X the associated simplicial object has, in degree n,
the (1+n)-tuples of elements of X; faces delete a coordinate, degeneracies
duplicate one, and a (1+n)-tuple of injections acts coordinatewise.  The
k-support of a simplex is the support of its k-th coordinate, so every
support question reduces exactly to the family layer.

Also here: finite groups given by multiplication tables, the block embedding
realizing any such group as bijections making omega a universe containing
every orbit type with infinite multiplicity, and fixed-point enumeration for
graph subgroups."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import (
    ArityMismatch,
    GroupTooLarge,
    IndexOutOfRange,
    MalformedLiteral,
    TruncationExceeded,
    UnsupportedFamily,
)
from .msets import (
    Classification,
    Family,
    FiniteInjFamily,
    MElt,
    NoMinimal,
    SELF_M,
)
from .papinj import PAPInj, identity
from .upsets import UPSet


@dataclass(frozen=True)
class Simplex:
    coords: tuple[MElt, ...]

    def __post_init__(self):
        if not self.coords:
            raise MalformedLiteral("a simplex needs at least one coordinate")
        fam = self.coords[0].family
        if any(c.family != fam for c in self.coords):
            raise MalformedLiteral("all coordinates must come from one family")

    @property
    def degree(self) -> int:
        return len(self.coords) - 1

    @property
    def family(self) -> Family:
        return self.coords[0].family

    def face(self, i: int) -> "Simplex":
        if not (0 <= i <= self.degree) or self.degree == 0:
            raise IndexOutOfRange(f"face index {i} out of range for degree {self.degree}")
        return Simplex(self.coords[:i] + self.coords[i + 1 :])

    def degeneracy(self, i: int) -> "Simplex":
        if not (0 <= i <= self.degree):
            raise IndexOutOfRange(f"degeneracy index {i} out of range")
        return Simplex(self.coords[: i + 1] + self.coords[i:])

    def pulled_back(self, f: Sequence[int]) -> "Simplex":
        """Reindex along a monotone map [m] -> [n]: coordinate i becomes
        coordinate f(i) of this simplex."""
        if any(f[i] > f[i + 1] for i in range(len(f) - 1)):
            raise MalformedLiteral("structure maps must be monotone")
        if f and not (0 <= f[0] and f[-1] <= self.degree):
            raise IndexOutOfRange("structure map leaves the degree range")
        return Simplex(tuple(self.coords[j] for j in f))

    def k_support(self, k: int) -> UPSet | NoMinimal:
        if not (0 <= k <= self.degree):
            raise IndexOutOfRange(f"coordinate {k} out of range")
        return self.coords[k].minimal_support()

    def is_k_supported_on(self, k: int, part: UPSet) -> bool:
        if not (0 <= k <= self.degree):
            raise IndexOutOfRange(f"coordinate {k} out of range")
        return self.coords[k].is_supported_on(part)

    def is_mild(self) -> bool:
        return all(
            c.classify() in (Classification.TAME, Classification.MILD_NOT_TAME)
            for c in self.coords
        )

    def is_tame(self) -> bool:
        return all(c.classify() == Classification.TAME for c in self.coords)

    def __str__(self) -> str:
        return "[%s]" % "; ".join(str(c) for c in self.coords)


def em_act(maps: Sequence[PAPInj], s: Simplex) -> Simplex:
    """Coordinatewise action of a (1+n)-tuple of injections on an n-simplex."""
    if len(maps) != s.degree + 1:
        raise ArityMismatch(
            f"need {s.degree + 1} injections for a degree-{s.degree} simplex"
        )
    return Simplex(tuple(c.act(u) for u, c in zip(maps, s.coords)))


def slot_act(k: int, u: PAPInj, s: Simplex) -> Simplex:
    """Action through the k-th coordinate inclusion of the acting tuple."""
    maps = [identity()] * (s.degree + 1)
    maps[k] = u
    return em_act(maps, s)


def monotone_maps(m: int, n: int) -> list[tuple[int, ...]]:
    """All monotone maps [m] -> [n] (as value tuples of length m+1)."""
    return [
        f
        for f in itertools.product(range(n + 1), repeat=m + 1)
        if all(f[i] <= f[i + 1] for i in range(m))
    ]


# -- truncated simplicial objects over a family ----------------------------------------


@dataclass(frozen=True)
class TruncEMSS:
    """A family together with a truncation degree and an optional filter.

    mode 'all' is the full object, 'tau' keeps the simplices all of whose
    coordinates admit finite supports, 'mu' those whose coordinates admit
    co-infinite supports.  The filtered objects are closed under faces,
    degeneracies, and the coordinatewise action, which the verification
    suite checks on samples."""

    base: Family
    depth: int = 3
    mode: str = "all"
    twist: "DomainTwist | None" = None

    def __post_init__(self):
        if self.mode not in ("all", "tau", "mu"):
            raise MalformedLiteral("mode must be all, tau, or mu")
        if self.depth < 0:
            raise MalformedLiteral("truncation degree must be at least 0")

    def member(self, s: Simplex) -> bool:
        if s.family != self.base or s.degree > self.depth:
            return False
        if self.mode == "tau":
            return s.is_tame()
        if self.mode == "mu":
            return s.is_mild()
        return True

    def filter_tau(self) -> "TruncEMSS":
        return TruncEMSS(self.base, self.depth, "tau", self.twist)

    def filter_mu(self) -> "TruncEMSS":
        return TruncEMSS(self.base, self.depth, "mu", self.twist)

    def simplex(self, payloads: Sequence) -> Simplex:
        return Simplex(tuple(self.base.elt(p) for p in payloads))

    def vertices(self, entry_bound: int) -> list[Simplex]:
        if not isinstance(self.base, FiniteInjFamily):
            raise UnsupportedFamily("vertex enumeration needs a finite source family")
        verts = [Simplex((x,)) for x in self.base.elements(entry_bound)]
        return [v for v in verts if self.member(v)]

    def simplices(self, degree: int, entry_bound: int) -> list[Simplex]:
        if degree > self.depth:
            raise TruncationExceeded(f"degree {degree} exceeds truncation {self.depth}")
        vs = self.vertices(entry_bound)
        out = []
        for tup in itertools.product(vs, repeat=degree + 1):
            s = Simplex(tuple(v.coords[0] for v in tup))
            if self.member(s):
                out.append(s)
        return out


def filter_tau_mu(space: TruncEMSS, which: str) -> TruncEMSS:
    if which == "tau":
        return space.filter_tau()
    if which == "mu":
        return space.filter_mu()
    raise MalformedLiteral("filter must be tau or mu")


# -- finite groups and universal embeddings ---------------------------------------------


@dataclass(frozen=True)
class FinGroup:
    """A finite group as a labelled multiplication table."""

    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]  # table[i][j] = index of elements[i] * elements[j]

    def __post_init__(self):
        n = len(self.elements)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise MalformedLiteral("multiplication table must be square")
        if self.identity_index() is None:
            raise MalformedLiteral("no identity element")

    @property
    def order(self) -> int:
        return len(self.elements)

    def identity_index(self) -> int | None:
        n = self.order
        for e in range(n):
            if all(self.table[e][g] == g == self.table[g][e] for g in range(n)):
                return e
        return None

    def mult(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        e = self.identity_index()
        for j in range(self.order):
            if self.mult(i, j) == e:
                return j
        raise MalformedLiteral(f"element {self.elements[i]} has no inverse")

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        e = self.identity_index()
        out = {e}
        frontier = set(gens) | {e}
        while frontier:
            nxt = set()
            for a in frontier:
                for b in list(out):
                    for c in (self.mult(a, b), self.mult(b, a)):
                        if c not in out:
                            out.add(c)
                            nxt.add(c)
                if a not in out:
                    out.add(a)
            frontier = nxt
        return frozenset(out)

    def subgroups(self) -> list[frozenset[int]]:
        """All subgroups, found by closing one added generator at a time."""
        e = self.identity_index()
        found = {frozenset({e})}
        frontier = [frozenset({e})]
        while frontier:
            base = frontier.pop()
            for g in range(self.order):
                if g in base:
                    continue
                bigger = self.closure(base | {g})
                if bigger not in found:
                    found.add(bigger)
                    frontier.append(bigger)
        return sorted(found, key=lambda k: (len(k), sorted(k)))

    def conjugate_subgroup(self, sub: frozenset[int], g: int) -> frozenset[int]:
        ginv = self.inverse(g)
        return frozenset(self.mult(self.mult(g, k), ginv) for k in sub)

    def subgroup_classes(self) -> list[list[frozenset[int]]]:
        """Subgroups grouped by conjugacy, ordered by subgroup size."""
        subs = self.subgroups()
        seen: set[frozenset[int]] = set()
        classes = []
        for sub in subs:
            if sub in seen:
                continue
            cls = {self.conjugate_subgroup(sub, g) for g in range(self.order)}
            seen |= cls
            classes.append(sorted(cls, key=sorted))
        classes.sort(key=lambda c: (len(c[0]), sorted(c[0])))
        return classes

    def left_cosets(self, sub: frozenset[int]) -> list[frozenset[int]]:
        seen: set[frozenset[int]] = set()
        out = []
        for g in range(self.order):
            coset = frozenset(self.mult(g, k) for k in sub)
            if coset not in seen:
                seen.add(coset)
                out.append(coset)
        out.sort(key=min)
        return out

    @staticmethod
    def cyclic(n: int) -> "FinGroup":
        elems = tuple(f"r{k}" for k in range(n))
        table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
        return FinGroup(elems, table)

    @staticmethod
    def symmetric(n: int) -> "FinGroup":
        perms = sorted(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        elems = tuple("".join(str(v + 1) for v in p) for p in perms)
        table = tuple(
            tuple(index[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms
        )
        return FinGroup(elems, table)


@dataclass(frozen=True)
class UniversalEmbedding:
    """A homomorphism from a finite group into bijections of omega built from
    repeating blocks: each block holds one copy of every coset space of a
    conjugacy class of subgroups, so every orbit type recurs in every block."""

    group: FinGroup
    block: int
    segments: tuple[tuple[frozenset[int], tuple[frozenset[int], ...]], ...]
    maps: tuple[PAPInj, ...]

    def of(self, i: int) -> PAPInj:
        return self.maps[i]

    def orbit_type_positions(self) -> dict[int, list[int]]:
        """Block offsets grouped by which subgroup-class segment they sit in."""
        out: dict[int, list[int]] = {}
        offset = 0
        for idx, (_, cosets) in enumerate(self.segments):
            out[idx] = list(range(offset, offset + len(cosets)))
            offset += len(cosets)
        return out


def universal_embedding(group: FinGroup, max_order: int = 24) -> UniversalEmbedding:
    if group.order > max_order:
        raise GroupTooLarge(f"group order {group.order} exceeds bound {max_order}")
    segments = []
    for cls in group.subgroup_classes():
        rep = cls[0]
        segments.append((rep, tuple(group.left_cosets(rep))))
    block = sum(len(cosets) for _, cosets in segments)
    maps = []
    for g in range(group.order):
        offsets = {}
        base = 0
        for _, cosets in segments:
            for i, coset in enumerate(cosets):
                rep = min(coset)
                moved = frozenset(group.mult(g, k) for k in coset)
                j = next(idx for idx, c in enumerate(cosets) if c == moved)
                offsets[base + i] = j - i
            base += len(cosets)
        # position base+i+1 within each block of size `block` moves by offsets
        pieces = []
        for r in range(block):
            pos = (r - 1) % block  # x = q*block + pos + 1
            pieces.append((Fraction(1), Fraction(offsets[pos])))
        maps.append(PAPInj(0, (), block, tuple(pieces)).validate())
    emb = UniversalEmbedding(group, block, tuple(segments), tuple(maps))
    _verify_embedding(emb)
    return emb


def _verify_embedding(emb: UniversalEmbedding) -> None:
    grp = emb.group
    for i in range(grp.order):
        if not emb.of(i).is_bijection():
            raise MalformedLiteral("embedding must consist of bijections")
        for j in range(grp.order):
            if emb.of(i).compose(emb.of(j)) != emb.of(grp.mult(i, j)):
                raise MalformedLiteral("embedding is not a homomorphism")


# -- group twists and graph fixed points ----------------------------------------------


@dataclass(frozen=True)
class DomainTwist:
    """A finite group acting on the source set of a finite-injection family by
    permutations; this commutes with postcomposition, giving the twisted
    simplicial object."""

    group: FinGroup
    perms: tuple[tuple[tuple[int, int], ...], ...]  # per element: pairs (a, g(a))

    def perm(self, i: int) -> dict[int, int]:
        return dict(self.perms[i])

    @staticmethod
    def permuting(group: FinGroup, action: Callable[[int, int], int], source: Iterable[int]) -> "DomainTwist":
        src = sorted(source)
        perms = []
        for i in range(group.order):
            perms.append(tuple((a, action(i, a)) for a in src))
        return DomainTwist(group, tuple(perms))


@dataclass(frozen=True)
class FixedPointReport:
    simplices: list[Simplex]
    entry_bound: int
    exhaustive_within_bound: bool
    bound_warning: bool


def graph_fixed_points(
    space: TruncEMSS,
    emb: UniversalEmbedding,
    phi: Sequence[int],
    degree: int,
    entry_bound: int = 30,
) -> FixedPointReport:
    """All simplices of the given degree, with entries up to the bound, fixed
    by every pair (embedded group element, twisted group element).

    phi maps indices of emb.group to indices of the twist group.  The result
    is exhaustive relative to the entry bound; a warning flag is set when
    fewer than two embedding blocks fit under the bound."""
    if degree > space.depth:
        raise TruncationExceeded(f"degree {degree} exceeds truncation {space.depth}")
    if space.twist is None or not isinstance(space.base, FiniteInjFamily):
        raise UnsupportedFamily("fixed points need a finite-injection family with a twist")
    twist = space.twist
    if len(phi) != emb.group.order:
        raise ArityMismatch("phi must be defined on the whole embedded group")
    src = sorted(space.base.source)
    fixed_vertices = []
    for values in itertools.permutations(range(1, entry_bound + 1), len(src)):
        tab = dict(zip(src, values))
        ok = True
        for h in range(emb.group.order):
            hperm = twist.perm(phi[h])
            m = emb.of(h)
            if any(m.eval(tab[a]) != tab[hperm[a]] for a in src):
                ok = False
                break
        if ok:
            fixed_vertices.append(space.base.elt(tuple(sorted(tab.items()))))
    simplices = [
        Simplex(tup) for tup in itertools.product(fixed_vertices, repeat=degree + 1)
    ]
    return FixedPointReport(
        simplices=simplices,
        entry_bound=entry_bound,
        exhaustive_within_bound=True,
        bound_warning=entry_bound < 2 * emb.block,
    )
