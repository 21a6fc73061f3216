"""The operadic product and its comparison with the box product.

A class is stored as one representative: a frame of n-ary injection tuples,
one per simplicial level, together with n payload simplices.  The comparison
map phi acts on payload j by the j-th components of the frame; over mild
families with least co-infinite supports it is a bijection onto the box
product, with an explicit inverse (identity on the witness sets, interleaved
enumeration of the leftover room elsewhere) and an equality decision that
constructs the connecting translations and transports one payload onto the
other."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .boxprod import BoxWitness, NotInBox, box_membership
from .emss import Simplex, TruncEMSS, em_act
from .errors import (
    ArityMismatch,
    MalformedLiteral,
    NoMinimalSupport,
    WitnessInvalid,
)
from .gen import Sampler
from .msets import STAR, Classification, MElt, NoMinimal
from .papinj import (
    InjN,
    PAPInj,
    double,
    glue,
    identity,
    interleave,
    enumerator,
    order_embed,
    rank_of,
    standard_interleaving,
)
from .upsets import EVENS, ODDS, OMEGA, UPSet, union_all


@dataclass(frozen=True)
class OperadicClass:
    frame: tuple[InjN, ...]
    payload: tuple[Simplex, ...]

    def __post_init__(self):
        if not self.frame:
            raise MalformedLiteral("a class needs at least one frame level")
        n = self.frame[0].arity
        if any(f.arity != n for f in self.frame):
            raise MalformedLiteral("frame levels must share one arity")
        if len(self.payload) != n:
            raise ArityMismatch("payload length must equal the frame arity")
        m = len(self.frame) - 1
        if any(s.degree != m for s in self.payload):
            raise ArityMismatch("payload degrees must match the frame length")

    @property
    def arity(self) -> int:
        return self.frame[0].arity

    @property
    def degree(self) -> int:
        return len(self.frame) - 1

    def __str__(self) -> str:
        frames = "; ".join(str(f) for f in self.frame)
        pays = "; ".join(str(s) for s in self.payload)
        return "cls{frame=[%s], payload=[%s]}" % (frames, pays)


def star_simplex(degree: int) -> Simplex:
    return Simplex(tuple(STAR for _ in range(degree + 1)))


def phi(cls: OperadicClass) -> tuple[Simplex, ...]:
    """Apply the frame components to the payloads coordinatewise."""
    out = []
    for j in range(1, cls.arity + 1):
        maps = tuple(f.component(j) for f in cls.frame)
        out.append(em_act(maps, cls.payload[j - 1]))
    return tuple(out)


@lru_cache(maxsize=65536)
def _level_frame(parts: tuple[UPSet, ...]) -> InjN:
    """The frame level for one witness tuple: identity on each witness set,
    interleaved enumeration of the leftover room elsewhere."""
    room = union_all(parts).complement()
    base = enumerator(room)
    n = len(parts)
    comps = []
    for j in range(1, n + 1):
        keep = parts[j - 1]
        rest = keep.complement()
        push = base.compose(interleave(n, j)).compose(rank_of(rest))
        comps.append(glue([(keep, identity()), (rest, push)]))
    return InjN(tuple(comps))


def phi_inverse(
    simplices: Sequence[Simplex], witness: BoxWitness | None = None
) -> OperadicClass:
    """A representative mapping onto the given box simplices under phi.

    Level frames act as the identity on the witness sets and push everything
    else along interleaved strands into the enumerated leftover room; the
    round trip is re-verified before returning."""
    if witness is None:
        res = box_membership(simplices)
        if not isinstance(res, BoxWitness):
            raise WitnessInvalid(f"not in the box product: {res}")
        witness = res
    else:
        witness.verify(simplices)
    degree = simplices[0].degree
    frame = [_level_frame(witness.levels[k]) for k in range(degree + 1)]
    out = OperadicClass(tuple(frame), tuple(simplices))
    if phi(out) != tuple(simplices):
        raise WitnessInvalid("round trip failed for the constructed representative")
    return out


def _least_support(s: Simplex, k: int) -> UPSet:
    sup = s.k_support(k)
    if isinstance(sup, NoMinimal):
        raise NoMinimalSupport(
            f"payload coordinate lacks a least co-infinite support at level {k}"
        )
    return sup


@dataclass(frozen=True)
class TransportChain:
    """Per payload slot, the levelwise translations carrying one representative
    onto the other, with the frame-agreement checks that justify them."""

    translations: tuple[tuple[PAPInj, ...], ...]  # [j][k]
    checks: tuple[tuple[str, bool], ...]

    def ok(self) -> bool:
        return all(v for _, v in self.checks)


@lru_cache(maxsize=65536)
def _translation(
    f_kj: PAPInj, g_kj: PAPInj, sup_x: UPSet, sup_y: UPSet
) -> tuple[PAPInj, UPSet, UPSet, bool]:
    """The connecting injection between two frame components relative to the
    payload supports: invert one along the other over the common image, extend
    by the order embedding of the complements.  Also returns the witness sets
    and the frame-agreement verdict."""
    common = f_kj.image(sup_x).intersect(g_kj.image(sup_y))
    part_a = f_kj.preimage(common)
    part_b = g_kj.preimage(common)
    sigma = g_kj.partial_inverse().compose(f_kj.restrict(part_a))
    ext = order_embed(part_a.complement(), part_b.complement())
    s_kj = glue([(part_a, sigma), (part_a.complement(), ext)])
    agrees = g_kj.compose(s_kj).equal_on(f_kj, part_a)
    return s_kj, part_a, part_b, agrees


def transport_chain(c1: OperadicClass, c2: OperadicClass) -> TransportChain:
    """Construct the connecting translations between two representatives with
    equal phi images (assumed), following the equality decision procedure."""
    n, m = c1.arity, c1.degree
    checks: list[tuple[str, bool]] = []
    translations: list[list[PAPInj]] = [[] for _ in range(n)]
    for k in range(m + 1):
        for j in range(1, n + 1):
            f_kj = c1.frame[k].component(j)
            g_kj = c2.frame[k].component(j)
            sup_x = _least_support(c1.payload[j - 1], k)
            sup_y = _least_support(c2.payload[j - 1], k)
            s_kj, part_a, part_b, agrees = _translation(f_kj, g_kj, sup_x, sup_y)
            checks.append(
                (
                    f"x{j}-supported(level={k})",
                    c1.payload[j - 1].is_k_supported_on(k, part_a),
                )
            )
            checks.append(
                (
                    f"y{j}-supported(level={k})",
                    c2.payload[j - 1].is_k_supported_on(k, part_b),
                )
            )
            checks.append((f"frame-relation(j={j}, level={k})", agrees))
            translations[j - 1].append(s_kj)
    return TransportChain(
        tuple(tuple(ts) for ts in translations), tuple(checks)
    )


def class_equal(c1: OperadicClass, c2: OperadicClass) -> bool:
    """Decide equality of the classes represented by c1 and c2.

    Distinct phi images decide negatively at once.  Otherwise the connecting
    translations are constructed and the transported payloads are compared;
    the chain checks are hard failures because equal phi images guarantee
    them for mild payloads with least supports."""
    if c1.arity != c2.arity or c1.degree != c2.degree:
        raise ArityMismatch("classes must share arity and degree")
    if phi(c1) != phi(c2):
        return False
    chain = transport_chain(c1, c2)
    if not chain.ok():
        failing = [name for name, v in chain.checks if not v]
        raise WitnessInvalid(f"transport chain failed: {failing}")
    for j in range(1, c1.arity + 1):
        moved = em_act(chain.translations[j - 1], c1.payload[j - 1])
        if moved != c2.payload[j - 1]:
            return False
    return True


def twisted_pair(
    cls: OperadicClass, tuples: Sequence[Sequence[PAPInj]]
) -> tuple[OperadicClass, OperadicClass]:
    """Both sides of the defining relation: (frame∘blocks ; payload) and
    (frame ; blocks.payload).  These always represent the same class."""
    n, m = cls.arity, cls.degree
    if len(tuples) != n or any(len(t) != m + 1 for t in tuples):
        raise ArityMismatch("need one (degree+1)-tuple per payload slot")
    new_frame = tuple(
        cls.frame[k].precompose([tuples[j][k] for j in range(n)])
        for k in range(m + 1)
    )
    acted_payload = tuple(
        em_act(tuple(tuples[j]), cls.payload[j]) for j in range(n)
    )
    return (
        OperadicClass(new_frame, cls.payload),
        OperadicClass(cls.frame, acted_payload),
    )


# -- the star-module criterion ------------------------------------------------------------


@dataclass
class StarModuleReport:
    passed: bool
    checked: int
    hit: int
    unhit_witness: str | None = None
    unhit_reason: str | None = None
    injectivity_checked: int = 0
    injectivity_failures: list[str] = field(default_factory=list)

    def summary(self) -> str:
        verdict = "star-module" if self.passed else "not a star-module"
        extra = f"; unhit: {self.unhit_witness}" if self.unhit_witness else ""
        return (
            f"{verdict}: {self.hit}/{self.checked} simplices hit, "
            f"{self.injectivity_checked} equality probes{extra}"
        )


def star_module_check(
    pool: Sequence[Simplex], seed: int = 0, probes: int = 20
) -> StarModuleReport:
    """Probe whether pairing with the one-point object is a bijection onto the
    given simplices.

    Surjectivity: each pool simplex x must arise as phi of a class with
    payload (x, *); this happens exactly when every coordinate of x admits a
    co-infinite support, and the failure reason records the level at which it
    does not.  Injectivity: representatives related by the defining relation
    stay equal, unrelated ones with distinct phi images stay distinct."""
    sampler = Sampler(seed)
    report = StarModuleReport(passed=True, checked=0, hit=0)
    for x in pool:
        report.checked += 1
        pair = [x, star_simplex(x.degree)]
        membership = box_membership(pair)
        if isinstance(membership, BoxWitness):
            cls = phi_inverse(pair, membership)
            got = phi(cls)
            if got[0] == x and got[1] == pair[1]:
                report.hit += 1
            else:
                report.passed = False
                report.unhit_witness = str(x)
                report.unhit_reason = "round trip mismatch"
        else:
            report.passed = False
            if report.unhit_witness is None:
                report.unhit_witness = str(x)
                report.unhit_reason = (
                    f"level {membership.level}: every phi image is supported on a "
                    "co-infinite image set, but this simplex is not"
                )
    by_degree: dict[int, list[Simplex]] = {}
    for x in pool:
        if x.is_mild():
            by_degree.setdefault(x.degree, []).append(x)
    degrees = [d for d, xs in sorted(by_degree.items()) if len(xs) >= 2]
    for _ in range(probes):
        if not degrees:
            break
        mild_pool = by_degree[degrees[sampler.rng.randrange(len(degrees))]]
        x = mild_pool[sampler.rng.randrange(len(mild_pool))]
        y = mild_pool[sampler.rng.randrange(len(mild_pool))]
        report.injectivity_checked += 1
        cx = phi_inverse([x, star_simplex(x.degree)])
        cy = phi_inverse([y, star_simplex(y.degree)])
        same = class_equal(cx, cy)
        if same != (phi(cx) == phi(cy)):
            report.passed = False
            report.injectivity_failures.append(f"{x} vs {y}")
        blocks = [
            [sampler.papinj_mild() for _ in range(x.degree + 1)],
            [identity() for _ in range(x.degree + 1)],
        ]
        lhs, rhs = twisted_pair(cx, blocks)
        if not class_equal(lhs, rhs):
            report.passed = False
            report.injectivity_failures.append(f"relation failed at {x}")
    return report


# -- the mu functor through the operadic product ----------------------------------------------


@dataclass(frozen=True)
class MuReport:
    result: OperadicClass
    phi_value: tuple[Simplex, ...]
    payload_mild: bool


def mu_via_operadic(x: Simplex) -> MuReport:
    """Normalize the pair class of an arbitrary simplex so that its payload
    becomes co-infinitely supported.

    Starting from the standard two-strand frame, precompose the second strand
    with the doubling map (a unit of the relation, since the one-point payload
    absorbs it), then factor the doubling out of the first strand: the frame
    value at an even argument is reproduced from its half, odd arguments are
    sent into the freed-up room.  The payload picks up one doubling per level
    and lands in the co-infinitely supported part."""
    m = x.degree
    d = double()
    base = standard_interleaving(2)
    fprime = [base.precompose([identity(), d]) for _ in range(m + 1)]
    half = d.partial_inverse()
    frame = []
    for k in range(m + 1):
        room = base.component(2).image(ODDS)  # missed by the adjusted level
        phi_k = order_embed(ODDS, room)
        comp1 = glue(
            [
                (EVENS, fprime[k].component(1).compose(half)),
                (ODDS, phi_k),
            ]
        )
        g_k = InjN((comp1, fprime[k].component(2)))
        for j, check in ((1, comp1.compose(d)), (2, g_k.component(2))):
            if check != fprime[k].component(j):
                raise WitnessInvalid("frame factorization failed")
        frame.append(g_k)
    moved = em_act(tuple(d for _ in range(m + 1)), x)
    out = OperadicClass(tuple(frame), (moved, star_simplex(m)))
    expected = tuple(
        em_act(tuple(f.component(j) for f in fprime), s)
        for j, s in ((1, x), (2, star_simplex(m)))
    )
    value = phi(out)
    if value != expected:
        raise WitnessInvalid("normalized class changed the phi value")
    return MuReport(out, value, moved.is_mild())
