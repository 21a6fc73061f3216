import itertools

import pytest

from emset.boxprod import (
    BoxWitness,
    NotInBox,
    box_membership,
    in_box,
    inj_coproduct_iso,
    monoidal_witness,
    refine_supports,
)
from emset.emss import Simplex, TruncEMSS, em_act
from emset.errors import MalformedLiteral, NoMinimalSupport, VerificationFailed
from emset.gen import Sampler
from emset.msets import SELF_M, WARNING_QUOTIENT, FiniteInjFamily, STAR
from emset.papinj import affine, double, identity, succ, swap
from emset.upsets import EVENS, ODDS, OMEGA, UPSet

INJ1 = FiniteInjFamily(frozenset({1}))
INJ2 = FiniteInjFamily(frozenset({2}))


def vert1(v):
    return Simplex((INJ1.elt(((1, v),)),))


def vert2(v):
    return Simplex((INJ2.elt(((2, v),)),))


def selfm(*maps):
    return Simplex(tuple(SELF_M.elt(m) for m in maps))


def test_membership_examples():
    w = box_membership([vert1(1), vert2(2)])
    assert isinstance(w, BoxWitness)
    assert w.levels == ((UPSet.finite({1}), UPSet.finite({2})),)
    res = box_membership([vert1(1), vert1(1)])
    assert isinstance(res, NotInBox) and res.reason == "disjointness" and res.level == 0
    res2 = box_membership([selfm(double()), selfm(affine(2, 1))])
    assert isinstance(res2, NotInBox) and res2.reason == "union-not-coinfinite"
    w2 = box_membership([selfm(double()), selfm(affine(4, 1))])
    assert isinstance(w2, BoxWitness)


def test_membership_no_coinfinite_support():
    res = box_membership([selfm(identity()), selfm(double())])
    assert isinstance(res, NotInBox) and res.reason == "no-coinfinite-support"
    with pytest.raises(NoMinimalSupport):
        box_membership([Simplex((WARNING_QUOTIENT.elt(identity()),)), selfm(double())])


def test_refine_supports_examples():
    x = selfm(double())
    y = selfm(affine(4, 1))
    a, b = EVENS, UPSet.arithmetic(5, 4)
    d = UPSet.progression(4, {3}).complement()
    ra, rb, rd = refine_supports(x, y, 0, a, b, d)
    assert ra == EVENS and rb == b and rd == a.union(b)
    # refinement against D = A ∪ B is idempotent
    ra2, rb2, rd2 = refine_supports(x, y, 0, ra, rb, rd)
    assert (ra2, rb2, rd2) == (ra, rb, rd)
    # a tighter joint support shrinks the witness
    x4 = selfm(affine(4, 0))
    ra3, _, _ = refine_supports(
        x4, y, 0, EVENS, b, UPSet.progression(4, {0}).union(b)
    )
    assert ra3 == UPSet.progression(4, {0})
    with pytest.raises(VerificationFailed):
        refine_supports(x, y, 0, OMEGA, b, d)


def test_box_closed_under_action_and_faces():
    s = Sampler(101)
    done = 0
    while done < 60:
        deg = s.rng.randrange(0, 3)
        x = selfm(*(s.papinj_mild() for _ in range(deg + 1)))
        y = selfm(*(s.papinj_mild() for _ in range(deg + 1)))
        if not in_box([x, y]):
            continue
        maps = s.pap_tuple(deg + 1, mild=True)
        assert in_box([em_act(maps, x), em_act(maps, y)])
        if deg >= 1:
            i = s.rng.randrange(deg + 1)
            assert in_box([x.face(i), y.face(i)])
        i = s.rng.randrange(deg + 1)
        assert in_box([x.degeneracy(i), y.degeneracy(i)])
        done += 1


def test_monoidal_assoc_on_finite_families():
    s = Sampler(103)
    fams = [FiniteInjFamily(frozenset({k})) for k in (1, 2, 3)]
    for _ in range(60):
        deg = s.rng.randrange(0, 3)
        vals = []
        for lvl in range(deg + 1):
            vals.append(s.rng.sample(range(1, 12), 3))
        sims = [
            Simplex(tuple(fams[i].elt(((i + 1, vals[lvl][i]),)) for lvl in range(deg + 1)))
            for i in range(3)
        ]
        rep = monoidal_witness("assoc", sims)
        assert rep.ok, rep.detail


def test_monoidal_symm_unit():
    s = Sampler(107)
    for _ in range(40):
        x = selfm(s.papinj_mild())
        y = selfm(s.papinj_mild())
        assert monoidal_witness("symm", [x, y]).ok
        assert monoidal_witness("unit", [x]).ok
    assert monoidal_witness("unit", [selfm(identity())]).ok


def test_tame_strong_monoidality_on_bounded_pools():
    # over finite-injection families every simplex is tame, so the tame
    # filter changes nothing on either side of the box pairing
    space1 = TruncEMSS(INJ1, depth=1)
    space2 = TruncEMSS(INJ2, depth=1)
    for x in space1.simplices(1, 5):
        for y in space2.simplices(1, 5):
            member = in_box([x, y])
            tame_member = (
                space1.filter_tau().member(x)
                and space2.filter_tau().member(y)
                and member
            )
            assert member == tame_member
    # over the self-action nothing is tame, so the tame side is empty
    mu_pool = [selfm(double()), selfm(affine(4, 1))]
    for x in mu_pool:
        assert not TruncEMSS(SELF_M, depth=1).filter_tau().member(x)


def test_free_symmetric_action():
    s = Sampler(109)
    done = 0
    while done < 60:
        n = s.rng.randrange(2, 4)
        sims = [selfm(s.papinj_mild()) for _ in range(n)]
        res = box_membership(sims)
        if not isinstance(res, BoxWitness):
            continue
        for i in range(n):
            for j in range(i + 1, n):
                assert sims[i] != sims[j]
        done += 1


def test_free_symmetric_action_exhaustive_small():
    space = TruncEMSS(INJ1, depth=0)
    verts = space.vertices(6)
    for x, y in itertools.product(verts, repeat=2):
        if in_box([x, y]):
            assert x != y


def test_coproduct_iso_counts():
    rep = inj_coproduct_iso(frozenset({1}), frozenset({2}), 0, 8)
    assert rep.bijective and rep.left_count == rep.right_count == 56
    rep1 = inj_coproduct_iso(frozenset({1}), frozenset({2}), 1, 8)
    assert rep1.bijective and rep1.left_count == 3136
    rep2 = inj_coproduct_iso(frozenset({1}), frozenset(), 1, 5)
    assert rep2.bijective and rep2.left_count == 25
    with pytest.raises(MalformedLiteral):
        inj_coproduct_iso(frozenset({1}), frozenset({1}), 0, 4)


def test_star_pairing():
    star0 = Simplex((STAR,))
    assert in_box([selfm(double()), star0])
    assert not in_box([selfm(identity()), star0])
