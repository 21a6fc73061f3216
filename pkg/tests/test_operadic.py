import itertools

import pytest

from emset.boxprod import BoxWitness, box_membership, in_box
from emset.emss import Simplex, TruncEMSS, em_act
from emset.errors import NoMinimalSupport, WitnessInvalid
from emset.gen import Sampler
from emset.msets import SELF_M, FiniteInjFamily, STAR
from emset.operadic import (
    MuReport,
    OperadicClass,
    class_equal,
    mu_via_operadic,
    phi,
    phi_inverse,
    star_module_check,
    star_simplex,
    transport_chain,
    twisted_pair,
)
from emset.papinj import (
    InjN,
    affine,
    double,
    identity,
    identity_injn,
    operad_compose,
    standard_interleaving,
    succ,
    swap,
)
from emset.upsets import EVENS, UPSet

INJ1 = FiniteInjFamily(frozenset({1}))
INJ2 = FiniteInjFamily(frozenset({2}))


def vert1(v):
    return Simplex((INJ1.elt(((1, v),)),))


def vert2(v):
    return Simplex((INJ2.elt(((2, v),)),))


def selfm(*maps):
    return Simplex(tuple(SELF_M.elt(m) for m in maps))


def test_phi_examples():
    c = OperadicClass((InjN((double(),)),), (vert1(1),))
    assert phi(c) == (vert1(2),)
    # an identity-on-support frame returns the payload unchanged
    x, y = vert1(1), vert2(2)
    c2 = phi_inverse([x, y])
    assert phi(c2) == (x, y)
    # a one-point payload coordinate stays the one-point simplex
    c3 = phi_inverse([selfm(double()), star_simplex(0)])
    assert phi(c3)[1] == star_simplex(0)


def test_phi_inverse_round_trip_random():
    s = Sampler(113)
    done = 0
    while done < 80:
        deg = s.rng.randrange(0, 3)
        n = s.rng.randrange(1, 4)
        sims = [selfm(*(s.papinj_mild() for _ in range(deg + 1))) for _ in range(n)]
        res = box_membership(sims)
        if not isinstance(res, BoxWitness):
            continue
        cls = phi_inverse(sims, res)
        assert phi(cls) == tuple(sims)
        assert class_equal(phi_inverse(phi(cls), res), cls)
        done += 1


def test_phi_inverse_rejects_non_members():
    with pytest.raises(WitnessInvalid):
        phi_inverse([vert1(1), Simplex((INJ2.elt(((2, 1),)),))])


def test_phi_image_lands_in_box():
    s = Sampler(127)
    for _ in range(60):
        deg = s.rng.randrange(0, 2)
        n = s.rng.randrange(1, 3)
        sims = [selfm(*(s.papinj_mild() for _ in range(deg + 1))) for _ in range(n)]
        res = box_membership(sims)
        if not isinstance(res, BoxWitness):
            continue
        cls = phi_inverse(sims, res)
        blocks = [[s.papinj_mild() for _ in range(deg + 1)] for _ in range(n)]
        _, acted = twisted_pair(cls, blocks)
        assert in_box(list(phi(acted)))


def test_class_equal_examples():
    c = phi_inverse([vert1(3), vert2(5)])
    assert class_equal(c, c)
    s = Sampler(131)
    blocks = [[s.papinj_mild()], [s.papinj_mild()]]
    lhs, rhs = twisted_pair(c, blocks)
    assert class_equal(lhs, rhs)
    other = phi_inverse([vert1(4), vert2(5)])
    assert not class_equal(c, other)


def test_class_equal_requires_minimal_supports():
    c = OperadicClass((identity_injn(),), (selfm(identity()),))
    with pytest.raises(NoMinimalSupport):
        class_equal(c, c)


def test_defining_relation_respected():
    s = Sampler(137)
    done = 0
    while done < 60:
        deg = s.rng.randrange(0, 3)
        n = s.rng.randrange(1, 3)
        sims = [selfm(*(s.papinj_mild() for _ in range(deg + 1))) for _ in range(n)]
        if not in_box(sims):
            continue
        cls = phi_inverse(sims)
        blocks = [[s.papinj_mild() for _ in range(deg + 1)] for _ in range(n)]
        lhs, rhs = twisted_pair(cls, blocks)
        assert phi(lhs) == phi(rhs)
        assert class_equal(lhs, rhs)
        done += 1


def test_transport_chain_checks_are_reported():
    c = phi_inverse([vert1(3), vert2(5)])
    chain = transport_chain(c, c)
    assert chain.ok()
    names = [name for name, _ in chain.checks]
    assert any(name.startswith("frame-relation") for name in names)


def test_operad_composition_matches_nested_phi():
    # a composite frame acts as the outer operation applied to the inner ones
    s = Sampler(139)
    i2 = standard_interleaving(2)
    i3 = standard_interleaving(3)
    for _ in range(40):
        inners = [i2, i3]
        comp = operad_compose(i2, inners)
        payloads = [selfm(s.papinj_mild()) for _ in range(comp.arity)]
        whole = OperadicClass((comp,), tuple(payloads))
        value = phi(whole)
        idx = 0
        for j, inner in enumerate(inners, start=1):
            group = payloads[idx : idx + inner.arity]
            inner_val = phi(OperadicClass((inner,), tuple(group)))
            outer_map = i2.component(j)
            for i, v in enumerate(inner_val):
                assert em_act((outer_map,), v) == value[idx + i]
            idx += inner.arity


def test_star_module_check_mild_pool():
    s = Sampler(149)
    pool = []
    for deg in range(3):
        for _ in range(6):
            pool.append(selfm(*(s.papinj_mild() for _ in range(deg + 1))))
    rep = star_module_check(pool, seed=3, probes=8)
    assert rep.passed and rep.hit == rep.checked == len(pool)


def test_star_module_check_detects_identity_vertex():
    pool = [selfm(double()), selfm(identity()), selfm(swap(1, 2))]
    rep = star_module_check(pool, seed=0, probes=2)
    assert not rep.passed
    assert rep.hit == 1
    assert "selfm" in rep.unhit_witness
    assert "co-infinite" in rep.unhit_reason


def test_star_module_check_exhaustive_inj_family():
    space = TruncEMSS(INJ1, depth=2)
    pool = space.simplices(0, 10) + space.simplices(1, 10)
    rep = star_module_check(pool, seed=7, probes=10)
    assert rep.passed and rep.hit == len(pool)


def test_mu_via_operadic_examples():
    rep = mu_via_operadic(selfm(identity()))
    assert rep.result.payload[0] == selfm(double())
    assert rep.payload_mild
    assert rep.result.payload[0].k_support(0) == EVENS

    rep2 = mu_via_operadic(vert1(1))
    assert rep2.result.payload[0] == vert1(2)
    assert rep2.payload_mild

    rep3 = mu_via_operadic(selfm(double()))
    assert rep3.payload_mild
    assert rep3.result.payload[0] == selfm(affine(4, 0))


def test_mu_via_operadic_random_degrees():
    s = Sampler(151)
    for _ in range(40):
        deg = s.rng.randrange(0, 3)
        x = selfm(*(s.papinj() for _ in range(deg + 1)))
        rep = mu_via_operadic(x)
        assert rep.payload_mild
        # the value of the class is untouched by the normalization
        base = standard_interleaving(2)
        expected = tuple(
            em_act(tuple(base.component(1) for _ in range(deg + 1)), x)
            for _ in (0,)
        )
        assert rep.phi_value[0] == expected[0]
