import itertools

import pytest

from emset.emss import (
    DomainTwist,
    FinGroup,
    Simplex,
    TruncEMSS,
    em_act,
    filter_tau_mu,
    graph_fixed_points,
    monotone_maps,
    slot_act,
    universal_embedding,
)
from emset.errors import ArityMismatch, GroupTooLarge, IndexOutOfRange, TruncationExceeded
from emset.gen import Sampler
from emset.msets import (
    SELF_M,
    Classification,
    FiniteInjFamily,
    NoMinimal,
    ProductFamily,
)
from emset.papinj import affine, double, identity, succ, swap
from emset.upsets import EVENS, ODDS, OMEGA, UPSet

INJ1 = FiniteInjFamily(frozenset({1}))


def vertex(v: int) -> Simplex:
    return Simplex((INJ1.elt(((1, v),)),))


def selfm_simplex(*maps) -> Simplex:
    return Simplex(tuple(SELF_M.elt(m) for m in maps))


def test_face_degeneracy_examples():
    a, b = INJ1.elt(((1, 1),)), INJ1.elt(((1, 2),))
    s = Simplex((a, b))
    assert s.face(0) == Simplex((b,))
    assert s.face(1) == Simplex((a,))
    assert Simplex((a,)).degeneracy(0) == Simplex((a, a))
    assert s.degeneracy(0).face(0) == s
    with pytest.raises(IndexOutOfRange):
        s.face(2)
    with pytest.raises(IndexOutOfRange):
        Simplex((a,)).face(0)


def test_simplicial_identities():
    coords = tuple(INJ1.elt(((1, v),)) for v in (1, 2, 3))
    s = Simplex(coords)
    for i in range(2):
        for j in range(i + 1, 3):
            assert s.face(j).face(i) == s.face(i).face(j - 1)
    for i in range(3):
        assert s.degeneracy(i).face(i) == s
        assert s.degeneracy(i).face(i + 1) == s


def test_em_act_examples():
    s = selfm_simplex(double(), succ())
    assert em_act((identity(), identity()), s) == s
    v = vertex(1)
    assert em_act((double(),), v) == vertex(2)
    with pytest.raises(ArityMismatch):
        em_act((double(),), s)


def test_em_act_commutes_with_faces():
    samp = Sampler(61)
    for _ in range(100):
        coords = tuple(SELF_M.elt(samp.papinj()) for _ in range(3))
        s = Simplex(coords)
        maps = samp.pap_tuple(3)
        i = samp.rng.randrange(3)
        left = em_act(maps, s).face(i)
        right = em_act(maps[:i] + maps[i + 1 :], s.face(i))
        assert left == right


def test_k_support_examples():
    u0, u1 = INJ1.elt(((1, 3),)), INJ1.elt(((1, 7),))
    s = Simplex((u0, u1))
    assert s.k_support(0) == UPSet.finite({3})
    assert s.k_support(1) == UPSet.finite({7})
    t = selfm_simplex(double())
    assert t.k_support(0) == EVENS
    bad = selfm_simplex(identity())
    assert isinstance(bad.k_support(0), NoMinimal)
    assert not bad.is_k_supported_on(0, EVENS)


def test_tau_mu_filters():
    E_selfm = TruncEMSS(SELF_M, depth=3)
    mu = E_selfm.filter_mu()
    assert mu.member(selfm_simplex(double()))
    assert not mu.member(selfm_simplex(identity()))
    tau = filter_tau_mu(E_selfm, "tau")
    samp = Sampler(67)
    for _ in range(60):
        deg = samp.rng.randrange(0, 4)
        s = Simplex(tuple(SELF_M.elt(samp.papinj()) for _ in range(deg + 1)))
        assert not tau.member(s)


def test_mu_filter_commutes_with_elementwise_filter():
    # degreewise, a tuple is co-infinitely supported iff each coordinate is mild
    samp = Sampler(71)
    pool = [identity(), succ(), double(), affine(2, 1), affine(4, 1), swap(1, 2),
            samp.papinj_mild(), samp.papinj_mild()]
    mu = TruncEMSS(SELF_M, depth=3).filter_mu()
    for deg in range(4):
        for tup in itertools.product(pool, repeat=deg + 1):
            s = selfm_simplex(*tup)
            coordwise = all(
                SELF_M.classify(u) == Classification.MILD_NOT_TAME for u in tup
            )
            assert mu.member(s) == coordwise


def test_mu_closure_under_action_faces():
    samp = Sampler(73)
    mu = TruncEMSS(SELF_M, depth=3).filter_mu()
    for _ in range(60):
        deg = samp.rng.randrange(1, 4)
        s = Simplex(tuple(SELF_M.elt(samp.papinj_mild()) for _ in range(deg + 1)))
        assert mu.member(s)
        assert mu.member(em_act(samp.pap_tuple(deg + 1), s))
        assert mu.member(s.face(samp.rng.randrange(deg + 1)))
        if deg < 3:
            assert mu.member(s.degeneracy(samp.rng.randrange(deg + 1)))


def test_slot_action_support_law():
    # acting in slot k with u makes the simplex k-supported on u(A)
    samp = Sampler(79)
    for _ in range(100):
        part = samp.upset_biinfinite()
        inner = samp.papinj_into(part)
        deg = samp.rng.randrange(0, 3)
        coords = [samp.papinj_mild() for _ in range(deg + 1)]
        k = samp.rng.randrange(deg + 1)
        coords[k] = inner
        s = selfm_simplex(*coords)
        maps = samp.pap_tuple(deg + 1)
        assert s.is_k_supported_on(k, part)
        acted = em_act(maps, s)
        assert acted.is_k_supported_on(k, maps[k].image(part))


def test_structure_maps_preserve_k_support():
    samp = Sampler(83)
    for m in range(3):
        for n in range(3):
            for f in monotone_maps(m, n):
                part = samp.upset_biinfinite()
                coords = [samp.papinj_mild() for _ in range(n + 1)]
                k = samp.rng.randrange(m + 1)
                coords[f[k]] = samp.papinj_into(part)
                s = selfm_simplex(*coords)
                assert s.is_k_supported_on(f[k], part)
                assert s.pulled_back(f).is_k_supported_on(k, part)


def test_kf_support_converse():
    samp = Sampler(89)
    for _ in range(100):
        part = samp.upset_biinfinite()
        deg = samp.rng.randrange(0, 3)
        coords = [samp.papinj_mild() for _ in range(deg + 1)]
        k = samp.rng.randrange(deg + 1)
        s = selfm_simplex(*coords)
        maps = samp.pap_tuple(deg + 1)
        acted = em_act(maps, s)
        assert acted.is_k_supported_on(k, maps[k].image(part)) == s.is_k_supported_on(
            k, part
        )


def test_degreewise_vs_diagonal_mildness_instance():
    # the edge (2x, 2x+1) admits co-infinite supports in each slot separately,
    # but its componentwise images cover omega, so no single co-infinite set
    # supports it diagonally
    edge = selfm_simplex(double(), affine(2, 1))
    assert edge.is_k_supported_on(0, EVENS)
    assert edge.is_k_supported_on(1, UPSet.arithmetic(3, 2))
    assert edge.is_mild()
    diag = ProductFamily((SELF_M, SELF_M)).elt((double(), affine(2, 1)))
    res = diag.minimal_support()
    assert isinstance(res, NoMinimal) and res.reason == "not-mild"
    assert diag.classify() == Classification.NOT_MILD


def test_universal_embedding_c2():
    emb = universal_embedding(FinGroup.cyclic(2))
    assert emb.block == 3
    h = emb.of(1)
    for k in range(5):
        assert h.eval(3 * k + 1) == 3 * k + 2
        assert h.eval(3 * k + 2) == 3 * k + 1
        assert h.eval(3 * k + 3) == 3 * k + 3
    assert h.compose(h) == identity()


def test_universal_embedding_small_groups():
    for grp, block in [
        (FinGroup.cyclic(2), 3),
        (FinGroup.cyclic(3), 4),
        (FinGroup.cyclic(4), 7),
        (FinGroup.symmetric(3), 12),
    ]:
        emb = universal_embedding(grp)
        assert emb.block == block
        for i in range(grp.order):
            for j in range(grp.order):
                assert emb.of(i).compose(emb.of(j)) == emb.of(grp.mult(i, j))
        # every subgroup-class orbit type occurs once per block, forever
        positions = emb.orbit_type_positions()
        assert len(positions) == len(grp.subgroup_classes())
        for offs in positions.values():
            assert offs, "every class contributes a segment"


def test_universal_embedding_rejects_large_groups():
    with pytest.raises(GroupTooLarge):
        universal_embedding(FinGroup.cyclic(30))


def test_trivial_group_embedding():
    emb = universal_embedding(FinGroup.cyclic(1))
    assert emb.block == 1
    assert emb.of(0) == identity()


def test_graph_fixed_points_sigma2():
    c2 = FinGroup.cyclic(2)
    emb = universal_embedding(c2)
    fam = FiniteInjFamily(frozenset({1, 2}))
    tw = DomainTwist.permuting(c2, lambda i, a: a if i == 0 else 3 - a, {1, 2})
    space = TruncEMSS(fam, depth=2, twist=tw)

    rep = graph_fixed_points(space, emb, phi=[0, 1], degree=0, entry_bound=30)
    got = {tuple(v for _, v in s.coords[0].payload) for s in rep.simplices}
    want = set()
    for k in range(10):
        want.add((3 * k + 1, 3 * k + 2))
        want.add((3 * k + 2, 3 * k + 1))
    assert got == want

    rep2 = graph_fixed_points(space, emb, phi=[0, 0], degree=0, entry_bound=30)
    got2 = {tuple(v for _, v in s.coords[0].payload) for s in rep2.simplices}
    fixed_col = [3 * k + 3 for k in range(10)]
    want2 = {(a, b) for a in fixed_col for b in fixed_col if a != b}
    assert got2 == want2


def test_graph_fixed_points_trivial_group():
    triv = FinGroup.cyclic(1)
    emb = universal_embedding(triv)
    fam = FiniteInjFamily(frozenset({1}))
    tw = DomainTwist.permuting(triv, lambda i, a: a, {1})
    space = TruncEMSS(fam, depth=1, twist=tw)
    rep = graph_fixed_points(space, emb, phi=[0], degree=0, entry_bound=6)
    assert len(rep.simplices) == 6
    rep1 = graph_fixed_points(space, emb, phi=[0], degree=1, entry_bound=4)
    assert len(rep1.simplices) == 16
    with pytest.raises(TruncationExceeded):
        graph_fixed_points(space, emb, phi=[0], degree=5, entry_bound=4)


def test_enumeration_of_bounded_simplices():
    space = TruncEMSS(FiniteInjFamily(frozenset({1})), depth=2)
    assert len(space.vertices(8)) == 8
    assert len(space.simplices(1, 4)) == 16
    with pytest.raises(TruncationExceeded):
        space.simplices(3, 4)
