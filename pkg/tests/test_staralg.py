import itertools

import pytest

from emset.boxprod import box_membership
from emset.errors import IndexOutOfRange, MalformedLiteral, NotSummable
from emset.gen import Sampler
from emset.operadic import phi_inverse
from emset.papinj import InjN, affine, double, identity, standard_interleaving
from emset.staralg import (
    StarConfig,
    as_simplex,
    enumerate_configs,
    i_action,
    sum_configs,
    summable,
    unit,
    verify_cmon,
)
from emset.upsets import EMPTY, UPSet


def cfg(*cols, levels=None):
    lv = levels or (len(cols[0]) if cols else 1)
    return StarConfig(lv, tuple(tuple(c) for c in cols))


def test_normal_form_sorts_columns():
    a = cfg((3, 1), (1, 5))
    assert a.columns == ((1, 5), (3, 1))
    b = cfg((1, 5), (3, 1))
    assert a == b


def test_invalid_configs_rejected():
    with pytest.raises(MalformedLiteral):
        cfg((1, 2), (1, 3))
    with pytest.raises(MalformedLiteral):
        StarConfig(2, ((1,),))
    with pytest.raises(MalformedLiteral):
        StarConfig(0, ())


def test_sum_examples():
    a = cfg((1,))
    b = cfg((2,))
    assert sum_configs(a, b) == cfg((1,), (2,))
    assert sum_configs(a, unit(0)) == a
    with pytest.raises(NotSummable):
        sum_configs(a, a)


def test_summable_reports_level():
    a = cfg((1, 2))
    b = cfg((3, 2))
    res = summable(a, b)
    assert isinstance(res, NotSummable) and res.level == 1


def test_sum_support_is_union():
    a = cfg((1, 4), (3, 2))
    b = cfg((5, 9))
    s = sum_configs(a, b)
    for k in range(2):
        assert s.k_support(k) == a.k_support(k).union(b.k_support(k))


def test_no_positive_weight_vertex_supported_on_empty():
    for weight in (1, 2):
        for c in enumerate_configs(weight, 0, 5):
            assert not c.is_k_supported_on(0, EMPTY)
    assert unit(0).is_k_supported_on(0, EMPTY)


def test_column_permutation_normalizes_identically():
    s = Sampler(157)
    for _ in range(60):
        levels = s.rng.randrange(1, 4)
        base = []
        used = [set() for _ in range(levels)]
        for _ in range(3):
            col = []
            for k in range(levels):
                v = s.rng.randrange(1, 30)
                while v in used[k]:
                    v = s.rng.randrange(1, 30)
                used[k].add(v)
                col.append(v)
            base.append(tuple(col))
        for perm in itertools.permutations(base):
            assert StarConfig(levels, tuple(perm)) == StarConfig(levels, tuple(base))


def test_faces_degeneracies():
    a = cfg((1, 4, 6), (3, 2, 9))
    assert a.face(1) == cfg((1, 6), (3, 9))
    assert a.degeneracy(0) == cfg((1, 1, 4, 6), (3, 3, 2, 9))
    with pytest.raises(IndexOutOfRange):
        a.face(3)
    u = unit(2)
    assert u.face(0) == unit(1)


def test_action_postcomposes_levelwise():
    a = cfg((1, 4), (3, 2))
    acted = a.act((double(), affine(3, 1)))
    assert acted == cfg((2, 13), (6, 7))


def test_i_action_examples():
    i2 = standard_interleaving(2)
    a, b = cfg((1,)), cfg((1,))
    out = i_action([i2], [a, b])
    assert out == cfg((2,), (1,))
    assert i_action([InjN((identity(),))], [a]) == a


def test_i_action_matches_sum_via_inverse_frame():
    s = Sampler(163)
    done = 0
    while done < 100:
        levels = s.rng.randrange(1, 4)
        cols_a, cols_b = [], []
        used = [set() for _ in range(levels)]
        for target, m in ((cols_a, s.rng.randrange(0, 3)), (cols_b, s.rng.randrange(0, 3))):
            for _ in range(m):
                col = []
                for k in range(levels):
                    v = s.rng.randrange(1, 25)
                    while v in used[k]:
                        v = s.rng.randrange(1, 25)
                    used[k].add(v)
                    col.append(v)
                target.append(tuple(col))
        a = StarConfig(levels, tuple(cols_a))
        b = StarConfig(levels, tuple(cols_b))
        if a.weight == 0 and b.weight == 0:
            continue
        cls = phi_inverse([as_simplex(a), as_simplex(b)])
        assert i_action(cls.frame, [a, b]) == sum_configs(a, b)
        done += 1


def test_verify_cmon_small():
    rep = verify_cmon(seed=0, trials=60, entry_bound=5, max_degree=2, exhaustive_weight=2)
    assert rep.passed, rep.failures
    assert rep.unit_checked > 0 and rep.associativity_checked == 60
    assert rep.relation_checked > 0 and rep.empty_support_checked > 0
