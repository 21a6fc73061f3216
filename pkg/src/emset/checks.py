"""The verification registry: one executable check per combinatorial law.

Each check is deterministic given its seed, runs its randomized trials plus
any exhaustive pools its statement calls for, and reports serialized
counterexamples (as replayable literals) on failure.  The registry ids are a
fixed public contract; `verify_all` runs every entry.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from . import papinj as pj
from .boxprod import (
    BoxWitness,
    NotInBox,
    box_membership,
    in_box,
    inj_coproduct_iso,
    monoidal_witness,
)
from .emss import (
    DomainTwist,
    FinGroup,
    Simplex,
    TruncEMSS,
    em_act,
    graph_fixed_points,
    monotone_maps,
    universal_embedding,
)
from .errors import NoMinimalSupport, UnknownCheck
from .gen import Sampler
from .msets import (
    SELF_M,
    STAR,
    WARNING_QUOTIENT,
    Classification,
    FiniteInjFamily,
    MElt,
    ModMAResult,
    NoMinimal,
    ProductFamily,
    equal_mod_MA,
    intersection_support_witness,
    stabilizing_chi,
    warning_level_set,
)
from .operadic import (
    class_equal,
    mu_via_operadic,
    phi,
    phi_inverse,
    star_module_check,
    star_simplex,
    twisted_pair,
)
from .papinj import (
    agreeing_bijection,
    double,
    enumerator,
    glue,
    identity,
    order_embed,
    succ,
    swap,
)
from .staralg import verify_cmon
from .upsets import EMPTY, EVENS, ODDS, OMEGA, UPSet, union_all


@dataclass(frozen=True)
class CheckSpec:
    id: str
    trials: int = 300
    seed: int = 0
    degree: int = 3
    entry_bound: int = 8
    period_bound: int = 64


@dataclass
class Report:
    id: str
    trials: int
    failures: list[str]
    mode: str
    bounds: dict
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, include_elapsed: bool = False) -> dict:
        out = {
            "schema": 1,
            "id": self.id,
            "trials": self.trials,
            "mode": self.mode,
            "bounds": self.bounds,
            "failures": self.failures,
            "notes": self.notes,
            "status": "pass" if self.passed else "fail",
        }
        if include_elapsed:
            out["elapsed"] = self.elapsed
        return out


def _report(spec: CheckSpec, mode: str, failures: list[str], notes=None) -> Report:
    return Report(
        id=spec.id,
        trials=spec.trials,
        failures=failures,
        mode=mode,
        bounds={
            "degree": spec.degree,
            "entry_bound": spec.entry_bound,
            "period_bound": spec.period_bound,
            "seed": spec.seed,
        },
        notes=notes or [],
    )


def _selfm(*maps) -> Simplex:
    return Simplex(tuple(SELF_M.elt(m) for m in maps))


# -- element-level support laws ------------------------------------------------------


def _supported_element(s: Sampler, part: UPSet) -> MElt:
    """A random element supported on the infinite set `part`."""
    if s.rng.random() < 0.5:
        fam = FiniteInjFamily(frozenset({1, 2}))
        vals = part.first_n(8)
        a, b = s.rng.sample(vals, 2)
        return fam.elt(((1, a), (2, b)))
    return SELF_M.elt(s.papinj_into(part))


def check_agree_supp_1(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    for _ in range(spec.trials):
        part = s.upset_biinfinite()
        x = _supported_element(s, part)
        f = s.papinj()
        g = s.papinj_agreeing_on(f, part)
        if not f.equal_on(g, part):
            failures.append(f"generator broke agreement: {f} vs {g} on {part}")
            continue
        if x.act(f) != x.act(g):
            failures.append(f"act differs: x={x}, f={f}, g={g}, A={part}")
    return _report(spec, "randomized", failures)


def check_agree_supp_2(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    for _ in range(spec.trials):
        part = s.upset_biinfinite()
        x = _supported_element(s, part)
        f = s.papinj()
        if not x.act(f).is_supported_on(f.image(part)):
            failures.append(f"image support fails: x={x}, f={f}, A={part}")
    return _report(spec, "randomized", failures)


def check_agree_supp_3(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    for _ in range(spec.trials):
        part = s.upset_biinfinite()
        sub = s.subset_of(part, keep_infinite=True)
        x = _supported_element(s, part)
        f = s.papinj()
        lhs = x.act(f).is_supported_on(f.image(sub))
        rhs = x.is_supported_on(sub)
        if lhs != rhs:
            failures.append(f"preimage support fails: x={x}, f={f}, A'={sub}")
    return _report(spec, "randomized", failures)


def _case_two_map(s: Sampler, part_a: UPSet, part_b: UPSet) -> pj.PAPInj:
    """An element fixing A∩B whose A-image covers almost all of the complement
    of A, forcing the second construction route."""
    meet = part_a.intersect(part_b)
    a_not_b = part_a.difference(meet)
    comp_a = part_a.complement()
    return glue(
        [
            (meet, identity()),
            (a_not_b, enumerator(comp_a).compose(enumerator(a_not_b).partial_inverse())),
            (comp_a, order_embed(comp_a, a_not_b)),
        ]
    )


def check_cap_supp(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    done = 0
    cases = {1: 0, 2: 0}
    while done < spec.trials:
        part_a = s.upset_biinfinite()
        part_b = s.upset_biinfinite()
        meet = part_a.intersect(part_b)
        if not meet.is_infinite() or not meet.is_coinfinite():
            continue
        x = SELF_M.elt(s.papinj_into(meet))
        want_case_two = done % 3 == 2
        if want_case_two and part_a.difference(meet).is_infinite():
            f = _case_two_map(s, part_a, part_b)
        else:
            f = s.papinj_fixing(meet)
        try:
            chain = intersection_support_witness(x, part_a, part_b, f)
        except Exception as exc:  # pragma: no cover - any failure is a finding
            failures.append(f"witness construction failed: {exc}: A={part_a}, B={part_b}, f={f}")
            done += 1
            continue
        cases[chain.case] += 1
        if not chain.ok():
            bad = [name for name, v in chain.checks if not v]
            failures.append(f"chain checks {bad} failed: A={part_a}, B={part_b}, f={f}")
        if x.act(f) != x:
            failures.append(f"f.x differs from x: x={x}, f={f}")
        if not x.is_supported_on(meet):
            failures.append(f"structural intersection support fails: x={x}")
        done += 1
    notes = [f"case1={cases[1]}", f"case2={cases[2]}"]
    if cases[2] == 0:
        failures.append("no second-route instances exercised")
    return _report(spec, "randomized", failures, notes)


def check_inj_act(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    fam = FiniteInjFamily(frozenset({1, 2}))
    pool = fam.elements(min(spec.entry_bound, 5))
    for _ in range(10):
        f = s.papinj()
        acted = [x.act(f) for x in pool]
        for i in range(len(acted)):
            for j in range(i + 1, len(acted)):
                if acted[i] == acted[j]:
                    failures.append(f"collision under {f}: {pool[i]} vs {pool[j]}")
    mild_pool = []
    for _ in range(12):
        cand = SELF_M.elt(s.papinj_mild())
        if all(cand != y for y in mild_pool):
            mild_pool.append(cand)
    for _ in range(10):
        f = s.papinj()
        acted = [x.act(f) for x in mild_pool]
        for i in range(len(acted)):
            for j in range(i + 1, len(acted)):
                if acted[i] == acted[j]:
                    failures.append(f"collision under {f}: {mild_pool[i]} vs {mild_pool[j]}")
    return _report(spec, "exhaustive", failures)


def check_complement(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    fam = ProductFamily((FiniteInjFamily(frozenset({1})), FiniteInjFamily(frozenset({1}))))
    bound = min(spec.entry_bound, 6)
    pool = [
        fam.elt((((1, a),), ((1, b),)))
        for a in range(1, bound + 1)
        for b in range(1, bound + 1)
    ]
    inside = [x for x in pool if x.payload[0] == x.payload[1]]
    outside = [x for x in pool if x.payload[0] != x.payload[1]]
    for _ in range(spec.trials // 10):
        f = s.papinj()
        for x in inside:
            if x.act(f).payload[0] != x.act(f).payload[1]:
                failures.append(f"invariant subset left under {f}: {x}")
        for x in outside:
            if x.act(f).payload[0] == x.act(f).payload[1]:
                failures.append(f"complement entered the subset under {f}: {x}")
    return _report(spec, "exhaustive", failures)


# -- simplicial support laws ------------------------------------------------------------


def check_ksupp(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    for _ in range(spec.trials):
        part = s.upset_biinfinite()
        deg = s.rng.randrange(0, min(spec.degree, 3))
        coords = [s.papinj_mild() for _ in range(deg + 1)]
        k = s.rng.randrange(deg + 1)
        coords[k] = s.papinj_into(part)
        sim = _selfm(*coords)
        maps = s.pap_tuple(deg + 1)
        acted = em_act(maps, sim)
        if not acted.is_k_supported_on(k, maps[k].image(part)):
            failures.append(f"k-support image law fails: s={sim}, maps={[str(m) for m in maps]}")
        if not acted.is_k_supported_on(k, maps[k].image()):
            failures.append(f"plain image support fails: s={sim}")
    return _report(spec, "randomized", failures)


def check_fksupp(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    depth = min(spec.degree, 3)
    for m in range(depth + 1):
        for n in range(depth + 1):
            for f in monotone_maps(m, n):
                part = s.upset_biinfinite()
                coords = [s.papinj_mild() for _ in range(n + 1)]
                k = s.rng.randrange(m + 1)
                coords[f[k]] = s.papinj_into(part)
                sim = _selfm(*coords)
                if not sim.is_k_supported_on(f[k], part):
                    failures.append(f"generator failed to support coordinate: {sim}")
                    continue
                if not sim.pulled_back(f).is_k_supported_on(k, part):
                    failures.append(f"structure map broke k-support: f={f}, s={sim}")
    return _report(spec, "exhaustive", failures)


def check_kfsupp(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    for _ in range(spec.trials):
        part = s.upset_biinfinite()
        deg = s.rng.randrange(0, min(spec.degree, 3))
        coords = [s.papinj_mild() for _ in range(deg + 1)]
        sim = _selfm(*coords)
        maps = s.pap_tuple(deg + 1)
        k = s.rng.randrange(deg + 1)
        acted = em_act(maps, sim)
        if acted.is_k_supported_on(k, maps[k].image(part)) != sim.is_k_supported_on(k, part):
            failures.append(f"converse support law fails: s={sim}, A={part}")
    return _report(spec, "randomized", failures)


def check_infinite_compl(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    done = 0
    while done < spec.trials:
        part = s.upset_coinfinite()
        maps = [s.papinj() for _ in range(s.rng.randrange(1, 4))]
        if not union_all(m.image(part) for m in maps).is_coinfinite():
            continue
        try:
            chi = stabilizing_chi(part, maps, period_bound=spec.period_bound)
        except Exception as exc:
            failures.append(f"search failed: {exc}: A={part}, maps={[str(m) for m in maps]}")
            done += 1
            continue
        if not chi.fixes_pointwise(part):
            failures.append(f"chi moves the fixed set: {chi}")
        if not union_all(m.compose(chi).image() for m in maps).is_coinfinite():
            failures.append(f"composite images not co-infinite: chi={chi}")
        done += 1
    return _report(spec, "randomized", failures)


def check_equal_mod_ma(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    done = 0
    while done < spec.trials:
        part = s.upset_biinfinite()
        length = s.rng.randrange(1, 4)
        us = [s.papinj() for _ in range(length)]
        if not union_all(u.image(part) for u in us).is_coinfinite():
            continue
        vs = [s.papinj_agreeing_on(u, part) for u in us]
        verdict = equal_mod_MA(part, us, vs)
        if verdict != ModMAResult.EQUAL:
            failures.append(f"sufficient condition not certified: A={part}")
        # the certificate's key step: a stabilizing element exists
        try:
            stabilizing_chi(part, us, period_bound=spec.period_bound)
        except Exception as exc:
            failures.append(f"no stabilizer for certified instance: {exc}")
        if equal_mod_MA(part, us, us) != ModMAResult.EQUAL:
            failures.append("reflexivity failed")
        bad = [succ().compose(u) for u in us]
        if any(not u.equal_on(b, part) for u, b in zip(us, bad)):
            if equal_mod_MA(part, us, bad) != ModMAResult.UNKNOWN:
                failures.append(f"disagreeing tuples certified: A={part}")
        done += 1
    return _report(spec, "randomized", failures)


def check_tau_mu_functor(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    depth = min(spec.degree, 3)
    pool = [identity(), succ(), double(), pj.affine(2, 1), pj.affine(4, 1), swap(1, 2)]
    pool += [s.papinj_mild() for _ in range(4)]
    mu_space = TruncEMSS(SELF_M, depth=depth).filter_mu()
    tau_space = TruncEMSS(SELF_M, depth=depth).filter_tau()
    for deg in range(depth + 1):
        for tup in itertools.product(pool, repeat=deg + 1):
            sim = _selfm(*tup)
            coordwise = all(
                SELF_M.classify(u) == Classification.MILD_NOT_TAME for u in tup
            )
            if mu_space.member(sim) != coordwise:
                failures.append(f"mu filter disagrees with coordinatewise filter: {sim}")
            if tau_space.member(sim):
                failures.append(f"tame simplex over the self-action: {sim}")
        if len(pool) ** (deg + 2) > 5000:
            break
    for _ in range(spec.trials // 3):
        deg = s.rng.randrange(1, depth + 1)
        sim = _selfm(*(s.papinj_mild() for _ in range(deg + 1)))
        if not mu_space.member(sim):
            failures.append(f"mild generator escaped the filter: {sim}")
            continue
        if not mu_space.member(em_act(s.pap_tuple(deg + 1), sim)):
            failures.append(f"mu filter not action-closed: {sim}")
        if not mu_space.member(sim.face(s.rng.randrange(deg + 1))):
            failures.append(f"mu filter not face-closed: {sim}")
        if deg < depth and not mu_space.member(sim.degeneracy(0)):
            failures.append(f"mu filter not degeneracy-closed: {sim}")
    return _report(spec, "exhaustive", failures)


# -- box product ----------------------------------------------------------------------------


def _mixed_mild_simplex(s: Sampler, deg: int, slot: int) -> Simplex:
    fam = FiniteInjFamily(frozenset({slot}))
    if s.rng.random() < 0.5:
        vals = s.rng.sample(range(1, 30), deg + 1)
        return Simplex(tuple(fam.elt(((slot, v),)) for v in vals))
    return _selfm(*(s.papinj_mild() for _ in range(deg + 1)))


def check_box_assoc(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    done = 0
    while done < spec.trials:
        deg = s.rng.randrange(0, min(spec.degree, 2) + 1)
        sims = [_mixed_mild_simplex(s, deg, slot) for slot in (1, 2, 3)]
        if not in_box(sims[:2]) or not in_box([sims[0], sims[1], sims[2]]):
            continue
        rep = monoidal_witness("assoc", sims)
        if not rep.ok:
            failures.append(f"associativity transport failed: {rep.detail}")
        done += 1
    return _report(spec, "randomized", failures)


def check_box_symm(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    for _ in range(spec.trials):
        deg = s.rng.randrange(0, min(spec.degree, 2) + 1)
        x = _mixed_mild_simplex(s, deg, 1)
        y = _mixed_mild_simplex(s, deg, 2)
        rep = monoidal_witness("symm", [x, y])
        if not rep.ok:
            failures.append(f"symmetry failed: {x} vs {y}")
    return _report(spec, "randomized", failures)


def check_box_unit(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    for _ in range(spec.trials):
        deg = s.rng.randrange(0, min(spec.degree, 2) + 1)
        x = _mixed_mild_simplex(s, deg, 1)
        rep = monoidal_witness("unit", [x])
        if not rep.ok:
            failures.append(f"unit pairing failed: {x}")
    nonmild = _selfm(identity())
    if monoidal_witness("unit", [nonmild]).ok is not True:
        failures.append("non-mild unit case mishandled")
    return _report(spec, "randomized", failures)


def check_inj_coproduct(spec: CheckSpec) -> Report:
    failures = []
    for degree in (0, 1):
        rep = inj_coproduct_iso(frozenset({1}), frozenset({2}), degree, spec.entry_bound)
        if not rep.bijective:
            failures.append(
                f"count mismatch at degree {degree}: {rep.left_count} vs {rep.right_count}"
            )
    rep0 = inj_coproduct_iso(frozenset({1}), frozenset(), 1, min(spec.entry_bound, 5))
    if not rep0.bijective:
        failures.append("degenerate empty summand failed")
    return _report(spec, "exhaustive", failures)


def check_tame_strong_monoidal(spec: CheckSpec) -> Report:
    failures = []
    fam1 = FiniteInjFamily(frozenset({1}))
    fam2 = FiniteInjFamily(frozenset({2}))
    space1 = TruncEMSS(fam1, depth=1)
    space2 = TruncEMSS(fam2, depth=1)
    bound = min(spec.entry_bound, 5)
    for x in space1.simplices(1, bound):
        for y in space2.simplices(1, bound):
            member = in_box([x, y])
            tame_side = (
                space1.filter_tau().member(x)
                and space2.filter_tau().member(y)
                and member
            )
            if member != tame_side:
                failures.append(f"tame filter changed box membership: {x}, {y}")
    tau = TruncEMSS(SELF_M, depth=1).filter_tau()
    for cand in (_selfm(double()), _selfm(identity())):
        if tau.member(cand):
            failures.append(f"self-action simplex counted as tame: {cand}")
    return _report(spec, "exhaustive", failures)


def check_operad_round_trip(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    fam1 = FiniteInjFamily(frozenset({1}))
    fam2 = FiniteInjFamily(frozenset({2}))
    v1 = [fam1.elt(((1, a),)) for a in range(1, spec.entry_bound + 1)]
    v2 = [fam2.elt(((2, b),)) for b in range(1, spec.entry_bound + 1)]
    checked = 0
    for deg in range(min(spec.degree, 2) + 1):
        for ca in itertools.product(range(spec.entry_bound), repeat=deg + 1):
            for cb in itertools.product(range(spec.entry_bound), repeat=deg + 1):
                x = Simplex(tuple(v1[i] for i in ca))
                y = Simplex(tuple(v2[i] for i in cb))
                w = box_membership([x, y])
                if not isinstance(w, BoxWitness):
                    continue
                checked += 1
                cls = phi_inverse([x, y], w)
                if phi(cls) != (x, y):
                    failures.append(f"round trip failed: {x}, {y}")
                    continue
                if not class_equal(phi_inverse(phi(cls), w), cls):
                    failures.append(f"reverse round trip failed: {x}, {y}")
    random_done = 0
    while random_done < 500:
        deg = s.rng.randrange(0, min(spec.degree, 2) + 1)
        n = s.rng.randrange(1, 4)
        sims = [_selfm(*(s.papinj_mild() for _ in range(deg + 1))) for _ in range(n)]
        w = box_membership(sims)
        if not isinstance(w, BoxWitness):
            continue
        cls = phi_inverse(sims, w)
        if phi(cls) != tuple(sims):
            failures.append(f"random round trip failed: {[str(t) for t in sims]}")
        elif not class_equal(phi_inverse(phi(cls), w), cls):
            failures.append(f"random reverse round trip failed: {[str(t) for t in sims]}")
        random_done += 1
    return _report(
        spec, "exhaustive", failures, notes=[f"exhaustive_pairs={checked}", "random=500"]
    )


def check_class_eq_relation(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    done = 0
    while done < spec.trials:
        deg = s.rng.randrange(0, min(spec.degree, 2) + 1)
        n = s.rng.randrange(1, 3)
        sims = [_selfm(*(s.papinj_mild() for _ in range(deg + 1))) for _ in range(n)]
        if not in_box(sims):
            continue
        cls = phi_inverse(sims)
        blocks = [[s.papinj_mild() for _ in range(deg + 1)] for _ in range(n)]
        lhs, rhs = twisted_pair(cls, blocks)
        if phi(lhs) != phi(rhs):
            failures.append(f"relation changed the value: {[str(t) for t in sims]}")
        elif not class_equal(lhs, rhs):
            failures.append(f"relation not identified: {[str(t) for t in sims]}")
        if not in_box(list(phi(lhs))):
            failures.append(f"value left the box product: {[str(t) for t in sims]}")
        done += 1
    return _report(spec, "randomized", failures)


def check_star_mod_mild(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    pool = []
    for deg in range(min(spec.degree, 2) + 1):
        for _ in range(10):
            pool.append(_selfm(*(s.papinj_mild() for _ in range(deg + 1))))
    rep = star_module_check(pool, seed=spec.seed, probes=20)
    if not rep.passed:
        failures.append(f"mild self-action pool failed: {rep.summary()}")
    space = TruncEMSS(FiniteInjFamily(frozenset({1})), depth=2)
    exhaustive_pool = space.simplices(0, 10) + space.simplices(1, 10)
    rep2 = star_module_check(exhaustive_pool, seed=spec.seed, probes=20)
    if not rep2.passed:
        failures.append(f"finite-injection pool failed: {rep2.summary()}")
    return _report(spec, "exhaustive", failures, notes=[rep.summary(), rep2.summary()])


def check_star_mod_non_mild(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    pool = [_selfm(s.papinj_mild()) for _ in range(6)]
    pool.insert(3, _selfm(identity()))
    rep = star_module_check(pool, seed=spec.seed, probes=5)
    if rep.passed:
        failures.append("full self-action passed the star-module check")
    if rep.unhit_witness != str(_selfm(identity())):
        failures.append(f"wrong witness: {rep.unhit_witness}")
    if not rep.unhit_reason or "co-infinite" not in rep.unhit_reason:
        failures.append(f"missing reason: {rep.unhit_reason}")
    return _report(spec, "randomized", failures, notes=[rep.summary()])


def check_mu_via_operadic(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    rep = mu_via_operadic(_selfm(identity()))
    if rep.result.payload[0] != _selfm(double()) or not rep.payload_mild:
        failures.append("identity vertex did not normalize to the doubling map")
    for _ in range(spec.trials // 3):
        deg = s.rng.randrange(0, min(spec.degree, 2) + 1)
        mix = [s.papinj() if s.rng.random() < 0.5 else s.papinj_mild() for _ in range(deg + 1)]
        x = _selfm(*mix)
        out = mu_via_operadic(x)
        if not out.payload_mild:
            failures.append(f"payload not mild: {x}")
        if out.phi_value[1] != star_simplex(deg):
            failures.append(f"one-point coordinate moved: {x}")
    return _report(spec, "randomized", failures)


def check_warning_quotient(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    wid = WARNING_QUOTIENT.elt(identity())
    for n in range(11):
        if not wid.is_supported_on(warning_level_set(n)):
            failures.append(f"[id] not supported on level set {n}")
    if wid.is_supported_on(EMPTY):
        failures.append("[id] supported on the empty set")
    if not isinstance(wid.minimal_support(), NoMinimal):
        failures.append("[id] reported a least support")
    # cross-validate the structural criterion against sampled monoid elements
    for rep_map, part, expect in [
        (identity(), warning_level_set(2), True),
        (identity(), EMPTY, False),
        (succ(), EVENS, False),
        (double(), UPSet.progression(4, {0}), True),
        (s.papinj(), OMEGA, True),
    ]:
        x = WARNING_QUOTIENT.elt(rep_map)
        if x.is_supported_on(part) != expect:
            failures.append(f"criterion wrong for {x} on {part}")
            continue
        if expect and part.is_coinfinite():
            for _ in range(50):
                g = s.papinj_fixing(part)
                if x.act(g) != x:
                    failures.append(f"sampled fixing element moved {x}: {g}")
                    break
        elif not expect:
            mover = WARNING_QUOTIENT.moving_witness(rep_map, part)
            if not mover.fixes_pointwise(part) or x.act(mover) == x:
                failures.append(f"moving witness failed for {x} on {part}")
    return _report(spec, "exhaustive", failures)


def check_factorization_counterexample(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    for _ in range(spec.trials):
        word = identity()
        for _ in range(s.rng.randrange(1, 6)):
            part = EVENS if s.rng.random() < 0.5 else ODDS
            word = word.compose(s.papinj_fixing(part))
        if not word.image(EVENS).subset_of(EVENS):
            failures.append(f"composite moved the evens out: {word}")
    if succ().image(EVENS).subset_of(EVENS):
        failures.append("the shift keeps the evens inside the evens")
    return _report(spec, "randomized", failures)


def check_free_sigma_action(spec: CheckSpec) -> Report:
    s = Sampler(spec.seed)
    failures = []
    done = 0
    while done < spec.trials:
        n = s.rng.randrange(2, 4)
        sims = [_selfm(s.papinj_mild()) for _ in range(n)]
        if not in_box(sims):
            continue
        for i in range(n):
            for j in range(i + 1, n):
                if sims[i] == sims[j]:
                    failures.append(f"equal coordinates in a box tuple: {sims[i]}")
        done += 1
    fam = FiniteInjFamily(frozenset({1}))
    verts = [Simplex((x,)) for x in fam.elements(min(spec.entry_bound, 6))]
    for x, y in itertools.product(verts, repeat=2):
        if in_box([x, y]) and x == y:
            failures.append(f"diagonal vertex in the box square: {x}")
    return _report(spec, "randomized", failures)


def check_universal_embedding(spec: CheckSpec) -> Report:
    failures = []
    for grp, expected_block in [
        (FinGroup.cyclic(2), 3),
        (FinGroup.cyclic(3), 4),
        (FinGroup.cyclic(4), 7),
        (FinGroup.symmetric(3), 12),
    ]:
        emb = universal_embedding(grp)
        if emb.block != expected_block:
            failures.append(f"unexpected block size {emb.block} for order {grp.order}")
        for i in range(grp.order):
            for j in range(grp.order):
                if emb.of(i).compose(emb.of(j)) != emb.of(grp.mult(i, j)):
                    failures.append(f"homomorphism fails at ({i},{j}) for order {grp.order}")
            if not emb.of(i).is_bijection():
                failures.append(f"non-bijective value at {i}")
        # every orbit type recurs: the same within-block permutation in five blocks
        positions = emb.orbit_type_positions()
        for cls_index, offsets in positions.items():
            for block in range(5):
                base = block * emb.block
                for i in range(grp.order):
                    moved = {emb.of(i).eval(base + off + 1) for off in offsets}
                    expected = {base + off + 1 for off in offsets}
                    if moved != expected:
                        failures.append(
                            f"orbit segment {cls_index} not stable in block {block}"
                        )
    return _report(spec, "exhaustive", failures)


def check_fixed_points(spec: CheckSpec) -> Report:
    failures = []
    c2 = FinGroup.cyclic(2)
    emb = universal_embedding(c2)
    fam = FiniteInjFamily(frozenset({1, 2}))
    tw = DomainTwist.permuting(c2, lambda i, a: a if i == 0 else 3 - a, {1, 2})
    space = TruncEMSS(fam, depth=2, twist=tw)
    bound = 30
    rep = graph_fixed_points(space, emb, phi=[0, 1], degree=0, entry_bound=bound)
    got = {tuple(v for _, v in s.coords[0].payload) for s in rep.simplices}
    want = set()
    for k in range(bound // 3):
        want.add((3 * k + 1, 3 * k + 2))
        want.add((3 * k + 2, 3 * k + 1))
    if got != want:
        failures.append("graph fixed vertices differ from the block pattern")
    rep2 = graph_fixed_points(space, emb, phi=[0, 0], degree=0, entry_bound=bound)
    got2 = {tuple(v for _, v in s.coords[0].payload) for s in rep2.simplices}
    fixed_col = [3 * k + 3 for k in range(bound // 3)]
    want2 = {(a, b) for a in fixed_col for b in fixed_col if a != b}
    if got2 != want2:
        failures.append("trivial-homomorphism fixed vertices differ")
    triv = FinGroup.cyclic(1)
    emb1 = universal_embedding(triv)
    fam1 = FiniteInjFamily(frozenset({1}))
    tw1 = DomainTwist.permuting(triv, lambda i, a: a, {1})
    space1 = TruncEMSS(fam1, depth=1, twist=tw1)
    rep3 = graph_fixed_points(space1, emb1, phi=[0], degree=0, entry_bound=6)
    if len(rep3.simplices) != 6:
        failures.append("trivial group does not fix everything")
    return _report(spec, "exhaustive", failures)


def check_cmon_axioms(spec: CheckSpec) -> Report:
    rep = verify_cmon(
        seed=spec.seed,
        trials=spec.trials,
        entry_bound=spec.entry_bound,
        max_degree=min(spec.degree, 2),
        exhaustive_weight=2,
    )
    notes = [
        f"unit={rep.unit_checked}",
        f"commutativity={rep.commutativity_checked}",
        f"associativity={rep.associativity_checked}",
        f"operadic={rep.relation_checked}",
        f"no_empty_support={rep.empty_support_checked}",
    ]
    return _report(spec, "exhaustive", list(rep.failures), notes)


REGISTRY: dict[str, tuple] = {
    "agreeSupp1": (check_agree_supp_1, "maps agreeing on a co-infinite support act equally"),
    "agreeSupp2": (check_agree_supp_2, "acting by f moves a support A to f(A)"),
    "agreeSupp3": (check_agree_supp_3, "support pulls back along the acting injection"),
    "capSupp": (check_cap_supp, "supports intersect, via explicit witness chains"),
    "injAct": (check_inj_act, "every injection acts injectively on mild pools"),
    "complement": (check_complement, "complements of invariant subsets stay invariant"),
    "ksupp": (check_ksupp, "tuple actions move k-supports to image sets"),
    "fksupp": (check_fksupp, "simplicial structure maps preserve k-supports"),
    "kfsupp": (check_kfsupp, "k-support pulls back along coordinatewise actions"),
    "infiniteCompl": (check_infinite_compl, "a stabilizer keeps composite images co-infinite"),
    "equalModMA": (check_equal_mod_ma, "tuple classes agree under the sufficient condition"),
    "tauMuFunctor": (check_tau_mu_functor, "the mild filter is computed coordinatewise and is closed"),
    "boxAssoc": (check_box_assoc, "box membership transports across re-bracketing"),
    "boxSymm": (check_box_symm, "box membership is symmetric"),
    "boxUnit": (check_box_unit, "pairing with the point preserves membership exactly for mild simplices"),
    "injCoproduct": (check_inj_coproduct, "restriction identifies disjoint-union simplices with box pairs"),
    "tameStrongMonoidal": (check_tame_strong_monoidal, "the finite-support filter commutes with the box pairing"),
    "operadRoundTrip": (check_operad_round_trip, "the comparison map and its inverse compose to the identity"),
    "classEqRelation": (check_class_eq_relation, "the defining relation yields equal classes"),
    "starModMild": (check_star_mod_mild, "mild pools pass the one-point pairing bijection"),
    "starModNonMild": (check_star_mod_non_mild, "the full self-action fails with the identity vertex witness"),
    "muViaOperadic": (check_mu_via_operadic, "the normalization lands every simplex in the mild part"),
    "warningQuotient": (check_warning_quotient, "the quotient class of the identity has nested supports, none least"),
    "factorizationCounterexample": (check_factorization_counterexample, "words fixing evens or odds keep evens inside evens; the shift does not"),
    "freeSigmaAction": (check_free_sigma_action, "box tuples have pairwise distinct coordinates"),
    "universalEmbedding": (check_universal_embedding, "the block embedding is a homomorphism with recurring orbit types"),
    "fixedPoints": (check_fixed_points, "graph-subgroup fixed vertices match the block pattern"),
    "cmonAxioms": (check_cmon_axioms, "the partial sum is a commutative monoid compatible with everything"),
}


def run_check(spec: CheckSpec) -> Report:
    if spec.id not in REGISTRY:
        raise UnknownCheck(f"no check named {spec.id!r}")
    fn, _ = REGISTRY[spec.id]
    start = time.perf_counter()
    report = fn(spec)
    report.elapsed = time.perf_counter() - start
    return report


def verify_all(trials: int = 300, seed: int = 0, degree: int = 3,
               entry_bound: int = 8, period_bound: int = 64) -> list[Report]:
    registry_selftest()
    out = []
    for check_id in REGISTRY:
        spec = CheckSpec(
            id=check_id,
            trials=trials,
            seed=seed,
            degree=degree,
            entry_bound=entry_bound,
            period_bound=period_bound,
        )
        out.append(run_check(spec))
    return out


EXPECTED_IDS = (
    "agreeSupp1", "agreeSupp2", "agreeSupp3", "capSupp", "injAct", "complement",
    "ksupp", "fksupp", "kfsupp", "infiniteCompl", "equalModMA", "tauMuFunctor",
    "boxAssoc", "boxSymm", "boxUnit", "injCoproduct", "tameStrongMonoidal",
    "operadRoundTrip", "classEqRelation", "starModMild", "starModNonMild",
    "muViaOperadic", "warningQuotient", "factorizationCounterexample",
    "freeSigmaAction", "universalEmbedding", "fixedPoints", "cmonAxioms",
)


def registry_selftest() -> None:
    """The registry carries exactly the fixed id list, each entry runnable."""
    ids = tuple(REGISTRY)
    if ids != EXPECTED_IDS:
        missing = set(EXPECTED_IDS) - set(ids)
        extra = set(ids) - set(EXPECTED_IDS)
        raise UnknownCheck(f"registry drift: missing={missing}, extra={extra}")
    for check_id, (fn, description) in REGISTRY.items():
        if not callable(fn) or not description:
            raise UnknownCheck(f"registry entry {check_id} incomplete")
