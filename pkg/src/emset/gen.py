"""Seeded random generators for the verification suite.

All draws are bounded so that individual trials stay fast: thresholds up to 8,
periods up to 12, slopes up to 4.  Injections are produced as short words over
an always-injective generator set, so no rejection loop is needed.
"""

from __future__ import annotations

import random

from . import papinj as pj
from .papinj import PAPInj
from .upsets import EMPTY, EVENS, OMEGA, UPSet


class Sampler:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    # -- ultimately periodic sets ------------------------------------------------

    def upset(self, max_threshold: int = 5, max_period: int = 6) -> UPSet:
        rng = self.rng
        n = rng.randrange(0, max_threshold + 1)
        exc = frozenset(x for x in range(1, n + 1) if rng.random() < 0.4)
        p = rng.randrange(1, max_period + 1)
        res = frozenset(r for r in range(p) if rng.random() < 0.4)
        return UPSet(n, exc, p, res)

    def upset_infinite(self) -> UPSet:
        for _ in range(50):
            s = self.upset()
            if s.is_infinite():
                return s
        return EVENS

    def upset_coinfinite(self) -> UPSet:
        for _ in range(50):
            s = self.upset()
            if s.is_coinfinite():
                return s
        return EVENS

    def upset_biinfinite(self) -> UPSet:
        for _ in range(50):
            s = self.upset()
            if s.is_infinite() and s.is_coinfinite():
                return s
        return EVENS

    def subset_of(self, s: UPSet, keep_infinite: bool = False) -> UPSet:
        """A random subset, by intersecting with a random set."""
        for _ in range(50):
            t = s.intersect(self.upset())
            if not keep_infinite or t.is_infinite():
                return t
        return s

    # -- injections -----------------------------------------------------------------

    def _generator(self) -> PAPInj:
        rng = self.rng
        roll = rng.randrange(6)
        if roll == 0:
            return pj.identity()
        if roll == 1:
            return pj.succ()
        if roll == 2:
            return pj.affine(rng.randrange(2, 5), rng.randrange(0, 4))
        if roll == 3:
            a = rng.randrange(1, 9)
            b = rng.randrange(1, 9)
            return pj.swap(a, b) if a != b else pj.identity()
        if roll == 4:
            return pj.enumerator(self.upset_biinfinite())
        k = rng.randrange(1, 7)
        vals = rng.sample(range(1, 13), k)
        perm = dict(zip(sorted(vals), vals))
        return pj.from_permutation(perm)

    def _bounded(self, u: PAPInj, max_slope: int = 4) -> bool:
        # generator bounds: threshold 8, period 12, slopes up to 4
        if u.threshold > 8 or u.period > 12:
            return False
        return all(pc is None or pc[0] <= max_slope for pc in u.pieces)

    def papinj(self, depth: int = 2) -> PAPInj:
        for _ in range(40):
            out = self._generator()
            for _ in range(self.rng.randrange(0, depth)):
                out = out.compose(self._generator())
            if self._bounded(out):
                return out
        return pj.succ()

    def papinj_mild(self) -> PAPInj:
        """A random injection whose image has infinite complement."""
        for _ in range(40):
            out = pj.enumerator(self.upset_biinfinite()).compose(self.papinj())
            if self._bounded(out, max_slope=8):
                return out
        return pj.double()

    def papinj_into(self, target: UPSet) -> PAPInj:
        """A random injection whose image lies inside the infinite set target."""
        for _ in range(40):
            out = pj.enumerator(target).compose(self.papinj())
            if self._bounded(out, max_slope=24):
                return out
        return pj.enumerator(target)

    def papinj_fixing(self, part: UPSet) -> PAPInj:
        """A random element of the submonoid fixing `part` pointwise.

        Requires the complement of `part` to be infinite."""
        comp = part.complement()
        out = pj.identity()
        for _ in range(self.rng.randrange(1, 3)):
            roll = self.rng.randrange(3)
            if roll == 0:
                a, b = comp.first_n(6)[self.rng.randrange(3)], comp.first_n(6)[3 + self.rng.randrange(3)]
                step = pj.swap(a, b)
            elif roll == 1:
                # shift along the complement: drop its first few elements
                k = self.rng.randrange(1, 4)
                target = comp.difference(UPSet.finite(comp.first_n(k)))
                step = pj.glue([(part, pj.identity()), (comp, pj.order_embed(comp, target))])
            else:
                step = pj.identity()
            out = out.compose(step)
        return out

    def papinj_agreeing_on(self, f: PAPInj, part: UPSet) -> PAPInj:
        """A random injection agreeing with f on the co-infinite set `part`."""
        fpart = f.image(part)
        rest_src = part.complement()
        rest_dst = fpart.complement()
        target = self.subset_of(rest_dst, keep_infinite=True)
        g = pj.glue([(part, f), (rest_src, pj.order_embed(rest_src, target))])
        return g

    def pap_tuple(self, length: int, mild: bool = False) -> tuple[PAPInj, ...]:
        mk = self.papinj_mild if mild else self.papinj
        return tuple(mk() for _ in range(length))
