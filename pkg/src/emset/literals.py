"""Textual literals and the expression evaluator behind the command line.

Grammar sketch:

    up{N=4, exc=[2,4], p=2, res=[0]}   up{finite=[1,5]}   up{mod 2 in [0]}
    pap{table={1:3}, N=1, p=2, pieces=[(0, 1/2, 3), (1, 2/1, 0)]}
    inj{A=[1,2], table={1:3,2:5}}      selfm{double}      warn{succ}
    cfg{m=2, cols=[[1,4],[2,5]]}       injn[pap1; pap2]
    [elt; elt; ...]                    EInj{A=[1], D=2}   ESelfM{D=3}
    name(arg, ...)                     box? [s1; s2]

Expressions combine literals with the named constants (id, succ, double,
swap(a,b), interleave(n,j)) and the evaluation verbs; outputs print in
canonical literal form, so reported counterexamples can be replayed.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any

from . import papinj as pj
from .boxprod import BoxWitness, NotInBox, box_membership
from .emss import Simplex, TruncEMSS
from .errors import ParseError
from .msets import (
    SELF_M,
    WARNING_QUOTIENT,
    FiniteInjFamily,
    InjUPFamily,
    MElt,
    NoMinimal,
)
from .operadic import OperadicClass, class_equal, phi, phi_inverse, star_module_check
from .papinj import InjN, PAPInj
from .staralg import StarConfig, sum_configs, verify_cmon
from .upsets import UPSet

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9?]*(?:-[A-Za-z_][A-Za-z_0-9?]*)*)"
    r"|(?P<sym>[{}\[\](),:;=/\-]))"
)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip():
                    raise ParseError(f"unexpected character {text[pos]!r}", pos)
                break
            if m.lastgroup:
                self.tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
            pos = m.end()
        self.idx = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.idx] if self.idx < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.idx += 1
        return tok

    def expect(self, value: str) -> None:
        kind, text, pos = self.next()
        if text != value:
            raise ParseError(f"expected {value!r}, found {text!r}", pos)

    def accept(self, value: str) -> bool:
        tok = self.peek()
        if tok and tok[1] == value:
            self.idx += 1
            return True
        return False

    # -- numbers and lists ------------------------------------------------------

    def integer(self) -> int:
        neg = self.accept("-")
        kind, text, pos = self.next()
        if kind != "num":
            raise ParseError(f"expected a number, found {text!r}", pos)
        return -int(text) if neg else int(text)

    def int_list(self) -> list[int]:
        self.expect("[")
        out = []
        if not self.accept("]"):
            out.append(self.integer())
            while self.accept(","):
                out.append(self.integer())
            self.expect("]")
        return out

    def pair_table(self) -> dict[int, int]:
        self.expect("{")
        out: dict[int, int] = {}
        if not self.accept("}"):
            while True:
                k = self.integer()
                self.expect(":")
                out[k] = self.integer()
                if not self.accept(","):
                    break
            self.expect("}")
        return out

    def fraction(self) -> Fraction:
        num = self.integer()
        if self.accept("/"):
            return Fraction(num, self.integer())
        return Fraction(num)

    # -- literals ------------------------------------------------------------------

    def upset_body(self) -> UPSet:
        self.expect("{")
        tok = self.peek()
        if tok and tok[1] == "finite":
            self.next()
            self.expect("=")
            elems = self.int_list()
            self.expect("}")
            return UPSet.finite(elems)
        if tok and tok[1] == "mod":
            self.next()
            p = self.integer()
            self.expect("in")
            res = self.int_list()
            self.expect("}")
            return UPSet.progression(p, res)
        self.expect("N")
        self.expect("=")
        n = self.integer()
        self.expect(",")
        self.expect("exc")
        self.expect("=")
        exc = self.int_list()
        self.expect(",")
        self.expect("p")
        self.expect("=")
        p = self.integer()
        self.expect(",")
        self.expect("res")
        self.expect("=")
        res = self.int_list()
        self.expect("}")
        return UPSet(n, exc, p, res)

    def pap_body(self) -> PAPInj:
        self.expect("{")
        table: dict[int, int] = {}
        threshold = 0
        tok = self.peek()
        if tok and tok[1] == "table":
            self.next()
            self.expect("=")
            table = self.pair_table()
            self.expect(",")
            self.expect("N")
            self.expect("=")
            threshold = self.integer()
            self.expect(",")
        self.expect("p")
        self.expect("=")
        period = self.integer()
        self.expect(",")
        self.expect("pieces")
        self.expect("=")
        self.expect("[")
        pieces: list[tuple[Fraction, Fraction] | None] = [None] * period
        if not self.accept("]"):
            while True:
                self.expect("(")
                r = self.integer()
                self.expect(",")
                slope = self.fraction()
                self.expect(",")
                offset = self.fraction()
                self.expect(")")
                if not (0 <= r < period):
                    raise ParseError(f"residue {r} outside 0..{period - 1}", self.pos)
                pieces[r] = (slope, offset)
                if not self.accept(","):
                    break
            self.expect("]")
        self.expect("}")
        out = PAPInj(threshold, tuple(sorted(table.items())), period, tuple(pieces))
        return out.validate()

    def simplex_body(self) -> Simplex:
        self.expect("[")
        coords = [self.expression()]
        while self.accept(";"):
            coords.append(self.expression())
        self.expect("]")
        elts = []
        for c in coords:
            if isinstance(c, PAPInj):
                c = SELF_M.elt(c)
            if not isinstance(c, MElt):
                raise ParseError("simplex coordinates must be family elements", self.pos)
            elts.append(c)
        return Simplex(tuple(elts))

    # -- expressions ---------------------------------------------------------------

    def expression(self) -> Any:
        tok = self.peek()
        if tok is None:
            raise ParseError("empty expression", len(self.text))
        kind, text, pos = tok
        if kind == "num" or text == "-":
            return self.integer()
        if text == "[":
            return self.simplex_body()
        self.next()
        if text == "up":
            return self.upset_body()
        if text == "pap":
            return self.pap_body()
        if text == "inj":
            self.expect("{")
            self.expect("A")
            self.expect("=")
            src = self.int_list()
            self.expect(",")
            self.expect("table")
            self.expect("=")
            table = self.pair_table()
            self.expect("}")
            return FiniteInjFamily(frozenset(src)).elt(tuple(sorted(table.items())))
        if text == "selfm":
            self.expect("{")
            inner = self.expression()
            self.expect("}")
            return SELF_M.elt(_as_pap(inner, pos))
        if text == "warn":
            self.expect("{")
            inner = self.expression()
            self.expect("}")
            return WARNING_QUOTIENT.elt(_as_pap(inner, pos))
        if text == "injn":
            self.expect("[")
            comps = [self.expression()]
            while self.accept(";"):
                comps.append(self.expression())
            self.expect("]")
            return InjN(tuple(_as_pap(c, pos) for c in comps))
        if text == "cfg":
            self.expect("{")
            self.expect("m")
            self.expect("=")
            m = self.integer()
            self.expect(",")
            self.expect("cols")
            self.expect("=")
            self.expect("[")
            cols = []
            if not self.accept("]"):
                cols.append(tuple(self.int_list()))
                while self.accept(","):
                    cols.append(tuple(self.int_list()))
                self.expect("]")
            self.expect("}")
            if len(cols) != m:
                raise ParseError(f"declared weight {m} but {len(cols)} columns", pos)
            levels = len(cols[0]) if cols else 1
            return StarConfig(levels, tuple(cols))
        if text == "cls":
            self.expect("{")
            self.expect("frame")
            self.expect("=")
            self.expect("[")
            frames = [self.expression()]
            while self.accept(";"):
                frames.append(self.expression())
            self.expect("]")
            self.expect(",")
            self.expect("payload")
            self.expect("=")
            self.expect("[")
            payloads = [self.expression()]
            while self.accept(";"):
                payloads.append(self.expression())
            self.expect("]")
            self.expect("}")
            return OperadicClass(tuple(frames), tuple(payloads))
        if text in ("EInj", "ESelfM"):
            return self.family_body(text)
        if text == "box?":
            s = self.peek()
            if s is None or s[1] != "[":
                raise ParseError("box? expects a simplex list", pos)
            self.expect("[")
            sims = [self.expression()]
            while self.accept(";"):
                sims.append(self.expression())
            self.expect("]")
            return box_membership([_as_simplex(x, pos) for x in sims])
        if self.accept("("):
            args = []
            if not self.accept(")"):
                args.append(self.expression())
                while self.accept(","):
                    args.append(self.expression())
                self.expect(")")
            return _call(text, args, pos)
        return _constant(text, pos)

    def family_body(self, kind: str) -> TruncEMSS:
        self.expect("{")
        if kind == "EInj":
            self.expect("A")
            self.expect("=")
            tok = self.peek()
            if tok and tok[1] == "up":
                self.next()
                src = self.upset_body()
                base = InjUPFamily(src)
            else:
                base = FiniteInjFamily(frozenset(self.int_list()))
            self.expect(",")
        else:
            base = SELF_M
        self.expect("D")
        self.expect("=")
        depth = self.integer()
        self.expect("}")
        return TruncEMSS(base, depth=depth)


def _as_pap(value: Any, pos: int) -> PAPInj:
    if isinstance(value, PAPInj):
        return value
    if isinstance(value, MElt) and isinstance(value.payload, PAPInj):
        return value.payload
    raise ParseError("expected an injection", pos)


def _as_upset(value: Any, pos: int) -> UPSet:
    if isinstance(value, UPSet):
        return value
    raise ParseError("expected an ultimately periodic set", pos)


def _as_simplex(value: Any, pos: int) -> Simplex:
    if isinstance(value, Simplex):
        return value
    if isinstance(value, MElt):
        return Simplex((value,))
    if isinstance(value, StarConfig):
        from .staralg import as_simplex

        return as_simplex(value)
    raise ParseError("expected a simplex", pos)


def _constant(name: str, pos: int) -> Any:
    table = {
        "id": pj.identity,
        "succ": pj.succ,
        "double": pj.double,
        "omega": lambda: UPSet.progression(1, [0]),
        "evens": lambda: UPSet.progression(2, [0]),
        "odds": lambda: UPSet.progression(2, [1]),
        "empty": lambda: UPSet.finite(()),
        "star": lambda: __import__("emset.msets", fromlist=["STAR"]).STAR,
    }
    if name in table:
        return table[name]()
    raise ParseError(f"unknown name {name!r}", pos)


def _call(name: str, args: list[Any], pos: int) -> Any:
    def pap(i):
        return _as_pap(args[i], pos)

    def ups(i):
        return _as_upset(args[i], pos)

    if name == "swap" and len(args) == 2:
        return pj.swap(args[0], args[1])
    if name == "interleave" and len(args) == 2:
        return pj.interleave(args[0], args[1])
    if name == "compose" and len(args) == 2:
        return pap(0).compose(pap(1))
    if name == "image":
        return pap(0).image(ups(1) if len(args) > 1 else None)
    if name == "preimage" and len(args) == 2:
        return pap(0).preimage(ups(1))
    if name == "equal_on" and len(args) == 3:
        return pap(0).equal_on(pap(1), ups(2))
    if name == "enumerator" and len(args) == 1:
        return pj.enumerator(ups(0))
    if name == "agreeing_bijection" and len(args) == 2:
        return pj.agreeing_bijection(pap(0), ups(1))
    if name == "canonicalize" and len(args) == 1:
        return ups(0).canonicalize()
    if name == "union" and len(args) == 2:
        return ups(0).union(ups(1))
    if name == "intersect" and len(args) == 2:
        return ups(0).intersect(ups(1))
    if name == "complement" and len(args) == 1:
        return ups(0).complement()
    if name == "classify" and len(args) == 1:
        return ups(0).classify()
    if name == "support" and len(args) == 1:
        value = args[0]
        if isinstance(value, MElt):
            return value.minimal_support()
        if isinstance(value, StarConfig):
            return value.k_support(0)
        raise ParseError("support expects a family element", pos)
    if name == "act" and len(args) == 2:
        target = args[1]
        if isinstance(target, MElt):
            return target.act(pap(0))
        raise ParseError("act expects an injection and a family element", pos)
    if name == "psum" and len(args) == 2:
        if not all(isinstance(a, StarConfig) for a in args):
            raise ParseError("psum expects two configurations", pos)
        return sum_configs(args[0], args[1])
    if name == "phi" and len(args) == 1 and isinstance(args[0], OperadicClass):
        return phi(args[0])
    if name in ("phi_inv", "phi-inv"):
        sims = [_as_simplex(a, pos) for a in args]
        return phi_inverse(sims)
    if name in ("class_eq", "class-eq") and len(args) == 2:
        return class_equal(args[0], args[1])
    if name in ("star_module_check", "star-module-check") and len(args) >= 1:
        space = args[0]
        if not isinstance(space, TruncEMSS):
            raise ParseError("star-module-check expects a family", pos)
        return star_module_check(_default_pool(space), seed=0, probes=10)
    if name in ("cmon_verify", "cmon-verify"):
        return verify_cmon(seed=0, trials=60, entry_bound=6, max_degree=2)
    raise ParseError(f"unknown operation {name!r}", pos)


def _default_pool(space: TruncEMSS) -> list[Simplex]:
    from .gen import Sampler

    if isinstance(space.base, FiniteInjFamily):
        pool = []
        for degree in range(min(space.depth, 1) + 1):
            pool.extend(space.simplices(degree, 8))
        return [s for s in pool if space.member(s)]
    sampler = Sampler(0)
    pool = []
    for degree in range(min(space.depth, 2) + 1):
        for _ in range(10):
            maps = [
                sampler.papinj_mild() if space.mode == "mu" else sampler.papinj()
                for _ in range(degree + 1)
            ]
            s = Simplex(tuple(space.base.elt(m) for m in maps))
            if space.member(s):
                pool.append(s)
    return pool


def parse(text: str) -> Any:
    parser = _Parser(text)
    value = parser.expression()
    if parser.peek() is not None:
        raise ParseError(f"trailing input {parser.peek()[1]!r}", parser.peek()[2])
    return value


def render(value: Any) -> str:
    """Canonical printed form of an evaluation result."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (UPSet, PAPInj, InjN, MElt, Simplex, StarConfig, OperadicClass)):
        return str(value)
    if isinstance(value, NotInBox):
        return str(value)
    if isinstance(value, BoxWitness):
        levels = "; ".join(
            "(" + ", ".join(str(p) for p in parts) + ")" for parts in value.levels
        )
        return "box{%s}" % levels
    if isinstance(value, NoMinimal):
        return f"NoMinimal({value.reason})"
    if isinstance(value, tuple):
        return "(" + "; ".join(render(v) for v in value) + ")"
    if hasattr(value, "summary"):
        return value.summary()
    if hasattr(value, "passed"):
        return "pass" if value.passed else "fail: " + "; ".join(value.failures[:3])
    return str(value)
