"""Relation generators for the vanishing ideals, plus the identity fixture corpus.

Every generator is a class in H*_G(BU, Z/2) obtained from the right action.
Two vanishing modes exist:

* ``mod2``: the class itself vanishes on every n-dimensional variety;
* ``beta_null``: its image under every twisted Bockstein vanishes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Mapping

from .charclass import WuContext
from .gring import Monomial, PolyF2, monomials_of_degree
from .rightaction import right_apply
from .steenrod import TwistedElement, format_word, parse_terms

KINDS = ("F1_single_sq", "F2_chain", "F3_beta_of_F1", "RKL_catalog", "product_lemmarec")
MODES = ("mod2", "beta_null")


class RelationDegreeError(ValueError):
    pass


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class RelationGenerator:
    dim: int
    kind: str
    payload: PolyF2
    vanishing_mode: str
    params: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.vanishing_mode not in MODES:
            raise ValueError(f"unknown vanishing mode {self.vanishing_mode!r}")
        if self.payload and self.relation_degree < self.dim + 1:
            raise RelationDegreeError(
                f"{self.kind} relation of degree {self.relation_degree} in dimension {self.dim}")

    @property
    def degree(self) -> int | None:
        return self.payload.degree

    @property
    def relation_degree(self) -> int:
        # a beta_null class constrains its Bockstein, one degree higher
        d = self.payload.degree
        return d + 1 if self.vanishing_mode == "beta_null" else d

    def describe(self) -> str:
        x = self.params.get("x", "1")
        word = tuple(self.params.get("word", ()))
        if self.kind == "product_lemmarec":
            return f"w^{self.params['e'] - 1} {self.params['P']}"
        return f"({x}) {format_word(word)}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params), "payload": str(self.payload)}


def right_payload(n: int, x: Monomial | PolyF2, word: Iterable[int], max_degree: int) -> PolyF2:
    ctx = WuContext.build(n, max_degree)
    xp = x if isinstance(x, PolyF2) else PolyF2([x], max_degree)
    return right_apply(ctx, xp, TwistedElement([(0, tuple(word))]))


def _dedupe(gens: list[RelationGenerator]) -> list[RelationGenerator]:
    seen: set[PolyF2] = set()
    out = []
    for g in gens:
        if g.payload and g.payload not in seen:
            seen.add(g.payload)
            out.append(g)
    return out


def gen_f1(n: int, d: int) -> list[RelationGenerator]:
    """(m)Sq^l with deg m = d - l and k = 2n - l - deg m satisfying 0 <= k < l."""
    k = 2 * n - d
    if k < 0:
        return []
    gens = []
    for l in range(k + 1, d + 1):
        for m in monomials_of_degree(d - l):
            payload = right_payload(n, m, (l,), d)
            gens.append(RelationGenerator(n, "F1_single_sq", payload, "mod2",
                                          {"x": str(m), "word": [l], "k": k, "l": l}))
    return _dedupe(gens)


def chain_word(k: int, l: int) -> tuple[int, ...]:
    """Sq^(2^l k) ... Sq^(2k) Sq^k."""
    return tuple((1 << i) * k for i in range(l, -1, -1))


def gen_chains(n: int, d: int, j: int | None = None) -> list[RelationGenerator]:
    """(m)Sq^(2^l k)...Sq^k with deg m = 2n - 2^(l+1) k and twist(m) = n mod 2."""
    k = 2 * n - d
    if k < 1:
        return []
    gens = []
    l = 0
    while 2 * n - (2 << l) * k >= 0:
        for m in monomials_of_degree(2 * n - (2 << l) * k):
            if m.twist != n % 2:
                continue
            word = chain_word(k, l)
            payload = right_payload(n, m, word, d)
            params = {"x": str(m), "word": list(word), "k": k, "l": l}
            if j is not None:
                params["j"] = j
            gens.append(RelationGenerator(n, "F2_chain", payload, "beta_null", params))
        l += 1
    return _dedupe(gens)


@dataclass(frozen=True)
class CatalogEntry:
    word: tuple[int, ...]
    k: int | None  # None: every k >= 1
    l: int


# Elements a of R_k^l whose use is certified; extend here.
RKL_CATALOG: tuple[CatalogEntry, ...] = (
    CatalogEntry((1,), None, 1),
    CatalogEntry((2, 1), 1, 3),
    CatalogEntry((4, 1), 3, 5),
)


def gen_rkl_catalog(n: int, d: int,
                    catalog: Iterable[CatalogEntry] = RKL_CATALOG) -> list[RelationGenerator]:
    """(x)a for catalog entries a in R_k^l, x of twist n mod 2 and degree 2n - l - k."""
    k = 2 * n - d
    if k < 1:
        return []
    gens = []
    for entry in catalog:
        if entry.k is not None and entry.k != k:
            continue
        xdeg = 2 * n - entry.l - k
        if xdeg < 0:
            continue
        for m in monomials_of_degree(xdeg):
            if m.twist != n % 2:
                continue
            payload = right_payload(n, m, entry.word, d)
            gens.append(RelationGenerator(n, "RKL_catalog", payload, "mod2",
                                          {"x": str(m), "word": list(entry.word), "k": k,
                                           "l": entry.l}))
    return _dedupe(gens)


def chern_monomials_of_weight(d: int) -> list[Monomial]:
    return [m for m in monomials_of_degree(2 * d) if m.omega == 0]


def gen_lemmarec(n: int, proven: Mapping[int, Iterable[int]],
                 max_degree: int) -> list[RelationGenerator]:
    """w^(e-1) P with P a Chern monomial of weight d, whenever w^e is proven in dimension n - d.

    The Bockstein of w^(e-1) P with twist e + d is w^e P, which vanishes.
    """
    gens = []
    for dim in sorted(proven):
        if dim >= n or dim < 0:
            raise ValueError(f"dependency in dimension {dim} is not below {n}")
        d = n - dim
        for e in sorted(proven[dim]):
            deg = e - 1 + 2 * d
            if e < 1 or deg > max_degree:
                continue
            for p in chern_monomials_of_weight(d):
                payload = PolyF2([Monomial(e - 1, p.chern)], max_degree)
                gens.append(RelationGenerator(
                    n, "product_lemmarec", payload, "beta_null",
                    {"e": e, "d": d, "P": str(p), "dependency": [dim, e]}))
    return gens


# -- fixtures ----------------------------------------------------------

@dataclass(frozen=True)
class Fixture:
    dim: int
    lhs: str
    rhs: str
    tag: str


_LHS_TERM = re.compile(r"\s*\(([^()]*)\)\s*([^()+]*)")


def parse_lhs(text: str) -> list[tuple[str, list[tuple[int, tuple[int, ...]]]]]:
    """Split ``"(w^2) Sq4 + (c1^2 + c2) Sq2"`` into (polynomial text, element terms)."""
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _LHS_TERM.match(text, pos)
        if not m:
            raise CorpusError(f"cannot parse right-action term at position {pos}: {text!r}")
        word_text = m.group(2).strip() or "1"
        out.append((m.group(1), parse_terms(word_text)))
        pos = m.end()
        rest = text[pos:].lstrip()
        if rest.startswith("+"):
            pos = len(text) - len(rest) + 1
            if not text[pos:].strip():
                raise CorpusError(f"dangling '+' at end of {text!r}")
        elif rest:
            raise CorpusError(f"expected '+' at position {len(text) - len(rest)}: {text!r}")
    if not out:
        raise CorpusError("empty right-action expression")
    return out


def evaluate_lhs(n: int, text: str, max_degree: int) -> PolyF2:
    ctx = WuContext.build(n, max_degree)
    out = PolyF2.zero(max_degree)
    for poly_text, terms in parse_lhs(text):
        x = PolyF2.parse(poly_text, max_degree)
        out = out + right_apply(ctx, x, TwistedElement(terms))
    return out


def _lhs_degree(text: str) -> int:
    top = 0
    for poly_text, terms in parse_lhs(text):
        x = PolyF2.parse(poly_text, 255)
        for a, word in terms:
            for d in x.degrees():
                top = max(top, d + a + sum(word))
    return top


def load_corpus(path=None) -> list[Fixture]:
    if path is None:
        text = resources.files("omegacalc").joinpath("data/fixtures.jsonl").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            out.append(Fixture(int(rec["dim"]), rec["lhs"], rec["rhs"], rec.get("tag", "")))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise CorpusError(f"line {lineno}: {exc}") from exc
    return out


def verify_fixtures(corpus: Iterable[Fixture]) -> list[dict]:
    """Evaluate every fixture through the right action; report pass/fail with diffs."""
    report = []
    for fx in corpus:
        md = max(_lhs_degree(fx.lhs), max(PolyF2.parse(fx.rhs, 255).degrees(), default=0))
        got = evaluate_lhs(fx.dim, fx.lhs, md)
        want = PolyF2.parse(fx.rhs, md)
        diff = got + want
        report.append({"dim": fx.dim, "tag": fx.tag, "lhs": fx.lhs, "ok": not diff,
                       "got": str(got), "expected": str(want), "diff": str(diff)})
    return report


# -- auxiliary classes -------------------------------------------------

def reduction_class(n: int) -> PolyF2:
    """gamma with w^(n+1) = gamma on n-dimensional varieties without real points.

    For odd n this is v_(n+1) + w^(n+1); for even n it is (w)Sq^n + w^(n+1).
    """
    md = n + 1
    top = PolyF2.omega(md, n + 1)
    ctx = WuContext.build(n, md)
    if n % 2:
        return ctx.v_k(n + 1) + top
    return right_payload(n, Monomial(1), (n,), md) + top


def conic_model(p: PolyF2) -> PolyF2:
    """Image in Z/2[a]/(a^3) under w -> a, c1 -> a^2, ci -> 0 (i >= 2); a is written w."""
    out = PolyF2.zero(2)
    for m in p.terms:
        if m.degree <= 2 and all(e == 0 for e in m.chern[1:]):
            out = out + PolyF2([Monomial(m.omega + 2 * m.chern_exps.get(1, 0))], 2)
    return out
