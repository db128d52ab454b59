"""Invariant suite run by ``omegacalc selfcheck``."""

from __future__ import annotations

import itertools
import time
from typing import Callable

from . import action, charclass, conseq, prover, relations, steenrod
from .gring import Monomial, PolyF2
from .steenrod import SteenrodElement

Check = Callable[[bool], tuple[bool, str]]


def _words(max_degree: int):
    def rec(left):
        yield ()
        for i in range(1, left + 1):
            for rest in rec(left - i):
                yield (i,) + rest
    return [w for w in rec(max_degree) if w]


def check_fixtures(fault: bool) -> tuple[bool, str]:
    corpus = relations.load_corpus()
    if fault:
        fx = corpus[0]
        corpus[0] = relations.Fixture(fx.dim, fx.lhs, fx.rhs + " + c1", fx.tag)
    report = relations.verify_fixtures(corpus)
    bad = [r["tag"] for r in report if not r["ok"]]
    return not bad, f"{len(report) - len(bad)}/{len(report)} fixtures reproduced" + (
        f"; failing: {bad}" if bad else "")


def check_adem(fault: bool) -> tuple[bool, str]:
    md = 8
    samples = [PolyF2.parse(s, md) for s in ("w", "c1", "w c1", "c2 + w^2", "w^3 + c1 w")]
    n = 0
    for word in _words(6):
        lhs_elem = SteenrodElement._raw({word}) if not fault else SteenrodElement._raw({word[::-1]})
        for p in samples:
            a = action.apply(lhs_elem, p)
            b = action.apply(steenrod.adem_normalize(word), p)
            if a != b:
                return False, f"word {word} disagrees on {p}"
            n += 1
    return True, f"{n} word/polynomial pairs agree"


def check_antipode(fault: bool) -> tuple[bool, str]:
    for k in range(11):
        x = SteenrodElement.sq(k)
        if steenrod.antipode(steenrod.antipode(x)) != x:
            return False, f"chi not involutive on Sq{k}"
        total = SteenrodElement()
        for i in range(k + 1):
            total = total + steenrod.antipode(SteenrodElement.sq(i)) * SteenrodElement.sq(k - i)
        expect = SteenrodElement.unit() if k == 0 else SteenrodElement()
        if fault and k == 3:
            expect = SteenrodElement.sq(3)
        if total != expect:
            return False, f"sum chi(Sq^i) Sq^(k-i) wrong in degree {k}"
    return True, "chi involutive and chi(Sq) Sq = 1 up to degree 10"


def check_inverse(fault: bool) -> tuple[bool, str]:
    md = 12
    for s in ("w", "c1", "c2 + w c1", "w^3 c2 + c1^3", "c5 + w^2 c4"):
        p = PolyF2.parse(s, md)
        q = action.chi_sq_total(p)
        if fault:
            q = q + PolyF2.omega(md, 11)
        if action.sq_total(q) != p or action.chi_sq_total(action.sq_total(p)) != p:
            return False, f"Sq and chi(Sq) not inverse on {s}"
        if q != action.chi_sq_total_by_antipode(p):
            return False, f"antipode path disagrees on {s}"
    return True, "Sq o chi(Sq) = id on samples; antipode path agrees"


def check_wu_formula(fault: bool) -> tuple[bool, str]:
    md = 10
    for r in range(1, 5):
        b = charclass.VirtualBundle(r, charclass.generic_total_chern(md))
        lhs = charclass.wu_u(b)
        rhs = PolyF2.zero(md)
        for m in range(md // 2 + 1):
            rhs = rhs + charclass.q_series(md) ** (r - 2 * m) * charclass.todd_of(b, m)
        if fault:
            rhs = rhs + PolyF2.chern(1, md)
        if lhs != rhs:
            return False, f"rank {r} fails"
    return True, "u_G = sum Q^(r-2m) t_m for ranks 1..4 up to degree 10"


def check_nnk(fault: bool) -> tuple[bool, str]:
    N = charclass.coeff_N
    for n, k in itertools.product(range(33), repeat=2):
        ok = (N(2 * n, 2 * k) == N(n, k) and N(2 * n, 2 * k + 1) == 0
              and N(2 * n + 1, 2 * k + 1) == N(n, k) and N(2 * n + 1, 2 * k) == N(n + 1, k))
        if not ok:
            return False, f"N identity fails at ({n}, {k})"
    for n in range(33):
        if N(n, n) != 1 or N(2 * n + 1, 2 * n + 2) != 1 or (n > 0 and N(n + 1, n) != 0):
            return False, f"diagonal identity fails at n={n}"
    if fault:
        return False, "injected fault"
    return True, "all N(n,k) identities hold for n, k <= 32"


def check_wuexact(fault: bool) -> tuple[bool, str]:
    for n in range(1, 12, 2):
        ctx = charclass.WuContext.build(n, n)
        want = charclass.todd_t((n - 1) // 2).with_max_degree(n)
        if ctx.v_k(n - 1) != want or fault:
            return False, f"v_(n-1) != t_(n-1)/2 at n={n}"
    return True, "v_(n-1) = t_((n-1)/2) for odd n <= 11"


def check_prover(fault: bool) -> tuple[bool, str]:
    for n, e in ((2, 3), (4, 7), (5, 9), (6, 10)):
        cert = prover.prove_omega(n, e)
        if not isinstance(cert, prover.Certificate):
            return False, f"no certificate for ({n}, {e})"
        doc = cert.to_json()
        if fault:
            doc = dict(doc, generators=doc["generators"][1:])
            doc["checksum"] = prover.checksum(doc)
        if not prover.verify_certificate(doc):
            return False, f"certificate for ({n}, {e}) fails verification"
    return True, "certificates for (2,3), (4,7), (5,9), (6,10) verified"


def check_negative(fault: bool) -> tuple[bool, str]:
    for n in (1, 3, 7):
        r = prover.prove_omega(n, 2 * n)
        if not isinstance(r, prover.NotFound) or r.label != "inconclusive":
            return False, f"prover claims w^{2 * n} = 0 at n={n}"
        if conseq.quadric_omega_vanishes(n, 2 * n) != fault:
            return False, f"quadric table disagrees at n={n}"
    return True, "n in {1,3,7}: NotFound (inconclusive), quadric nonvanishing"


def check_gamma(fault: bool) -> tuple[bool, str]:
    for n in range(1, 11):
        g = relations.reduction_class(n)
        if fault:
            g = g + PolyF2.omega(n + 1, n + 1)
        if g.coefficient(Monomial(n + 1)):
            return False, f"w^{n + 1} occurs in gamma at n={n}"
    return True, "w^(n+1) absent from gamma for n <= 10"


def check_degree_invariant(fault: bool) -> tuple[bool, str]:
    count = 0
    for n in range(1, 6):
        for d in range(0, 2 * n + 1):
            for g in relations.gen_f1(n, d) + relations.gen_chains(n, d) + relations.gen_rkl_catalog(n, d):
                count += 1
                if g.relation_degree < n + 1 + (1 if fault else 0):
                    return False, f"{g.describe()} at n={n} has degree {g.relation_degree}"
    return True, f"{count} generators at n <= 5 live in degree >= n+1"


def check_conic(fault: bool) -> tuple[bool, str]:
    for d in range(0, 3):
        for g in relations.gen_f1(1, d):
            if relations.conic_model(g.payload) and not fault:
                return False, f"{g.describe()} survives on the conic"
    if fault:
        return False, "injected fault"
    return True, "F1 relations at n=1 vanish on the conic model"


def check_conseq(fault: bool) -> tuple[bool, str]:
    H = conseq.GeometricHypotheses
    cases = [
        (conseq.level_bound(H(2, h_n_structure_sheaf_vanishes=True)).value, 2),
        (conseq.level_bound(H(3, uniruled_over_C=True)).value, 4),
        (conseq.level_bound(H(4, uniruled_over_C=True)).value, 8),
        (conseq.level_bound(H(5)).value, 32),
        (conseq.coindex_bound(H(2)).value, 3),
        (conseq.coindex_bound(H(1, genus=2)).value, 2 if not fault else 1),
        (conseq.coindex_bound(H(3, proper=False, no_compact_component=True)).value, 5),
    ]
    bad = [c for c in cases if c[0] != c[1]]
    return not bad, "headline bounds reproduced" if not bad else f"mismatches: {bad}"


CHECKS: dict[str, Check] = {
    "fixtures": check_fixtures,
    "adem-vs-action": check_adem,
    "antipode": check_antipode,
    "sq-chi-inverse": check_inverse,
    "wu-class-formula": check_wu_formula,
    "n-coefficients": check_nnk,
    "wu-top-class": check_wuexact,
    "prover-certificates": check_prover,
    "negative-controls": check_negative,
    "reduction-gamma": check_gamma,
    "relation-degree": check_degree_invariant,
    "conic-model": check_conic,
    "consequence-tables": check_conseq,
}


def run_selfcheck(inject_fault: str | None = None) -> dict:
    """Run every check; a fault can be injected into one named check (or 'all')."""
    if inject_fault not in (None, "all") and inject_fault not in CHECKS:
        raise KeyError(f"unknown check {inject_fault!r}")
    entries = []
    for name, fn in CHECKS.items():
        fault = inject_fault in ("all", name)
        start = time.perf_counter()
        try:
            ok, detail = fn(fault)
        except Exception as exc:  # a crash is a failure entry, not an abort
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        entries.append({"name": name, "ok": bool(ok), "detail": detail,
                        "seconds": round(time.perf_counter() - start, 4)})
    failures = sum(not e["ok"] for e in entries)
    return {"checks": entries, "total": len(entries), "failures": failures,
            "passed": len(entries) - failures}
