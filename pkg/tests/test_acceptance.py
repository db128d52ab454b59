"""Acceptance criteria 1-10; each test prints one PASS/FAIL line with its timing."""

import time
from math import comb

import pytest

from omegacalc import action, charclass, prover, relations
from omegacalc.charclass import VirtualBundle, WuContext, coeff_N, generic_total_chern, todd_t
from omegacalc.conseq import (GeometricHypotheses as H, coindex_bound, level_bound,
                              quadric_omega_vanishes)
from omegacalc.gring import Monomial, PolyF2
from omegacalc.steenrod import SteenrodElement as S, adem_normalize, antipode


@pytest.fixture
def report(capsys):
    def emit(number, ok, seconds, limit=None, detail=""):
        bound = f" (limit {limit:g} s)" if limit else ""
        line = f"criterion {number:>2}: {'PASS' if ok and (not limit or seconds < limit) else 'FAIL'}" \
               f"  {seconds:7.3f} s{bound}  {detail}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
        if limit:
            assert seconds < limit, line
    return emit


def test_criterion_01_fixture_corpus(report):
    start = time.perf_counter()
    corpus = relations.load_corpus()
    results = relations.verify_fixtures(corpus)
    seconds = time.perf_counter() - start
    single = {("(1) Sq2", "w^2 + c1"), ("(w) Sq2", "w^3 + w c1"), ("(1) Sq2 Sq1", "w c1"),
              ("(1) Sq4", "w^4 + w^2 c1 + c1^2 + c2"), ("(w^2) Sq3", "w^3 c1"),
              ("(c2) Sq2", "w^2 c2 + c3"), ("(c1^2) Sq2", "w^2 c1^2 + c1^3"),
              ("(1) Sq4 Sq1", "w^3 c1")}
    present = {(f.lhs, f.rhs) for f in corpus}
    omega_lines = {f.dim for f in corpus if f.tag.startswith("omega-exponent")}
    ok = (all(r["ok"] for r in results) and single <= present and omega_lines == {2, 4, 5, 6}
          and any(f.tag.startswith("alternative n=5") for f in corpus))
    report(1, ok, seconds, 5, f"{sum(r['ok'] for r in results)}/{len(results)} identities exact")


def test_criterion_02_wu_formula(report):
    action._SQ.clear()
    action._CHI.clear()
    todd_t.cache_clear()
    start = time.perf_counter()
    md = 12
    ok = True
    for r in range(1, 7):
        b = VirtualBundle(r, generic_total_chern(md))
        lhs = action.chi_sq_total(charclass.w_from_c(b))
        rhs = PolyF2.zero(md)
        for m in range(md // 2 + 1):
            rhs = rhs + charclass.q_series(md) ** (r - 2 * m) * charclass.todd_of(b, m)
        ok &= lhs == rhs
    report(2, ok, time.perf_counter() - start, 30, "ranks 1..6, degree <= 12, cold caches")


def test_criterion_03_n_coefficients(report):
    start = time.perf_counter()
    N = coeff_N
    ok = True
    for n in range(65):
        ok &= N(n, n) == 1 and N(2 * n + 1, 2 * n + 2) == 1
        if n > 0:
            ok &= N(n + 1, n) == 0
        for k in range(65):
            ok &= (N(2 * n, 2 * k) == N(n, k) and N(2 * n, 2 * k + 1) == 0
                   and N(2 * n + 1, 2 * k + 1) == N(n, k) and N(2 * n + 1, 2 * k) == N(n + 1, k))
    for n in range(1, 12, 2):
        ok &= WuContext.build(n, n).v_k(n - 1) == todd_t((n - 1) // 2).with_max_degree(n)
    report(3, ok, time.perf_counter() - start, None, "seven identities n,k <= 64; top Wu class odd n <= 11")


def test_criterion_04_prover(report):
    prover.clear_memo()
    start = time.perf_counter()
    cases = [(2, 3), (4, 7), (5, 9), (6, 10)] + [(n, 2 * n - 1) for n in range(1, 13)
                                                    if n not in (1, 3, 7)]
    failed = []
    for n, e in cases:
        r = prover.prove_omega(n, e)
        if not (isinstance(r, prover.Certificate) and prover.verify_certificate(r.to_json())):
            failed.append((n, e))
    detail = f"{len(cases) - len(failed)}/{len(cases)} certificates verified" + (
        f"; missing {failed}" if failed else "")
    report(4, not failed, time.perf_counter() - start, 600, detail)


def test_criterion_05_reduction_class(report):
    start = time.perf_counter()
    ok = all(not relations.reduction_class(n).coefficient(Monomial(n + 1)) for n in range(1, 11))
    report(5, ok, time.perf_counter() - start, None, "w^(n+1) absent from gamma, n <= 10")


def test_criterion_06_negative_controls(report):
    start = time.perf_counter()
    ok = True
    for n in (1, 3, 7):
        r = prover.prove_omega(n, 2 * n)
        ok &= isinstance(r, prover.NotFound) and r.label == "inconclusive"
        ok &= quadric_omega_vanishes(n, 2 * n) is False
    report(6, ok, time.perf_counter() - start, None, "n in {1,3,7}: inconclusive, quadric nonvanishing")


def test_criterion_07_degree_invariant(report):
    start = time.perf_counter()
    count, ok = 0, True
    for n in range(1, 9):
        for d in range(2 * n + 1):
            for g in relations.gen_f1(n, d) + relations.gen_chains(n, d) + relations.gen_rkl_catalog(n, d):
                count += 1
                ok &= g.relation_degree >= n + 1
    report(7, ok, time.perf_counter() - start, None, f"{count} generators at n <= 8")


def test_criterion_08_conic_model(report):
    start = time.perf_counter()
    gens = [g for d in range(3) for g in relations.gen_f1(1, d)]
    ok = all(not relations.conic_model(g.payload) for g in gens)
    report(8, ok, time.perf_counter() - start, None, f"{len(gens)} F1 generators vanish")


def _omega_action(element, j):
    out = set()
    for word in element.words:
        k, c = j, 1
        for i in reversed(word):
            c *= comb(k, i)
            k += i
        if c % 2:
            out ^= {k}
    return out


def _compositions(total):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def test_criterion_09_steenrod_oracle(report):
    start = time.perf_counter()
    ok, words = True, 0
    for degree in range(1, 15):
        for word in _compositions(degree):
            words += 1
            norm = adem_normalize(word)
            raw = S._raw({word})
            ok &= all(_omega_action(raw, j) == _omega_action(norm, j) for j in range(15))
    for k in range(15):
        ok &= antipode(antipode(S.sq(k))) == S.sq(k)
        total = S()
        for i in range(k + 1):
            total = total + antipode(S.sq(i)) * S.sq(k - i)
        ok &= total == (S.unit() if k == 0 else S())
    report(9, ok, time.perf_counter() - start, None, f"{words} words of degree <= 14")


def test_criterion_10_consequence_tables(report):
    start = time.perf_counter()
    surface = coindex_bound(H(2))
    rows = [
        (level_bound(H(2, h_n_structure_sheaf_vanishes=True)).to_json(),
         {"bound": 2, "citation": "surface-h2o", "exact": False}),
        (level_bound(H(3, uniruled_over_C=True)).to_json(),
         {"bound": 4, "citation": "uniruled-threefold", "exact": False}),
        ((surface.value, surface.citation, "Enriques" in (surface.note or "")),
         (3, "manifold-improved", True)),
        (coindex_bound(H(1, geometrically_irreducible=False)).to_json(),
         {"bound": 0, "citation": "curve-not-geometrically-irreducible", "exact": True}),
        (coindex_bound(H(1, genus=1)).to_json(),
         {"bound": 1, "citation": "curve-odd-genus", "exact": True}),
        (coindex_bound(H(1, genus=2)).to_json(),
         {"bound": 2, "citation": "curve-even-genus", "exact": True}),
    ]
    for n in (2, 4, 6, 8, 10):
        rows.append((level_bound(H(n, uniruled_over_C=True)).to_json(),
                     {"bound": 2 ** (n - 1), "citation": "uniruled-even", "exact": False}))
    bad = [got for got, want in rows if got != want]
    report(10, not bad, time.perf_counter() - start, None,
           f"{len(rows) - len(bad)}/{len(rows)} table rows" + (f"; wrong {bad}" if bad else ""))
