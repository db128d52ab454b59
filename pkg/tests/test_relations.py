import json

import pytest
from hypothesis import given, strategies as st

from omegacalc.gring import Monomial, PolyF2, bockstein
from omegacalc.relations import (RKL_CATALOG, CatalogEntry, CorpusError, Fixture,
                                 RelationDegreeError, RelationGenerator, chain_word, conic_model,
                                 evaluate_lhs, gen_chains, gen_f1, gen_lemmarec, gen_rkl_catalog,
                                 load_corpus, parse_lhs, reduction_class, verify_fixtures)


def by_desc(gens):
    return {g.describe(): str(g.payload) for g in gens}


class TestFamilies:
    def test_f1_examples(self):
        assert by_desc(gen_f1(2, 3))["(w) Sq2"] == "w^3 + w c1"
        got = by_desc(gen_f1(3, 6))
        assert {"(w^2) Sq4", "(c2) Sq2", "(c1^2) Sq2"} <= set(got)
        for n in range(1, 7):
            for d in range(n + 1):
                assert gen_f1(n, d) == []

    def test_chain_examples(self):
        assert chain_word(3, 1) == (6, 3)
        assert chain_word(1, 2) == (4, 2, 1)
        g = gen_chains(2, 2)
        assert by_desc(g) == {"(1) Sq2": "w^2 + c1"}
        assert g[0].vanishing_mode == "beta_null" and g[0].relation_degree == 3
        assert "(1) Sq4 Sq2" in by_desc(gen_chains(4, 6))
        assert "(1) Sq6 Sq3" in by_desc(gen_chains(6, 9))
        assert gen_chains(3, 6) == []

    def test_chain_twist(self):
        for n in range(1, 7):
            for d in range(n, 2 * n):
                for g in gen_chains(n, d):
                    assert PolyF2.parse(g.params["x"], 2 * n).twist_component(n % 2) == PolyF2.parse(g.params["x"], 2 * n)

    def test_catalog_examples(self):
        assert by_desc(gen_rkl_catalog(2, 3))["(1) Sq2 Sq1"] == "w c1"
        assert by_desc(gen_rkl_catalog(4, 5))["(1) Sq4 Sq1"] == "w^3 c1"
        assert gen_rkl_catalog(3, 6, catalog=()) == []
        extra = (CatalogEntry((2, 1), 1, 3),)
        assert by_desc(gen_rkl_catalog(2, 3, catalog=extra)) == {"(1) Sq2 Sq1": "w c1"}
        assert len(RKL_CATALOG) == 3

    def test_lemmarec(self):
        gens = gen_lemmarec(4, {2: [3]}, 8)
        assert by_desc(gens) == {"w^2 c1^2": "w^2 c1^2", "w^2 c2": "w^2 c2"}
        for g in gens:
            assert g.vanishing_mode == "beta_null"
            assert g.params["dependency"] == [2, 3]
            # twist e + d mismatches w^(e-1) P, so the Bockstein is w^e P
            assert str(bockstein(3 + g.params["d"], g.payload)) == "w^3 " + g.params["P"]
        with pytest.raises(ValueError):
            gen_lemmarec(3, {3: [5]}, 8)

    def test_degree_invariant_full_enumeration(self):
        for n in range(1, 9):
            for d in range(2 * n + 1):
                for g in gen_f1(n, d) + gen_chains(n, d) + gen_rkl_catalog(n, d):
                    assert g.relation_degree >= n + 1, g.describe()

    def test_degree_check_at_construction(self):
        with pytest.raises(RelationDegreeError):
            RelationGenerator(3, "F1_single_sq", PolyF2.parse("w^2", 4), "mod2")
        with pytest.raises(ValueError):
            RelationGenerator(1, "F9", PolyF2.parse("w^2", 4), "mod2")

    def test_deterministic(self):
        a = [g.to_json() for g in gen_f1(5, 8) + gen_chains(5, 8)]
        b = [g.to_json() for g in gen_f1(5, 8) + gen_chains(5, 8)]
        assert a == b
        json.dumps(a)

    def test_conic_model(self):
        assert str(conic_model(PolyF2.parse("w^2 + c1", 4))) == "0"
        assert str(conic_model(PolyF2.parse("w c1 + c2 + w", 4))) == "w"
        for d in range(3):
            for g in gen_f1(1, d):
                assert not conic_model(g.payload)


class TestReductionClass:
    @pytest.mark.parametrize("n", range(1, 11))
    def test_no_top_omega(self, n):
        g = reduction_class(n)
        assert g.degree == n + 1
        assert not g.coefficient(Monomial(n + 1))


class TestFixtures:
    def test_corpus_passes(self):
        corpus = load_corpus()
        assert len(corpus) == 14
        report = verify_fixtures(corpus)
        assert all(r["ok"] for r in report), [r for r in report if not r["ok"]]

    def test_mod2_generators_beta_consistent(self):
        for fx in load_corpus():
            md = 12
            lhs = evaluate_lhs(fx.dim, fx.lhs, md)
            rhs = PolyF2.parse(fx.rhs, md)
            for j in (0, 1):
                assert bockstein(j, lhs) == bockstein(j, rhs)

    def test_failure_reports_diff(self):
        bad = Fixture(1, "(1) Sq2", "w^2", "wrong on purpose")
        (r,) = verify_fixtures([bad])
        assert not r["ok"] and r["diff"] == "c1"

    def test_parse_lhs(self):
        terms = parse_lhs("(w^2) Sq4 + (c1^2 + c2) Sq2 + (1)")
        assert [t[0] for t in terms] == ["w^2", "c1^2 + c2", "1"]
        assert terms[2][1] == [(0, ())]
        for bad in ("", "w Sq2", "(w) Sq2 (c1)", "(w) Sq2 +"):
            with pytest.raises(CorpusError):
                parse_lhs(bad)

    def test_load_errors(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"dim": 1, "lhs": "(1) Sq2"}\n')
        with pytest.raises(CorpusError):
            load_corpus(str(path))
        path.write_text('not json\n')
        with pytest.raises(CorpusError):
            load_corpus(str(path))

    @given(st.integers(1, 6), st.integers(0, 4), st.integers(1, 6))
    def test_lhs_matches_direct(self, n, a, i):
        from omegacalc.charclass import WuContext
        from omegacalc.rightaction import right_sq
        md = a + i
        got = evaluate_lhs(n, f"(w^{a}) Sq{i}", md)
        assert got == right_sq(WuContext.build(n, md), PolyF2.omega(md, a), i)
