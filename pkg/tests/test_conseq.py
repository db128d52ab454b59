import itertools

import pytest
from hypothesis import given, strategies as st

from omegacalc.conseq import (COINDEX_RULES, LEVEL_RULES, GeometricHypotheses as H,
                              HypothesisError, alpha, coindex_bound, is_mersenne, level_bound,
                              quadric_omega_vanishes)

LEVEL_FLAGS = ["uniruled_over_C", "h_n_structure_sheaf_vanishes", "coniveau_ge_1_on_Hn",
               "hn_unramified_vanishes", "quotient_torsion_free", "conic_bundle"]


class TestHelpers:
    def test_mersenne(self):
        assert [n for n in range(20) if is_mersenne(n)] == [0, 1, 3, 7, 15]

    def test_alpha(self):
        assert [alpha(m) for m in (0, 1, 7, 11, 16)] == [0, 1, 3, 3, 1]


class TestQuadric:
    @pytest.mark.parametrize("n,e,expected", [(3, 6, False), (2, 3, True), (0, 0, False),
                                              (1, 2, False), (7, 14, False), (4, 7, True)])
    def test_examples(self, n, e, expected):
        assert quadric_omega_vanishes(n, e) is expected

    @given(st.integers(0, 40), st.integers(0, 80))
    def test_monotone(self, n, e):
        v = quadric_omega_vanishes(n, e)
        if v:
            assert quadric_omega_vanishes(n, e + 1)
            if n > 0:
                assert quadric_omega_vanishes(n - 1, e)

    @given(st.integers(0, 40), st.integers(0, 80))
    def test_definition(self, n, e):
        want = any(n < 2 ** k - 1 <= e for k in range(10))
        assert quadric_omega_vanishes(n, e) is want

    def test_top_exponent(self):
        for n in range(1, 64):
            assert quadric_omega_vanishes(n, 2 * n - 1) is not is_mersenne(n)


class TestCoindex:
    def test_examples(self):
        b = coindex_bound(H(2))
        assert (b.value, b.citation) == (3, "manifold-improved")
        assert "Enriques" in b.note
        b = coindex_bound(H(1, genus=4))
        assert (b.value, b.exact, b.citation) == (2, True, "curve-even-genus")
        b = coindex_bound(H(3, proper=False, no_compact_component=True))
        assert (b.value, b.citation) == (5, "manifold-no-compact-component")

    def test_curve_table(self):
        assert coindex_bound(H(1, geometrically_irreducible=False)).value == 0
        assert coindex_bound(H(1, genus=3)).value == 1
        assert coindex_bound(H(1, genus=0)).value == 2
        assert coindex_bound(H(1)).value == 2  # genus unknown: n=1 is 2^1-1

    def test_enriques(self):
        b = coindex_bound(H(2, enriques=True))
        assert (b.value, b.exact, b.citation) == (3, True, "enriques-surface")

    def test_general(self):
        assert coindex_bound(H(4)).value == 7
        assert coindex_bound(H(7)).value == 14
        assert coindex_bound(H(4, proper=False, no_compact_component=True)).value == 6
        assert coindex_bound(H(3, smooth=False)).value == 6
        assert coindex_bound(H(3, smooth=False, proper=False, no_proper_component=True)).value == 5

    def test_errors(self):
        with pytest.raises(HypothesisError):
            coindex_bound(H(2, no_real_points=False))
        with pytest.raises(HypothesisError):
            H(2, genus=1)
        with pytest.raises(HypothesisError):
            H(3, enriques=True)
        with pytest.raises(HypothesisError):
            H(2, no_compact_component=True)


class TestLevel:
    def test_examples(self):
        assert level_bound(H(2, h_n_structure_sheaf_vanishes=True)).citation == "surface-h2o"
        assert level_bound(H(2, h_n_structure_sheaf_vanishes=True)).value == 2
        assert level_bound(H(3, uniruled_over_C=True)).value == 4
        b = level_bound(H(5))
        assert (b.value, b.citation) == (32, "pfister")

    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    def test_uniruled_even(self, n):
        assert level_bound(H(n, uniruled_over_C=True)).value == 2 ** (n - 1)

    def test_uniruled_odd_above_three_is_pfister(self):
        assert level_bound(H(5, uniruled_over_C=True)).value == 32

    def test_other_rows(self):
        assert level_bound(H(3, conic_bundle=True)).citation == "conic-bundle"
        assert level_bound(H(5, hn_unramified_vanishes=True, quotient_torsion_free=True)).value == 16
        assert level_bound(H(5, hn_unramified_vanishes=True)).value == 32
        assert level_bound(H(4, coniveau_ge_1_on_Hn=True)).value == 8

    def test_preconditions(self):
        for flag in ("no_real_points", "geometrically_irreducible", "smooth"):
            with pytest.raises(HypothesisError):
                level_bound(H(2, **{flag: False}))

    def test_monotone_and_power_of_two(self):
        for n in range(1, 7):
            for r in range(len(LEVEL_FLAGS) + 1):
                for combo in itertools.combinations(LEVEL_FLAGS, r):
                    b = level_bound(H(n, **dict.fromkeys(combo, True))).value
                    assert b & (b - 1) == 0 and b <= 2 ** n
                    for extra in LEVEL_FLAGS:
                        if extra not in combo:
                            more = dict.fromkeys(combo + (extra,), True)
                            assert level_bound(H(n, **more)).value <= b

    def test_citations_unique(self):
        names = [r.citation for r in COINDEX_RULES + LEVEL_RULES]
        assert len(names) == len(set(names))


class TestFlags:
    def test_from_flags(self):
        h = H.from_flags(3, ["uniruled-over-C", "not_proper", "no_compact_component"])
        assert h.uniruled_over_C and not h.proper and h.no_compact_component
        with pytest.raises(HypothesisError):
            H.from_flags(2, ["flying"])
        assert "genus" not in H.flag_names() and "smooth" in H.flag_names()
