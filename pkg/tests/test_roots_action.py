import itertools

import pytest
from hypothesis import given

from omegacalc.action import (RootCountError, RootPoly, NotSymmetricError, apply, chi_sq_total,
                              chi_sq_total_by_antipode, chi_sq_total_by_inversion, from_roots, sq,
                              sq_total, to_roots)
from omegacalc.gring import PolyF2, monomials_of_degree
from omegacalc.roots import conjugate, e_product
from omegacalc.steenrod import SteenrodElement as S, TwistedElement as T, adem_normalize

from strategies import homogeneous_poly, poly, sq_word

D = 3
MD = 6


def explicit_e(k):
    """e_k(y1, y2, y3) as a set of exponent vectors."""
    out = set()
    for idx in itertools.combinations(range(D), k):
        out ^= {tuple(1 if i in idx else 0 for i in range(D))}
    return out


def explicit_mul(a, b):
    out = set()
    for x in a:
        for y in b:
            out ^= {tuple(i + j for i, j in zip(x, y))}
    return out


def brute_to_roots(p):
    out = set()
    for m in p.terms:
        acc = {(0,) * D}
        for i, e in enumerate(m.chern, 1):
            for _ in range(e):
                acc = explicit_mul(acc, explicit_e(i))
        out ^= {(m.omega, exps) for exps in acc}
    return out


def sym(*lams, a=0, roots=D, md=MD):
    return RootPoly([(a, lam) for lam in lams], roots, md)


class TestRootEngine:
    def test_examples(self, P):
        assert to_roots(P("c1", MD), D) == sym((1,))
        assert to_roots(P("c2", MD), D) == sym((1, 1))
        assert to_roots(P("w^2", MD), D) == sym((), a=2)
        assert from_roots(sym((2,))) == P("c1^2", MD)
        assert from_roots(sym((1,), a=1)) == P("w c1", MD)
        assert from_roots(sym((2,), (1, 1))) == P("c1^2 + c2", MD)

    def test_brute_force_oracle(self):
        for d in range(MD + 1):
            for m in monomials_of_degree(d):
                p = PolyF2([m], MD)
                assert to_roots(p, D).to_explicit() == brute_to_roots(p), m

    def test_explicit_roundtrip(self):
        for d in range(MD + 1):
            for m in monomials_of_degree(d):
                p = PolyF2([m], MD)
                q = RootPoly.from_explicit(brute_to_roots(p), D, MD)
                assert from_roots(q) == p

    @given(poly(12))
    def test_roundtrip(self, p):
        assert from_roots(to_roots(p)) == p
        assert from_roots(to_roots(p, 9)) == p

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetricError) as err:
            RootPoly.from_explicit([(0, (1, 0, 0))], D, MD)
        assert err.value.orbit == (0, (1, 0, 0))

    def test_root_count(self, P):
        with pytest.raises(RootCountError):
            to_roots(P("c1", 8), 3)

    def test_conjugate_and_e(self):
        assert conjugate((3, 1)) == (2, 1, 1)
        assert conjugate(conjugate((4, 2, 2, 1))) == (4, 2, 2, 1)
        # e1^2 = m_(2) + 2 m_(1,1) = m_(2) over F2
        assert e_product((1, 1), 3) == {(2,)}


class TestSquares:
    def test_sq_total_examples(self, P):
        assert sq_total(P("w^3", 8)) == P("w^3 + w^4 + w^5 + w^6", 8)
        assert sq_total(P("c1", 8)) == P("c1 + w c1 + c1^2", 8)
        assert sq(2, P("c2", 8)) == P("w^2 c2 + c1 c2 + c3", 8)

    def test_sq_examples(self, P):
        assert sq(1, P("w")) == P("w^2")
        assert sq(2, P("w^3")) == P("w^5")
        assert sq(0, P("c1 + w")) == P("c1 + w")

    @given(homogeneous_poly(3, 16) | homogeneous_poly(4, 16) | homogeneous_poly(6, 16))
    def test_square_and_unstable(self, p):
        d = p.degree
        if d is None:
            return
        assert sq(d, p) == p * p
        for i in range(d + 1, 16 - d):
            assert not sq(i, p)

    @given(homogeneous_poly(3, 12), homogeneous_poly(4, 12))
    def test_cartan(self, x, y):
        for i in range(6):
            rhs = PolyF2.zero(12)
            for j in range(i + 1):
                rhs = rhs + sq(j, x) * sq(i - j, y)
            assert sq(i, x * y) == rhs

    def test_sq1_on_chern_monomials(self):
        for d in range(0, 11, 2):
            for m in monomials_of_degree(d):
                if m.omega:
                    continue
                p = PolyF2([m], 14)
                want = PolyF2.omega(14) * p if m.twist else PolyF2.zero(14)
                assert sq(1, p) == want, m


class TestChi:
    def test_examples(self, P):
        md = 16
        assert chi_sq_total(PolyF2.one(md)) == PolyF2.one(md)
        assert chi_sq_total(P("w", md)) == P("w + w^2 + w^4 + w^8 + w^16", md)
        c = chi_sq_total(P("c1", md))
        assert c.homogeneous(2) == P("c1", md)
        assert sq_total(c) == P("c1", md)

    @given(poly(14))
    def test_inverse(self, p):
        assert sq_total(chi_sq_total(p)) == p
        assert chi_sq_total(sq_total(p)) == p

    @given(poly(10))
    def test_three_paths_agree(self, p):
        q = chi_sq_total(p)
        assert q == chi_sq_total_by_inversion(p)
        assert q == chi_sq_total_by_antipode(p)


class TestApply:
    def test_examples(self, P):
        assert apply(S.sq(2, 1), P("w")) == P("w^4")
        x = P("c1 + w^3 c2")
        assert apply(S.unit(), x) == x
        assert apply(T.parse("w Sq1"), P("c1")) == P("w^2 c1")

    @given(sq_word(10), poly(14, 6))
    def test_respects_adem(self, word, p):
        assert apply(S._raw({word}), p) == apply(adem_normalize(word), p)

    @given(sq_word(6), sq_word(6), poly(14, 4))
    def test_module_structure(self, a, b, p):
        x, y = S([a]), S([b])
        assert apply(x * y, p) == apply(x, apply(y, p))
