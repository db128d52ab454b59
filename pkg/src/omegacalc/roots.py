"""Chern-root splitting engine.

A symmetric polynomial in roots y1..yD (each of degree 2) with coefficients in
Z/2[w] is stored in the monomial-symmetric basis: a set of pairs
``(a, lam)`` meaning ``w^a * m_lam(y1, ..., yD)`` with ``lam`` a partition
(weakly decreasing tuple of positive parts, at most D of them).  This keeps
the engine exact for any D while only touching one monomial per orbit.

``to_roots`` substitutes ck -> e_k(y); ``from_roots`` rewrites back into
elementary symmetric polynomials by leading-term elimination.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Mapping

from .gring import Monomial, PolyF2, decode, encode, lucas

Partition = tuple[int, ...]
Term = tuple[int, Partition]


class NotSymmetricError(ValueError):
    """Raised when an explicit root polynomial is not symmetric."""

    def __init__(self, orbit: tuple[int, tuple[int, ...]]):
        a, exps = orbit
        super().__init__(f"orbit of w^{a} y^{exps} is only partially present")
        self.orbit = orbit


class RootCountError(ValueError):
    pass


def required_roots(max_degree: int) -> int:
    return max_degree // 2


class RootPoly:
    """Symmetric polynomial in w and Chern roots, truncated at ``max_degree``."""

    __slots__ = ("terms", "roots", "max_degree")

    def __init__(self, terms: Iterable[Term], roots: int, max_degree: int):
        acc: set[Term] = set()
        for a, lam in terms:
            lam = tuple(sorted((p for p in lam if p), reverse=True))
            if len(lam) <= roots and a + 2 * sum(lam) <= max_degree:
                acc ^= {(a, lam)}
        self.terms: frozenset[Term] = frozenset(acc)
        self.roots = roots
        self.max_degree = max_degree

    @classmethod
    def from_explicit(cls, monomials: Iterable[tuple[int, tuple[int, ...]]], roots: int,
                      max_degree: int) -> "RootPoly":
        """Build from explicit terms ``(a, (e1, ..., eD))`` = w^a y1^e1 ... yD^eD.

        Raises :class:`NotSymmetricError` naming an orbit that is not fully present.
        """
        present: set[tuple[int, tuple[int, ...]]] = set()
        for a, exps in monomials:
            exps = tuple(exps)
            if len(exps) != roots:
                raise ValueError(f"expected {roots} root exponents, got {len(exps)}")
            if a + 2 * sum(exps) <= max_degree:
                present ^= {(a, exps)}
        terms = []
        seen = set()
        for a, exps in sorted(present):
            key = (a, tuple(sorted(exps, reverse=True)))
            if key in seen:
                continue
            seen.add(key)
            for perm in set(permutations(exps)):
                if (a, perm) not in present:
                    raise NotSymmetricError((a, exps))
            terms.append(key)
        return cls(terms, roots, max_degree)

    def to_explicit(self) -> set[tuple[int, tuple[int, ...]]]:
        """Expand every orbit; only sensible for small root counts."""
        out = set()
        for a, lam in self.terms:
            padded = lam + (0,) * (self.roots - len(lam))
            for perm in set(permutations(padded)):
                out.add((a, perm))
        return out

    def __add__(self, other: "RootPoly") -> "RootPoly":
        if (self.roots, self.max_degree) != (other.roots, other.max_degree):
            raise ValueError("root count or truncation mismatch")
        r = RootPoly((), self.roots, self.max_degree)
        r.terms = self.terms ^ other.terms
        return r

    def __eq__(self, other) -> bool:
        if not isinstance(other, RootPoly):
            return NotImplemented
        return (self.terms, self.roots, self.max_degree) == (other.terms, other.roots, other.max_degree)

    def __hash__(self):
        return hash((self.terms, self.roots, self.max_degree))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def homogeneous(self, degree: int) -> "RootPoly":
        return RootPoly((t for t in self.terms if t[0] + 2 * sum(t[1]) == degree),
                        self.roots, self.max_degree)

    def __repr__(self) -> str:
        body = " + ".join(f"w^{a} m{list(lam)}" for a, lam in sorted(self.terms)) or "0"
        return f"RootPoly({body}, roots={self.roots})"


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


@lru_cache(maxsize=None)
def _m_times_e(lam: Partition, k: int, roots: int) -> frozenset[Partition]:
    """m_lam * e_k in the monomial-symmetric basis, over F2, with <= roots variables."""
    counts = Counter(lam)
    zeros = roots - len(lam)
    if zeros < 0:
        return frozenset()
    groups = sorted(counts.items(), reverse=True) + ([(0, zeros)] if zeros else [])
    out: set[Partition] = set()

    def rec(i: int, left: int, chosen: list[int]):
        if i == len(groups):
            if left == 0:
                emit(chosen)
            return
        for t in range(min(left, groups[i][1]) + 1):
            chosen.append(t)
            rec(i + 1, left - t, chosen)
            chosen.pop()

    def emit(chosen: list[int]):
        # t_u entries of value u are bumped to u+1
        new = Counter()
        bumped = {}
        for (u, n), t in zip(groups, chosen):
            if n - t and u:
                new[u] += n - t
            if t:
                new[u + 1] += t
                bumped[u + 1] = t
        coeff = 1
        for v, t in bumped.items():
            coeff &= lucas(new[v], t)
        if coeff:
            nu = tuple(sorted(new.elements(), reverse=True))
            out.symmetric_difference_update({nu})

    rec(0, k, [])
    return frozenset(out)


@lru_cache(maxsize=None)
def e_product(mu: Partition, roots: int) -> frozenset[Partition]:
    """e_mu = prod e_{mu_j} expanded in the monomial-symmetric basis."""
    if not mu:
        return frozenset({()})
    rest = e_product(mu[1:], roots)
    acc: set[Partition] = set()
    for lam in rest:
        acc ^= _m_times_e(lam, mu[0], roots)
    return frozenset(acc)


def _chern_partition(chern: tuple[int, ...]) -> Partition:
    parts = []
    for i in range(len(chern), 0, -1):
        parts.extend([i] * chern[i - 1])
    return tuple(parts)


def to_roots(p: PolyF2, roots: int | None = None) -> RootPoly:
    """Substitute ck -> e_k(y1, ..., yD); w is left alone."""
    need = required_roots(p.max_degree)
    if roots is None:
        roots = need
    if roots < need:
        raise RootCountError(f"{roots} roots cannot represent degree {p.max_degree}; need {need}")
    acc: set[Term] = set()
    for code in p.codes:
        a, chern = decode(code)
        mu = _chern_partition(chern)
        acc ^= {(a, lam) for lam in e_product(mu, roots)}
    return RootPoly(acc, roots, p.max_degree)


def from_roots(q: RootPoly) -> PolyF2:
    """Rewrite a symmetric root polynomial in w and the ck."""
    by_omega: dict[int, set[Partition]] = {}
    for a, lam in q.terms:
        by_omega.setdefault(a, set()).symmetric_difference_update({lam})
    out: set[int] = set()
    for a, lams in by_omega.items():
        while lams:
            lead = max(lams)
            mu = conjugate(lead)
            chern = [0] * (mu[0] if mu else 0)
            for i in mu:
                chern[i - 1] += 1
            out ^= {encode(a, tuple(chern))}
            lams ^= e_product(mu, q.roots)
    return PolyF2(out, q.max_degree)


def partitions_upto(total: int, max_len: int, max_part: int | None = None):
    """Partitions of every size <= total with at most max_len parts."""
    def rec(left, largest, length):
        yield ()
        if length == 0:
            return
        for k in range(min(left, largest), 0, -1):
            for rest in rec(left - k, k, length - 1):
                yield (k,) + rest
    top = total if max_part is None else min(total, max_part)
    yield from rec(total, top, max_len)


def series_product(coeffs: Mapping[int, PolyF2], roots: int, max_degree: int,
                   length: int | None = None) -> RootPoly:
    """prod_i g(y_i) for g(y) = 1 + sum_j coeffs[j] y^j, in the monomial-symmetric basis.

    ``coeffs[j]`` are polynomials in w.  With ``length`` given, only partitions
    with exactly that many parts are kept (the coefficient of t^length in
    prod_i (1 + t (g(y_i) - 1))).
    """
    terms: set[Term] = set()
    max_part = max((j for j, c in coeffs.items() if c), default=0)
    cache: dict[Partition, PolyF2] = {(): PolyF2.one(max_degree)}

    def coeff_of(lam: Partition) -> PolyF2:
        if lam not in cache:
            cache[lam] = coeff_of(lam[1:]) * coeffs.get(lam[0], PolyF2.zero(max_degree))
        return cache[lam]

    for lam in partitions_upto(max_degree // 2, roots, max_part):
        if length is not None and len(lam) != length:
            continue
        c = coeff_of(lam).truncate(max_degree - 2 * sum(lam))
        for code in c.codes:
            terms.add((decode(code)[0], lam))
    return RootPoly(terms, roots, max_degree)


def chern_monomial(chern_exps: Mapping[int, int]) -> Monomial:
    return Monomial.from_exps(0, chern_exps)
