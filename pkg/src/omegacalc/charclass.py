"""Equivariant characteristic classes over Z/2[w, c1, c2, ...]."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .action import chi_sq_total
from .gring import PolyF2, code_omega, evaluate_hom, lucas  # noqa: F401  (lucas re-exported)
from .roots import from_roots, series_product

__all__ = ["VirtualBundle", "WuContext", "w_from_c", "wu_u", "todd_t", "todd_of",
           "q_series", "wu_formula", "coeff_N", "lucas", "generic_total_chern"]


@dataclass(frozen=True)
class VirtualBundle:
    rank: int
    total_chern: PolyF2

    def __post_init__(self):
        if self.total_chern.constant_term() != 1:
            raise ValueError("total Chern class must have constant term 1")
        if any(code_omega(c) for c in self.total_chern.codes):
            raise ValueError("total Chern class may not involve w")

    @property
    def max_degree(self) -> int:
        return self.total_chern.max_degree

    def chern_class(self, i: int) -> PolyF2:
        return self.total_chern.homogeneous(2 * i)

    def __add__(self, other: "VirtualBundle") -> "VirtualBundle":
        return VirtualBundle(self.rank + other.rank, self.total_chern * other.total_chern)


def generic_total_chern(max_degree: int) -> PolyF2:
    """1 + c1 + c2 + ... up to the truncation degree."""
    out = PolyF2.one(max_degree)
    for i in range(1, max_degree // 2 + 1):
        out = out + PolyF2.chern(i, max_degree)
    return out


def w_from_c(b: VirtualBundle) -> PolyF2:
    """w_G = sum_i ci (1 + w)^(rank - i)."""
    md = b.max_degree
    one_plus_w = PolyF2.one(md) + PolyF2.omega(md)
    out = PolyF2.zero(md)
    for i in range(md // 2 + 1):
        ci = b.chern_class(i)
        if ci:
            out = out + ci * one_plus_w ** (b.rank - i)
    return out


def wu_u(b: VirtualBundle) -> PolyF2:
    return chi_sq_total(w_from_c(b))


@lru_cache(maxsize=None)
def todd_t(m: int) -> PolyF2:
    """Degree-2m term of the multiplicative sequence with series 1 + sum_l x^(2^l)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    md = 2 * m
    coeffs = {}
    j = 1
    while j <= m:
        coeffs[j] = PolyF2.one(md)
        j *= 2
    return from_roots(series_product(coeffs, max(m, 1), md).homogeneous(md))


def todd_of(b: VirtualBundle, m: int) -> PolyF2:
    """t_m evaluated on the Chern classes of b."""
    md = b.max_degree
    images = {i: b.chern_class(i) for i in range(1, m + 1)}
    return evaluate_hom(todd_t(m).with_max_degree(md), PolyF2.omega(md), images)


def q_series(max_degree: int) -> PolyF2:
    """Q = 1 + w + w^2 + w^4 + w^8 + ..."""
    out = PolyF2.one(max_degree)
    j = 1
    while j <= max_degree:
        out = out + PolyF2.omega(max_degree, j)
        j *= 2
    return out


def wu_formula(n: int, max_degree: int) -> PolyF2:
    """v = sum_m Q^(n-2m) t_m for the rank-n generic bundle."""
    q = q_series(max_degree)
    out = PolyF2.zero(max_degree)
    for m in range(max_degree // 2 + 1):
        out = out + q ** (n - 2 * m) * todd_t(m).with_max_degree(max_degree)
    return out


def _series_mul(a: int, b: int, mask: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a = (a << 1) & mask
        b >>= 1
    return out & mask


@lru_cache(maxsize=None)
def coeff_N(n: int, k: int) -> int:
    """Coefficient of x^k in (1 + sum_l x^(2^l))^n, mod 2."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    mask = (1 << (k + 1)) - 1
    base, j = 1, 1
    while j <= k:
        base |= 1 << j
        j *= 2
    result, e = 1, n
    while e:
        if e & 1:
            result = _series_mul(result, base, mask)
        base = _series_mul(base, base, mask)
        e >>= 1
    return (result >> k) & 1


@dataclass(frozen=True)
class WuContext:
    """Total Wu class v for working dimension n, truncated at max_degree."""

    n: int
    max_degree: int
    v: PolyF2 = field(compare=False, repr=False)

    @classmethod
    def build(cls, n: int, max_degree: int) -> "WuContext":
        return _context(n, max_degree)

    def v_k(self, k: int) -> PolyF2:
        return self.v.homogeneous(k)


@lru_cache(maxsize=None)
def _context(n: int, max_degree: int) -> WuContext:
    return WuContext(n, max_degree, wu_formula(n, max_degree))
