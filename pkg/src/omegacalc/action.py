"""Left action of the (twisted) Steenrod algebra on Z/2[w, c1, c2, ...].

Total squares are ring homomorphisms, so both Sq and chi(Sq) are evaluated by
substituting precomputed generator images.  The image of ck comes from the
root engine: Sq(y) = y + w y + y^2 on every Chern root.
"""

from __future__ import annotations

import threading

from .gring import PolyF2, code_omega, evaluate_hom
from .roots import (RootPoly, from_roots, required_roots, to_roots,  # noqa: F401
                    NotSymmetricError, RootCountError)
from .steenrod import SteenrodElement, TwistedElement, antipode

__all__ = [
    "RootPoly", "to_roots", "from_roots", "NotSymmetricError", "RootCountError",
    "sq_total", "sq", "chi_sq_total", "chi_sq_total_by_inversion", "chi_sq_total_by_antipode",
    "apply", "sq_generator_images", "chi_generator_images",
]


class _Images:
    """Generator images plus a monomial cache for one truncation degree."""

    def __init__(self, omega: PolyF2, chern: dict[int, PolyF2]):
        self.omega = omega
        self.chern = chern
        self.cache: dict[int, PolyF2] = {}

    def __call__(self, p: PolyF2) -> PolyF2:
        return evaluate_hom(p, self.omega, self.chern, self.cache)


_lock = threading.Lock()
_SQ: dict[int, _Images] = {}
_CHI: dict[int, _Images] = {}


def _sq_chern_image(k: int, md: int) -> PolyF2:
    # e_k(y_i (1 + w + y_i)) = sum_{a+b=k} (1+w)^a m_(2^b 1^a)
    roots = max(required_roots(md), k)
    one_plus_w = PolyF2.one(md) + PolyF2.omega(md)
    terms = []
    for a in range(k + 1):
        lam = (2,) * (k - a) + (1,) * a
        for code in (one_plus_w ** a).truncate(md - 2 * sum(lam)).codes:
            terms.append((code_omega(code), lam))
    return from_roots(RootPoly(terms, roots, md))


def sq_generator_images(max_degree: int) -> _Images:
    img = _SQ.get(max_degree)
    if img is None:
        omega = PolyF2.omega(max_degree) + PolyF2.omega(max_degree, 2)
        chern = {k: _sq_chern_image(k, max_degree) for k in range(1, max_degree // 2 + 1)}
        img = _Images(omega, chern)
        with _lock:
            img = _SQ.setdefault(max_degree, img)
    return img


def sq_total(p: PolyF2) -> PolyF2:
    """Total Steenrod square Sq = sum_i Sq^i."""
    return sq_generator_images(p.max_degree)(p)


def sq(i: int, p: PolyF2) -> PolyF2:
    """Sq^i(p), applied componentwise."""
    if i < 0:
        raise ValueError("negative Steenrod square")
    md = p.max_degree
    out = PolyF2.zero(md)
    for d in p.degrees():
        if d + i <= md:
            out = out + sq_total(p.homogeneous(d)).homogeneous(d + i)
    return out


def chi_sq_total_by_inversion(p: PolyF2) -> PolyF2:
    """chi(Sq)(p) as the unique r with Sq(r) = p, by degreewise fixed point."""
    r = p
    for _ in range(p.max_degree + 2):
        nxt = p + sq_total(r) + r
        if nxt == r:
            return r
        r = nxt
    raise RuntimeError("inversion of Sq did not stabilise")


def chi_generator_images(max_degree: int) -> _Images:
    img = _CHI.get(max_degree)
    if img is None:
        omega = chi_sq_total_by_inversion(PolyF2.omega(max_degree))
        chern = {k: chi_sq_total_by_inversion(PolyF2.chern(k, max_degree))
                 for k in range(1, max_degree // 2 + 1)}
        img = _Images(omega, chern)
        with _lock:
            img = _CHI.setdefault(max_degree, img)
    return img


def chi_sq_total(p: PolyF2) -> PolyF2:
    """chi(Sq)(p); chi(Sq) is again multiplicative, so generator images suffice."""
    return chi_generator_images(p.max_degree)(p)


def chi_sq_total_by_antipode(p: PolyF2) -> PolyF2:
    """sum_k chi(Sq^k)(p) using antipode expansions in the Steenrod algebra."""
    out = PolyF2.zero(p.max_degree)
    for k in range(p.max_degree + 1):
        out = out + apply(antipode(SteenrodElement.sq(k)), p)
    return out


def _apply_word(word: tuple[int, ...], p: PolyF2) -> PolyF2:
    for i in reversed(word):
        if not p:
            break
        p = sq(i, p)
    return p


def apply(a: SteenrodElement | TwistedElement, p: PolyF2) -> PolyF2:
    """a(p); for twisted terms w^b Sq^I the result is w^b Sq^I(p)."""
    md = p.max_degree
    out = PolyF2.zero(md)
    if isinstance(a, SteenrodElement):
        for word in a.words:
            out = out + _apply_word(word, p)
    elif isinstance(a, TwistedElement):
        for b, word in a.terms:
            out = out + PolyF2.omega(md, b) * _apply_word(word, p)
    else:
        raise TypeError(f"cannot act with {type(a).__name__}")
    return out
