"""Dimension-dependent right action of the twisted Steenrod algebra.

(x)Sq = v . chi(Sq)(x), with v the total Wu class of the working dimension.
"""

from __future__ import annotations

from .action import chi_sq_total, sq_total
from .charclass import VirtualBundle, WuContext, generic_total_chern, w_from_c
from .gring import PolyF2, TruncationMismatch, geometric_inverse, product_in_degree
from .steenrod import SteenrodElement, TwistedElement


class TruncationOverflow(ValueError):
    pass


def _check(ctx: WuContext, x: PolyF2) -> None:
    if x.max_degree != ctx.max_degree:
        raise TruncationMismatch(
            f"polynomial truncated at {x.max_degree}, context (n={ctx.n}) at {ctx.max_degree}")


def right_sq_total(ctx: WuContext, x: PolyF2) -> PolyF2:
    _check(ctx, x)
    return ctx.v * chi_sq_total(x)


def right_sq(ctx: WuContext, x: PolyF2, i: int) -> PolyF2:
    """(x)Sq^i for homogeneous x."""
    _check(ctx, x)
    if not x:
        return x
    d = x.degree
    if d is None:
        raise ValueError("right_sq needs homogeneous input")
    if i < 0:
        raise ValueError("negative Steenrod square")
    if d + i > ctx.max_degree:
        raise TruncationOverflow(f"degree {d + i} exceeds truncation {ctx.max_degree}")
    return product_in_degree(ctx.v, chi_sq_total(x), d + i)


def _right_word(ctx: WuContext, x: PolyF2, word: tuple[int, ...]) -> PolyF2:
    for i in word:
        if not x:
            break
        out = PolyF2.zero(ctx.max_degree)
        for d in x.degrees():
            out = out + right_sq(ctx, x.homogeneous(d), i)
        x = out
    return x


def right_apply(ctx: WuContext, x: PolyF2, a: TwistedElement | SteenrodElement) -> PolyF2:
    """(x)a; a term w^b Sq^I1...Sq^Ir acts as (((w^b x)Sq^I1)...)Sq^Ir."""
    _check(ctx, x)
    md = ctx.max_degree
    if isinstance(a, SteenrodElement):
        a = TwistedElement.from_steenrod(a)
    if not isinstance(a, TwistedElement):
        raise TypeError(f"cannot act with {type(a).__name__}")
    out = PolyF2.zero(md)
    for b, word in a.terms:
        out = out + _right_word(ctx, PolyF2.omega(md, b) * x, word)
    return out


def right_chi_sq_total(ctx: WuContext, x: PolyF2) -> PolyF2:
    """(x)chi(Sq) = w_G(-kappa_n) . Sq(x)."""
    _check(ctx, x)
    md = ctx.max_degree
    bundle = VirtualBundle(-ctx.n, geometric_inverse(generic_total_chern(md)))
    return w_from_c(bundle) * sq_total(x)
