"""Declarative consequence tables: quadric vanishing, coindex and level bounds.

Each rule row is (guard over hypotheses, bound, citation).  The engine picks
the smallest licensed bound; ties go to the earlier row.  It never chains rows.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Callable


class HypothesisError(ValueError):
    pass


def is_mersenne(n: int) -> bool:
    """n = 2^k - 1 for some k >= 0."""
    return n >= 0 and (n + 1) & n == 0


def alpha(m: int) -> int:
    """Number of ones in the binary expansion of m."""
    return bin(m).count("1")


def quadric_omega_vanishes(n: int, e: int) -> bool:
    """Whether w^e vanishes on the anisotropic quadric of dimension n."""
    if n < 0 or e < 0:
        raise ValueError("n and e must be non-negative")
    k = 0
    while (1 << k) - 1 <= e:
        if n < (1 << k) - 1:
            return True
        k += 1
    return False


@dataclass(frozen=True)
class GeometricHypotheses:
    n: int
    no_real_points: bool = True
    geometrically_irreducible: bool = True
    smooth: bool = True
    proper: bool = True
    no_compact_component: bool = False
    no_proper_component: bool = False
    uniruled_over_C: bool = False
    h_n_structure_sheaf_vanishes: bool = False
    coniveau_ge_1_on_Hn: bool = False
    hn_unramified_vanishes: bool = False
    quotient_torsion_free: bool = False
    conic_bundle: bool = False
    genus: int | None = None
    enriques: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise HypothesisError("dimension must be non-negative")
        if self.genus is not None and (self.n != 1 or self.genus < 0):
            raise HypothesisError("genus is only meaningful for curves (n=1) and must be >= 0")
        if self.enriques and (self.n != 2 or not (self.smooth and self.proper)):
            raise HypothesisError("an Enriques surface is a smooth proper surface")
        if self.no_compact_component and self.proper:
            raise HypothesisError("a proper variety has compact components")
        if self.no_proper_component and self.proper:
            raise HypothesisError("a proper variety is its own proper component")

    @classmethod
    def flag_names(cls) -> list[str]:
        return [f.name for f in fields(cls) if f.type in ("bool", bool)]

    @classmethod
    def from_flags(cls, n: int, flags: list[str], genus: int | None = None,
                   defaults: dict | None = None) -> "GeometricHypotheses":
        """Build from flag names; a ``not-`` prefix switches a default off."""
        values = dict(defaults or {})
        known = set(cls.flag_names())
        for raw in flags:
            name = raw.replace("-", "_")
            on = True
            if name not in known and name.startswith("not_"):
                name, on = name[4:], False
            if name not in known:
                raise HypothesisError(f"unknown flag {raw!r}")
            values[name] = on
        return cls(n=n, genus=genus, **values)


@dataclass(frozen=True)
class Bound:
    value: int
    citation: str
    exact: bool = False
    note: str | None = None

    def to_json(self) -> dict:
        out = {"bound": self.value, "citation": self.citation, "exact": self.exact}
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class Rule:
    guard: Callable[[GeometricHypotheses], bool]
    bound: Callable[[GeometricHypotheses], int]
    citation: str
    exact: bool = False
    note: Callable[[GeometricHypotheses], str | None] = lambda h: None


def _curve(h: GeometricHypotheses) -> bool:
    return h.n == 1 and h.smooth and h.proper


def _surface_note(h: GeometricHypotheses) -> str | None:
    if h.n == 2 and h.smooth and h.proper and not h.enriques:
        return "sharp: Enriques surfaces without real points have coindex 3"
    return None


COINDEX_RULES: tuple[Rule, ...] = (
    Rule(lambda h: _curve(h) and not h.geometrically_irreducible, lambda h: 0,
         "curve-not-geometrically-irreducible", exact=True),
    Rule(lambda h: _curve(h) and h.geometrically_irreducible and h.genus is not None
         and h.genus % 2 == 1, lambda h: 1, "curve-odd-genus", exact=True),
    Rule(lambda h: _curve(h) and h.geometrically_irreducible and h.genus is not None
         and h.genus % 2 == 0, lambda h: 2, "curve-even-genus", exact=True),
    Rule(lambda h: h.enriques, lambda h: 3, "enriques-surface", exact=True),
    Rule(lambda h: h.smooth and h.no_compact_component and not is_mersenne(h.n),
         lambda h: 2 * h.n - 2, "manifold-no-compact-component-improved"),
    Rule(lambda h: h.smooth and h.no_compact_component, lambda h: 2 * h.n - 1,
         "manifold-no-compact-component"),
    Rule(lambda h: h.smooth and not is_mersenne(h.n), lambda h: 2 * h.n - 1,
         "manifold-improved", note=_surface_note),
    Rule(lambda h: h.smooth, lambda h: 2 * h.n, "manifold"),
    Rule(lambda h: not h.smooth and (h.no_proper_component or not is_mersenne(h.n)),
         lambda h: 2 * h.n - 1, "singular-variety-improved"),
    Rule(lambda h: not h.smooth, lambda h: 2 * h.n, "singular-variety"),
)


LEVEL_RULES: tuple[Rule, ...] = (
    Rule(lambda h: h.n == 2 and h.h_n_structure_sheaf_vanishes, lambda h: 2, "surface-h2o"),
    Rule(lambda h: h.n == 3 and h.uniruled_over_C, lambda h: 4, "uniruled-threefold"),
    Rule(lambda h: h.n >= 1 and h.n % 2 == 0 and h.uniruled_over_C,
         lambda h: 2 ** (h.n - 1), "uniruled-even"),
    Rule(lambda h: h.n >= 2 and h.conic_bundle, lambda h: 2 ** (h.n - 1), "conic-bundle"),
    Rule(lambda h: h.n >= 3 and h.n % 2 == 1 and h.hn_unramified_vanishes
         and h.quotient_torsion_free, lambda h: 2 ** (h.n - 1), "odd-dim-unramified"),
    Rule(lambda h: h.n >= 1 and h.n % 2 == 0 and h.coniveau_ge_1_on_Hn,
         lambda h: 2 ** (h.n - 1), "even-dim-coniveau"),
    Rule(lambda h: True, lambda h: 2 ** h.n, "pfister"),
)


def _best(rules: tuple[Rule, ...], h: GeometricHypotheses) -> Bound:
    best: Bound | None = None
    for r in rules:
        if r.guard(h):
            value = r.bound(h)
            if best is None or value < best.value:
                best = Bound(value, r.citation, r.exact, r.note(h))
    if best is None:
        raise HypothesisError("no rule applies")
    return best


def coindex_bound(h: GeometricHypotheses) -> Bound:
    if not h.no_real_points:
        raise HypothesisError("coindex bounds need a variety without real points")
    return _best(COINDEX_RULES, h)


def level_bound(h: GeometricHypotheses) -> Bound:
    missing = [name for name in ("no_real_points", "geometrically_irreducible", "smooth", "proper")
               if not getattr(h, name)]
    if missing:
        raise HypothesisError(f"level bounds need: {', '.join(missing)}")
    return _best(LEVEL_RULES, h)
