"""Graded polynomial rings Z/2[w, c1, c2, ...] and Z[w, c1, c2, ...]/(2w).

Degrees: w has degree 1, ci has degree 2i.  The twist of a monomial
w^e c1^e1 c2^e2 ... is e + sum(i * ei) mod 2.

Monomials are packed into a single integer: byte 0 holds the degree,
byte 1 the exponent of w and byte i+1 the exponent of ci.  Multiplying
monomials is then integer addition, and the degree of a packed code is
``code & 0xFF``.  All exponents and degrees must stay below 256.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

_FIELD = 8
_MASK = 0xFF
MAX_SUPPORTED_DEGREE = 255


class TruncationMismatch(ValueError):
    """Raised when combining polynomials truncated at different degrees."""


class PolyParseError(ValueError):
    """Raised by :func:`parse_poly` on malformed input."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


def encode(omega: int, chern: tuple[int, ...] = ()) -> int:
    degree = omega + sum(2 * (i + 1) * e for i, e in enumerate(chern))
    if degree > MAX_SUPPORTED_DEGREE:
        raise ValueError(f"degree {degree} exceeds {MAX_SUPPORTED_DEGREE}")
    code = degree | (omega << _FIELD)
    for i, e in enumerate(chern):
        if e:
            code |= e << (_FIELD * (i + 2))
    return code


def code_degree(code: int) -> int:
    return code & _MASK


def code_omega(code: int) -> int:
    return (code >> _FIELD) & _MASK


def decode(code: int) -> tuple[int, tuple[int, ...]]:
    omega = (code >> _FIELD) & _MASK
    rest = code >> (2 * _FIELD)
    chern = []
    while rest:
        chern.append(rest & _MASK)
        rest >>= _FIELD
    return omega, tuple(chern)


def code_twist(code: int) -> int:
    omega, chern = decode(code)
    return (omega + sum((i + 1) * e for i, e in enumerate(chern))) & 1


def code_weight(code: int) -> int:
    """Chern weight sum(i * ei), i.e. the degree of the Chern part in Z[c1, c2, ...]."""
    _, chern = decode(code)
    return sum((i + 1) * e for i, e in enumerate(chern))


def sort_key(code: int) -> tuple:
    omega, chern = decode(code)
    return (code & _MASK, omega, chern)


@dataclass(frozen=True)
class Monomial:
    """w^omega * prod ci^chern[i-1], with trailing zero exponents stripped."""

    omega: int = 0
    chern: tuple[int, ...] = ()

    def __post_init__(self):
        chern = tuple(self.chern)
        while chern and chern[-1] == 0:
            chern = chern[:-1]
        if self.omega < 0 or any(e < 0 for e in chern):
            raise ValueError("exponents must be non-negative")
        object.__setattr__(self, "chern", chern)

    @classmethod
    def from_code(cls, code: int) -> "Monomial":
        omega, chern = decode(code)
        return cls(omega, chern)

    @classmethod
    def from_exps(cls, omega: int = 0, chern_exps: Mapping[int, int] | None = None) -> "Monomial":
        chern_exps = chern_exps or {}
        top = max(chern_exps, default=0)
        return cls(omega, tuple(chern_exps.get(i, 0) for i in range(1, top + 1)))

    @property
    def code(self) -> int:
        return encode(self.omega, self.chern)

    @property
    def chern_exps(self) -> dict[int, int]:
        return {i + 1: e for i, e in enumerate(self.chern) if e}

    @property
    def degree(self) -> int:
        return self.omega + 2 * self.weight

    @property
    def weight(self) -> int:
        return sum((i + 1) * e for i, e in enumerate(self.chern))

    @property
    def twist(self) -> int:
        return (self.omega + self.weight) % 2

    def __mul__(self, other: "Monomial") -> "Monomial":
        n = max(len(self.chern), len(other.chern))
        a = self.chern + (0,) * (n - len(self.chern))
        b = other.chern + (0,) * (n - len(other.chern))
        return Monomial(self.omega + other.omega, tuple(x + y for x, y in zip(a, b)))

    def sort_key(self) -> tuple:
        return (self.degree, self.omega, self.chern)

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return format_monomial(self.omega, self.chern)


def format_monomial(omega: int, chern: tuple[int, ...], omega_symbol: str = "w",
                    chern_symbol: str = "c") -> str:
    parts = []
    if omega:
        parts.append(omega_symbol if omega == 1 else f"{omega_symbol}^{omega}")
    for i, e in enumerate(chern):
        if e:
            name = f"{chern_symbol}{i + 1}"
            parts.append(name if e == 1 else f"{name}^{e}")
    return " ".join(parts) if parts else "1"


def _mul_codes(a: Iterable[int], b: Iterable[int], max_degree: int) -> set[int]:
    buckets: dict[int, list[int]] = {}
    for y in b:
        buckets.setdefault(y & _MASK, []).append(y)
    degrees = sorted(buckets)
    out: set[int] = set()
    for x in a:
        lim = max_degree - (x & _MASK)
        for d in degrees:
            if d > lim:
                break
            out.symmetric_difference_update([x + y for y in buckets[d]])
    return out


class PolyF2:
    """Truncated polynomial over F2 in w (deg 1) and c1, c2, ... (deg 2i).

    Terms of degree above ``max_degree`` are discarded by every operation.
    Instances are immutable.
    """

    __slots__ = ("_codes", "_max_degree", "_hash")

    def __init__(self, terms: Iterable[Monomial | int] = (), max_degree: int = 16):
        if max_degree < 0 or max_degree > MAX_SUPPORTED_DEGREE:
            raise ValueError(f"max_degree must lie in [0, {MAX_SUPPORTED_DEGREE}]")
        codes: set[int] = set()
        for t in terms:
            c = t if isinstance(t, int) else t.code
            if c & _MASK <= max_degree:
                codes ^= {c}
        self._codes = frozenset(codes)
        self._max_degree = max_degree
        self._hash = None

    @classmethod
    def _raw(cls, codes: Iterable[int], max_degree: int) -> "PolyF2":
        p = cls.__new__(cls)
        p._codes = frozenset(codes)
        p._max_degree = max_degree
        p._hash = None
        return p

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, max_degree: int) -> "PolyF2":
        return cls._raw((), max_degree)

    @classmethod
    def one(cls, max_degree: int) -> "PolyF2":
        return cls._raw((0,), max_degree)

    @classmethod
    def omega(cls, max_degree: int, power: int = 1) -> "PolyF2":
        return cls([Monomial(power)], max_degree)

    @classmethod
    def chern(cls, i: int, max_degree: int, power: int = 1) -> "PolyF2":
        if i < 1:
            raise ValueError("Chern index starts at 1")
        return cls([Monomial(0, (0,) * (i - 1) + (power,))], max_degree)

    @classmethod
    def parse(cls, text: str, max_degree: int) -> "PolyF2":
        return cls(parse_poly(text), max_degree)

    # -- accessors ----------------------------------------------------
    @property
    def max_degree(self) -> int:
        return self._max_degree

    @property
    def codes(self) -> frozenset[int]:
        return self._codes

    @property
    def terms(self) -> tuple[Monomial, ...]:
        return tuple(Monomial.from_code(c) for c in sorted(self._codes, key=sort_key))

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self._codes)

    def __bool__(self) -> bool:
        return bool(self._codes)

    def __contains__(self, m: Monomial | int) -> bool:
        return (m if isinstance(m, int) else m.code) in self._codes

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other in (0, 1):
            return self._codes == (frozenset({0}) if other else frozenset())
        if not isinstance(other, PolyF2):
            return NotImplemented
        return self._codes == other._codes and self._max_degree == other._max_degree

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._codes, self._max_degree))
        return self._hash

    def degrees(self) -> list[int]:
        return sorted({c & _MASK for c in self._codes})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """Degree of a homogeneous non-zero polynomial; None for 0."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError(f"polynomial is not homogeneous: degrees {ds}")
        return ds[0]

    def homogeneous(self, degree: int) -> "PolyF2":
        return PolyF2._raw((c for c in self._codes if c & _MASK == degree), self._max_degree)

    def twist_component(self, twist: int) -> "PolyF2":
        return PolyF2._raw((c for c in self._codes if code_twist(c) == twist % 2), self._max_degree)

    def constant_term(self) -> int:
        return 1 if 0 in self._codes else 0

    def coefficient(self, m: Monomial) -> int:
        return 1 if m.code in self._codes else 0

    def truncate(self, max_degree: int) -> "PolyF2":
        return PolyF2._raw((c for c in self._codes if c & _MASK <= max_degree), max_degree)

    def with_max_degree(self, max_degree: int) -> "PolyF2":
        """Change the truncation bound; raising it never invents terms."""
        return self.truncate(max_degree)

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "PolyF2") -> None:
        if not isinstance(other, PolyF2):
            raise TypeError(f"expected PolyF2, got {type(other).__name__}")
        if other._max_degree != self._max_degree:
            raise TruncationMismatch(
                f"max_degree mismatch: {self._max_degree} != {other._max_degree}")

    def __add__(self, other: "PolyF2") -> "PolyF2":
        self._check(other)
        return PolyF2._raw(self._codes ^ other._codes, self._max_degree)

    __sub__ = __add__

    def __mul__(self, other: "PolyF2 | Monomial") -> "PolyF2":
        if isinstance(other, Monomial):
            other = PolyF2([other], self._max_degree)
        self._check(other)
        if len(self._codes) > len(other._codes):
            a, b = other._codes, self._codes
        else:
            a, b = self._codes, other._codes
        return PolyF2._raw(_mul_codes(a, b, self._max_degree), self._max_degree)

    def __pow__(self, k: int) -> "PolyF2":
        if k < 0:
            return geometric_inverse(self) ** (-k)
        result = PolyF2.one(self._max_degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def square(self) -> "PolyF2":
        # Frobenius: (sum m)^2 = sum m^2 over F2
        return PolyF2._raw((2 * c for c in self._codes if 2 * (c & _MASK) <= self._max_degree),
                           self._max_degree)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"PolyF2({str(self)!r}, max_degree={self._max_degree})"


def format_poly(p: PolyF2) -> str:
    if not p:
        return "0"
    codes = sorted(p.codes, key=sort_key, reverse=True)
    return " + ".join(format_monomial(*decode(c)) for c in codes)


_TOKEN = re.compile(r"\s*(?:(?P<plus>\+)|(?P<star>[*·])|(?P<num>\d+)|"
                    r"(?P<gen>w|c(?P<idx>\d+))(?:\s*\^\s*(?P<exp>\d+))?)")


def parse_monomials(text: str) -> list[tuple[int, Monomial]]:
    """Parse ``"w^2 + c1 + 3 c2"`` into a list of (integer coefficient, Monomial)."""
    text = text.strip()
    if not text:
        raise PolyParseError("empty polynomial", text, 0)
    pos = 0
    out: list[tuple[int, Monomial]] = []
    coeff, omega, chern, have = 1, 0, {}, False

    def flush(at: int):
        nonlocal coeff, omega, chern, have
        if not have:
            raise PolyParseError("expected a term", text, at)
        out.append((coeff, Monomial.from_exps(omega, chern)))
        coeff, omega, chern, have = 1, 0, {}, False

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError("unexpected character", text, pos + (len(text[pos:]) - len(text[pos:].lstrip())))
        if m.group("plus"):
            flush(m.start("plus"))
        elif m.group("star"):
            if not have:
                raise PolyParseError("dangling '*'", text, m.start("star"))
        elif m.group("num"):
            coeff *= int(m.group("num"))
            have = True
        else:
            exp = int(m.group("exp")) if m.group("exp") else 1
            if m.group("idx"):
                i = int(m.group("idx"))
                if i < 1:
                    raise PolyParseError("Chern index must be >= 1", text, m.start("gen"))
                chern[i] = chern.get(i, 0) + exp
            else:
                omega += exp
            have = True
        pos = m.end()
    flush(len(text))
    return out


def parse_poly(text: str) -> list[Monomial]:
    """Parse an F2 polynomial; integer coefficients are reduced mod 2."""
    if text.strip() == "0":
        return []
    return [m for c, m in parse_monomials(text) if c % 2]


def geometric_inverse(u: PolyF2) -> PolyF2:
    """Inverse of a polynomial with constant term 1, exact up to ``u.max_degree``."""
    if not u.constant_term():
        raise ZeroDivisionError("constant term is 0; not invertible")
    md = u.max_degree
    one = PolyF2.one(md)
    nil = u + one  # strictly positive degree part
    # u^-1 = sum_k nil^k; nil^k has min degree >= k
    result = one
    power = one
    for _ in range(md):
        power = power * nil
        if not power:
            break
        result = result + power
    return result


def product_in_degree(a: PolyF2, b: PolyF2, degree: int) -> PolyF2:
    """Degree-``degree`` component of a*b without forming the full product."""
    a._check(b)
    buckets: dict[int, list[int]] = {}
    for y in b.codes:
        buckets.setdefault(y & _MASK, []).append(y)
    out: set[int] = set()
    for x in a.codes:
        ys = buckets.get(degree - (x & _MASK))
        if ys:
            out.symmetric_difference_update([x + y for y in ys])
    return PolyF2._raw(out, a.max_degree)


def monomials_of_degree(degree: int) -> list[Monomial]:
    """All monomials of the given degree, in canonical order."""
    out = []
    for omega in range(degree % 2, degree + 1, 2):
        for part in _partitions((degree - omega) // 2):
            top = max(part, default=0)
            chern = [0] * top
            for p in part:
                chern[p - 1] += 1
            out.append(Monomial(omega, tuple(chern)))
    return sorted(out)


def _partitions(n: int, largest: int | None = None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def evaluate_hom(p: PolyF2, omega_image: PolyF2, chern_images: Mapping[int, PolyF2],
                 cache: dict[int, PolyF2] | None = None) -> PolyF2:
    """Apply the ring homomorphism w -> omega_image, ci -> chern_images[i].

    ``cache`` maps monomial codes to images and is filled in place; passing the
    same dict across calls reuses work.
    """
    md = p.max_degree
    if cache is None:
        cache = {}
    out: set[int] = set()
    for c in p.codes:
        out ^= _hom_image(c, omega_image, chern_images, cache, md).codes
    return PolyF2._raw(out, md)


def _hom_image(code, omega_image, chern_images, cache, md) -> PolyF2:
    img = cache.get(code)
    if img is not None:
        return img
    if code == 0:
        img = PolyF2.one(md)
    else:
        omega, chern = decode(code)
        # peel one generator off: the largest-index Chern class, else w
        if chern:
            i = len(chern)
            gen = chern_images[i]
            rest = code - encode(0, (0,) * (i - 1) + (1,))
        else:
            gen = omega_image
            rest = code - encode(1)
        img = _hom_image(rest, omega_image, chern_images, cache, md) * gen
    cache[code] = img
    return img


class PolyZTwisted:
    """Element of Z[w, c1, c2, ...]/(2w), truncated at ``max_degree``.

    ``free`` holds integer coefficients of w-free monomials; ``torsion`` is a
    PolyF2 whose monomials all contain w (2w = 0 makes those coefficients F2).
    """

    __slots__ = ("free", "torsion", "max_degree")

    def __init__(self, free: Mapping[Monomial, int] | None = None,
                 torsion: PolyF2 | None = None, max_degree: int = 16):
        self.max_degree = max_degree
        clean: dict[Monomial, int] = {}
        for m, c in (free or {}).items():
            if m.omega:
                raise ValueError(f"free part may not contain w: {m}")
            if c and m.degree <= max_degree:
                clean[m] = clean.get(m, 0) + c
        self.free = {m: c for m, c in clean.items() if c}
        if torsion is None:
            torsion = PolyF2.zero(max_degree)
        if torsion.max_degree != max_degree:
            raise TruncationMismatch("torsion part truncated differently")
        if any(code_omega(c) == 0 for c in torsion.codes):
            raise ValueError("torsion part must consist of monomials containing w")
        self.torsion = torsion

    @classmethod
    def parse(cls, text: str, max_degree: int) -> "PolyZTwisted":
        free: dict[Monomial, int] = {}
        tors = []
        if text.strip() != "0":
            for c, m in parse_monomials(text):
                if m.omega:
                    if c % 2:
                        tors.append(m)
                else:
                    free[m] = free.get(m, 0) + c
        return cls(free, PolyF2(tors, max_degree), max_degree)

    def __add__(self, other: "PolyZTwisted") -> "PolyZTwisted":
        if self.max_degree != other.max_degree:
            raise TruncationMismatch("max_degree mismatch")
        free = dict(self.free)
        for m, c in other.free.items():
            free[m] = free.get(m, 0) + c
        return PolyZTwisted(free, self.torsion + other.torsion, self.max_degree)

    def scale(self, k: int) -> "PolyZTwisted":
        free = {m: k * c for m, c in self.free.items()}
        tors = self.torsion if k % 2 else PolyF2.zero(self.max_degree)
        return PolyZTwisted(free, tors, self.max_degree)

    def is_zero(self) -> bool:
        return not self.free and not self.torsion

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyZTwisted):
            return NotImplemented
        return (self.free == other.free and self.torsion == other.torsion
                and self.max_degree == other.max_degree)

    def __hash__(self):
        return hash((frozenset(self.free.items()), self.torsion))

    def __str__(self) -> str:
        items = [(m.code, c) for m, c in self.free.items()] + [(c, 1) for c in self.torsion.codes]
        if not items:
            return "0"
        items.sort(key=lambda t: sort_key(t[0]), reverse=True)
        parts = []
        for code, c in items:
            mono = format_monomial(*decode(code))
            if c == 1:
                parts.append(mono)
            elif mono == "1":
                parts.append(str(c))
            else:
                parts.append(f"{c} {mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"PolyZTwisted({str(self)!r}, max_degree={self.max_degree})"


def bockstein(j: int, x: PolyF2) -> PolyZTwisted:
    """Twisted Bockstein beta_{Z(j)} on the mod-2 ring, monomial by monomial.

    A monomial whose twist matches j lifts integrally and maps to 0; any other
    monomial m maps to the 2-torsion class w*m.
    """
    md = x.max_degree
    shift = encode(1)
    tors = [c + shift for c in x.codes if code_twist(c) != j % 2]
    return PolyZTwisted({}, PolyF2(tors, md), md)


def reduce_mod2(x: PolyZTwisted) -> PolyF2:
    md = x.max_degree
    odd = [m for m, c in x.free.items() if c % 2]
    return PolyF2(odd, md) + x.torsion


def lucas(a: int, b: int) -> int:
    """binom(a, b) mod 2: 1 iff the binary digits of b are dominated by those of a."""
    if a < 0 or b < 0:
        return 0
    return 1 if (a & b) == b else 0
