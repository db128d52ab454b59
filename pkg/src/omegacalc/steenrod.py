"""The mod-2 Steenrod algebra in the admissible basis, and its twisted form.

A word ``(i1, ..., ir)`` stands for Sq^i1 ... Sq^ir; the empty word is the unit.
A :class:`SteenrodElement` is an F2-linear combination of admissible words.
A :class:`TwistedElement` lives in H*(G, Z/2) (x) A, i.e. sums of ``w^a Sq^I``,
multiplied with the twisted product b a . b' a' = sum b a'(1)(b') (x) a(2) a'.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable

from .gring import lucas

Word = tuple[int, ...]


class SteenrodParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


def is_admissible(word: Word) -> bool:
    return all(word[j] >= 2 * word[j + 1] for j in range(len(word) - 1))


def word_degree(word: Word) -> int:
    return sum(word)


def _strip(word: Iterable[int]) -> Word:
    word = tuple(word)
    if any(i < 0 for i in word):
        raise ValueError(f"negative Steenrod square in {word}")
    return tuple(i for i in word if i)


@lru_cache(maxsize=None)
def _normalize(word: Word) -> frozenset[Word]:
    for j in range(len(word) - 1):
        a, b = word[j], word[j + 1]
        if a < 2 * b:
            break
    else:
        return frozenset({word})
    head, tail = word[:j], word[j + 2:]
    out: set[Word] = set()
    # Adem: Sq^a Sq^b = sum_c binom(b-c-1, a-2c) Sq^(a+b-c) Sq^c  for a < 2b
    for c in range(a // 2 + 1):
        if lucas(b - c - 1, a - 2 * c):
            mid = (a + b - c, c) if c else (a + b - c,)
            out ^= _normalize(head + mid + tail)
    return frozenset(out)


class SteenrodElement:
    """F2 combination of admissible Sq-words."""

    __slots__ = ("words",)

    def __init__(self, words: Iterable[Word] = ()):
        acc: set[Word] = set()
        for w in words:
            acc ^= _normalize(_strip(w))
        self.words: frozenset[Word] = frozenset(acc)

    @classmethod
    def _raw(cls, words: Iterable[Word]) -> "SteenrodElement":
        e = cls.__new__(cls)
        e.words = frozenset(words)
        return e

    @classmethod
    def unit(cls) -> "SteenrodElement":
        return cls._raw({()})

    @classmethod
    def sq(cls, *indices: int) -> "SteenrodElement":
        return cls([indices])

    @classmethod
    def parse(cls, text: str) -> "SteenrodElement":
        t = TwistedElement.parse(text)
        if any(a for a, _ in t.terms):
            raise SteenrodParseError("w-coefficients are not allowed here", text, text.find("w"))
        return cls._raw(w for _, w in t.terms)

    def degrees(self) -> list[int]:
        return sorted({sum(w) for w in self.words})

    def homogeneous(self, degree: int) -> "SteenrodElement":
        return SteenrodElement._raw(w for w in self.words if sum(w) == degree)

    def __add__(self, other: "SteenrodElement") -> "SteenrodElement":
        return SteenrodElement._raw(self.words ^ other.words)

    def __mul__(self, other: "SteenrodElement") -> "SteenrodElement":
        return product(self, other)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.words
        if not isinstance(other, SteenrodElement):
            return NotImplemented
        return self.words == other.words

    def __hash__(self):
        return hash(self.words)

    def __bool__(self) -> bool:
        return bool(self.words)

    def __iter__(self):
        return iter(sorted(self.words, key=_word_key, reverse=True))

    def __str__(self) -> str:
        if not self.words:
            return "0"
        return " + ".join(format_word(w) for w in self)

    def __repr__(self) -> str:
        return f"SteenrodElement({str(self)!r})"


def _word_key(word: Word):
    return (sum(word), word)


def format_word(word: Word) -> str:
    return " ".join(f"Sq{i}" for i in word) if word else "1"


def adem_normalize(word: Iterable[int]) -> SteenrodElement:
    """Rewrite a word into the admissible basis using the Adem relations."""
    return SteenrodElement._raw(_normalize(_strip(word)))


def product(a: SteenrodElement, b: SteenrodElement) -> SteenrodElement:
    acc: set[Word] = set()
    for x in a.words:
        for y in b.words:
            acc ^= _normalize(x + y)
    return SteenrodElement._raw(acc)


# -- coproduct ---------------------------------------------------------

Tensor = frozenset  # frozenset of (Word, Word) pairs, both admissible


def _tensor_mul(s: Tensor, t: Tensor) -> Tensor:
    acc: set[tuple[Word, Word]] = set()
    for a1, a2 in s:
        for b1, b2 in t:
            for l in _normalize(a1 + b1):
                for r in _normalize(a2 + b2):
                    acc ^= {(l, r)}
    return frozenset(acc)


@lru_cache(maxsize=None)
def _coproduct_word(word: Word) -> Tensor:
    result: Tensor = frozenset({((), ())})
    for i in word:
        gen = frozenset(((j,) if j else (), (i - j,) if i - j else ()) for j in range(i + 1))
        result = _tensor_mul(result, gen)
    return result


def coproduct(a: SteenrodElement) -> frozenset[tuple[Word, Word]]:
    """psi(a) as a set of pairs (left word, right word) with coefficient 1."""
    acc: set[tuple[Word, Word]] = set()
    for w in a.words:
        acc ^= _coproduct_word(w)
    return frozenset(acc)


def format_tensor(t: Iterable[tuple[Word, Word]]) -> str:
    items = sorted(t, key=lambda p: (_word_key(p[0]), _word_key(p[1])), reverse=True)
    if not items:
        return "0"
    return " + ".join(f"{format_word(l)} (x) {format_word(r)}" for l, r in items)


# -- antipode ----------------------------------------------------------

@lru_cache(maxsize=None)
def _chi_sq(n: int) -> frozenset[Word]:
    # sum_{i+j=n} chi(Sq^i) Sq^j = 0 for n > 0
    if n == 0:
        return frozenset({()})
    acc: set[Word] = set()
    for i in range(n):
        for w in _chi_sq(i):
            acc ^= _normalize(w + (n - i,))
    return frozenset(acc)


@lru_cache(maxsize=None)
def _chi_word(word: Word) -> frozenset[Word]:
    result = SteenrodElement.unit()
    for i in reversed(word):
        result = product(result, SteenrodElement._raw(_chi_sq(i)))
    return result.words


def antipode(a: SteenrodElement) -> SteenrodElement:
    """chi(a): the anti-automorphism with chi(Sq) Sq = 1."""
    acc: set[Word] = set()
    for w in a.words:
        acc ^= _chi_word(w)
    return SteenrodElement._raw(acc)


# -- twisted algebra ---------------------------------------------------

TwistedTerm = tuple[int, Word]


def _act_on_omega_power(word: Word, k: int) -> int | None:
    """Sq^I(w^k) = binom-coefficient * w^(k+|I|); returns the exponent or None for 0."""
    for i in reversed(word):
        if not lucas(k, i):
            return None
        k += i
    return k


class TwistedElement:
    """F2 combination of ``w^a Sq^I`` with admissible I."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[TwistedTerm] = ()):
        acc: set[TwistedTerm] = set()
        for a, w in terms:
            if a < 0:
                raise ValueError("negative w-exponent")
            acc ^= {(a, x) for x in _normalize(_strip(w))}
        self.terms: frozenset[TwistedTerm] = frozenset(acc)

    @classmethod
    def _raw(cls, terms: Iterable[TwistedTerm]) -> "TwistedElement":
        e = cls.__new__(cls)
        e.terms = frozenset(terms)
        return e

    @classmethod
    def unit(cls) -> "TwistedElement":
        return cls._raw({(0, ())})

    @classmethod
    def omega(cls, power: int = 1) -> "TwistedElement":
        return cls._raw({(power, ())})

    @classmethod
    def from_steenrod(cls, a: SteenrodElement, omega_power: int = 0) -> "TwistedElement":
        return cls._raw((omega_power, w) for w in a.words)

    @classmethod
    def parse(cls, text: str) -> "TwistedElement":
        return cls(parse_terms(text))

    def degrees(self) -> list[int]:
        return sorted({a + sum(w) for a, w in self.terms})

    def __add__(self, other: "TwistedElement") -> "TwistedElement":
        return TwistedElement._raw(self.terms ^ other.terms)

    def __mul__(self, other: "TwistedElement") -> "TwistedElement":
        return twisted_product(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwistedElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms, key=lambda t: (t[0] + sum(t[1]), t[0], t[1]), reverse=True))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a, w in self:
            prefix = "" if a == 0 else ("w" if a == 1 else f"w^{a}")
            if prefix and w:
                parts.append(f"{prefix} {format_word(w)}")
            else:
                parts.append(prefix or format_word(w))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TwistedElement({str(self)!r})"


def twisted_product(x: TwistedElement, y: TwistedElement) -> TwistedElement:
    acc: set[TwistedTerm] = set()
    for b, a in x.terms:
        psi = _coproduct_word(a)
        for b2, a2 in y.terms:
            for left, right in psi:
                k = _act_on_omega_power(left, b2)
                if k is None:
                    continue
                for w in _normalize(right + a2):
                    acc ^= {(b + k, w)}
    return TwistedElement._raw(acc)


def twisted_antipode(x: TwistedElement) -> TwistedElement:
    """chi on the twisted algebra: chi(w^b a) = chi(a) w^b, with chi(w) = w."""
    acc: set[TwistedTerm] = set()
    for b, a in x.terms:
        left = TwistedElement._raw((0, w) for w in _chi_word(a))
        acc ^= twisted_product(left, TwistedElement.omega(b)).terms
    return TwistedElement._raw(acc)


_ELEM_TOKEN = re.compile(r"\s*(?:(?P<plus>\+)|(?P<sq>Sq\^?(?P<i>\d+))|"
                         r"(?P<w>w(?:\s*\^\s*(?P<e>\d+))?)|(?P<num>\d+)|(?P<star>[*·]))")


def parse_terms(text: str) -> list[TwistedTerm]:
    """Parse ``"Sq4 Sq2 + w^2 Sq1"``; ``1`` is the unit and ``0`` the zero element."""
    stripped = text.strip()
    if not stripped:
        raise SteenrodParseError("empty element", text, 0)
    if stripped == "0":
        return []
    out: list[TwistedTerm] = []
    omega, word, coeff, have = 0, [], 1, False
    pos = 0
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _ELEM_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SteenrodParseError("unexpected input", text, pos + len(text[pos:]) - len(text[pos:].lstrip()))
        if m.group("plus"):
            if not have:
                raise SteenrodParseError("expected a term", text, m.start("plus"))
            if coeff % 2:
                out.append((omega, tuple(word)))
            omega, word, coeff, have = 0, [], 1, False
        elif m.group("sq"):
            word.append(int(m.group("i")))
            have = True
        elif m.group("w"):
            if word:
                raise SteenrodParseError("w must precede the Sq-word", text, m.start("w"))
            omega += int(m.group("e")) if m.group("e") else 1
            have = True
        elif m.group("num"):
            coeff *= int(m.group("num"))
            have = True
        pos = m.end()
    if not have:
        raise SteenrodParseError("expected a term", text, len(text))
    if coeff % 2:
        out.append((omega, tuple(word)))
    return out
