"""Membership prover for vanishing of powers of w, with checkable certificates.

To show w^e = 0 in dimension n it suffices to write w^(e-1) (mod 2) as a sum of

* relation generators (mod2 or beta_null), and
* monomials whose Bockstein into twist e vanishes: either their twist already
  matches e, or they are w^a P with w^(a+1) proven in dimension n - weight(P).

Certificates are plain JSON documents; :func:`verify_certificate` re-derives
every payload along a separate evaluation path.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Union

from .action import chi_sq_total_by_inversion
from .charclass import wu_formula
from .gring import Monomial, PolyF2, monomials_of_degree, product_in_degree
from .linalg import F2Basis, bits
from .relations import (RKL_CATALOG, RelationGenerator, chain_word, gen_chains, gen_f1,
                        gen_rkl_catalog)

Justifier = Callable[[Monomial], Union[dict, None]]


class DegreeMismatch(ValueError):
    pass


class VerificationError(ValueError):
    pass


@dataclass
class Certificate:
    dim: int
    target: PolyF2
    generators: list[RelationGenerator] = field(default_factory=list)
    monomials: list[tuple[Monomial, dict]] = field(default_factory=list)
    dependencies: list["Certificate"] = field(default_factory=list)
    exponent: int | None = None
    base: str | None = None

    def to_json(self) -> dict:
        doc = {
            "dim": self.dim,
            "exponent": self.exponent,
            "target": str(self.target),
            "base": self.base,
            "generators": [g.to_json() for g in self.generators],
            "monomials": [{"monomial": str(m), "justification": j} for m, j in self.monomials],
            "dependencies": [d.to_json() for d in self.dependencies],
        }
        doc["checksum"] = checksum(doc)
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


@dataclass
class NotFound:
    """No decomposition within the implemented families; not a proof of nonvanishing."""

    dim: int
    target: PolyF2
    rank: int
    columns: int
    residue: PolyF2
    exponent: int | None = None
    label: str = "inconclusive"

    @property
    def rank_deficit(self) -> int:
        return self.columns - self.rank

    def to_json(self) -> dict:
        return {"dim": self.dim, "exponent": self.exponent, "target": str(self.target),
                "status": self.label, "rank": self.rank, "columns": self.columns,
                "rank_deficit": self.rank_deficit, "residue": str(self.residue)}


def checksum(doc: Mapping) -> str:
    body = {k: v for k, v in doc.items() if k != "checksum"}
    canon = json.dumps(body, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def solve_membership(target: PolyF2, generators: Iterable[RelationGenerator],
                     allowed: Justifier | None = None, dim: int | None = None
                     ) -> Certificate | NotFound:
    """Express ``target`` as generator payloads plus monomials accepted by ``allowed``."""
    generators = [g for g in generators if g.payload]
    if dim is None:
        dim = generators[0].dim if generators else 0
    if not target:
        return Certificate(dim, target)
    if len(target.degrees()) != 1:
        raise DegreeMismatch("target must be homogeneous")
    d = target.degree
    for g in generators:
        if g.payload.degree != d:
            raise DegreeMismatch(f"generator {g.describe()} has degree {g.payload.degree}, target {d}")
    allowed = allowed or (lambda m: None)
    justification: dict[int, dict] = {}
    columns: list[int] = []
    for m in reversed(monomials_of_degree(d)):
        j = allowed(m)
        if j is None:
            columns.append(m.code)
        else:
            justification[m.code] = j
    index = {code: i for i, code in enumerate(reversed(columns))}

    def pack(p: PolyF2) -> int:
        row = 0
        for c in p.codes:
            i = index.get(c)
            if i is not None:
                row |= 1 << i
        return row

    basis = F2Basis()
    for g in generators:
        basis.add(pack(g.payload))
    combo, residue = basis.solve(pack(target))
    if combo is None:
        inv = {i: code for code, i in index.items()}
        res = PolyF2._raw((inv[i] for i in bits(residue)), target.max_degree)
        return NotFound(dim, target, basis.rank, len(columns), res)
    chosen = [generators[i] for i in bits(combo)]
    rest = target
    for g in chosen:
        rest = rest + g.payload.with_max_degree(target.max_degree)
    monos = [(m, justification[m.code]) for m in sorted(rest.terms, reverse=True)]
    return Certificate(dim, target, chosen, monos)


# -- orchestration -----------------------------------------------------

_memo: dict[tuple[int, int], Certificate | NotFound] = {}
_memo_lock = threading.RLock()


def base_case(n: int, e: int) -> str | None:
    if e > 2 * n:
        return "top-degree"
    if e == 2 * n and n % 2 == 0:
        return "even-top-degree"
    return None


def generator_pool(n: int, e: int) -> list[RelationGenerator]:
    d = e - 1
    return gen_f1(n, d) + gen_chains(n, d, j=e) + gen_rkl_catalog(n, d)


def prove_omega(n: int, e: int) -> Certificate | NotFound:
    """Try to certify w^e = 0 on every n-dimensional variety without real points."""
    if n < 0 or e < 0:
        raise ValueError("dimension and exponent must be non-negative")
    key = (n, e)
    with _memo_lock:
        hit = _memo.get(key)
    if hit is not None:
        return hit
    result = _prove(n, e)
    with _memo_lock:
        return _memo.setdefault(key, result)


def _prove(n: int, e: int) -> Certificate | NotFound:
    md = max(e - 1, 0)
    target = PolyF2.omega(md, e - 1) if e >= 1 else PolyF2.zero(0)
    rule = base_case(n, e)
    if rule is not None:
        return Certificate(n, target, exponent=e, base=rule)
    deps: dict[tuple[int, int], Certificate] = {}

    def allowed(m: Monomial) -> dict | None:
        if m.twist == e % 2:
            return {"rule": "twist_match", "twist": e % 2}
        sub = (n - m.weight, m.omega + 1)
        if m.weight >= 1 and sub[0] >= 0:
            cert = prove_omega(*sub)
            if isinstance(cert, Certificate):
                deps[sub] = cert
                return {"rule": "recursion", "dependency": list(sub)}
        return None

    result = solve_membership(target, generator_pool(n, e), allowed, dim=n)
    result.exponent = e
    if isinstance(result, Certificate):
        used = {tuple(j["dependency"]) for _, j in result.monomials if j["rule"] == "recursion"}
        result.dependencies = [deps[k] for k in sorted(used)]
    return result


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()


# -- independent verification -----------------------------------------

def _independent_right_word(n: int, x: PolyF2, word: Iterable[int]) -> PolyF2:
    md = x.max_degree
    v = wu_formula(n, md)
    for i in word:
        out = PolyF2.zero(md)
        for deg in x.degrees():
            out = out + product_in_degree(v, chi_sq_total_by_inversion(x.homogeneous(deg)), deg + i)
        x = out
    return x


def _check_params(n: int, kind: str, p: Mapping, x: Monomial) -> tuple[int, ...]:
    word = tuple(int(i) for i in p["word"])
    k, l = int(p["k"]), int(p["l"])
    if kind == "F1_single_sq":
        ok = word == (l,) and 0 <= k < l and x.degree == 2 * n - l - k
    elif kind == "F2_chain":
        ok = (k >= 1 and l >= 0 and word == chain_word(k, l)
              and x.degree == 2 * n - (2 << l) * k and x.twist == n % 2)
    elif kind == "RKL_catalog":
        ok = (any(word == c.word and l == c.l and (c.k is None or c.k == k) for c in RKL_CATALOG)
              and k >= 1 and x.degree == 2 * n - l - k and x.twist == n % 2)
    else:
        raise VerificationError(f"generator kind {kind!r} cannot appear in a certificate")
    if not ok:
        raise VerificationError(f"parameters {dict(p)} do not define a {kind} relation at n={n}")
    return word


def check_certificate(doc: Mapping, _depth_limit: int | None = None) -> None:
    """Raise :class:`VerificationError` describing the first defect found."""
    if doc.get("checksum") != checksum(doc):
        raise VerificationError("checksum mismatch")
    n, e = int(doc["dim"]), doc.get("exponent")
    if _depth_limit is not None and n >= _depth_limit:
        raise VerificationError("dependency dimension does not decrease")
    if e is None:
        target = PolyF2.parse(doc["target"], 255)
        md = max(target.degrees(), default=0)
        target = target.with_max_degree(md)
    else:
        e = int(e)
        md = max(e - 1, 0)
        target = PolyF2.parse(doc["target"], md)
        if target != (PolyF2.omega(md, e - 1) if e >= 1 else PolyF2.zero(0)):
            raise VerificationError(f"target {doc['target']!r} is not w^{e - 1}")
    if doc.get("base") is not None:
        if base_case(n, e) != doc["base"] or doc["generators"] or doc["monomials"]:
            raise VerificationError(f"base rule {doc['base']!r} does not apply to ({n}, {e})")
        return
    total = target
    for g in doc["generators"]:
        x = PolyF2.parse(g["params"]["x"], md)
        if len(x) != 1:
            raise VerificationError("generator source must be a single monomial")
        word = _check_params(n, g["kind"], g["params"], x.terms[0])
        payload = _independent_right_word(n, x, word)
        if payload != PolyF2.parse(g["payload"], md):
            raise VerificationError(f"payload of {g['params']} does not re-expand")
        total = total + payload
    listed = PolyF2.zero(md)
    deps = {(int(d["dim"]), int(d["exponent"])): d for d in doc["dependencies"]}
    for entry in doc["monomials"]:
        mp = PolyF2.parse(entry["monomial"], md)
        if len(mp) != 1:
            raise VerificationError(f"{entry['monomial']!r} is not a monomial")
        m = mp.terms[0]
        if m.code in listed.codes:
            raise VerificationError(f"monomial {m} listed twice")
        listed = listed + mp
        j = entry["justification"]
        if j.get("rule") == "twist_match":
            want = int(j["twist"]) if e is None else e % 2
            if m.twist != want or int(j["twist"]) != want:
                raise VerificationError(f"{m} has twist {m.twist}, not {want}")
        elif j.get("rule") == "recursion":
            sub = (n - m.weight, m.omega + 1)
            if m.weight < 1 or list(sub) != list(j["dependency"]) or sub not in deps:
                raise VerificationError(f"recursion for {m} lacks dependency {sub}")
        else:
            raise VerificationError(f"unknown justification {j!r}")
    if listed != total:
        raise VerificationError(f"decomposition leaves {total + listed}")
    for d in deps.values():
        check_certificate(d, _depth_limit=n)


def verify_certificate(c: Certificate | Mapping) -> bool:
    doc = c.to_json() if isinstance(c, Certificate) else c
    try:
        check_certificate(doc)
    except (VerificationError, KeyError, TypeError, ValueError):
        return False
    return True
