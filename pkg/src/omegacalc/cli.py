"""Command-line front end: ``omegacalc <command> ...``.

Exit codes: 0 success, 1 failure or no certificate found, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import action, charclass, conseq, prover, relations, steenrod
from .config import Config, ConfigError, load_config
from .gring import PolyF2, PolyParseError
from .rightaction import TruncationOverflow, right_apply
from .selfcheck import CHECKS, run_selfcheck
from .steenrod import SteenrodElement, SteenrodParseError, TwistedElement

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def write_atomic(path: str, data: str) -> None:
    """Write to a sibling temp file, then rename over ``path``."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- commands ------------------------------------------------------------

def cmd_steenrod(args, cfg: Config) -> int:
    if args.op == "normalize":
        result = SteenrodElement.parse(args.expr)
    elif args.op == "product":
        if args.other is None:
            raise UsageError("product needs two expressions")
        result = SteenrodElement.parse(args.expr) * SteenrodElement.parse(args.other)
    elif args.op == "chi":
        result = steenrod.antipode(SteenrodElement.parse(args.expr))
    else:
        terms = steenrod.coproduct(SteenrodElement.parse(args.expr))
        text = steenrod.format_tensor(terms)
        _emit(args, {"result": text}, text)
        return EXIT_OK
    _emit(args, {"result": str(result)}, str(result))
    return EXIT_OK


def cmd_wu(args, cfg: Config) -> int:
    md = args.max_degree if args.max_degree is not None else cfg.max_degree
    ctx = charclass.WuContext.build(args.dim, md)
    parts = {k: str(ctx.v_k(k)) for k in range(md + 1)}
    lines = [f"v = {ctx.v}"] + [f"v_{k} = {p}" for k, p in parts.items()]
    _emit(args, {"dim": args.dim, "max_degree": md, "v": str(ctx.v), "components": parts},
          "\n".join(lines))
    return EXIT_OK


def cmd_nnk(args, cfg: Config) -> int:
    value = charclass.coeff_N(args.n, args.k)
    _emit(args, {"n": args.n, "k": args.k, "N": value}, str(value))
    return EXIT_OK


def cmd_todd(args, cfg: Config) -> int:
    t = charclass.todd_t(args.m)
    _emit(args, {"m": args.m, "t": str(t)}, str(t))
    return EXIT_OK


def cmd_rightact(args, cfg: Config) -> int:
    md = args.max_degree if args.max_degree is not None else cfg.max_degree
    x = PolyF2.parse(args.x, md)
    a = TwistedElement.parse(args.element)
    ctx = charclass.WuContext.build(args.dim, md)
    result = right_apply(ctx, x, a)
    _emit(args, {"dim": args.dim, "result": str(result)}, str(result))
    return EXIT_OK


def cmd_apply(args, cfg: Config) -> int:
    md = args.max_degree if args.max_degree is not None else cfg.max_degree
    result = action.apply(TwistedElement.parse(args.element), PolyF2.parse(args.x, md))
    _emit(args, {"result": str(result)}, str(result))
    return EXIT_OK


def cmd_verify(args, cfg: Config) -> int:
    corpus = relations.load_corpus(args.corpus or cfg.corpus_path)
    report = relations.verify_fixtures(corpus)
    failures = sum(not r["ok"] for r in report)
    lines = [f"{'PASS' if r['ok'] else 'FAIL'}  n={r['dim']}  {r['lhs']}"
             + ("" if r["ok"] else f"   diff: {r['diff']}") for r in report]
    lines.append(f"{len(report) - failures}/{len(report)} fixtures pass")
    _emit(args, {"results": report, "failures": failures}, "\n".join(lines))
    return EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_prove(args, cfg: Config) -> int:
    result = prover.prove_omega(args.dim, args.exponent)
    if isinstance(result, prover.NotFound):
        doc = result.to_json()
        _emit(args, doc, f"w^{args.exponent} at n={args.dim}: no certificate found "
              f"({result.label}); rank deficit {result.rank_deficit}, residue {result.residue}")
        return EXIT_FAIL
    doc = result.to_json()
    path = args.emit or cfg.certificate_path
    if path:
        write_atomic(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    gens = ", ".join(g.describe() for g in result.generators) or "none"
    text = (f"w^{args.exponent} = 0 in dimension {args.dim}"
            + (f" (base rule: {result.base})" if result.base else
               f"\n  generators: {gens}\n  monomials: "
               + ", ".join(f"{m} [{j['rule']}]" for m, j in result.monomials)))
    _emit(args, doc, text + (f"\n  certificate written to {path}" if path else ""))
    return EXIT_OK


def cmd_check(args, cfg: Config) -> int:
    try:
        with open(args.certificate) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read certificate: {exc}") from exc
    try:
        prover.check_certificate(doc)
        ok, reason = True, "certificate verified"
    except (prover.VerificationError, KeyError, TypeError, ValueError) as exc:
        ok, reason = False, f"certificate rejected: {exc}"
    _emit(args, {"valid": ok, "detail": reason}, reason)
    return EXIT_OK if ok else EXIT_FAIL


def _hypotheses(args) -> conseq.GeometricHypotheses:
    flags = [f for chunk in (args.flags or []) for f in chunk.split(",") if f]
    return conseq.GeometricHypotheses.from_flags(args.dim, flags, genus=args.genus)


def cmd_consequences(args, cfg: Config) -> int:
    if args.table == "quadric":
        value = conseq.quadric_omega_vanishes(args.n, args.e)
        _emit(args, {"n": args.n, "e": args.e, "vanishes": value},
              f"w^{args.e} {'vanishes' if value else 'does not vanish'} on the "
              f"anisotropic quadric of dimension {args.n}")
        return EXIT_OK
    h = _hypotheses(args)
    bound = conseq.coindex_bound(h) if args.table == "coindex" else conseq.level_bound(h)
    kind = "=" if bound.exact else "<="
    label = "coind" if args.table == "coindex" else "s"
    text = f"{label} {kind} {bound.value}  [{bound.citation}]" + (
        f"\n  note: {bound.note}" if bound.note else "")
    _emit(args, bound.to_json(), text)
    return EXIT_OK


def cmd_selfcheck(args, cfg: Config) -> int:
    report = run_selfcheck(args.inject_fault)
    lines = [f"{'PASS' if e['ok'] else 'FAIL'}  {e['name']}: {e['detail']}" for e in report["checks"]]
    lines.append(f"{report['passed']}/{report['total']} checks pass")
    if args.json or args.format == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        print("\n".join(lines))
    return EXIT_OK if report["failures"] == 0 else EXIT_FAIL


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="omegacalc",
                                description="Steenrod operations, Wu classes and w-power vanishing certificates.")
    p.add_argument("--config", help="JSON config file (default: $OMEGACALC_CONFIG)")
    p.add_argument("--format", choices=("text", "json"), default=None)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("steenrod", help="Steenrod algebra arithmetic")
    s.add_argument("op", choices=("normalize", "product", "chi", "coproduct"))
    s.add_argument("expr")
    s.add_argument("other", nargs="?")
    s.set_defaults(func=cmd_steenrod)

    s = sub.add_parser("wu", help="total Wu class v in dimension n")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--max-degree", type=int)
    s.set_defaults(func=cmd_wu)

    s = sub.add_parser("nnk", help="coefficient N(n, k)")
    s.add_argument("n", type=int)
    s.add_argument("k", type=int)
    s.set_defaults(func=cmd_nnk)

    s = sub.add_parser("todd", help="mod-2 Todd class t_m")
    s.add_argument("m", type=int)
    s.set_defaults(func=cmd_todd)

    s = sub.add_parser("rightact", help="right action (x)a in dimension n")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--max-degree", type=int)
    s.add_argument("x")
    s.add_argument("element")
    s.set_defaults(func=cmd_rightact)

    s = sub.add_parser("apply", help="left action a(x)")
    s.add_argument("--max-degree", type=int)
    s.add_argument("element")
    s.add_argument("x")
    s.set_defaults(func=cmd_apply)

    s = sub.add_parser("verify", help="check the identity corpus")
    s.add_argument("--corpus")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("prove", help="search for a certificate that w^e = 0")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--exponent", type=int, required=True)
    s.add_argument("--emit", help="write the certificate JSON here")
    s.set_defaults(func=cmd_prove)

    s = sub.add_parser("check", help="verify a certificate file")
    s.add_argument("certificate")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("consequences", help="quadric, coindex and level tables")
    tables = s.add_subparsers(dest="table", required=True)
    q = tables.add_parser("quadric")
    q.add_argument("n", type=int)
    q.add_argument("e", type=int)
    for name in ("coindex", "level"):
        t = tables.add_parser(name)
        t.add_argument("--dim", type=int, required=True)
        t.add_argument("--flags", nargs="*", default=[],
                       help="hypothesis flags, e.g. uniruled_over_C not-proper")
        t.add_argument("--genus", type=int)
    s.set_defaults(func=cmd_consequences)

    s = sub.add_parser("selfcheck", help="run the invariant suite")
    s.add_argument("--json", action="store_true")
    s.add_argument("--inject-fault", nargs="?", const="all", default=None,
                   choices=["all", *CHECKS], help="test mode: corrupt one check (default: all)")
    s.set_defaults(func=cmd_selfcheck)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.format is None:
            args.format = cfg.output_format
        return args.func(args, cfg)
    except (UsageError, ConfigError, PolyParseError, SteenrodParseError, relations.CorpusError,
            conseq.HypothesisError, TruncationOverflow) as exc:
        print(f"omegacalc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
