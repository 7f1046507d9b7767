"""Command-line front end.

Subcommands: nf, mul, comm, star, trace, certify, hh0, chphi, index,
localtrace, verify.  Expression arguments use the grammar documented in the
exprs module ('zb' spells the conjugate generator).  Exit status: 0 on
success, 1 when a verification suite fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import exprs
from .algebra import commutator, mul
from .hochschild import Certificate, check_certificate, hh0_report, reduce_certificate
from .index import FormPoly, index_form, local_trace_density
from .scalars import NonInvertibleError, SeriesDomainError
from .spherical import ExtractionError, ParityError, star
from .suites import SUITE_NAMES, Case, Report, RunConfig, run_suite
from .trace import ch_phi, phi


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dunkl",
        description="Exact computations in the rank-one symplectic reflection algebra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument(
            "--h2-zero", action="store_true", help="substitute h2 = 0 in the output"
        )

    p = sub.add_parser("nf", help="normal form of an expression")
    p.add_argument("expr")
    add_common(p)

    for name, help_text in (
        ("mul", "product of two expressions"),
        ("comm", "commutator of two expressions"),
        ("star", "star product of two invariant polynomials"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("lhs")
        p.add_argument("rhs")
        add_common(p)

    p = sub.add_parser("trace", help="trace of an invariant polynomial")
    p.add_argument("expr")
    add_common(p)

    p = sub.add_parser("certify", help="commutator certificate for an invariant monomial")
    p.add_argument("expr", nargs="?", help="monomial, e.g. 'z^2*zb^2'")
    p.add_argument("--check", metavar="FILE", help="replay a certificate JSON file instead")
    add_common(p)

    p = sub.add_parser("hh0", help="certify all invariant monomials up to a degree")
    p.add_argument("--degree", type=int, default=8)
    add_common(p)

    p = sub.add_parser("chphi", help="deformed character series coefficients")
    p.add_argument("--order", type=int, default=6)
    add_common(p)

    p = sub.add_parser("index", help="degree-(n-1) index form in curvature symbols")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rt", action="append", default=[], metavar="SYM",
                   help="tangent eigenvalue-pair symbol (repeat n-1 times; '0' for none)")
    p.add_argument("--theta", metavar="SYM", help="central curvature symbol")
    p.add_argument("--rn", metavar="SYM", help="normal curvature symbol")
    add_common(p)

    p = sub.add_parser("localtrace", help="fiberwise trace density in the local model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("expr")
    add_common(p)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", choices=SUITE_NAMES + ("all",), default="all")
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--h2-zero", action="store_true")
    p.add_argument("--inject-failure", action="store_true", help=argparse.SUPPRESS)
    return parser


def _emit_value(args, text_value: str, json_value) -> None:
    if args.format == "json":
        print(json.dumps(json_value, indent=2))
    else:
        print(text_value)


def _maybe_h2_zero(args, value):
    return value.subs_h2_zero() if getattr(args, "h2_zero", False) else value


def _run_command(args) -> int:
    if args.command == "nf":
        e = _maybe_h2_zero(args, exprs.parse_element(args.expr))
        _emit_value(args, exprs.element_to_text(e), e.to_json())
        return 0
    if args.command in ("mul", "comm"):
        a = exprs.parse_element(args.lhs)
        b = exprs.parse_element(args.rhs)
        e = mul(a, b) if args.command == "mul" else commutator(a, b)
        e = _maybe_h2_zero(args, e)
        _emit_value(args, exprs.element_to_text(e), e.to_json())
        return 0
    if args.command == "star":
        f = exprs.parse_invariant(args.lhs)
        g = exprs.parse_invariant(args.rhs)
        h = _maybe_h2_zero(args, star(f, g))
        _emit_value(args, exprs.invariant_to_text(h), h.to_json())
        return 0
    if args.command == "trace":
        f = exprs.parse_invariant(args.expr)
        value = _maybe_h2_zero(args, phi(f))
        _emit_value(args, exprs.scalar_to_text(value), value.to_json())
        return 0
    if args.command == "certify":
        if args.check:
            with open(args.check, "r", encoding="utf-8") as fh:
                cert = Certificate.from_json(fh.read())
            ok = check_certificate(cert)
            _emit_value(args, "ok" if ok else "FAIL", {"ok": ok})
            return 0 if ok else 1
        if not args.expr:
            print("certify: an expression or --check FILE is required", file=sys.stderr)
            return 2
        f = exprs.parse_invariant(args.expr)
        terms = list(f.terms())
        if len(terms) != 1 or not terms[0][1].is_one():
            raise exprs.EvalError("certify expects a single monomial like 'z^2*zb^2'")
        (p, q), _ = terms[0]
        cert = reduce_certificate(p, q)
        print(cert.to_json())
        return 0
    if args.command == "hh0":
        report = hh0_report(args.degree if args.degree % 2 == 0 else args.degree - 1)
        if args.format == "json":
            print(json.dumps(report.to_json_dict(), indent=2))
        else:
            for e in report.entries:
                mark = "ok  " if e.ok else "FAIL"
                print(f"{mark} [{e.monomial}] = ({e.scalar}) * [1]")
            print(f"{'all certified' if report.all_ok else 'FAILURES present'}")
        return 0 if report.all_ok else 1
    if args.command == "chphi":
        series = ch_phi(args.order)
        coeffs = [c.subs_h2_zero() if args.h2_zero else c for c in series.coeffs]
        if args.format == "json":
            print(json.dumps({str(k): c.to_json() for k, c in enumerate(coeffs)}, indent=2))
        else:
            for k, c in enumerate(coeffs):
                print(f"t^{k}: {exprs.scalar_to_text(c)}")
        return 0
    if args.command == "index":
        deg = 2 * (args.n - 1)
        rt = [
            None if s == "0" else FormPoly.symbol(s, deg) for s in args.rt
        ]
        if len(rt) < args.n - 1:
            rt += [None] * (args.n - 1 - len(rt))
        theta = FormPoly.symbol(args.theta, deg) if args.theta else None
        rn = FormPoly.symbol(args.rn, deg) if args.rn else None
        result = index_form(rt, theta, rn, args.n)
        result = _maybe_h2_zero(args, result)
        _emit_value(args, exprs.form_to_text(result), result.to_json())
        return 0
    if args.command == "localtrace":
        if args.n < 1:
            print("localtrace: --n must be at least 1", file=sys.stderr)
            return 2
        F = exprs.eval_local(exprs.parse(args.expr), args.n - 1)
        density = _maybe_h2_zero(args, local_trace_density(F))
        _emit_value(args, exprs.local_to_text(density), _local_json(density))
        return 0
    if args.command == "verify":
        cfg = RunConfig(
            fmt=args.format,
            degree=args.degree,
            order=args.order,
            seed=args.seed,
            jobs=args.jobs,
            h2_zero=args.h2_zero,
        )
        report = run_suite(args.suite, cfg)
        if args.inject_failure and report.cases:
            first = report.cases[0]
            report = Report(
                suite=report.suite,
                cases=[Case(first.id, False, first.expected + " (injected)", first.actual)]
                + report.cases[1:],
                wall_ms=report.wall_ms,
                config=report.config,
            )
        print(report.to_json() if args.format == "json" else report.to_text())
        return 0 if report.ok else 1
    raise AssertionError(f"unhandled command {args.command}")


def _local_json(le) -> list:
    out = []
    for (base, p, q, eps), c in le.terms():
        out.append(
            {
                "base": {f"{'p' if v % 2 == 0 else 'q'}{v // 2 + 1}": e for v, e in base},
                "z": p,
                "zb": q,
                "g": eps,
                "coeff": c.to_json(),
            }
        )
    return out


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2
    try:
        return _run_command(args)
    except (
        exprs.ParseError,
        exprs.EvalError,
        ParityError,
        ExtractionError,
        NonInvertibleError,
        SeriesDomainError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
