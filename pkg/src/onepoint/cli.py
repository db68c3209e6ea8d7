"""Command-line entry point: ``onepoint <subcommand> ...``.

Exit codes: 0 pass, 2 input error, 3 construction-check failure,
4 search failure, 5 certification failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

from . import formats
from .additive import additive_multiple
from .certify import abhyankar_checks
from .errors import (
    CertificationFailed,
    DegreeTooLarge,
    NonConstantLeadingCoeff,
    OnepointError,
    SearchFailed,
)
from .field import format_field_spec, is_prime, parse_field_spec
from .maps import abhyankar_map
from .pipeline import SearchPolicy, make_triple, run, verify_chain
from .poly import format_poly, parse_poly

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CHECK = 3
EXIT_SEARCH = 4
EXIT_CERT = 5


class InputError(Exception):
    """Bad arguments or unreadable input; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


class Output:
    """Collects text lines or a JSON object and prints one or the other."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.data = {"format_version": formats.FORMAT_VERSION}
        self.lines = [formats.HEADER]

    def line(self, text=""):
        self.lines.append(text)

    def put(self, **kw):
        self.data.update(kw)

    def emit(self, stream=None):
        stream = stream or sys.stdout
        if self.as_json:
            stream.write(json.dumps(self.data, sort_keys=True, indent=2) + "\n")
        else:
            stream.write("\n".join(self.lines) + "\n")


# -- subcommands ------------------------------------------------------------------

def cmd_additive(args, out: Output) -> int:
    F = parse_field_spec(args.field)
    if re.search(r"\bz\d+\b", args.polynomial):
        P = parse_poly(args.polynomial, F)
        names, main = None, args.main_var
        if main >= P.nvars:
            raise InputError(f"--main-var {main} but the polynomial has {P.nvars} variables")
    else:
        P = parse_poly(args.polynomial, F, names=("t",))
        names, main = ["t"], 0
    try:
        Q = additive_multiple(P, main)
    except (DegreeTooLarge, NonConstantLeadingCoeff) as exc:
        out.put(error=f"{type(exc).__name__}: {exc}")
        out.line(f"error: {type(exc).__name__}: {exc}")
        return EXIT_CHECK
    text = Q.format(names)
    r0 = format_poly(Q.r0, names)
    out.line(f"Q = {text}")
    out.line(f"degree: {F.p}^{Q.m} = {Q.degree}")
    out.line(f"r0 = {r0}")
    out.put(field=format_field_spec(F), input=format_poly(P, names), additive=text,
            degree=Q.degree, m=Q.m, r0=r0)
    return EXIT_OK


def cmd_abhyankar(args, out: Output) -> int:
    if args.n < 1:
        raise InputError("n must be at least 1")
    if not is_prime(args.p):
        raise InputError(f"{args.p} is not prime")
    g = abhyankar_map(args.n, args.p)
    polys = g.format()
    for i, text in enumerate(polys):
        out.line(f"g{i} = {text}")
    out.put(n=args.n, p=args.p, map=polys, degree=g.degree)
    if not args.verify:
        return EXIT_OK
    checks = abhyankar_checks(args.n, args.p)
    for r in checks:
        out.line(f"{'PASS' if r.passed else 'FAIL'} {r.name}")
    out.put(checks=[r.to_dict() for r in checks])
    return EXIT_OK if all(r.passed for r in checks) else EXIT_CHECK


def _report_chain(out: Output, chain, cert, seconds):
    degree = chain.composite.degree
    out.line(f"field history: {' -> '.join(format_field_spec(F) for F in chain.field_history)}")
    out.line(f"step degrees: {chain.degrees}")
    out.line(f"composite degree: {degree}")
    for i, w in enumerate(chain.user_composite().format()):
        out.line(f"w{i} = {w}")
    out.line(cert.to_text())
    out.put(field_history=[format_field_spec(F) for F in chain.field_history],
            step_degrees=chain.degrees, composite_degree=degree,
            composite=chain.user_composite().format(), certificate=cert.to_dict(),
            seconds=round(seconds, 3))


def _cover(triple, args, out: Output, out_path=None) -> int:
    policy = SearchPolicy(max_trials=args.max_trials, max_extensions=args.max_extensions)
    start = time.perf_counter()
    try:
        chain, cert = run(triple, seed=args.seed, policy=policy, fibers=args.fibers)
    except SearchFailed as exc:
        out.line(f"search failed over {', '.join(exc.fields)}")
        out.line("condition tally: " + ", ".join(f"{k}={v}" for k, v in sorted(exc.tally.items())))
        out.put(verdict="search failed", tally=exc.tally, fields=list(exc.fields))
        return EXIT_SEARCH
    except CertificationFailed as exc:
        cert = exc.record["certificate"]
        out.line(cert.to_text())
        out.put(verdict="fail", certificate=cert.to_dict())
        return EXIT_CERT
    except AssertionError as exc:
        out.line(f"construction check failed: {exc}")
        out.put(verdict="construction check failed", error=str(exc))
        return EXIT_CHECK
    _report_chain(out, chain, cert, time.perf_counter() - start)
    if out_path:
        formats.write_text(out_path, formats.dumps_chain(chain))
        out.line(f"chain written to {out_path}")
        out.put(chain_file=str(out_path))
    out.put(verdict="pass")
    return EXIT_OK


def cmd_cover(args, out: Output) -> int:
    spec = formats.read_triple(args.input)
    return _cover(spec.to_triple(), args, out, args.out)


def cmd_verify(args, out: Output) -> int:
    with open(args.chain, encoding="utf-8") as fh:
        text = fh.read()
    chain = formats.loads_chain(text)
    identical = formats.dumps_chain(chain) == text
    cert = verify_chain(chain, fibers=args.fibers, seed=args.seed)
    out.line(f"re-serialization: {'identical' if identical else 'differs'}")
    out.line(cert.to_text())
    out.put(verdict="pass" if cert.verdict else "fail", reserialization_identical=identical,
            certificate=cert.to_dict())
    return EXIT_OK if cert.verdict else EXIT_CERT


WORKED_EXAMPLE = (1, "2^4", "z0^2 + z0*z1 + z1^2", ("0", "1"))


def cmd_demo(args, out: Output) -> int:
    n, field, cone, point = WORKED_EXAMPLE
    F = parse_field_spec(field)
    P = parse_poly(cone, F, nvars=n + 1)
    out.line(f"input: n = {n}, field {field}, divisor V({cone}), point ({' : '.join(point)})")
    out.put(input={"n": n, "field": field, "cone": cone, "point": list(point)})
    triple = make_triple(n, F, P, [F(0), F(1)])
    return _cover(triple, args, out, args.out)


# -- argument parsing ---------------------------------------------------------------

def _add_search_flags(sp):
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-trials", type=int, default=SearchPolicy.max_trials)
    sp.add_argument("--max-extensions", type=int, default=SearchPolicy.max_extensions)
    sp.add_argument("--fibers", type=int, default=None, metavar="E",
                    help="sample fibers over the degree-E extension")
    sp.add_argument("--out", default=None, help="write the chain file here")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="onepoint", allow_abbrev=False,
                     description="Explicit étale covers of affine space, built and certified.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text, allow_abbrev=False)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    sp = add("additive", cmd_additive, "canonical additive multiple of a polynomial")
    sp.add_argument("field", help="field spec such as 2, 2^4 or 2^2;mod=t^2+t+1")
    sp.add_argument("polynomial", help="polynomial in t, or in z0, z1, ...")
    sp.add_argument("--main-var", type=int, default=0, help="index of the main z variable")

    sp = add("abhyankar", cmd_abhyankar, "print the Abhyankar map of P^n in characteristic p")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--verify", action="store_true", help="run the invariant checks")

    sp = add("cover", cmd_cover, "build and certify a cover from a triple file")
    sp.add_argument("--input", required=True)
    _add_search_flags(sp)

    sp = add("verify", cmd_verify, "re-certify a stored chain file from scratch")
    sp.add_argument("--chain", required=True)
    sp.add_argument("--fibers", type=int, default=None, metavar="E")
    sp.add_argument("--seed", type=int, default=0)

    sp = add("demo", cmd_demo, "run the built-in n = 1 example over F_16")
    _add_search_flags(sp)
    return parser


def main(argv=None) -> int:
    as_json = "--json" in (sys.argv[1:] if argv is None else argv)
    out = Output(as_json)
    try:
        args = build_parser().parse_args(argv)
        code = args.func(args, out)
    except (InputError, OnepointError, ValueError, OSError) as exc:
        out.put(error=f"{type(exc).__name__}: {exc}")
        out.line(f"error: {type(exc).__name__}: {exc}")
        out.emit(sys.stdout if as_json else sys.stderr)
        return EXIT_INPUT
    out.emit()
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
