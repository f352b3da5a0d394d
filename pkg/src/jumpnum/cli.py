"""Command line interface: ``jn <command> <file> [options]``.

Everything is written to stdout as tab-separated lines.  Exit codes:
0 success, 1 negative answer under ``--strict``, 2 usage or input
errors, 3 internal inconsistency (criterion and oracle disagree).
"""
from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from typing import Iterable, Sequence

from . import contribution, jumping
from .divisors import Basis, Divisor, antinef_closure, convert
from .errors import (
    Inconsistency,
    InfeasibleSplit,
    JumpnumError,
    NonTermination,
    ParseError,
)
from .instance import canonical_text, load_instance
from .invariants import Side, lct, multiplier_divisor, lambda_table, xi_and_support

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


class UsageError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL.fullmatch(text):
        raise argparse.ArgumentTypeError(f"expected p/q or an integer, got {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise argparse.ArgumentTypeError("zero denominator")
    return Fraction(int(num), int(den) if den else 1)


def parse_int_list(text: str) -> list[int]:
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not re.fullmatch(r"[+-]?\d+", p) for p in parts):
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    return [int(p) for p in parts]


def fmt_q(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_set(vs: Iterable[int]) -> str:
    vs = sorted(vs)
    return ",".join(str(v) for v in vs) if vs else "-"


def fmt_vec(xs: Iterable) -> str:
    return ",".join(fmt_q(x) if isinstance(x, Fraction) else str(x) for x in xs)


def fmt_divisor(label: str, c, g: Divisor, bases=(Basis.E,)) -> list[str]:
    return [f"{label}\t{b.value}\t{fmt_vec(convert(c, g, b).coeffs)}" for b in bases]


def _require_positive(xi: Fraction) -> Fraction:
    if xi <= 0:
        raise UsageError(f"--xi must be positive, got {fmt_q(xi)}")
    return xi


def _vertex_list(r, vs: Sequence[int]) -> list[int]:
    bad = [v for v in vs if not 1 <= v <= r.n]
    if bad:
        raise UsageError(f"vertices {bad} outside 1..{r.n}")
    return list(vs)


# -- subcommands ----------------------------------------------------------------

def cmd_validate(args, inst, r):
    return [f"valid\ttrue", f"points\t{r.n}"], EXIT_OK


def cmd_info(args, inst, r):
    c = r.c
    g = c.graph
    xi, s = lct(r)
    out = [
        f"points\t{r.n}",
        "edges\t" + (",".join(f"{u}-{v}" for u, v in g.edges()) or "-"),
        f"weights\t{fmt_vec(g.weights)}",
        f"valences\t{fmt_vec(g.valences)}",
        f"rees\t{fmt_vec(r.rees)}",
    ]
    out += fmt_divisor("D", c, r.D, tuple(Basis))
    out += fmt_divisor("K", c, r.K, tuple(Basis))
    out += [f"lct\t{fmt_q(xi)}", f"lct_support\t{fmt_set(s)}"]
    return out, EXIT_OK


def cmd_lct(args, inst, r):
    xi, s = lct(r)
    return [f"lct\t{fmt_q(xi)}\tsupport\t{fmt_set(s)}"], EXIT_OK


def cmd_jumping(args, inst, r):
    if args.max <= 0:
        raise UsageError("--max must be positive")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    found = jumping.jumping_certificates(r, args.max, verify=args.verify, jobs=args.jobs)
    return ["xi\tsupport"] + [f"{fmt_q(xi)}\t{fmt_set(cert.support)}" for xi, cert in found], EXIT_OK


def cmd_check(args, inst, r):
    xi = _require_positive(args.xi)
    cert = jumping.criterion_is_jumping(r, xi)
    if args.verify:
        oracle = jumping.is_jumping_oracle(r, xi)
        if oracle != (cert is not None):
            raise Inconsistency(
                f"at xi = {fmt_q(xi)} the criterion says {cert is not None}, the oracle says {oracle}"
            )
    if cert is None:
        return ["jumping\tfalse\tsupport\t-"], EXIT_NEGATIVE if args.strict else EXIT_OK
    return [f"jumping\ttrue\tsupport\t{fmt_set(cert.support)}"], EXIT_OK


def cmd_support(args, inst, r):
    xi = _require_positive(args.xi)
    cert = jumping.criterion_is_jumping(r, xi)
    out = [f"xi\t{fmt_q(xi)}"]
    if cert is None:
        return out + ["jumping\tfalse"], EXIT_OK
    f = jumping.extend_to_antinef(r, cert)
    fxi, fs = xi_and_support(r, f)
    if fxi != xi:
        raise Inconsistency(f"extended divisor has xi {fmt_q(fxi)}, expected {fmt_q(xi)}")
    out += [
        "jumping\ttrue",
        f"support\t{fmt_set(cert.support)}",
        "assign\t" + ",".join(f"{v}:{cert.assign[v]}" for v in sorted(cert.assign)),
    ]
    out += fmt_divisor("divisor", r.c, f, (Basis.E, Basis.HAT))
    out += [f"divisor_support\t{fmt_set(fs)}", f"lambda\t{fmt_vec(lambda_table(r, f))}"]
    return out, EXIT_OK


def cmd_closure(args, inst, r):
    if len(args.divisor) != r.n:
        raise UsageError(f"--divisor needs {r.n} coefficients, got {len(args.divisor)}")
    g = Divisor(args.basis, tuple(args.divisor))
    f = antinef_closure(r.c, convert(r.c, g, Basis.E))
    out = fmt_divisor("input", r.c, g, (g.basis,))
    out += fmt_divisor("closure", r.c, f, (Basis.E, Basis.HAT))
    return out, EXIT_OK


def cmd_mult(args, inst, r):
    xi = _require_positive(args.xi)
    side = Side.LEFT if args.left else Side.AT
    f = multiplier_divisor(r, xi, side)
    out = [f"xi\t{fmt_q(xi)}", f"side\t{side.value}"]
    out += fmt_divisor("multiplier", r.c, f, (Basis.E, Basis.HAT))
    return out, EXIT_OK


def cmd_families(args, inst, r):
    (v,) = _vertex_list(r, [args.vertex])
    if args.count < 1:
        raise UsageError("--count must be positive")
    out = ["family\txi\tsupport"]
    if r.is_rees(v):
        for xi in jumping.rees_family(r, v, args.count):
            out.append(f"rees\t{fmt_q(xi)}\t{v}")
    if r.c.valence(v) + r.rees[v - 1] >= 3:
        out.append(f"star\t{fmt_q(jumping.star_value(r, v))}\t{v}")
    if len(out) == 1:
        print(f"jn: vertex {v} is neither a Rees vertex nor has valence + rees >= 3", file=sys.stderr)
    return out, EXIT_OK


def cmd_contrib(args, inst, r):
    xi = _require_positive(args.xi)
    vs = _vertex_list(r, args.divisor)
    contributes = contribution.contributes(r, xi, vs)
    critical = contribution.decide_critical(r, xi, vs, verify=args.verify)
    return [
        f"contributes\t{str(contributes).lower()}\tcritical\t{str(critical).lower()}"
    ], EXIT_OK


def cmd_canonicalize(args, inst, r):
    return canonical_text(inst.table, inst.rees).splitlines(), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jn", description="Jumping numbers of complete ideals from proximity data."
    )
    parser.add_argument(
        "--allow-nonminimal",
        action="store_true",
        help="accept constellations with a last point that carries no rees exponent",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="instance file, or - for stdin")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check that an instance file is well formed")
    add("info", cmd_info, "weights, D, K and the log canonical threshold")
    add("lct", cmd_lct, "log canonical threshold and its support")
    p = add("jumping", cmd_jumping, "all jumping numbers up to a bound")
    p.add_argument("--max", type=parse_rational, required=True)
    p.add_argument("--verify", action="store_true", help="cross-check every candidate with the oracle")
    p.add_argument("--jobs", type=int, default=1)
    p = add("check", cmd_check, "decide a single value")
    p.add_argument("--xi", type=parse_rational, required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--strict", action="store_true", help="exit 1 when xi is not a jumping number")
    p = add("support", cmd_support, "certificate and antinef divisor for a jumping number")
    p.add_argument("--xi", type=parse_rational, required=True)
    p = add("closure", cmd_closure, "antinef closure of a divisor")
    p.add_argument("--divisor", type=parse_int_list, required=True)
    p.add_argument("--basis", type=Basis.parse, default=Basis.E)
    p = add("mult", cmd_mult, "antinef divisor of a multiplier ideal")
    p.add_argument("--xi", type=parse_rational, required=True)
    p.add_argument("--left", action="store_true", help="use xi - epsilon")
    p = add("families", cmd_families, "jumping numbers supported at a single vertex")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--count", type=int, default=3)
    p = add("contrib", cmd_contrib, "(critical) contribution of a reduced divisor")
    p.add_argument("--xi", type=parse_rational, required=True)
    p.add_argument("--divisor", type=parse_int_list, required=True, help="vertices, e.g. 1,2,3")
    p.add_argument("--verify", action="store_true")
    add("canonicalize", cmd_canonicalize, "print the instance in canonical form")
    return parser


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        data = _read(args.file)
    except OSError as exc:
        print(f"jn: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        inst, r = load_instance(data, allow_nonminimal=args.allow_nonminimal)
    except ParseError as exc:
        print(f"jn: {args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        lines, code = args.func(args, inst, r)
    except (Inconsistency, InfeasibleSplit, NonTermination) as exc:
        print(f"jn: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, JumpnumError) as exc:
        print(f"jn: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write("".join(line + "\n" for line in lines))
    sys.stdout.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
