"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 domain error (bad prime
power, wrong number of counts, budget), 3 verification failure.
Results go to stdout, diagnostics to stderr (or into the JSON envelope
with ``--json``).
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .bounds import deuring_report, hws_bound, serre_nq
from .errors import BudgetExceeded, DomainError, ParseError
from .finite_field import PrimePower
from .oracle import count_points, smoothness_probe
from .parse import parse_poly
from .report import Diagnostic, OutputEnvelope
from .survey import ec_survey
from .zeta import (
    BootstrapResult,
    bootstrap_basic,
    bootstrap_improved,
    subsequence_check,
    zeta_numerator,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3

GRAMMAR_HELP = """\
curve syntax: a homogeneous polynomial in x, y, z, e.g. "x^3*y + y^3*z + z^3*x".
  expr := ['+'|'-'] term (('+'|'-') term)*;  term := factor ('*' factor)*
  factor := integer | var ['^' integer];     var := x | y | z
Coefficients are reduced mod p; multiplication must be written with '*'."""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _range(text: str) -> tuple[int, int]:
    """'R' or inclusive 'R1..R2'."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected R or R1..R2, got {text!r}")
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or invalid range {text!r}")
    return lo, hi


def _prime_power(text: str) -> PrimePower:
    try:
        return PrimePower.of(int(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    flags = (
        ("--json", dict(action="store_true", help="emit the result envelope as JSON")),
        ("--budget", dict(type=int, help="cap on brute-force point evaluations (default 10^9)")),
        ("--quiet", dict(action="store_true", help="suppress info and warning diagnostics")),
        ("--strict", dict(action="store_true",
                          help="treat Weil-bound and integrality failures as verification failures")),
    )
    # subcommands repeat the global flags; SUPPRESS keeps them from clobbering the top level
    common = argparse.ArgumentParser(add_help=False)
    for name, kwargs in flags:
        common.add_argument(name, default=argparse.SUPPRESS, **kwargs)

    parser = _Parser(prog="curvezeta", description="Point counts of curves over finite fields.",
                     epilog=GRAMMAR_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=__version__)
    for name, kwargs in flags:
        parser.add_argument(name, **kwargs)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common], epilog=GRAMMAR_HELP,
                              formatter_class=argparse.RawDescriptionHelpFormatter)

    p = add("bootstrap", "extend N_1..N_g to N_1..N_k")
    p.add_argument("--q", type=_prime_power, required=True)
    p.add_argument("--counts", type=_int_list, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--basic", action="store_true", help="take N_1..N_2g and skip the functional equation")
    p.add_argument("--genus", type=int)

    p = add("zeta", "numerator P(T) of the zeta function")
    p.add_argument("--q", type=_prime_power, required=True)
    p.add_argument("--counts", type=_int_list, required=True)

    p = add("count", "brute-force point counts of a plane curve")
    p.add_argument("--p", type=_prime_power, required=True)
    p.add_argument("--curve", required=True)
    p.add_argument("--r", type=_range, default=(1, 1))
    p.add_argument("--workers", type=int, default=1)

    p = add("verify", "bootstrap from oracle counts and check against brute force")
    p.add_argument("--p", type=_prime_power, required=True)
    p.add_argument("--curve", required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--check-upto", type=int, help="last r verified by brute force (default min(k, 2g))")
    p.add_argument("--workers", type=int, default=1)

    p = add("ec-survey", "classify normal-form cubics over F_p and tabulate N_k")
    p.add_argument("--p", type=_prime_power, default=PrimePower(2, 1))
    p.add_argument("--k", type=int, default=20)

    p = add("deuring", "possible #E(F_q) for elliptic curves")
    p.add_argument("--q", type=_prime_power, required=True)

    p = add("serre", "maximal N_1 for genus g in {1, 2, 3}")
    p.add_argument("--q", type=_prime_power, required=True)
    p.add_argument("--g", type=int, required=True)

    p = add("hws", "Hasse-Weil-Serre bound q + 1 + g*floor(2 sqrt q)")
    p.add_argument("--q", type=_prime_power, required=True)
    p.add_argument("--g", type=int, required=True)

    p = add("subseq", "check that N_s, N_2s, ... bootstrap over q^s")
    p.add_argument("--q", type=_prime_power, required=True)
    p.add_argument("--counts", type=_int_list, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    return parser


# -- helpers --------------------------------------------------------------

def _fmt(x) -> str:
    return str(x) if not isinstance(x, Fraction) or x.denominator != 1 else str(x.numerator)


def _table(rows, headers) -> str:
    cells = [[str(h) for h in headers]] + [[_fmt(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _bootstrap_diagnostics(res: BootstrapResult) -> list[Diagnostic]:
    out = []
    if not res.numerator.integral:
        out.append(Diagnostic("warning", "NONINTEGRAL_C",
                              "P(T) has non-integral coefficients; the counts cannot come from a curve"))
    bad = [r for r, ok in enumerate(res.weil, 1) if not ok]
    if bad:
        out.append(Diagnostic("warning", "WEIL_FAIL",
                              f"|S_r| exceeds 2g q^(r/2) at r = {', '.join(map(str, bad))}"))
    if not res.counts.nonnegative:
        out.append(Diagnostic("warning", "NEGATIVE_COUNT", "some N_r is negative"))
    return out


def _bootstrap_payload(res: BootstrapResult) -> dict:
    return {
        "counts": list(res.counts),
        "numerator": list(res.numerator.c),
        "genus": res.numerator.g,
        "integral": res.integral,
        "weil_ok": res.weil_ok,
    }


def _bootstrap_text(res: BootstrapResult) -> str:
    rows = [(r, n) for r, n in enumerate(res.counts, 1)]
    return f"{_table(rows, ['r', 'N_r'])}\n\nP(T) = {res.numerator}"


# -- commands -------------------------------------------------------------

def cmd_bootstrap(args, env):
    env.inputs = {"q": args.q.q, "counts": args.counts, "k": args.k, "basic": args.basic, "genus": args.genus}
    if args.basic:
        if args.genus is None:
            raise UsageError("--basic requires --genus")
        res = bootstrap_basic(args.q, args.counts, args.genus, args.k)
        if not res.numerator.symmetric:
            env.diagnostics.append(Diagnostic(
                "warning", "FUNCTIONAL_EQUATION_FAIL", "c_{g+l} != q^l c_{g-l} for the supplied counts"))
    else:
        res = bootstrap_improved(args.q, args.counts, args.k, genus=args.genus)
    env.diagnostics += _bootstrap_diagnostics(res)
    env.result = _bootstrap_payload(res)
    return _bootstrap_text(res), not args.strict or (res.integral and res.weil_ok)


def cmd_zeta(args, env):
    env.inputs = {"q": args.q.q, "counts": args.counts}
    P = zeta_numerator(args.q, args.counts)
    if not P.integral:
        env.diagnostics.append(Diagnostic("warning", "NONINTEGRAL_C", "P(T) has non-integral coefficients"))
    env.result = {"genus": P.g, "coefficients": list(P.c), "integral": P.integral}
    rows = [(j, c) for j, c in enumerate(P.c)]
    return f"{_table(rows, ['j', 'c_j'])}\n\nP(T) = {P}", not args.strict or P.integral


def _parse_curve(args):
    if args.p.e != 1:
        raise DomainError(f"--p must be prime, got {args.p.q}")
    return parse_poly(args.curve, args.p.p)


def cmd_count(args, env):
    curve = _parse_curve(args)
    lo, hi = args.r
    env.inputs = {"p": args.p.p, "curve": curve.to_json(), "r": [lo, hi]}
    counts = [count_points(curve, r, budget=args.budget, workers=args.workers).count for r in range(lo, hi + 1)]
    env.result = {"counts": [{"r": r, "N": n} for r, n in zip(range(lo, hi + 1), counts)]}
    return _table(list(zip(range(lo, hi + 1), counts)), ["r", "N_r"]), True


def cmd_verify(args, env):
    curve = _parse_curve(args)
    g = args.genus
    if g < 1:
        raise DomainError("genus must be at least 1")
    upto = args.check_upto if args.check_upto is not None else min(args.k, 2 * g)
    env.inputs = {"p": args.p.p, "curve": curve.to_json(), "genus": g, "k": args.k, "check_upto": upto}

    seed = [count_points(curve, r, budget=args.budget, workers=args.workers).count for r in range(1, g + 1)]
    res = bootstrap_improved(args.p, seed, max(args.k, upto))
    env.diagnostics += _bootstrap_diagnostics(res)
    checks = []
    for r in range(g + 1, upto + 1):
        brute = count_points(curve, r, budget=args.budget, workers=args.workers).count
        checks.append({"r": r, "bootstrap": res.counts.at(r), "brute": brute, "match": brute == res.counts.at(r)})
    mismatches = [c["r"] for c in checks if not c["match"]]
    if mismatches:
        env.diagnostics.append(Diagnostic(
            "error", "ORACLE_MISMATCH",
            f"bootstrap disagrees with brute force at r = {', '.join(map(str, mismatches))} "
            "(check the genus and that the curve is smooth and absolutely irreducible)"))
    try:
        probe = smoothness_probe(curve, min(3, upto or 1), budget=args.budget)
        if probe.singular:
            env.diagnostics.append(Diagnostic("warning", "SINGULAR", f"curve is {probe}"))
    except BudgetExceeded:
        env.diagnostics.append(Diagnostic("info", "SMOOTHNESS_SKIPPED", "singularity search exceeds the budget"))

    counts = list(res.counts)[: args.k]
    env.result = {
        "seed": seed,
        "counts": counts,
        "numerator": list(res.numerator.c),
        "checks": checks,
        "verified": not mismatches,
    }
    rows = [(r, n, next((str(c["brute"]) for c in checks if c["r"] == r), "")) for r, n in enumerate(counts, 1)]
    text = _table(rows, ["r", "N_r", "brute"]) + f"\n\nP(T) = {res.numerator}"
    ok = not mismatches and (not args.strict or (res.integral and res.weil_ok))
    return text, ok


def cmd_ec_survey(args, env):
    if args.p.e != 1:
        raise DomainError(f"--p must be prime, got {args.p.q}")
    s = ec_survey(args.p.p, args.k, budget=args.budget)
    env.inputs = {"p": s.p, "k": s.k}
    env.diagnostics += s.diagnostics
    env.result = {
        "total": s.total,
        "nonsingular": s.nonsingular,
        "groups": {n: [{"a": list(E.a), "equation": str(E)} for E in Es] for n, Es in s.groups.items()},
        "serre_row": s.serre_row,
        "rows": s.rows,
        "maximal": {j: s.maximal(j) for j in range(1, s.k + 1)},
        "gaps": s.gaps(),
    }
    lines = [f"{s.nonsingular} of {s.total} normal-form cubics over F_{s.p} are nonsingular", ""]
    for n, Es in s.groups.items():
        lines.append(f"N_1 = {n} ({len(Es)}): " + "; ".join(map(str, Es)))
    lines.append("")
    gap_cols = {g["k"] for g in s.gaps()}
    best = {g["k"]: set(g["rows"]) for g in s.gaps()}
    for start in range(1, s.k + 1, 10):
        cols = range(start, min(s.k, start + 9) + 1)
        header = ["k"] + [str(j) for j in cols]
        rows = [["S"] + [f"{s.serre_row[j - 1]}{'!' if j in gap_cols else ''}" for j in cols]]
        for n, row in s.rows.items():
            cells = []
            for j in cols:
                mark = "*" if row[j - 1] == s.serre_row[j - 1] else "+" if n in best.get(j, ()) else ""
                cells.append(f"{row[j - 1]}{mark}")
            rows.append([f"N1={n}"] + cells)
        lines.append(_table(rows, header))
        lines.append("")
    lines.append("* maximal   ! no surveyed curve is maximal   + best surveyed value")
    return "\n".join(lines), True


def cmd_deuring(args, env):
    rep = deuring_report(args.q)
    env.inputs = {"q": args.q.q}
    env.result = {"m": rep.m, "offsets": list(rep.offsets), "cardinals": list(rep.cardinals)}
    return f"q={args.q.q} (m={rep.m}): {list(rep.cardinals)}", True


def cmd_serre(args, env):
    env.inputs = {"q": args.q.q, "g": args.g}
    value = serre_nq(args.q, args.g)
    if value is None:
        env.diagnostics.append(Diagnostic("info", "SERRE_UNKNOWN", f"N_{args.q.q}({args.g}) is not tabulated"))
    env.result = {"serre": value, "hws": hws_bound(args.q, args.g)}
    return f"N_{args.q.q}({args.g}) = {'unknown' if value is None else value}", True


def cmd_hws(args, env):
    env.inputs = {"q": args.q.q, "g": args.g}
    if args.g < 0:
        raise DomainError("genus must be nonnegative")
    value = hws_bound(args.q, args.g)
    env.result = {"hws": value}
    return str(value), True


def cmd_subseq(args, env):
    env.inputs = {"q": args.q.q, "counts": args.counts, "s": args.s, "k": args.k}
    ok = subsequence_check(args.q, args.counts, args.s, args.k)
    env.result = {"consistent": ok}
    if not ok:
        env.diagnostics.append(Diagnostic("error", "SUBSEQUENCE_FAIL",
                                          "counts over q^s disagree with the base sequence"))
    return "consistent" if ok else "INCONSISTENT", ok


COMMANDS = {
    "bootstrap": cmd_bootstrap,
    "zeta": cmd_zeta,
    "count": cmd_count,
    "verify": cmd_verify,
    "ec-survey": cmd_ec_survey,
    "deuring": cmd_deuring,
    "serre": cmd_serre,
    "hws": cmd_hws,
    "subseq": cmd_subseq,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"curvezeta: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_DOMAIN

    env = OutputEnvelope(args.command, {})
    try:
        text, ok = COMMANDS[args.command](args, env)
    except UsageError as exc:
        print(f"curvezeta: {exc}", file=stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"curvezeta: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_USAGE
    except (DomainError, ValueError) as exc:
        print(f"curvezeta: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_DOMAIN

    if args.json:
        print(env.dumps(), file=stdout)
    else:
        print(text, file=stdout)
        for d in env.diagnostics:
            if d.level == "error" or not args.quiet:
                print(f"{d.level}: {d.code}: {d.message}", file=stderr)
    return EXIT_OK if ok else EXIT_VERIFY


def main():
    sys.exit(run())
