"""Command line interface: print polynomials, verify identities, report on finite modules.

Exit codes: 0 success, 1 verification or structural failure, 2 usage or sector error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .finite import SectorError, module_report
from .identities import DEFAULT_DIGITS, REGISTRY, SUITES, run_suite, summarize, verify
from .macdonald import macdonald_e, rogers_p, spherical_epsilon
from .polyrep import Mode
from .scalars import QTScalar

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

POLY_FAMILIES = {"e": macdonald_e, "epsilon": spherical_epsilon, "rogers": rogers_p}
HALF_INTEGER = re.compile(r"^-?\d+(/2)?$")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- argument types


def half_integer(text: str) -> Fraction:
    """An integer or a half-integer written a/2; decimals are rejected."""
    if not HALF_INTEGER.match(text.strip()):
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer or a/2 (write -1/2, not -0.5)")
    return Fraction(text.strip())


def rational(text: str) -> Fraction:
    """A decimal or fraction, read exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None


def sign(text: str) -> int:
    if text not in ("+", "-"):
        raise argparse.ArgumentTypeError("sign must be + or -")
    return 1 if text == "+" else -1


# ---------------------------------------------------------------- formatting


def _power(name: str, e: Fraction) -> str:
    if e == 1:
        return name
    return f"{name}^{e}" if e.denominator == 1 else f"{name}^({e})"


def _qt_monomial(exps) -> str:
    """u^a v^b written in q = u^4 and t = v^2."""
    a, b = (list(map(int, exps)) + [0, 0])[:2]
    parts = []
    if a:
        parts.append(_power("q", Fraction(a, 4)))
    if b:
        parts.append(_power("t", Fraction(b, 2)))
    return "*".join(parts)


def format_qt_poly(p) -> str:
    out = ""
    for exps, c in p.terms():
        c = int(c)
        mono = _qt_monomial(exps)
        mag = abs(c)
        body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out or "0"


def _single_term(p) -> bool:
    return len(list(p.terms())) <= 1


def format_scalar(x) -> str:
    """A coefficient as a reduced fraction of polynomials in q^(1/4) and t^(1/2)."""
    if not isinstance(x, QTScalar):
        return str(x)
    num = format_qt_poly(x.num)
    if x.den.is_one():
        return num
    den = format_qt_poly(x.den)
    num = num if _single_term(x.num) else f"({num})"
    den = den if _single_term(x.den) and "*" not in den else f"({den})"
    return f"{num}/{den}"


def _x_power(m: int) -> str:
    return "X" if m == 1 else f"X^{m}"


def format_laurent(f) -> str:
    """Descending X-exponents; unit coefficients are omitted."""
    pieces = []
    for m in sorted(f.terms, reverse=True):
        c = f.terms[m]
        s = format_scalar(c)
        if m == 0:
            pieces.append(s)
            continue
        if s == "1":
            pieces.append(_x_power(m))
        elif s == "-1":
            pieces.append("-" + _x_power(m))
        else:
            wrap = (" " in s or "/" in s) and not (s.startswith("(") and s.endswith(")") and s.count("(") == 1)
            pieces.append(f"({s})*{_x_power(m)}" if wrap else f"{s}*{_x_power(m)}")
    if not pieces:
        return "0"
    out = pieces[0]
    for p in pieces[1:]:
        out += " - " + p[1:] if p.startswith("-") and not p.startswith("-(") else " + " + p
    return out


# ---------------------------------------------------------------- commands


def cmd_poly(args) -> int:
    mode = Mode.formal() if args.k is None else Mode.at_k(args.k)
    fn = POLY_FAMILIES[args.family]
    if args.family == "rogers" and args.n < 0:
        raise UsageError("Rogers polynomials are indexed by n >= 0")
    f = fn(args.n, mode)
    text = format_laurent(f)
    if args.format == "json":
        doc = {"family": args.family, "n": args.n, "mode": str(mode), "polynomial": text,
               "terms": [[m, format_scalar(f.terms[m])] for m in sorted(f.terms, reverse=True)]}
        _emit(json.dumps(doc, indent=2, sort_keys=True), args.out, doc)
    else:
        _emit(text, args.out, None)
    return EXIT_OK


VERIFY_PARAMS = ("k", "N", "m", "n", "s", "order", "digits", "side", "family", "variant", "q", "kreal", "omega")


def _verify_params(args) -> dict:
    params = {key: getattr(args, key) for key in VERIFY_PARAMS if getattr(args, key) is not None}
    if args.sign_half is not None:
        params["sign"] = args.sign_half
    return params


def _params_text(params: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in params.items())


def _report_text(r, detail: bool, timing: bool) -> list:
    head = f"{r.outcome:<16} {r.id}  {_params_text(r.params)}"
    if timing:
        head += f"  ({r.millis:.1f} ms)"
    lines = [head]
    if detail:
        for c in r.checks:
            lines.append(f"    [{'ok' if c['ok'] else 'FAIL'}] {c['label']}")
        for name, val in (r.values or {}).items():
            lines.append(f"    {name} = {val}")
    if r.witness is not None:
        lines.append(f"    witness: {json.dumps(r.witness, sort_keys=True)}")
    return lines


def cmd_verify(args) -> int:
    timing = not args.no_timing
    if args.target in SUITES:
        config = {}
        if args.order is not None:
            config["order"] = args.order
        if args.N is not None:
            config["Nmax"] = args.N
        reports = run_suite(args.target, **config)
        summary = summarize(args.target, reports, timing)
        if args.format == "json":
            _emit(json.dumps(summary, indent=2, sort_keys=True), args.out, summary)
        else:
            lines = [line for r in reports for line in _report_text(r, False, timing)]
            lines.append(f"suite {args.target}: total {summary['total']}, verified {summary['verified']}, "
                         f"zero-case {summary['zero_case']}, mismatch {summary['mismatch']}, "
                         f"sector-violation {summary['sector_violation']}, degenerate {summary['degenerate']}")
            _emit("\n".join(lines), args.out, summary)
        return EXIT_FAIL if summary["mismatch"] else EXIT_OK
    if args.target not in REGISTRY:
        raise UsageError(f"unknown identity or suite {args.target!r}; try 'dahagauss list'")
    report = verify(args.target, _verify_params(args), perturb=args.perturb)
    doc = report.to_json(timing)
    if args.format == "json":
        _emit(json.dumps(doc, indent=2, sort_keys=True), args.out, doc)
    else:
        _emit("\n".join(_report_text(report, True, timing)), args.out, doc)
    if report.outcome == "sector-violation":
        return EXIT_USAGE
    return EXIT_FAIL if report.outcome == "mismatch" else EXIT_OK


def _module_text(rep: dict) -> str:
    lines = [f"module {rep['variant']} ({rep['module']}) N={rep['N']} k={rep['k']} sign_half={rep['sign_half']:+d}",
             f"  dim {rep['dim']} (expected {rep['expected_dim']})",
             f"  points: {', '.join(rep['points'])}",
             f"  labels: {', '.join(map(str, rep['labels']))}",
             f"  Y-spectrum: {', '.join(rep['y_spectrum'])}",
             f"  T-eigenspace dims: {rep['t_eigenspace_dims'][0]} (t^1/2), {rep['t_eigenspace_dims'][1]} (-t^-1/2)"]
    for name, ok in rep["relations"].items():
        lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}")
    lines.append(f"  [{'ok' if rep['unitary'] else 'FAIL'}] generators unitary for the form")
    lines.append(f"  [{'ok' if rep['weights_positive'] else 'FAIL'}] weights positive")
    if rep["irreducible"]:
        lines.append("  irreducible (simple Y-spectrum, strongly connected generator graph)")
    elif len(rep["components"]) > 1:
        lines.append(f"  decomposes into {len(rep['components'])} components of dims "
                     + ", ".join(map(str, rep["components"])))
    else:
        lines.append("  [FAIL] irreducibility certificate")
    for name, ok in rep["fourier"].items():
        lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}")
    lines.append("structural checks: " + ("all hold" if not rep["failures"] else "FAILED " + "; ".join(rep["failures"])))
    return "\n".join(lines)


def cmd_module(args) -> int:
    try:
        rep = module_report(args.N, args.k, args.variant, args.sign_half, args.digits)
    except SectorError as exc:
        print(f"sector violation: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        _emit(json.dumps(rep, indent=2, sort_keys=True), args.out, rep)
    else:
        _emit(_module_text(rep), args.out, rep)
    return EXIT_FAIL if rep["failures"] else EXIT_OK


def cmd_list(args) -> int:
    lines = [f"suites: {', '.join(SUITES)}"]
    for id in sorted(REGISTRY):
        spec = REGISTRY[id]
        lines.append(f"{id:<34} [{spec.mode}] {spec.summary}")
    print("\n".join(lines))
    return EXIT_OK


def _emit(text: str, out: str | None, doc) -> None:
    """Print text; with --out also write the JSON document to that file."""
    print(text)
    if out:
        with open(out, "w") as fh:
            json.dump(doc if doc is not None else {"text": text}, fh, indent=2, sort_keys=True)
            fh.write("\n")


# ---------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _output_flags(p):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="also write the JSON report to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dahagauss", description="Exact DAHA polynomials, finite modules and Gaussian identities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("poly", help="print e_n, epsilon_n or the Rogers polynomial p_n")
    p.add_argument("family", choices=sorted(POLY_FAMILIES))
    p.add_argument("n", type=int)
    p.add_argument("--k", type=half_integer, help="specialize t = q^k (default: formal q, t)")
    _output_flags(p)
    p.set_defaults(run=cmd_poly)

    v = sub.add_parser("verify", help="verify one identity or a suite")
    v.add_argument("target", help="identity id or suite name (" + ", ".join(SUITES) + ")")
    v.add_argument("--k", type=half_integer)
    v.add_argument("--N", type=int)
    v.add_argument("--m", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--s", type=int)
    v.add_argument("--order", type=rational, help="q-order of series comparisons")
    v.add_argument("--digits", type=int, help=f"decimal digits for numeric checks (default {DEFAULT_DIGITS})")
    v.add_argument("--sign-half", type=sign, help="sign of q^(1/2) = +-exp(pi i/N)")
    v.add_argument("--side", choices=("circ", "bullet", "both"))
    v.add_argument("--family", choices=("p", "eps"))
    v.add_argument("--variant")
    v.add_argument("--q", type=rational, help="real q for numeric identities")
    v.add_argument("--real-k", dest="kreal", type=rational, help="real k for numeric identities")
    v.add_argument("--omega", type=rational)
    v.add_argument("--perturb", action="store_true", help="perturb every right-hand side (must then mismatch)")
    v.add_argument("--no-timing", action="store_true", help="omit timings, for byte-identical output")
    _output_flags(v)
    v.set_defaults(run=cmd_verify)

    m = sub.add_parser("module", help="report on a finite module at q = exp(2 pi i/N)")
    m.add_argument("--N", type=int, required=True)
    m.add_argument("--k", type=half_integer, required=True)
    m.add_argument("--variant", default="prime",
                   help="prime, even, prime-special, bowtie_prime, bowtie_double_prime, "
                        "bar_double_prime_halfint, bar_prime, bar_rearranged")
    m.add_argument("--sign-half", type=sign)
    m.add_argument("--digits", type=int, default=30)
    _output_flags(m)
    m.set_defaults(run=cmd_module)

    ls = sub.add_parser("list", help="list identity ids and suites")
    ls.set_defaults(run=cmd_list)
    return parser


def _join_negative_values(argv: list) -> list:
    """Rewrite "--k -3/2" as "--k=-3/2"; argparse would read -3/2 as an option."""
    out = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and re.match(r"^-\d", tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.run(args)
    except (UsageError, KeyError, ValueError) as exc:
        print(f"dahagauss: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
