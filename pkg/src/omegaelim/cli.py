"""Command line front end.

    omegaelim eliminate "1/((1-x*l)*(1-y*l)*(1-z/l))"
    omegaelim classify  EXPR
    omegaelim trace     EXPR
    omegaelim verify    EXPR [CANDIDATE] --degree 6
    omegaelim catalog   [--full] [--id ID]

Exit status: 0 on success or PASS, 1 on FAIL, 2 on bad input or an engine
error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra import LaurentPolynomial, Monomial, VariableOrder, format_monomial
from .catalog import corpus, run_entry
from .elliott import ElliottError, ElliottRational, Factor, classify, factor_product
from .omega import MODES, EliminationStrategy, TraceLog, omega_eliminate_all, _eliminate
from .oracle import verify
from .parser import ParseError, parse


# --- emitters -----------------------------------------------------------------


def to_text(E: ElliottRational, expand: bool = False) -> str:
    if not expand or not E.factors:
        return E.format()
    den = factor_product(E.factors)
    return f"({E.numerator.format(E.order)})/({den.format(E.order)})"


def _int_pair(c) -> List[str]:
    c = Fraction(c)
    return [str(c.numerator), str(c.denominator)]


def to_json(E: ElliottRational) -> dict:
    order = E.order
    num = [_int_pair(c) + [dict(m.items())] for m, c in E.numerator.sorted_terms(order)]
    den = [
        {"coeff": _int_pair(f.coeff), "mono": dict(f.mono.items()), "mult": f.mult}
        for f in E.sorted_factors()
    ]
    return {"numerator": num, "denominator": den}


def from_json(data: dict, order: VariableOrder) -> ElliottRational:
    num = LaurentPolynomial(
        {Monomial(m): Fraction(int(n), int(d)) for n, d, m in data["numerator"]}
    )
    factors = [
        Factor(Fraction(int(f["coeff"][0]), int(f["coeff"][1])), Monomial(f["mono"]), int(f["mult"]))
        for f in data["denominator"]
    ]
    return ElliottRational(num, factors, order)


def _latex_var(v: str, order: VariableOrder) -> str:
    m = re.match(r"([A-Za-z]+)(\d*)$", v)
    name, sub = m.group(1), m.group(2)
    if order.is_lambda(v) and name == "l":
        name = r"\lambda"
    return f"{name}_{{{sub}}}" if sub else name


def _latex_coeff(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else rf"\frac{{{c.numerator}}}{{{c.denominator}}}"


def _latex_mono(m: Monomial, order: VariableOrder) -> str:
    parts = []
    for v, e in sorted(m.items(), key=lambda p: order.index(p[0])):
        s = _latex_var(v, order)
        parts.append(s if e == 1 else f"{s}^{{{e}}}")
    return " ".join(parts)


def _latex_poly(p: LaurentPolynomial, order: VariableOrder) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms(order)):
        neg = c < 0
        a = -c if neg else c
        if m.is_one():
            body = _latex_coeff(a)
        elif a == 1:
            body = _latex_mono(m, order)
        else:
            body = f"{_latex_coeff(a)} {_latex_mono(m, order)}"
        sign = ("-" if neg else "") if i == 0 else (" - " if neg else " + ")
        out.append(sign + body)
    return "".join(out)


def to_latex(E: ElliottRational) -> str:
    num = _latex_poly(E.numerator, E.order)
    if not E.factors:
        return num
    den = []
    for f in E.sorted_factors():
        body = _latex_poly(f.polynomial(), E.order)
        den.append(f"({body})" if f.mult == 1 else f"({body})^{{{f.mult}}}")
    return rf"\frac{{{num}}}{{{''.join(den)}}}"


def render(E: ElliottRational, fmt: str, expand: bool = False) -> str:
    if fmt == "json":
        return json.dumps(to_json(E), sort_keys=True)
    if fmt == "latex":
        return to_latex(E)
    return to_text(E, expand)


# --- commands -------------------------------------------------------------------


def _split(s: Optional[str]) -> Optional[List[str]]:
    if s is None:
        return None
    return [p for p in re.split(r"[,\s]+", s) if p]


def _read_expr(args, which: str = "expr") -> str:
    text = getattr(args, which)
    if text is None or text == "-":
        text = sys.stdin.read()
    text = text.strip()
    if not text:
        raise ParseError("empty expression")
    return text


def _parse_input(args) -> ElliottRational:
    return parse(_read_expr(args), _split(args.order), _split(args.lambdas))


def _strategy(args) -> EliminationStrategy:
    elim = args.elim_order
    order = None if elim in (None, "auto") else _split(elim)
    return EliminationStrategy(args.mode, order)


def cmd_eliminate(args, out) -> int:
    E = _parse_input(args)
    R, _ = omega_eliminate_all(E, _strategy(args))
    print(render(R, args.output, args.expand), file=out)
    return 0


def cmd_classify(args, out) -> int:
    E = _parse_input(args)
    rows = classify(E)
    if args.output == "json":
        data = [
            {
                "lambda": r.lam,
                "numerator_degrees": list(r.numerator_degrees),
                "contributing": [f.format(E.order) for f in r.contributing],
                "c_num": r.c_num,
                "dually_contributing": [f.format(E.order) for f in r.dually_contributing],
                "dc_num": r.dc_num,
            }
            for r in rows
        ]
        print(json.dumps(data, sort_keys=True), file=out)
        return 0
    table = [("lambda", "numerator degrees", "contributing", "C-Num", "dually contributing", "DC-Num")]
    for r in rows:
        lo, hi = r.numerator_degrees
        table.append((
            r.lam,
            f"{lo}..{hi}",
            " ".join(f.format(E.order) for f in r.contributing) or "-",
            str(r.c_num),
            " ".join(f.format(E.order) for f in r.dually_contributing) or "-",
            str(r.dc_num),
        ))
    widths = [max(len(row[i]) for row in table) for i in range(len(table[0]))]
    for row in table:
        print(" | ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip(), file=out)
    return 0


def format_trace(E: ElliottRational, trace: TraceLog, fmt: str = "text") -> str:
    lines = [f"input: {render(E, fmt)}"]
    for i, step in enumerate(trace, 1):
        label = {"direct": "contribution", "dual": "dual contribution"}.get(step.mode, step.mode)
        under = ", ".join(f.format(E.order) for f in step.underlined) or "-"
        lines.append(f"step {i}: eliminate {step.lam} by {label} [mode={step.mode}] "
                     f"(C-Num {step.c_num}, DC-Num {step.dc_num})")
        lines.append(f"  underlined: {under}")
        lines.append(f"  result: {render(step.result, fmt)}")
    return "\n".join(lines)


_STEP = re.compile(r"^step \d+: eliminate (\S+) by .* \[mode=(\w+)\]")


def parse_trace(text: str) -> List[Tuple[str, str]]:
    """``(lambda, mode)`` pairs recorded in a printed trace."""
    return [(m.group(1), m.group(2)) for m in map(_STEP.match, text.splitlines()) if m]


def replay_steps(E: ElliottRational, steps: Sequence[Tuple[str, str]]) -> ElliottRational:
    for lam, mode in steps:
        if mode != "none":
            E = _eliminate(E, lam, mode).result
    return E


def cmd_trace(args, out) -> int:
    E = _parse_input(args)
    _, trace = omega_eliminate_all(E, _strategy(args))
    fmt = "latex" if args.output == "latex" else "text"
    print(format_trace(E, trace, fmt), file=out)
    return 0


def cmd_verify(args, out) -> int:
    E = _parse_input(args)
    if args.candidate is not None:
        R = parse(args.candidate, E.order)
    else:
        R, _ = omega_eliminate_all(E, _strategy(args))
    res = verify(E, R, args.degree)
    if res:
        print(f"PASS (degree {res.degree})", file=out)
        return 0
    m, want, got = res.mismatch
    mono = format_monomial(m, E.order)
    print(f"FAIL (degree {res.degree}): coefficient of {mono} is {want} by definition, {got} from candidate",
          file=out)
    return 1


def cmd_catalog(args, out) -> int:
    entries = corpus(args.full)
    if args.id:
        entries = [e for e in entries if e.id in args.id]
        if not entries:
            raise ParseError(f"no catalog entry named {', '.join(args.id)}")
    failed = 0
    reports = []
    for e in entries:
        r = run_entry(e, args.degree)
        failed += not r.ok
        reports.append((e, r))
        if args.output != "json":
            status = "PASS" if r.ok else "FAIL"
            note = f"  {r.error}" if r.error else ""
            timing = f"  {r.seconds:.3f}s" if not args.no_times else ""
            print(f"{status}  {e.id:<28} {e.provenance}{timing}{note}", file=out)
    if args.output == "json":
        data = [
            {"id": e.id, "parameters": e.parameters, "provenance": e.provenance, "symbolic": r.symbolic,
             "oracle": r.oracle, "ok": r.ok, "seconds": None if args.no_times else round(r.seconds, 4),
             "error": r.error}
            for e, r in reports
        ]
        print(json.dumps(data, sort_keys=True), file=out)
    else:
        print(f"{len(entries) - failed}/{len(entries)} entries passed", file=out)
    return 1 if failed else 0


# --- argument handling -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", help="variable order, comma separated; lambdas are moved after the parameters")
    common.add_argument("--lambda", dest="lambdas", help="lambda variables (default: names starting with 'l')")
    common.add_argument("--elim-order", default="auto", help="'auto' or a comma separated lambda order")
    common.add_argument("--mode", choices=MODES, default="auto")
    common.add_argument("--degree", type=int, default=6, help="truncation degree for verify/catalog")
    common.add_argument("--output", choices=("text", "latex", "json"), default="text")
    common.add_argument("--expand", action="store_true", help="print the denominator expanded")

    p = argparse.ArgumentParser(prog="omegaelim", description="Evaluate MacMahon's Omega operator exactly.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("eliminate", "eliminate every lambda and print the result"),
        ("classify", "per-lambda table of contributing and dually contributing factors"),
        ("trace", "numbered elimination steps"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("expr", nargs="?", help="expression (read from stdin if omitted or '-')")
    sp = sub.add_parser("verify", parents=[common], help="compare against Omega applied to the truncated series")
    sp.add_argument("expr", nargs="?")
    sp.add_argument("candidate", nargs="?", help="closed form to check (default: the engine's result)")
    sp = sub.add_parser("catalog", parents=[common], help="run the built-in identity corpus")
    sp.add_argument("--full", action="store_true", help="widen every parameter sweep")
    sp.add_argument("--id", action="append", help="run only the named entry (repeatable)")
    sp.add_argument("--no-times", action="store_true", help="omit timings for reproducible output")
    return p


COMMANDS = {
    "eliminate": cmd_eliminate,
    "classify": cmd_classify,
    "trace": cmd_trace,
    "verify": cmd_verify,
    "catalog": cmd_catalog,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    p = build_parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return COMMANDS[args.command](args, out)
    except (ParseError, ElliottError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
