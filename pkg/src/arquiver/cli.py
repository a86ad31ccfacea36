"""Command-line front end: arq roots|build|order|pairs|denom|dorey|verify."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import __version__, ar_quiver, orders, qaffine, verify
from . import root_system as rs
from .quiver import (
    DynkinQuiver,
    QuiverError,
    make_height_function,
    parse_arrow_spec,
    parse_xi_anchor,
)
from .root_system import CartanDatum, RootSystemError


class CliError(ValueError):
    pass


def _add_quiver_args(parser: argparse.ArgumentParser, need_arrows: bool = True):
    parser.add_argument("--type", dest="diagram_type", choices=("A", "D"), required=True)
    parser.add_argument("--rank", type=int, required=True)
    if need_arrows:
        parser.add_argument(
            "--arrows", required=True, help="directed edges, e.g. 2>1,3>2,2>4"
        )
        parser.add_argument(
            "--xi",
            default=None,
            help="height anchor vertex=value (default: last vertex = 0)",
        )


def _add_output_args(parser: argparse.ArgumentParser, formats=("ascii", "json")):
    parser.add_argument("--format", choices=formats, default="ascii")
    parser.add_argument("--out", default=None, help="write output to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arq",
        description="Auslander-Reiten quivers of type A/D: orders, pairs, "
        "denominators, Dorey predicates, exhaustive verification",
    )
    parser.add_argument("--version", action="version", version=f"arq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="list the positive roots")
    _add_quiver_args(p, need_arrows=False)
    _add_output_args(p)

    p = sub.add_parser("build", help="build and render Gamma_Q")
    _add_quiver_args(p)
    _add_output_args(p, formats=("ascii", "dot", "json"))

    p = sub.add_parser("order", help="one of the four canonical convex orders")
    _add_quiver_args(p)
    p.add_argument("--strategy", choices=("u1", "u2", "l1", "l2"), required=True)
    _add_output_args(p)

    p = sub.add_parser("pairs", help="classify the pairs of a positive root")
    _add_quiver_args(p)
    p.add_argument("--gamma", required=True, help="a root: [..], e1+e2, or <1,-4>")
    _add_output_args(p)

    p = sub.add_parser("denom", help="denominator polynomial zeros")
    p.add_argument("--family", choices=("D1", "D2"), required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-l", type=int, required=True)
    p.add_argument("--at", default=None, help='evaluate multiplicity at "(-q)^S"')
    _add_output_args(p)

    p = sub.add_parser("dorey", help="evaluate a Dorey-rule predicate")
    p.add_argument("--family", choices=("D1", "D2"), required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument(
        "--triple", required=True, help='levels and (-q)-exponents "(i,p);(j,p);(k,p)"'
    )
    _add_output_args(p)

    p = sub.add_parser("verify", help="run the exhaustive theorem harness")
    p.add_argument("--rank-max", type=int, default=4)
    p.add_argument(
        "--suite",
        choices=("structure", "orders", "qaffine", "all"),
        default="all",
    )
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", dest="json_out", default=None, help="write the report here")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as handle:
            handle.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _quiver_from_args(args) -> tuple[CartanDatum, DynkinQuiver, tuple[int, ...]]:
    datum = CartanDatum(args.diagram_type, args.rank)
    quiver = parse_arrow_spec(datum, args.arrows)
    if args.xi:
        vertex, value = parse_xi_anchor(args.xi)
    else:
        vertex, value = datum.rank, 0
    xi = make_height_function(quiver, vertex, value)
    return datum, quiver, xi


# --- ascii rendering of Gamma_Q -------------------------------------------------

def render_grid(ar: ar_quiver.ARQuiver) -> str:
    datum = ar.datum
    labels = {
        coord: rs.format_root(datum, root) for coord, root in ar.root_at.items()
    }
    width = max(len(s) for s in labels.values())
    p_values = sorted({p for (_, p) in ar.root_at})
    p_min = p_values[0]
    slot = width + 2  # a label column plus a two-character arrow gutter
    left = 7

    def x_of(p: int) -> int:
        return left + (p - p_min) * slot

    rows = 2 * datum.rank - 1
    cols = x_of(p_values[-1]) + width + 1
    canvas = [[" "] * cols for _ in range(rows)]

    def put(y: int, x: int, text: str):
        for k, ch in enumerate(text):
            if 0 <= x + k < cols:
                canvas[y][x + k] = ch

    for (i, p), label in labels.items():
        put(2 * (i - 1), x_of(p), label)
    for (i, p), (j, q) in sorted(ar.arrows):
        y0, y1 = 2 * (i - 1), 2 * (j - 1)
        x0 = x_of(p) + len(labels[(i, p)])
        x1 = x_of(q) - 1
        steps = abs(y1 - y0)
        for t in range(1, steps):
            y = y0 + t if y1 > y0 else y0 - t
            x = x0 + round(t * (x1 - x0) / steps)
            ch = "\\" if y1 > y0 else "/"
            if canvas[y][x] == " ":
                canvas[y][x] = ch

    header = " (i,p) " + "".join(str(p).center(slot) for p in p_values)
    lines = [header, "-" * len(header)]
    for i in datum.vertices:
        body = "".join(canvas[2 * (i - 1)]).rstrip()
        lines.append(f"{i:>4}   " + body[left:])
        if i < datum.rank:
            gutter = "".join(canvas[2 * i - 1]).rstrip()
            if gutter:
                lines.append("       " + gutter[left:])
    lines.append("")
    lines.append("xi = " + " ".join(f"{v}={x}" for v, x in zip(datum.vertices, ar.xi)))
    lines.append("m  = " + " ".join(f"{v}={x}" for v, x in zip(datum.vertices, ar.m)))
    return "\n".join(lines)


# --- spectral parameter parsing ----------------------------------------------------

_MQ_RE = re.compile(r"^\(-q\)\^\{?(-?\d+(?:/\d+)?)\}?$")
_MQ2_RE = re.compile(r"^\(-q\^?2\)\^\{?(-?\d+(?:/\d+)?)\}?$")


def parse_param(text: str) -> qaffine.SpectralParam:
    text = text.strip().replace(" ", "")
    m = _MQ_RE.match(text)
    if m:
        return qaffine.mq(Fraction(m.group(1)))
    m = _MQ2_RE.match(text)
    if m:
        return qaffine.mq2(Fraction(m.group(1)))
    raise CliError(f"cannot parse spectral parameter {text!r}")


def format_param(param: qaffine.SpectralParam) -> str:
    if param.p % 2 == 0 and qaffine.mq(Fraction(param.p, 2)) == param:
        exp = Fraction(param.p, 2)
        return f"(-q)^{exp}"
    if qaffine.mq2(Fraction(param.p, 4)) == param:
        return f"(-q^2)^{Fraction(param.p, 4)}"
    if qaffine.mq2(Fraction(param.p, 4)).negate() == param:
        return f"-(-q^2)^{Fraction(param.p, 4)}"
    shifted = param / qaffine.SQRT_MINUS_ONE
    if qaffine.mq2(Fraction(param.p, 4)) == shifted:
        return f"i*(-q^2)^{Fraction(param.p, 4)}"
    if qaffine.mq2(Fraction(param.p, 4)).negate() == shifted:
        return f"-i*(-q^2)^{Fraction(param.p, 4)}"
    return f"zeta8^{param.u} q^({param.p}/2)"


_TRIPLE_RE = re.compile(r"^\s*\(\s*(\d+)\s*,\s*(-?\d+)\s*\)\s*$")


def parse_triple(text: str) -> qaffine.HomTriple:
    chunks = text.split(";")
    if len(chunks) != 3:
        raise CliError('triple must look like "(i,p);(j,p);(k,p)"')
    parts = []
    for chunk in chunks:
        m = _TRIPLE_RE.match(chunk)
        if not m:
            raise CliError(f"cannot parse triple component {chunk!r}")
        parts.append((int(m.group(1)), qaffine.mq(int(m.group(2)))))
    (i, x), (j, y), (k, z) = parts
    return qaffine.HomTriple(i, x, j, y, k, z)


# --- subcommands ---------------------------------------------------------------------

def cmd_roots(args) -> int:
    datum = CartanDatum(args.diagram_type, args.rank)
    roots = sorted(rs.enumerate_positive_roots(datum), key=lambda r: (rs.ht(r), r))
    if args.format == "json":
        payload = []
        for root in roots:
            entry = {"coeffs": list(root), "ht": rs.ht(root), "mul": rs.mul(root)}
            if datum.diagram_type == "D":
                eps = rs.epsilon_form(datum, root)
                entry["eps"] = [eps.a, eps.b_signed]
            payload.append(entry)
        _emit(json.dumps(payload, indent=2), args.out)
        return 0
    lines = [f"{len(roots)} positive roots of type {datum.diagram_type}_{datum.rank}"]
    for root in roots:
        tag = (
            f"  {rs.epsilon_form(datum, root)}" if datum.diagram_type == "D" else ""
        )
        vec = "[" + ",".join(str(c) for c in root) + "]"
        lines.append(f"  {vec}{tag}  ht={rs.ht(root)} mul={rs.mul(root)}")
    _emit("\n".join(lines), args.out)
    return 0


def cmd_build(args) -> int:
    _, quiver, xi = _quiver_from_args(args)
    ar = ar_quiver.build(quiver, xi)
    if args.format == "json":
        _emit(ar.to_json(), args.out)
    elif args.format == "dot":
        _emit(ar.to_dot(), args.out)
    else:
        _emit(render_grid(ar), args.out)
    return 0


def cmd_order(args) -> int:
    datum, quiver, xi = _quiver_from_args(args)
    ar = ar_quiver.build(quiver, xi)
    order = orders.canonical_reading(ar, args.strategy.upper())
    if args.format == "json":
        payload = {
            "strategy": args.strategy.upper(),
            "word": list(order.word),
            "roots": [rs.format_root(datum, r) for r in order.roots],
            "coeffs": [list(r) for r in order.roots],
        }
        _emit(json.dumps(payload, indent=2), args.out)
        return 0
    sequence = " < ".join(rs.format_root(datum, r) for r in order.roots)
    word = " ".join(f"s{i}" for i in order.word)
    _emit(f"{sequence}\nword: {word}", args.out)
    return 0


def cmd_pairs(args) -> int:
    datum, quiver, xi = _quiver_from_args(args)
    ar = ar_quiver.build(quiver, xi)
    gamma = rs.parse_root(datum, args.gamma)
    if rs.ht(gamma) < 2:
        raise CliError("simple roots have no pairs")
    results = []
    for pair in orders.pairs_of(ar, gamma):
        results.append(orders.classify_pair(ar, gamma, pair))
    if args.format == "json":
        payload = []
        for pv in results:
            payload.append(
                {
                    "gamma": rs.format_root(datum, pv.gamma),
                    "alpha": rs.format_root(datum, pv.alpha),
                    "beta": rs.format_root(datum, pv.beta),
                    "verdict": pv.verdict.value,
                    "witness": (
                        [rs.format_root(datum, w) for w in pv.witness]
                        if pv.witness
                        else None
                    ),
                    "order_tag": pv.order_tag,
                }
            )
        _emit(json.dumps(payload, indent=2), args.out)
        return 0
    lines = [f"pairs of {rs.format_root(datum, gamma)}:"]
    for pv in results:
        extra = ""
        if pv.witness:
            a, b = pv.witness
            extra = (
                f"  dominated by ({rs.format_root(datum, a)}, {rs.format_root(datum, b)})"
            )
        elif pv.order_tag:
            extra = f"  minimal under {pv.order_tag}"
        lines.append(
            f"  ({rs.format_root(datum, pv.alpha)}, {rs.format_root(datum, pv.beta)})"
            f"  {pv.verdict.value}{extra}"
        )
    _emit("\n".join(lines), args.out)
    return 0


def cmd_denom(args) -> int:
    fn = qaffine.denom_D1 if args.family == "D1" else qaffine.denom_D2
    poly = fn(args.rank, args.k, args.l)
    at = parse_param(args.at) if args.at else None
    if args.format == "json":
        payload = {
            "family": args.family,
            "rank": args.rank,
            "k": args.k,
            "l": args.l,
            "factors": [{"u": r.u, "p": r.p} for r in poly.roots],
        }
        if at is not None:
            payload["at"] = {"u": at.u, "p": at.p}
            payload["multiplicity"] = poly.zero_multiplicity(at)
        _emit(json.dumps(payload, indent=2), args.out)
        return 0
    lines = [
        f"d_{{{args.k},{args.l}}} for {args.family} rank {args.rank}: "
        f"{len(poly.roots)} zeros"
    ]
    for root in poly.roots:
        lines.append(f"  z = {format_param(root)}")
    if at is not None:
        lines.append(f"multiplicity at {format_param(at)}: {poly.zero_multiplicity(at)}")
    _emit("\n".join(lines), args.out)
    return 0


def cmd_dorey(args) -> int:
    triple = parse_triple(args.triple)
    if args.family == "D1":
        verdict = qaffine.dorey_D1(args.rank, triple)
    else:
        verdict = qaffine.dorey_D2(args.rank, triple)
    if args.format == "json":
        payload = {
            "family": args.family,
            "rank": args.rank,
            "admissible": verdict.admissible,
            "case": verdict.case,
            "exhaustive": verdict.exhaustive,
        }
        _emit(json.dumps(payload, indent=2), args.out)
        return 0
    if verdict.admissible:
        note = "" if verdict.exhaustive else "  (one-way rule: no means unknown)"
        _emit(f"yes, case ({verdict.case}){note}", args.out)
    else:
        note = "" if verdict.exhaustive else "  (one-way rule: no means unknown)"
        _emit(f"no{note}", args.out)
    return 0


def cmd_verify(args) -> int:
    suites = None if args.suite == "all" else {args.suite}
    report = verify.run_suite(args.rank_max, suites=suites, parallelism=args.jobs)
    if args.json_out:
        with open(args.json_out, "w") as handle:
            handle.write(report.to_json())
    for record in report.failures():
        print(
            f"FAIL {record.check_id} rank={record.rank} "
            f"orientation={record.orientation}: {record.counterexample}",
            file=sys.stderr,
        )
    print(report.summary())
    return 0 if report.ok else 1


COMMANDS = {
    "roots": cmd_roots,
    "build": cmd_build,
    "order": cmd_order,
    "pairs": cmd_pairs,
    "denom": cmd_denom,
    "dorey": cmd_dorey,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (CliError, QuiverError, RootSystemError, qaffine.QAffineError,
            orders.OrderError, ar_quiver.ARQuiverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
