"""Command line interface: expand | analyze | cascade | verify | batch.

Exit codes are a stable contract:
  0  periodic classification / agreement / plain success
  1  usage errors (including cascade on a periodic block)
  2  parse or precision errors
  3  aperiodic classification (analyze)
  4  oracle mismatch (verify)
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from .analysis import (Aperiodic, Classification, DEFAULT_DEPTH,
                       DEFAULT_PRECISION, PeriodAnalysis, Periodic2L,
                       PeriodicL, analyze, cascade, classify)
from .cf import PeriodicCF, convergents, normalize_period, quad_irrational_of
from .errors import (EmptyInput, KronseqError, NonPositiveQuotient,
                     NotAperiodic, NoPeriodFound, OracleMismatch, ParseError,
                     PrecisionExhausted, WindowTooShort)
from .oracle import PeriodReport, cross_check
from .symbols import STAR, jacobi_sequence, kronecker_sequence, reciprocal_jacobi_sequence

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_APERIODIC = 3
EXIT_MISMATCH = 4

PRECISION_ENV = "KRONSEQ_PRECISION"


def parse_block(text: str) -> tuple[int, ...]:
    """Parse block notation: comma-separated positive integers, with
    optional surrounding brackets."""
    s = text.strip()
    if not s:
        raise ParseError("empty block", position=0)
    base = text.index(s)
    if s.startswith("[") and s.endswith("]"):
        base += 1
        s = s[1:-1]
    if not s.strip():
        raise ParseError("empty block", position=base)
    out = []
    pos = 0
    for chunk in s.split(","):
        token = chunk.strip()
        at = base + pos + (chunk.index(token) if token else 0)
        if not token.isdigit() or int(token) < 1:
            raise ParseError(f"expected a positive integer at position {at}",
                             position=at)
        out.append(int(token))
        pos += len(chunk) + 1
    return tuple(out)


@dataclass(frozen=True)
class ConvergentDetail:
    k: int
    s: int
    t: int
    v2_t: int


@dataclass(frozen=True)
class AnalysisReport:
    block: tuple[int, ...]
    reduced: bool
    quad: tuple[int, int, int]
    analysis: PeriodAnalysis
    critical: tuple[ConvergentDetail, ...]
    subcritical: tuple[ConvergentDetail, ...]
    classification: Classification
    oracle: PeriodReport | None = None


def _v2(n):
    return (n & -n).bit_length() - 1 if n else 0


def build_report(block, precision=DEFAULT_PRECISION, window=None) -> AnalysisReport:
    cf = normalize_period(block)
    analysis = analyze(cf, precision)
    verdict = classify(cf, precision)
    q = quad_irrational_of(cf)
    pairs = convergents(cf, analysis.period)
    detail = lambda k: ConvergentDetail(k, pairs[k].s, pairs[k].t, _v2(pairs[k].t))
    oracle = cross_check(cf, window=window, precision=precision) if window else None
    return AnalysisReport(
        block=cf.quotients,
        reduced=cf.reduced,
        quad=(q.P, q.D, q.Q),
        analysis=analysis,
        critical=tuple(detail(k) for k in analysis.critical_indices),
        subcritical=tuple(detail(k) for k in analysis.subcritical_indices),
        classification=verdict,
        oracle=oracle,
    )


# ---------------------------------------------------------------------------
# serialization

def sym_str(v):
    if v == STAR:
        return "*"
    return "+1" if v == 1 else "-1"


def _classification_to_dict(c: Classification):
    if isinstance(c, PeriodicL):
        return {"kind": "periodic-L", "period": c.period}
    if isinstance(c, Periodic2L):
        return {"kind": "periodic-2L", "period": c.period, "witness": c.witness}
    return {"kind": "aperiodic", "first_critical": c.first_critical,
            "cascade": [[k, r] for k, r in c.cascade]}


def _classification_from_dict(d) -> Classification:
    if d["kind"] == "periodic-L":
        return PeriodicL(period=d["period"])
    if d["kind"] == "periodic-2L":
        return Periodic2L(period=d["period"], witness=d["witness"])
    return Aperiodic(first_critical=d["first_critical"],
                     cascade=tuple((k, r) for k, r in d["cascade"]))


def report_to_dict(rep: AnalysisReport) -> dict:
    a = rep.analysis
    d = {
        "block": list(rep.block),
        "l": len(rep.block),
        "reduced": rep.reduced,
        "quad": {"P": str(rep.quad[0]), "D": str(rep.quad[1]), "Q": str(rep.quad[2])},
        "L": a.period,
        "m": a.m,
        "e": a.e,
        "U": [[str(x) for x in row] for row in a.U],
        "precision": a.precision,
        "certified": a.certified,
        "critical": [_detail_to_dict(c) for c in rep.critical],
        "subcritical": [_detail_to_dict(c) for c in rep.subcritical],
        "classification": _classification_to_dict(rep.classification),
        "oracle": _oracle_to_dict(rep.oracle),
    }
    return d


def _detail_to_dict(c: ConvergentDetail):
    return {"k": c.k, "s": str(c.s), "t": str(c.t), "v2_t": c.v2_t}


def _detail_from_dict(d):
    return ConvergentDetail(d["k"], int(d["s"]), int(d["t"]), d["v2_t"])


def _oracle_to_dict(o: PeriodReport | None):
    if o is None:
        return None
    return {
        "window": o.window_length,
        "empirical_period": o.empirical_period,
        "falsified": [[p, [i, j]] for p, (i, j) in o.falsified_periods],
        "agreement": o.verdict_agreement,
    }


def _oracle_from_dict(d):
    if d is None:
        return None
    return PeriodReport(
        window_length=d["window"],
        empirical_period=d["empirical_period"],
        falsified_periods=tuple((p, (i, j)) for p, (i, j) in d["falsified"]),
        verdict_agreement=d["agreement"],
    )


def report_from_dict(d: dict) -> AnalysisReport:
    analysis = PeriodAnalysis(
        period=d["L"],
        m=d["m"],
        U=tuple(tuple(int(x) for x in row) for row in d["U"]),
        e=d["e"],
        critical_indices=tuple(c["k"] for c in d["critical"]),
        subcritical_indices=tuple(c["k"] for c in d["subcritical"]),
        precision=d["precision"],
        certified=d["certified"],
    )
    return AnalysisReport(
        block=tuple(d["block"]),
        reduced=d["reduced"],
        quad=(int(d["quad"]["P"]), int(d["quad"]["D"]), int(d["quad"]["Q"])),
        analysis=analysis,
        critical=tuple(_detail_from_dict(c) for c in d["critical"]),
        subcritical=tuple(_detail_from_dict(c) for c in d["subcritical"]),
        classification=_classification_from_dict(d["classification"]),
        oracle=_oracle_from_dict(d["oracle"]),
    )


def report_to_json(rep: AnalysisReport) -> str:
    return json.dumps(report_to_dict(rep), sort_keys=True, separators=(",", ":"))


def report_from_json(text: str) -> AnalysisReport:
    return report_from_dict(json.loads(text))


def _classification_text(c: Classification):
    if isinstance(c, PeriodicL):
        return f"purely periodic, period {c.period}"
    if isinstance(c, Periodic2L):
        return f"purely periodic, period {c.period} (doubled), witness k={c.witness}"
    steps = " ".join(f"({k},{r})" for k, r in c.cascade)
    return f"aperiodic, first critical k={c.first_critical}; cascade {steps}"


def _details_text(items):
    if not items:
        return "(none)"
    return "; ".join(f"k={c.k}: s={c.s}, t={c.t}, v2(t)={c.v2_t}" for c in items)


def report_to_text(rep: AnalysisReport) -> str:
    a = rep.analysis
    u16 = [[x % 16 for x in row] for row in a.U]
    lines = [
        f"block            [{','.join(map(str, rep.block))}]  (length {len(rep.block)})",
        f"value            ({rep.quad[0]} + sqrt({rep.quad[1]})) / {rep.quad[2]}",
        f"L                {a.period}  (certified Jacobi period: {'yes' if a.certified else 'no'})",
        f"m                {a.m}",
        f"e                {'infinite' if a.e is None else a.e}",
        f"u                {a.u}  (mod 2^{a.precision})",
        f"U mod 16         {u16}",
        f"critical         {_details_text(rep.critical)}",
        f"subcritical      {_details_text(rep.subcritical)}",
        f"classification   {_classification_text(rep.classification)}",
    ]
    if rep.reduced:
        lines.insert(1, "note             input block was reduced to its minimal period")
    if rep.oracle:
        o = rep.oracle
        lines.append(f"oracle           window {o.window_length}, empirical period "
                     f"{o.empirical_period}, agreement {o.verdict_agreement}")
    return "\n".join(lines)


def report_to_csv(rep: AnalysisReport) -> str:
    a = rep.analysis
    c = rep.classification
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["block", "l", "P", "D", "Q", "L", "m", "e", "u", "certified",
                "classification", "period", "witness", "first_critical",
                "critical", "subcritical", "cascade"])
    w.writerow([
        " ".join(map(str, rep.block)), len(rep.block),
        rep.quad[0], rep.quad[1], rep.quad[2],
        a.period, a.m, "" if a.e is None else a.e, a.u, a.certified,
        _classification_to_dict(c)["kind"],
        getattr(c, "period", ""),
        getattr(c, "witness", ""),
        getattr(c, "first_critical", ""),
        " ".join(str(d.k) for d in rep.critical),
        " ".join(str(d.k) for d in rep.subcritical),
        " ".join(f"{k}:{r}" for k, r in getattr(c, "cascade", ())),
    ])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommands

def _emit(text, output):
    if output and output != "-":
        with open(output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _read_block_arg(arg):
    if arg == "-":
        arg = sys.stdin.read()
    return parse_block(arg)


def cmd_expand(args) -> int:
    block = _read_block_arg(args.block)
    cf = normalize_period(block)
    n = args.count
    rows = []
    convs = convergents(cf, n)
    jac = jacobi_sequence(cf, n)
    rec = reciprocal_jacobi_sequence(cf, n)
    kro = kronecker_sequence(cf, n)
    for k in range(n):
        rows.append((k, convs[k].s, convs[k].t,
                     sym_str(jac[k]), sym_str(rec[k]), sym_str(kro[k])))
    header = ("k", "s", "t", "jacobi", "reciprocal_jacobi", "kronecker")
    if args.format == "json":
        data = [{"k": k, "s": str(s), "t": str(t), "jacobi": j,
                 "reciprocal_jacobi": r, "kronecker": q}
                for k, s, t, j, r, q in rows]
        payload = {"block": list(cf.quotients), "count": n, "rows": data}
        _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")), args.output)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(header)
        w.writerows(rows)
        _emit(buf.getvalue(), args.output)
    else:
        widths = [max(len(str(r[i])) for r in rows + [header]) for i in range(6)]
        lines = ["  ".join(str(v).rjust(widths[i]) for i, v in enumerate(header))]
        for r in rows:
            lines.append("  ".join(str(v).rjust(widths[i]) for i, v in enumerate(r)))
        _emit("\n".join(lines), args.output)
    return EXIT_OK


def cmd_analyze(args) -> int:
    block = _read_block_arg(args.block)
    rep = build_report(block, precision=args.precision, window=args.window)
    if args.format == "json":
        _emit(report_to_json(rep), args.output)
    elif args.format == "csv":
        _emit(report_to_csv(rep), args.output)
    else:
        _emit(report_to_text(rep), args.output)
    return EXIT_APERIODIC if isinstance(rep.classification, Aperiodic) else EXIT_OK


def cmd_cascade(args) -> int:
    block = _read_block_arg(args.block)
    cf = normalize_period(block)
    verdict = classify(cf, args.precision, depth=args.depth)
    if not isinstance(verdict, Aperiodic):
        raise NotAperiodic(f"{cf} has a periodic Kronecker sequence; no cascade")
    period = analyze(cf, args.precision).period
    steps = verdict.cascade
    if args.format == "json":
        payload = {
            "block": list(cf.quotients), "L": period,
            "cascade": [{"j": j + 1, "k": k, "r": r,
                         "falsified_period_multiple": (1 << (r + 1)) * period}
                        for j, (k, r) in enumerate(steps)],
        }
        _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")), args.output)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["j", "k", "r", "falsified_period_multiple"])
        for j, (k, r) in enumerate(steps):
            w.writerow([j + 1, k, r, (1 << (r + 1)) * period])
        _emit(buf.getvalue(), args.output)
    else:
        lines = [f"base period L = {period}"]
        for j, (k, r) in enumerate(steps):
            lines.append(f"j={j + 1}: k={k}, r={r}, falsifies periods dividing "
                         f"2^{r + 1}*L = {(1 << (r + 1)) * period}")
        _emit("\n".join(lines), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    block = _read_block_arg(args.block)
    cf = normalize_period(block)
    report = cross_check(cf, window=args.window, max_period=args.max_period,
                         precision=args.precision)
    if args.format == "json":
        _emit(json.dumps(_oracle_to_dict(report), sort_keys=True,
                         separators=(",", ":")), args.output)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["window", "empirical_period", "falsified_count", "agreement"])
        w.writerow([report.window_length, report.empirical_period,
                    len(report.falsified_periods), report.verdict_agreement])
        _emit(buf.getvalue(), args.output)
    else:
        lines = [f"window            {report.window_length}",
                 f"empirical period  {report.empirical_period}",
                 f"falsified periods {len(report.falsified_periods)}",
                 f"agreement         {report.verdict_agreement}"]
        _emit("\n".join(lines), args.output)
    return EXIT_OK


def cmd_batch(args) -> int:
    if args.input == "-":
        content = sys.stdin.read()
    else:
        try:
            with open(args.input) as fh:
                content = fh.read()
        except OSError as exc:
            sys.stderr.write(f"cannot read {args.input}: {exc}\n")
            return EXIT_USAGE
    records = []
    for lineno, raw in enumerate(content.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rep = build_report(parse_block(line), precision=args.precision)
            records.append((lineno, line, rep, None))
        except KronseqError as exc:
            records.append((lineno, line, None, str(exc)))
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["line", "input", "classification", "period", "L", "m", "e", "error"])
        for lineno, line, rep, err in records:
            if rep is None:
                w.writerow([lineno, line, "", "", "", "", "", err])
            else:
                c = rep.classification
                w.writerow([lineno, line, _classification_to_dict(c)["kind"],
                            getattr(c, "period", ""), rep.analysis.period,
                            rep.analysis.m, rep.analysis.e, ""])
        _emit(buf.getvalue(), args.output)
    elif args.format == "text":
        chunks = []
        for lineno, line, rep, err in records:
            head = f"# line {lineno}: {line}"
            body = report_to_text(rep) if rep else f"error: {err}"
            chunks.append(head + "\n" + body)
        _emit("\n\n".join(chunks) if chunks else "", args.output)
    else:
        lines = []
        for lineno, line, rep, err in records:
            if rep is None:
                lines.append(json.dumps({"line": lineno, "input": line, "error": err},
                                        sort_keys=True, separators=(",", ":")))
            else:
                d = {"line": lineno, "input": line, "report": report_to_dict(rep)}
                lines.append(json.dumps(d, sort_keys=True, separators=(",", ":")))
        _emit("\n".join(lines) if lines else "", args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_precision():
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        value = int(raw)
        if value < 8:
            raise ValueError
    except ValueError:
        raise ParseError(f"invalid {PRECISION_ENV}: {raw!r}")
    return value


def _add_common(p, precision):
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", metavar="PATH", default=None)
    p.add_argument("--precision", type=int, default=precision,
                   help="working 2-adic precision (bits)")


def build_parser(precision=DEFAULT_PRECISION) -> argparse.ArgumentParser:
    parser = _Parser(prog="kronseq",
                     description="Kronecker symbol sequences of purely periodic "
                                 "continued fractions: convergents, period "
                                 "analysis, aperiodicity certificates.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("expand", help="convergents and their symbol sequences")
    p.add_argument("block", help='block notation, e.g. "1,2,3" or "[1,2,3]"; "-" reads stdin')
    p.add_argument("--count", type=int, default=10)
    _add_common(p, precision)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("analyze", help="full period analysis and classification")
    p.add_argument("block")
    p.add_argument("--window", type=int, default=None,
                   help="also run the brute-force oracle on this window")
    _add_common(p, precision)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("cascade", help="witness cascade of an aperiodic block")
    p.add_argument("block")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    _add_common(p, precision)
    p.set_defaults(func=cmd_cascade)

    p = sub.add_parser("verify", help="cross-check classification on a symbol window")
    p.add_argument("block")
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--max-period", type=int, default=None)
    _add_common(p, precision)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("batch", help="analyze one block per input line")
    p.add_argument("input", help='input path, one block per line ("#" comments); "-" reads stdin')
    _add_common(p, precision)
    p.set_defaults(func=cmd_batch, format="json")  # machine records by default

    return parser


def main(argv=None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)  # big integers print in full decimal
    try:
        parser = build_parser(_default_precision())
        args = parser.parse_args(argv)
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except (EmptyInput, NonPositiveQuotient, PrecisionExhausted, NoPeriodFound) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except NotAperiodic as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except WindowTooShort as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OracleMismatch as exc:
        sys.stderr.write(f"oracle mismatch: {exc}\n")
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
