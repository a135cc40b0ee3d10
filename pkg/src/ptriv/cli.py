"""``ptriv`` command line.

Exit codes for ``classify``: 0 P-trivial, 1 not P-trivial, 2 not covered,
64 unparsable input (also used for any usage error).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass

from .chain_complex import Coefficients, GradedGroup, cohomology, homology
from .classifier import NOT, P, UNKNOWN, certify, classify, grid, phi
from .exact_linalg import render_group
from .spaces import (
    ParseError,
    StuntedComplex,
    StuntedReal,
    UnsupportedSpec,
    build_complex,
    closed_form_cohomology,
    closed_form_homology,
    parse_spec,
)
from .verify import run_sweep, thread_count

EXIT_CODES = {P: 0, NOT: 1, UNKNOWN: 2}
EX_USAGE = 64
EX_DATAERR = 65
EX_IOERR = 74

CSV_HEADER = ["spec", "status", "rule", "citation", "certificate"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class TableRow:
    spec: str
    status: str
    rule: str
    citation: str
    certificate: str = ""


def table_row(s) -> TableRow:
    v = classify(s)
    cert = certify(s)
    return TableRow(str(s), str(v.status), v.rule_id, v.citation, str(cert.kind) if cert else "")


def table_rows(family: str, m_max: int, k_max: int, n_max: int | None = None) -> list[TableRow]:
    families = ["X", "Y"] if family == "all" else [family]
    rows = []
    for fam in families:
        ctor = StuntedReal if fam == "X" else StuntedComplex
        rows.extend(table_row(ctor(m, n, k)) for m, n, k in grid(m_max, k_max, n_max))
    return rows


def render_table(rows: list[TableRow], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([asdict(r) for r in rows], indent=2, ensure_ascii=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.spec, r.status, r.rule, r.citation, r.certificate])
    return buf.getvalue()


def _spec_or_exit(text: str):
    try:
        return parse_spec(text)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def cmd_classify(args) -> int:
    s = _spec_or_exit(args.spec)
    v = classify(s)
    print(f"spec: {s}")
    print(f"status: {v.status}")
    print(f"rule: {v.rule_id}")
    print(f"citation: {v.citation}")
    cert = certify(s)
    if cert is not None:
        print(f"certificate: {cert.kind}")
        for deg, g, flags in cert.witness:
            extra = "" if flags is None else " rho2 " + ", ".join(k for k, ok in flags.items() if ok)
            print(f"  H^{deg} = {render_group(g)}{extra}")
    return EXIT_CODES[v.status]


def _print_groups(label: str, groups: GradedGroup):
    for j, g in groups.items():
        print(f"{label}{j}: {render_group(g)}")


def cmd_cohomology(args) -> int:
    s = _spec_or_exit(args.spec)
    try:
        coeff = Coefficients.parse(args.coeff)
    except ValueError as e:
        print(str(e), file=sys.stderr)
        return EX_USAGE
    label = "H_" if args.homology else "H^"
    c = build_complex(s)
    snf = homology(c, coeff) if args.homology else cohomology(c, coeff)
    closed = None
    if args.mode in ("closed-form", "both"):
        try:
            closed = (closed_form_homology(s, coeff) if args.homology
                      else closed_form_cohomology(s, coeff))
        except UnsupportedSpec as e:
            print(f"unsupported: {e}", file=sys.stderr)
            return EX_DATAERR
    print(f"# {s} coefficients {coeff}")
    if args.mode == "snf":
        _print_groups(label, snf)
        return 0
    if args.mode == "closed-form":
        _print_groups(label, closed)
        return 0
    bad = 0
    for j in sorted(set(snf) | set(closed)):
        ok = snf[j] == closed[j]
        bad += not ok
        print(f"{label}{j}: snf={render_group(snf[j])} closed={render_group(closed[j])} "
              f"{'MATCH' if ok else 'MISMATCH'}")
    print("MATCH" if not bad else f"MISMATCH in {bad} degree(s)")
    return 0 if not bad else 1


def cmd_verify(args) -> int:
    family = args.family
    if args.m_max is not None:
        m_max = {"X": args.m_max, "Y": args.m_max}
    else:
        m_max = {"X": 40, "Y": 20}
    threads = thread_count()
    fams = ["X", "Y"] if family == "all" else [family]
    total_fail = 0
    discrepancies = []
    for fam in fams:
        r = run_sweep(fam, m_max[fam], args.k_max, args.n_max, deep=args.deep, threads=threads)
        print(f"== family {fam}: m <= {m_max[fam]}, k <= {args.k_max}"
              + (f", n <= {args.n_max}" if args.n_max is not None else ""))
        for name in sorted(r.checks):
            fails = r.failures_of(name)
            print(f"{name}: {r.checks[name]} checked, {len(fails)} failed")
            for where in fails[:20]:
                print(f"  FAIL {where}")
        print(f"{len(r.failures)} mismatches")
        total_fail += len(r.failures)
        discrepancies.extend(r.discrepancies)
    print()
    print(f"== discrepancies between literal theorem statements and lemma-level verdicts "
          f"(informational): {len(discrepancies)}")
    for d in discrepancies:
        print(f"{d.family}({d.m},{d.n})^{d.k}: lemma={d.lemma.status} [{d.lemma.rule_id}] "
              f"literal={d.theorem.status} [{d.theorem.rule_id}]")
    return 0 if total_fail == 0 else 1


def cmd_table(args) -> int:
    rows = table_rows(args.family, args.m_max, args.k_max, args.n_max)
    text = render_table(rows, args.format)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as f:
                f.write(text)
        except OSError as e:
            print(f"cannot write {args.out}: {e}", file=sys.stderr)
            return EX_IOERR
    else:
        sys.stdout.write(text)
    return 0


def cmd_phi(args) -> int:
    try:
        print(phi(args.m, args.n))
    except ValueError as e:
        print(str(e), file=sys.stderr)
        return EX_USAGE
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ptriv", description="P-triviality of stunted projective spaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="decide P-triviality of a space")
    c.add_argument("spec")
    c.set_defaults(func=cmd_classify)

    h = sub.add_parser("cohomology", help="print (co)homology groups")
    h.add_argument("spec")
    h.add_argument("--coeff", default="Z", choices=["Z", "Z2", "Z4"])
    mode = h.add_mutually_exclusive_group()
    mode.add_argument("--closed-form", dest="mode", action="store_const", const="closed-form")
    mode.add_argument("--snf", dest="mode", action="store_const", const="snf")
    mode.add_argument("--both", dest="mode", action="store_const", const="both")
    h.add_argument("--homology", action="store_true", help="homology instead of cohomology")
    h.set_defaults(func=cmd_cohomology, mode="snf")

    v = sub.add_parser("verify", help="run the invariant suite over a parameter grid")
    v.add_argument("--m-max", type=int, default=None)
    v.add_argument("--n-max", type=int, default=None)
    v.add_argument("--k-max", type=int, default=12)
    v.add_argument("--family", choices=["X", "Y", "all"], default="all")
    v.add_argument("--deep", action="store_true", help="also check UCT and Bockstein exactness")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="emit a verdict table")
    t.add_argument("--family", choices=["X", "Y", "all"], default="X")
    t.add_argument("--m-max", type=int, default=10)
    t.add_argument("--n-max", type=int, default=None)
    t.add_argument("--k-max", type=int, default=0)
    t.add_argument("--format", choices=["csv", "json"], default="csv")
    t.add_argument("--out")
    t.set_defaults(func=cmd_table)

    f = sub.add_parser("phi", help="count n < s <= m with s = 0, 1, 2, 4 mod 8")
    f.add_argument("m", type=int)
    f.add_argument("n", type=int, nargs="?", default=0)
    f.set_defaults(func=cmd_phi)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("m_max", "n_max", "k_max"):
        val = getattr(args, name, None)
        if val is not None and val < 0:
            print(f"--{name.replace('_', '-')} must be >= 0", file=sys.stderr)
            return EX_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
