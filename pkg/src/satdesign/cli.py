"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage, parse or
precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bounds import classical_upper_bound, efficiency_report, local_bound_g, local_bound_g1
from .designs import (
    DesignClass,
    construct_g,
    construct_g1,
    construct_g1_optimal,
    construct_g2k_optimal,
    construct_g_optimal,
    construct_gn,
    parse_design_text,
)
from .errors import ParseError, SatDesignError
from .maxdet import (
    DEFAULT_RESTARTS,
    DEFAULT_SEED,
    catalog_orders,
    catalog_theta,
    theta_exhaustive,
    theta_hillclimb,
)
from .report import table_reports
from .bounds import format_table
from .signmat import parse_matrix

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _read_matrix(path):
    try:
        return parse_matrix(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _picks(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _summary(design) -> str:
    k, det = design.spec.k, abs(design.determinant)
    parts = [f"class={design.class_tag.value}", f"k={k}", f"order={design.order}", f"det={design.determinant}"]
    cls = {DesignClass.G: "g", DesignClass.G1: "g1"}.get(design.class_tag)
    if design.class_tag is DesignClass.GN and design.spec.n_extra == 1:
        cls = "g1"
    if cls is not None:
        rep = efficiency_report(cls, k, det)
        parts += [f"local_bound={rep.local_bound}", f"pct_local={rep.pct_local:.2f}"]
        if rep.pct_global is not None:
            parts.append(f"pct_global={rep.pct_global:.2f}")
    else:
        ub = classical_upper_bound(design.order)
        parts += [f"classical_bound={ub}", f"pct_classical={100 * det / ub.approx:.2f}"]
    return " ".join(parts)


def cmd_construct(args) -> int:
    cls = DesignClass(args.design_class)
    k = args.k
    if cls is DesignClass.G:
        if args.m_file or args.n_file:
            M = _read_matrix(args.m_file) if args.m_file else None
            N = _read_matrix(args.n_file) if args.n_file else M
            design = construct_g(M if M is not None else N, N)
        else:
            design = construct_g_optimal(k)
    elif cls is DesignClass.G1:
        if args.m_file or args.n_file:
            if not (args.m_file and args.n_file):
                raise ParseError("class g1 needs both --m-file (order k+1) and --n-file (order k)")
            design = construct_g1(_read_matrix(args.m_file), _read_matrix(args.n_file))
        else:
            design = construct_g1_optimal(k)
    elif cls is DesignClass.GN:
        if args.g_picks is None or args.m_picks is None:
            raise ParseError("class gn needs --g-picks and --m-picks")
        if args.m_file or args.n_file:
            M = _read_matrix(args.m_file) if args.m_file else None
            N = _read_matrix(args.n_file) if args.n_file else M
            g = construct_g(M if M is not None else N, N)
        else:
            g = construct_g_optimal(k)
        if args.mn_file:
            M_n = _read_matrix(args.mn_file)
        else:
            M_n = catalog_theta(len(args.g_picks)).witness
        design = construct_gn(g, M_n, args.g_picks, args.m_picks)
    else:
        design = construct_g2k_optimal(k)

    text = design.to_text(args.format)
    summary = _summary(design)
    if args.out:
        Path(args.out).write_text(text if text.endswith("\n") else text + "\n")
        print(summary)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {args.file}: {exc}") from None
    df = parse_design_text(text)
    report = df.verify()
    preds = dict(report.predicates)
    if df.header_determinant is not None:
        preds["determinant-header"] = report.determinant == df.header_determinant
    ok = all(preds.values())
    if args.format == "json":
        print(json.dumps({
            "class_tag": df.class_tag.value,
            "passed": ok,
            "predicates": preds,
            "determinant": None if report.determinant is None else str(report.determinant),
        }))
    else:
        for name, good in preds.items():
            print(f"{'PASS' if good else 'FAIL'} {name}")
        print("OK" if ok else "FAILED: " + ", ".join(n for n, g in preds.items() if not g))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bound(args) -> int:
    if args.n is not None:
        if args.design_class is not None:
            raise ParseError("give either --n or --class/--k")
        bound = classical_upper_bound(args.n)
        title = f"classical bound, order {args.n}"
    else:
        if args.design_class is None or args.k is None:
            raise ParseError("bound needs --n, or --class and --k")
        bound = (local_bound_g if args.design_class == "g" else local_bound_g1)(args.k)
        title = f"local bound, class {args.design_class}, k={args.k}"
    if args.format == "json":
        print(json.dumps(bound.to_json()))
        return EXIT_OK
    print(title)
    print(f"order: {bound.order}")
    print(f"case: {bound.case} mod 4")
    if bound.constants is not None:
        c = bound.constants
        print(f"ehlich: s={c.s} r={c.r} u={c.u} v={c.v}")
    print(f"value: {bound}")
    print(f"exact: {'yes' if bound.exact is not None else 'no'}")
    return EXIT_OK


def cmd_maxdet(args) -> int:
    if args.mode == "exhaustive":
        rec = theta_exhaustive(args.k)
    elif args.mode == "hillclimb":
        rec = theta_hillclimb(args.k, restarts=args.restarts, seed=args.seed)
    else:
        rec = catalog_theta(args.k)
    print(json.dumps(rec.to_json()))
    return EXIT_OK


def cmd_report(args) -> int:
    reports = table_reports()
    if args.format == "json":
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        print(format_table(reports))
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.k is not None:
        print(json.dumps(catalog_theta(args.k).to_json()))
        return EXIT_OK
    for k in catalog_orders():
        rec = catalog_theta(k)
        print(f"{k:3d}  {rec.theta:>12d}  {rec.provenance.value}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="satdesign", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a saturated design and write it out")
    c.add_argument("--class", dest="design_class", required=True, choices=[x.value for x in DesignClass])
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--m-file", help="M block (class g) or order-(k+1) matrix (class g1)")
    c.add_argument("--n-file", help="N block, order k")
    c.add_argument("--mn-file", help="extra-factor block M_n (class gn)")
    c.add_argument("--g-picks", type=_picks, help="0-based rows of g copied into the border (class gn)")
    c.add_argument("--m-picks", type=_picks, help="0-based rows of M_n copied into -V (class gn)")
    c.add_argument("--out", help="design file path (default: stdout)")
    c.add_argument("--format", choices=["glyph", "csv", "json"], default="glyph")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check a design file")
    v.add_argument("file")
    v.add_argument("--format", choices=["text", "json"], default="text")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bound", help="classical or local determinant bound")
    b.add_argument("--n", type=int)
    b.add_argument("--class", dest="design_class", choices=["g", "g1"])
    b.add_argument("--k", type=int)
    b.add_argument("--format", choices=["text", "json"], default="text")
    b.set_defaults(func=cmd_bound)

    m = sub.add_parser("maxdet", help="maximal determinant record as JSON")
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--mode", choices=["catalog", "exhaustive", "hillclimb"], default="catalog")
    m.add_argument("--seed", type=int, default=DEFAULT_SEED)
    m.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    m.set_defaults(func=cmd_maxdet)

    r = sub.add_parser("report", help="local/global determinant comparison table")
    r.add_argument("--format", choices=["text", "json"], default="text")
    r.set_defaults(func=cmd_report)

    cat = sub.add_parser("catalog", help="list cataloged maximal determinants")
    cat.add_argument("--k", type=int)
    cat.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SatDesignError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
