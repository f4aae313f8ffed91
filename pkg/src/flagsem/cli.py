"""``flagsem`` command line.

Exit codes: 0 success / PASS, 1 FAIL, 2 usage, parse or validation error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import props
from .coherence import is_clique
from .formulas import FormulaSyntaxError, dicograph_of, format_formula, parse_formula
from .literals import LiteralError, parse_literals
from .proofnets import (
    StructureError,
    format_circuit,
    interpretation,
    is_correct,
    parse_structure,
    semantic_correctness_check,
    to_dot,
)


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _config(args) -> props.Config:
    try:
        return props.Config(args.max_depth, args.max_web, args.circuit_cap, args.catalog)
    except ValueError as e:
        raise InputError(str(e)) from None


def _load_structure(path: str):
    try:
        return parse_structure(_read(path))
    except (FormulaSyntaxError, StructureError) as e:
        raise InputError(f"{path}: {e}") from None


def _token_str(t) -> str:
    if isinstance(t, tuple):
        return "(" + ",".join(_token_str(x) for x in t) + ")"
    return str(t)


# -- commands ----------------------------------------------------------------


def cmd_check(args, out) -> int:
    cfg = _config(args)
    pi = _load_structure(args.file)
    try:
        verdict = is_correct(pi, cfg.circuit_cap)
    except ValueError as e:
        raise InputError(str(e)) from None
    circuit = format_circuit(pi, verdict.circuit) if verdict.circuit else ""
    if args.format == "tsv":
        print(f"{format_formula(pi.formula)}\t{'PASS' if verdict else 'FAIL'}\t{circuit}", file=out)
    elif args.format == "dot":
        out.write(to_dot(pi.dicograph, pi.sorted_links()))
    else:
        print("PASS" if verdict else "FAIL", file=out)
        if circuit:
            print(f"circuit without chord: {circuit}", file=out)
    if args.figure:
        from .plotting import draw_structure

        verts = verdict.circuit.vertices if verdict.circuit else None
        draw_structure(pi.dicograph, pi.sorted_links(), verts, format_formula(pi.formula, unicode=True), args.figure)
    return 0 if verdict else 1


def cmd_interpret(args, out) -> int:
    cfg = _config(args)
    pi = _load_structure(args.file)
    if args.atoms:
        try:
            spaces = parse_literals(_read(args.atoms))
        except LiteralError as e:
            raise InputError(f"{args.atoms}: {e}") from None
        try:
            space, result = interpretation(pi, spaces)
        except KeyError as e:
            raise InputError(f"{args.atoms}: {e.args[0]}") from None
        clique = is_clique(space, result)
        if args.format == "tsv":
            print(f"{len(result)}\t{str(clique).lower()}\t" + " ".join(sorted(map(_token_str, result))), file=out)
        else:
            for tok in sorted(map(_token_str, result)):
                print(tok, file=out)
            print(f"clique: {str(clique).lower()}", file=out)
        return 0
    catalog = props.CATALOGS[cfg.catalog]()
    report = semantic_correctness_check(pi, catalog, cfg.circuit_cap)
    sep = report.separating()
    if args.format == "tsv":
        for names, count, ok in report.outcomes:
            label = ",".join(f"{k}={v}" for k, v in sorted(names.items()))
            print(f"{label}\t{count}\t{str(ok).lower()}", file=out)
    else:
        print(f"interpretations: {len(report.outcomes)}", file=out)
        print(f"clique: {str(report.all_cliques).lower()}", file=out)
        if sep:
            print("separating: " + ", ".join(f"{k}={v}" for k, v in sorted(sep.items())), file=out)
    return 0


def cmd_props(args, out) -> int:
    cfg = _config(args)
    results = props.run_suite(args.suite, cfg)
    for r in results:
        if args.format == "text":
            status = "PASS" if r.ok else "FAIL"
            extra = f"  ({r.witness})" if r.witness else ""
            print(f"{status}  {r.name}: {r.cases} cases{extra}", file=out)
        else:
            print(r.line(), file=out)
    if args.figure_dir:
        from .plotting import draw_report

        draw_report(results, f"suite {args.suite}", Path(args.figure_dir) / f"props-{args.suite}.png")
    return 0 if all(r.ok for r in results) else 1


def cmd_report(args, out) -> int:
    """Every suite, as TSV on stdout and in ``OUT/report.tsv``, plus one
    chart per suite and a drawing of each reference structure."""
    from .plotting import draw_report, draw_structure
    from .proofnets import unique_matching

    cfg = _config(args)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    lines, ok = [], True
    for suite in props.SUITES:
        results = props.run_suite(suite, cfg)
        ok &= all(r.ok for r in results)
        lines += [f"{suite}\t{r.line()}" for r in results]
        draw_report(results, f"suite {suite}", outdir / f"props-{suite}.png")
    for k, text in enumerate(props.CHORDLESS + props.CORRECT):
        pi = unique_matching(parse_formula(text))
        v = is_correct(pi, cfg.circuit_cap)
        lines.append(f"nets\t{text}\t{'PASS' if v else 'FAIL'}\t{format_circuit(pi, v.circuit) if v.circuit else ''}")
        draw_structure(
            pi.dicograph, pi.sorted_links(), v.circuit.vertices if v.circuit else None,
            format_formula(pi.formula, unicode=True), outdir / f"structure-{k}.png",
        )
    text = "\n".join(lines) + "\n"
    (outdir / "report.tsv").write_text(text)
    out.write(text)
    return 0 if ok else 1


def cmd_dicograph(args, out) -> int:
    try:
        f = parse_formula(args.formula)
    except FormulaSyntaxError as e:
        raise InputError(str(e)) from None
    d = dicograph_of(f)
    if args.dot or args.format == "dot":
        out.write(to_dot(d))
    else:
        names = d.vertex_names()
        print("vertices: " + " ".join(names), file=out)
        for u, v in sorted((names[u], names[v]) for u, v in d.arcs):
            print(f"arc\t{u}\t{v}", file=out)
        for u, v in sorted(tuple(sorted(names[x] for x in e)) for e in d.edges):
            print(f"edge\t{u}\t{v}", file=out)
    if args.figure:
        from .plotting import draw_structure

        draw_structure(d, title=format_formula(f, unicode=True), path=args.figure)
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-depth", type=int, default=3, help="tree depth bound for property suites")
    common.add_argument("--max-web", type=int, default=8, help="web size bound for isomorphism search")
    common.add_argument("--circuit-cap", type=int, default=20, help="largest structure the criterion accepts")
    common.add_argument("--catalog", choices=sorted(props.CATALOGS), default="default")
    common.add_argument("--format", choices=("text", "tsv", "dot"), default="text")

    p = argparse.ArgumentParser(prog="flagsem", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="run the correctness criterion on a structure file")
    c.add_argument("file")
    c.add_argument("--figure", metavar="PNG", help="draw the structure, circuit highlighted")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("interpret", parents=[common], help="experiments of a structure in coherence spaces")
    c.add_argument("file")
    c.add_argument("--atoms", metavar="FILE", help="space literals named after the variables; "
                   "without it every catalog interpretation is tried")
    c.set_defaults(func=cmd_interpret)

    c = sub.add_parser("props", parents=[common], help="run an exhaustive property suite")
    c.add_argument("--suite", required=True, choices=list(props.SUITES))
    c.add_argument("--figure-dir", metavar="DIR")
    c.set_defaults(func=cmd_props)

    c = sub.add_parser("report", parents=[common], help="all suites, with figures")
    c.add_argument("--out", default="report", metavar="DIR")
    c.set_defaults(func=cmd_report)

    c = sub.add_parser("dicograph", parents=[common], help="the dicograph of a formula")
    c.add_argument("formula")
    c.add_argument("--dot", action="store_true")
    c.add_argument("--figure", metavar="PNG")
    c.set_defaults(func=cmd_dicograph)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as e:
        print(f"flagsem: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
