"""Command-line interface: ``lineadmit {analyze,admissible,oracle,multinet,render,generate}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional

from .admissibility import NotAdmissible, NotCovered, decide_admissible
from .arrfile import ArrangementFile, ParseError, format_arrangement, parse_arrangement
from .generate import GenerationError, generate_condition_c
from .incidence import build_incidence
from .multinet import SizeGuardError, report_global_components, search_multinets
from .oracle import BudgetExceeded, Found, ShiftSearchConfig, oracle_search
from .render import render_svg
from .report import analysis_report, render_text, verdict_line, verdict_to_dict

EXIT_OK = 0
EXIT_IO = 1
EXIT_PARSE = 2
EXIT_NOT_COVERED = 3
EXIT_NOT_ADMISSIBLE = 4
EXIT_SIZE_GUARD = 5


class _Usage(Exception):
    pass


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _h0(af: ArrangementFile, label: Optional[str]) -> Optional[int]:
    if label is None:
        return None
    try:
        return af.arrangement.labels.index(label)
    except ValueError:
        raise _Usage(f"--h0: no line labelled {label!r}") from None


def _systems(af: ArrangementFile, name: Optional[str]):
    if name is None:
        return af.systems
    if name not in af.systems:
        raise _Usage(f"no system {name!r} in {af.name or 'file'} (have: {', '.join(af.systems) or 'none'})")
    return {name: af.systems[name]}


def cmd_analyze(args) -> int:
    af = parse_arrangement(args.file)
    doc = analysis_report(af.arrangement, af.systems, _h0(af, args.h0), args.bound)
    _emit(_dump(doc) if args.format == "json" else render_text(doc) + "\n", args.out)
    return EXIT_OK


def cmd_admissible(args) -> int:
    af = parse_arrangement(args.file)
    systems = _systems(af, args.system)
    if not systems:
        raise _Usage("the file defines no local system")
    inc = build_incidence(af.arrangement)
    h0 = _h0(af, args.h0)
    results = {name: decide_admissible(inc, ls, h0, args.bound) for name, ls in systems.items()}
    docs = {name: verdict_to_dict(r, af.arrangement.labels) for name, r in results.items()}
    if args.format == "json":
        _emit(_dump(docs), args.out)
    else:
        lines = []
        for name, d in docs.items():
            lines.append(f"{name}: {verdict_line(d)}")
            if d["verdict"] == "admissible":
                res = d["certificate"]["residues"]
                lines.append("  " + ", ".join(f"{lab}={r}" for lab, r in zip(af.arrangement.labels, res)))
            elif d["verdict"] == "not-admissible":
                lines.extend("  " + t for t in d["transcript"])
        _emit("\n".join(lines) + "\n", args.out)
    if any(isinstance(r, NotAdmissible) for r in results.values()):
        return EXIT_NOT_ADMISSIBLE
    if any(isinstance(r, NotCovered) for r in results.values()):
        return EXIT_NOT_COVERED
    return EXIT_OK


def cmd_oracle(args) -> int:
    af = parse_arrangement(args.file)
    inc = build_incidence(af.arrangement)
    labels = af.arrangement.labels
    out = {}
    code = EXIT_OK
    for name, ls in _systems(af, args.system).items():
        r = oracle_search(inc, ls, ShiftSearchConfig(args.bound, args.budget))
        if isinstance(r, Found):
            out[name] = {"result": "found", "bound": args.bound, "nodes": r.nodes,
                         "residues": [str(v) for v in r.rv.residues]}
        elif isinstance(r, BudgetExceeded):
            out[name] = {"result": "budget-exceeded", "bound": args.bound, "nodes": r.nodes}
            code = max(code, EXIT_NOT_COVERED)
        else:
            out[name] = {"result": "exhausted", "bound": args.bound, "nodes": r.nodes}
            code = max(code, EXIT_NOT_COVERED)
    if args.format == "json":
        _emit(_dump(out), args.out)
    else:
        lines = []
        for name, d in out.items():
            if d["result"] == "found":
                lines.append(f"{name}: found within |k| <= {d['bound']} ({d['nodes']} nodes)")
                lines.append("  " + ", ".join(f"{lab}={v}" for lab, v in zip(labels, d["residues"])))
            elif d["result"] == "exhausted":
                lines.append(f"{name}: not admissible within shift bound K = {d['bound']} ({d['nodes']} nodes)")
            else:
                lines.append(f"{name}: search budget exceeded after {d['nodes']} nodes")
        _emit("\n".join(lines) + "\n", args.out)
    return code


def cmd_multinet(args) -> int:
    af = parse_arrangement(args.file)
    inc = build_incidence(af.arrangement)
    found = search_multinets(inc, args.k_max, args.m_max, args.guard)
    rep = report_global_components(inc, found)
    if args.format == "json":
        labels = af.arrangement.labels
        doc = {
            "condition_c": rep.condition_c,
            "concurrent": rep.concurrent,
            "multinets": [{"k": m.k, "d": m.d, "classes": [[labels[h] for h in c] for c in m.classes],
                           "mult": list(m.mult)} for m in found],
            "report": list(rep.lines),
        }
        _emit(_dump(doc), args.out)
    else:
        _emit(str(rep) + "\n", args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    af = parse_arrangement(args.file)
    _emit(render_svg(af.arrangement), args.out)
    return EXIT_OK


def cmd_generate(args) -> int:
    arr = generate_condition_c(args.seed, args.lines)
    _emit(format_arrangement(arr), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lineadmit", description="Admissibility of rank-one local systems "
                                "on line arrangements, with exact arithmetic.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, systems=False, h0=False, bound=False):
        sp.add_argument("file", help="arrangement file (.arr)")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
        if systems:
            sp.add_argument("--system", metavar="NAME", help="only this local system (default: all)")
        if h0:
            sp.add_argument("--h0", metavar="LABEL", help="override the base line")
        if bound:
            sp.add_argument("--bound", type=int, default=3, metavar="K", help="oracle shift bound (default 3)")

    sp = sub.add_parser("analyze", help="incidence, condition (C), cycles, zones, strategy")
    common(sp, h0=True, bound=True)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("admissible", help="certificate or verdict per local system")
    common(sp, systems=True, h0=True, bound=True)
    sp.set_defaults(func=cmd_admissible)

    sp = sub.add_parser("oracle", help="bounded brute-force search over residue shifts")
    common(sp, systems=True, bound=True)
    sp.add_argument("--budget", type=int, default=2_000_000, help="node budget")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("multinet", help="search for multinets")
    common(sp)
    sp.add_argument("--k-max", type=int, default=4)
    sp.add_argument("--m-max", type=int, default=2)
    sp.add_argument("--guard", type=int, default=12, metavar="N", help="refuse arrangements with more lines")
    sp.set_defaults(func=cmd_multinet)

    sp = sub.add_parser("render", help="SVG of the affine chart z = 1")
    sp.add_argument("file")
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("generate", help="random arrangement satisfying condition (C)")
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--lines", type=int, default=8)
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeGuardError as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_SIZE_GUARD
    except GenerationError as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return EXIT_NOT_COVERED
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
