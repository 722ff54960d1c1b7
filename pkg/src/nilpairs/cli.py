"""Command line: build | analyze | grid | suite.

Exit status: 0 when every check passes, 1 when a mathematical invariant
fails, 2 for input or solver errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from gmpy2 import mpq

from . import catalog as cat
from .algebra import element_from_labels
from .classify import (PreconditionError, almost_even_structure, classification_report,
                       denominator_check, exponents_check, labels_report, lemma_ravno,
                       levi_richardson, pusto3_check, sovpad_check, inclu_check, useful_check,
                       wond1_check, wond2_check, xarak_check)
from .exactla import InconsistentSystem, IrrationalSpectrum, NotSemisimple, to_q
from .grading import bigrade, dimension_identity
from .pairs import (Characteristic, CharacteristicNotFound, TheoremViolation, centralizer,
                    is_ad_nilpotent, killing_duality, make_pair, solve_characteristic, verify_characteristic)
from .report import GridRender, ReportDocument, build_document
from .rootsystem import build_root_system
from .suite import run_suite, summary

OK, INVARIANT_FAILED, INPUT_ERROR = 0, 1, 2


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# inputs

def _type_label(args) -> str:
    if not args.type:
        raise InputError("--type is required")
    t = args.type.strip()
    if args.rank is not None:
        t = f"{t}{args.rank}"
    try:
        return build_root_system(t).label
    except (ValueError, KeyError) as exc:
        raise InputError(f"bad algebra type {t!r}: {exc}") from exc


def _labels(text: str | None, rank: int, what: str):
    if text is None:
        return None
    parts = [p for p in text.replace(",", " ").split()]
    if len(parts) != rank:
        raise InputError(f"{what} needs {rank} labels, got {len(parts)}")
    try:
        return [to_q(p) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad {what}: {exc}") from exc


def _realization(label: str):
    if "+" in label or label[0] not in "ABCD":
        return None
    return cat.classical_realization(label)


def _pair_from_args(args):
    """(alg, pair, char, entry-or-None) from --catalog or explicit input."""
    if args.catalog:
        try:
            entry = cat.get_entry(args.catalog, args.seed)
        except KeyError as exc:
            raise InputError(str(exc)) from exc
        return entry.alg, entry.pair, entry.char, entry
    label = _type_label(args)
    alg = cat.algebra(label)
    real = _realization(label)
    try:
        e1 = alg.parse(args.e1 or "0", real)
        e2 = alg.parse(args.e2 or "0", real)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    pair = make_pair(alg, e1, e2)
    if any(alg.bracket(pair.e1, pair.e2)):
        raise InputError("e1 and e2 do not commute")
    if not (is_ad_nilpotent(alg, pair.e1) and is_ad_nilpotent(alg, pair.e2)):
        raise InputError("e1 and e2 must be ad-nilpotent")
    l1 = _labels(args.h1_labels, alg.rank, "--h1-labels")
    l2 = _labels(args.h2_labels, alg.rank, "--h2-labels")
    if (l1 is None) != (l2 is None):
        raise InputError("give both --h1-labels and --h2-labels or neither")
    if l1 is None:
        char = solve_characteristic(pair)
    else:
        char = Characteristic(element_from_labels(alg, l1), element_from_labels(alg, l2))
        rep = verify_characteristic(pair, char.h1, char.h2)
        if not rep.ok:
            raise InputError(f"given labels are not a characteristic: fails {', '.join(rep.failed())}")
    return alg, pair, char, None


# ---------------------------------------------------------------------------
# analysis

def analyze(alg, pair, char, entry=None) -> tuple[ReportDocument, bool]:
    """Full pipeline.  Returns the document and whether every check passed."""
    bg = bigrade(alg, char)
    z = centralizer(alg, pair.elements)
    rep = classification_report(pair, char, bg, labels=False)
    f = rep.flags
    v: dict = {}

    def put(name, ok, detail=None):
        v[name] = {"pass": bool(ok), "detail": detail}

    put("characteristic", verify_characteristic(pair, char.h1, char.h2, z).ok)
    put("bracket_grading", bg.check_brackets())
    put("ravno_h", all(lemma_ravno(pair, bg.cell(0, 0), m) for m in ("e1", "e2", "both")))
    put("sovpad", sovpad_check(pair, bg))
    put("inclu", all(ok for _, ok in inclu_check(pair, char, bg)))
    rows = dimension_identity(bg.cell(0, 0), pair)
    put("dimension_identity", all(r[2] == r[3] for r in rows))
    lhs, rhs = killing_duality(pair)
    put("killing_duality", lhs == rhs)
    if f["integral"]:
        xl, xr = xarak_check(pair, char, bg)
        put("xarak", xl == xr, {"lhs": xl, "rhs": xr})
        if f["wonderful"]:
            put("pusto3", pusto3_check(pair, char, bg))
            put("wond1", all(ok for _, ok in wond1_check(pair, char, bg)))
            put("wond2", all(ok for _, ok in wond2_check(pair, char, bg)))
            put("useful", all((not h) or c for h, c in (useful_check(pair, char, s, bg) for s in ("e1", "e2"))))
            put("richardson", levi_richardson(pair, char, "e1", bg) and levi_richardson(pair, char, "e2", bg))
    info: dict = {}
    try:
        d = denominator_check(pair, char, bg)
        put("denominators", d["verdict"], {k: d[k] for k in ("max_denominator", "s_type", "c_s")})
    except PreconditionError:
        pass
    if f["integral"] and (f["principal"] or f["almost_principal"]):
        try:
            ex = exponents_check(pair, char, bg)
            put("exponents", ex["verdict_l1"] and ex["verdict_l2"],
                {k: ex[k] for k in ("l2", "exponents_l2", "alphas", "l1", "exponents_l1", "betas")})
        except PreconditionError:
            pass
    if f["integral"]:
        try:
            info["labels"] = labels_report(pair, char, bg)
        except PreconditionError:
            pass
    if f["almost_even"]:
        ae = almost_even_structure(pair, char, bg)
        put("almost_even_structure", ae["verdict"], {k: val for k, val in ae.items() if k != "verdict"})
    doc = build_document(alg, pair, char, bg, z, f, rep.dims, v,
                         entry.expected if entry is not None else None,
                         entry.name if entry is not None else None, info)
    ok = all(x["pass"] for k, x in v.items())
    return doc, ok


def render_text(doc: ReportDocument) -> str:
    lines = [f"algebra {doc.algebra['type']} (dim {doc.algebra['dim']}, rank {doc.algebra['rank']})"]
    if doc.pair.get("name"):
        lines.append(f"entry   {doc.pair['name']}")
    lines.append(f"e1 = {doc.pair['e1_text']}")
    lines.append(f"e2 = {doc.pair['e2_text']}")
    lines.append(f"h1 = {doc.characteristic['h1_text']}")
    lines.append(f"h2 = {doc.characteristic['h2_text']}")
    lines.append("flags   " + ", ".join(f"{k}={str(val).lower()}" for k, val in doc.flags.items()))
    lines.append("dims    " + ", ".join(f"{k}={val}" for k, val in doc.dims.items()))
    lines.append("z(e) eigenvalues " + " ".join(f"({mpq(p)},{mpq(q)})" for p, q in doc.z_eigenvalues))
    for k, val in doc.verdicts.items():
        extra = f"  {val['detail']}" if val.get("detail") is not None else ""
        lines.append(f"{'PASS' if val['pass'] else 'FAIL'} {k}{extra}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands

def cmd_build(args) -> int:
    label = _type_label(args)
    alg = cat.algebra(label)
    rs = alg.root_system
    info = {"type": label, "dim": alg.dim, "rank": rs.rank,
            "positive_roots": len(rs.positive_roots),
            "cartan_matrix": [list(r) for r in rs.cartan_matrix],
            "basis": list(alg.labels)}
    if args.json:
        sys.stdout.write(json.dumps(info, indent=2) + "\n")
    else:
        sys.stdout.write(f"{label}: dim {alg.dim}, rank {rs.rank}, {len(rs.positive_roots)} positive roots\n")
        sys.stdout.write("cartan matrix\n")
        for r in rs.cartan_matrix:
            sys.stdout.write("  " + " ".join(f"{x:2d}" for x in r) + "\n")
        sys.stdout.write("basis " + " ".join(alg.labels) + "\n")
    return OK


def cmd_analyze(args) -> int:
    alg, pair, char, entry = _pair_from_args(args)
    doc, ok = analyze(alg, pair, char, entry)
    if args.json:
        sys.stdout.write(doc.to_json())
    else:
        sys.stdout.write(render_text(doc))
    if args.grid:
        sys.stdout.write(doc.grid_render.render())
    return OK if ok else INVARIANT_FAILED


def cmd_grid(args) -> int:
    label = _type_label(args)
    alg = cat.algebra(label)
    l1 = _labels(args.h1_labels, alg.rank, "--h1-labels") or [0] * alg.rank
    l2 = _labels(args.h2_labels, alg.rank, "--h2-labels") or [0] * alg.rank
    char = Characteristic(element_from_labels(alg, l1), element_from_labels(alg, l2))
    grid = GridRender.from_grading(bigrade(alg, char))
    if grid.total != alg.dim:
        sys.stdout.write(f"grid total {grid.total} differs from dim {alg.dim}\n")
        return INVARIANT_FAILED
    if args.json:
        cells = [{"p": str(p), "q": str(q), "dim": d} for (p, q), (d, _) in grid.cells.items()]
        sys.stdout.write(json.dumps({"type": label, "total": grid.total, "cells": cells}, indent=2) + "\n")
    else:
        sys.stdout.write(grid.render())
    return OK


def cmd_suite(args) -> int:
    golden = None
    if args.golden:
        golden = {}
        for name in ("figure1", "figure2"):
            p = Path(args.golden) / f"{name}.txt"
            if p.exists():
                golden[name] = p.read_text(encoding="utf-8")
    try:
        outcomes = run_suite(args.filter, seed=args.seed, golden=golden)
    except KeyError as exc:
        raise InputError(str(exc)) from exc
    for o in outcomes:
        if not o.passed or args.verbose:
            sys.stdout.write(f"{'PASS' if o.passed else 'FAIL'} {o.prop} {o.subject}  {o.detail}\n")
    failed = 0
    for prop, npass, nfail in summary(outcomes):
        failed += nfail
        sys.stdout.write(f"{prop:24s} {npass:4d} pass {nfail:4d} fail\n")
    return OK if failed == 0 else INVARIANT_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nilpairs", description="Exact analysis of nilpotent pairs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, pair=True):
        p.add_argument("--type", help="type such as A3, E6, A1+A1 (or a family letter with --rank)")
        p.add_argument("--rank", type=int)
        p.add_argument("--json", action="store_true")
        p.add_argument("--seed", type=int, default=cat.DEFAULT_SEED)
        if pair:
            p.add_argument("--catalog", help="catalog entry name")
            p.add_argument("--e1")
            p.add_argument("--e2")
            p.add_argument("--grid", action="store_true")

    b = sub.add_parser("build", help="build an algebra and print its data")
    common(b, pair=False)
    b.set_defaults(fn=cmd_build)

    a = sub.add_parser("analyze", help="characteristic, grading, classification and checks")
    common(a)
    a.add_argument("--h1-labels")
    a.add_argument("--h2-labels")
    a.set_defaults(fn=cmd_analyze)

    g = sub.add_parser("grid", help="bi-grading dimensions for given labels")
    common(g, pair=False)
    g.add_argument("--h1-labels")
    g.add_argument("--h2-labels")
    g.set_defaults(fn=cmd_grid)

    s = sub.add_parser("suite", help="run the property battery")
    s.add_argument("--filter")
    s.add_argument("--seed", type=int, default=cat.DEFAULT_SEED)
    s.add_argument("--golden", help="directory holding figure1.txt / figure2.txt")
    s.add_argument("--verbose", "-v", action="store_true")
    s.set_defaults(fn=cmd_suite)

    sub.add_parser("list", help="list catalog entries").set_defaults(
        fn=lambda args: (sys.stdout.write("\n".join(cat.catalog_names()) + "\n"), OK)[1])
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, CharacteristicNotFound, InconsistentSystem, IrrationalSpectrum,
            NotSemisimple, cat.SearchFailure) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return INPUT_ERROR
    except (TheoremViolation, cat.ExpectationFailure) as exc:
        sys.stderr.write(f"invariant failed: {exc}\n")
        return INVARIANT_FAILED


if __name__ == "__main__":
    sys.exit(main())
