"""Acceptance criteria, one test and one PASS/FAIL line each.

Every comparison is exact (tolerance zero).  Where the stated expectation
contains a misprint, the stated form gets its own line so that it is visible
as a failure rather than silently replaced.
"""
import time
from collections import Counter
from pathlib import Path

import pytest
from gmpy2 import mpq

from nilpairs.catalog import (SP6_EIGENVALUES, SP6_EIGENVALUES_AS_PRINTED, catalog_names,
                              exceptional_pair, sp6_example)
from nilpairs.classify import (denominator_check, exponents_check, is_integral, is_wonderful,
                               labels_report)
from nilpairs.grading import bigrade
from nilpairs.pairs import centralizer
from nilpairs.report import GridRender
from nilpairs.suite import NEGATIVES_REQUIRED, golden_text, run_suite, summary

from conftest import ACCEPTANCE_LINES


def record(tag: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} {tag}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def grid_of(which: str):
    t0 = time.perf_counter()
    ent = exceptional_pair(which)
    bg = bigrade(ent.alg, ent.char)
    z = centralizer(ent.alg, ent.pair.elements)
    return ent, bg, GridRender.from_grading(bg, z), time.perf_counter() - t0


def test_criterion_1_figure1():
    ent, bg, grid, secs = grid_of("E6")
    want = GridRender.parse(golden_text("figure1"))
    ok = (bg.dim(0, 0) == 6 and bg.dim(1, 0) == 5 and bg.dim(-4, 1) == 2 and grid.total == 78
          and len(grid.stars) == 6 and grid.cells == want.cells and secs < 60)
    record("criterion 1 (E6 grid)", ok,
           f"g00={bg.dim(0, 0)} g10={bg.dim(1, 0)} g(-4,1)={bg.dim(-4, 1)} total={grid.total} "
           f"stars={len(grid.stars)} grid==golden:{grid.cells == want.cells} {secs:.1f}s")
    assert ok


def test_criterion_2_figure2():
    ent, bg, grid, secs = grid_of("E7")
    want = GridRender.parse(golden_text("figure2"))
    ok = (bg.dim(0, 0) == 7 and grid.total == 133 and len(grid.stars) == 7
          and grid.cells == want.cells and secs < 300)
    record("criterion 2 (E7 grid)", ok,
           f"g00={bg.dim(0, 0)} total={grid.total} stars={len(grid.stars)} "
           f"grid==golden:{grid.cells == want.cells} {secs:.1f}s")
    assert ok


def _sp6():
    t0 = time.perf_counter()
    ent = sp6_example()
    bg = bigrade(ent.alg, ent.char)
    z = centralizer(ent.alg, ent.pair.elements)
    ev = tuple(bg.eigenvalue_multiset(z))
    return ent, bg, z, ev, t0


def test_criterion_3_sp6():
    ent, bg, z, ev, t0 = _sp6()
    wonderful = is_wonderful(ent.pair, ent.char, bg)[0]
    integral = is_integral(ent.pair, ent.char, bg)
    den = denominator_check(ent.pair, ent.char, bg)
    secs = time.perf_counter() - t0
    ok = (z.dim == 7 and Counter(ev) == Counter(SP6_EIGENVALUES) and wonderful and not integral
          and den["max_denominator"] == 3 and den["s_type"] == "A2" and den["c_s"] == 3 and secs < 10)
    record("criterion 3 (sp6, eigenvalue (-2/3,4/3))", ok,
           f"dim z={z.dim} wonderful={wonderful} integral={integral} "
           f"max denominator={den['max_denominator']} c({den['s_type']})={den['c_s']} {secs:.1f}s")
    assert ok


@pytest.mark.xfail(strict=True, reason="the listed eigenvalue (2/3,-4/3) is a sign misprint; "
                                       "the pair is symmetric under swapping and gives (-2/3,4/3)")
def test_criterion_3_sp6_eigenvalues_as_printed():
    _, _, _, ev, _ = _sp6()
    ok = Counter(ev) == Counter(SP6_EIGENVALUES_AS_PRINTED)
    record("criterion 3 (sp6, eigenvalue list as printed)", ok,
           "computed " + ", ".join(f"({a},{b})" for a, b in ev))
    assert ok


EXPONENT_ENTRIES = (["e6-d5-2a1", "e7-a4a1", "sp4n-n1", "sp4n-n2"]
                    + [n for n in catalog_names() if "-partition-" in n])


def _exponents():
    from nilpairs.catalog import get_entry
    out = {}
    for name in EXPONENT_ENTRIES:
        e = get_entry(name)
        out[name] = exponents_check(e.pair, e.char)
    return out


def test_criterion_4_exponents():
    res = _exponents()
    bad = [n for n, r in res.items() if not (r["verdict_l1"] and r["verdict_l2"])]
    e6 = res["e6-d5-2a1"]
    ok = not bad and e6["alphas"] == [1, 3, 4, 5, 7] and e6["l2"] == "D5"
    record("criterion 4 (exponents, nonzero alpha_i vs l2 and nonzero beta_i vs l1)", ok,
           f"{len(res) - len(bad)}/{len(res)} entries; E6 alphas {e6['alphas']} vs {e6['l2']} "
           f"exponents {e6['exponents_l2']}")
    assert ok


@pytest.mark.xfail(strict=True, reason="the literal set {alpha_i : beta_i != 0} is not the exponent "
                                       "set of l2; the statement holds with alpha_i != 0")
def test_criterion_4_exponents_literal_reading():
    res = _exponents()
    bad = [n for n, r in res.items()
           if Counter(r["literal_alphas_with_beta_nonzero"]) != Counter(r["exponents_l2"])]
    e6 = res["e6-d5-2a1"]
    record("criterion 4 (exponents, literal {alpha_i : beta_i != 0})", not bad,
           f"{len(bad)}/{len(res)} entries differ; E6 gives {e6['literal_alphas_with_beta_nonzero']}")
    assert not bad


def test_criterion_5_labels():
    from nilpairs.catalog import get_entry
    e6 = get_entry("e6-d5-2a1")
    a = labels_report(e6.pair, e6.char)["adapted_to_h2"]
    e6_ok = (all(a["pr_char"].values()) and a["levi"] == "D5" and a["coxeter_bound"] == -7
             and a["min_secondary_on_primary_1"] == "-7")
    sp = get_entry("sp4n-n1")
    rep = labels_report(sp.pair, sp.char)
    non_rich = [v for v in rep.values() if isinstance(v, dict) and v.get("richardson") is False]
    rich = [v for v in rep.values() if isinstance(v, dict) and v.get("richardson") is True]
    sp_ok = (len(non_rich) == 1 and len(rich) == 1
             and non_rich[0]["pr_char"]["(iii) coxeter bound"] is False
             and rich[0]["pr_char"]["(iii) coxeter bound"] is True)
    ok = e6_ok and sp_ok
    record("criterion 5 (labels)", ok,
           f"E6 x={a['min_secondary_on_primary_1']} bound={a['coxeter_bound']} (cox {a['levi']} = "
           f"{a['coxeter']}); sp4 non-Richardson side min {non_rich[0]['min_secondary_on_primary_1']} "
           f"< bound {non_rich[0]['coxeter_bound']}, Richardson side within bound")
    assert ok


@pytest.fixture(scope="module")
def suite_outcomes():
    t0 = time.perf_counter()
    out = run_suite()
    return out, time.perf_counter() - t0


SUITE_PROPS = ["algebra-soundness", "characteristic", "ravno", "sovpad", "inclu", "dimension-identity",
               "even", "rectangular-wonderful", "xarak", "pusto3", "wond1", "wond2", "useful",
               "richardson", "rectan", "pr-even", "killing-duality", "denominators", "figures"]


def test_criterion_6_property_suite(suite_outcomes):
    out, secs = suite_outcomes
    rows = {p: (a, b) for p, a, b in summary(out)}
    bad = [p for p in SUITE_PROPS if p not in rows or rows[p][1] or not rows[p][0]]
    for p in SUITE_PROPS:
        a, b = rows.get(p, (0, 0))
        record(f"criterion 6 [{p}]", p not in bad, f"{a} pass, {b} fail")
    ok = not bad and secs < 900
    record("criterion 6 (property suites, excluding negatives)", ok, f"{len(out)} outcomes, {secs:.0f}s")
    assert ok


def test_criterion_6_searched_negatives(suite_outcomes):
    out, _ = suite_outcomes
    neg = [o for o in out if o.prop == "xarak-negatives"]
    ok = bool(neg) and all(o.passed for o in neg)
    record(f"criterion 6 [xarak-negatives, >= {NEGATIVES_REQUIRED} non-wonderful integral pairs]", ok,
           "; ".join(o.detail for o in neg))
    assert ok


def test_criterion_7_scope_documented():
    readme = (Path(__file__).resolve().parents[1] / "README.md").read_text(encoding="utf-8")
    ok = "## Scope" in readme and "finiteness" in readme and "conjugacy" in readme
    record("criterion 7 (non-computational statements documented as out of scope)", ok,
           "README scope section")
    assert ok
