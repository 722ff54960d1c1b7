"""Named property battery over the catalog.

Each property yields ``Outcome`` records, one per subject (usually a
catalog entry).  Properties run in a fixed order and subjects are sorted by
name, so the summary is deterministic.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from itertools import product
from typing import Callable, Iterable, Iterator

from .algebra import check_antisymmetry, check_jacobi, check_killing_invariance
from .catalog import DEFAULT_SEED, algebra, catalog_names, get_entry
from .classify import (PreconditionError, classification_report, denominator_check,
                       lemma_ravno, levi_richardson, pr_even_check, pusto3_check, sovpad_check,
                       inclu_check, useful_check, wond1_check, wond2_check, xarak_check)
from .exactla import Subspace
from .grading import bigrade, dimension_identity, limit
from .pairs import TheoremViolation, centralizer, is_rectangular, killing_duality
from .report import GridRender
from .search import labelled_non_wonderful


@dataclass(frozen=True)
class Outcome:
    prop: str
    subject: str
    passed: bool
    detail: str = ""


class Context:
    """Lazily computed data for one catalog entry."""

    def __init__(self, name: str, seed: int = DEFAULT_SEED):
        self.name = name
        self.seed = seed

    @cached_property
    def entry(self):
        return get_entry(self.name, self.seed)

    @property
    def alg(self):
        return self.entry.alg

    @property
    def pair(self):
        return self.entry.pair

    @property
    def char(self):
        return self.entry.char

    @cached_property
    def bg(self):
        return bigrade(self.alg, self.char)

    @cached_property
    def z(self) -> Subspace:
        return centralizer(self.alg, self.pair.elements)

    @cached_property
    def report(self):
        return classification_report(self.pair, self.char, self.bg, labels=False)

    @property
    def flags(self) -> dict:
        return self.report.flags


# ---------------------------------------------------------------------------
# properties

PROPERTIES: dict[str, Callable] = {}


def _prop(name: str):
    def deco(fn):
        PROPERTIES[name] = fn
        return fn
    return deco


SOUND_EXHAUSTIVE = ("A1", "A2", "A3", "B2", "C2", "C3", "G2")
SOUND_SAMPLED = ("E6", "E7")
SAMPLES = 10_000


@_prop("algebra-soundness")
def p_algebra(ctxs) -> Iterator[Outcome]:
    for lab in SOUND_EXHAUSTIVE:
        g = algebra(lab)
        triples = list(product(range(g.dim), repeat=3))
        bad_j = check_jacobi(g, triples)
        bad_k = check_killing_invariance(g, triples)
        ok = not bad_j and not bad_k and check_antisymmetry(g)
        yield Outcome("algebra-soundness", lab, ok,
                      f"{len(triples)} triples, {len(bad_j)} Jacobi and {len(bad_k)} Killing failures")
    for lab in SOUND_SAMPLED:
        g = algebra(lab)
        rng = random.Random(DEFAULT_SEED)
        triples = [tuple(rng.randrange(g.dim) for _ in range(3)) for _ in range(SAMPLES)]
        bad_j = check_jacobi(g, triples)
        bad_k = check_killing_invariance(g, triples)
        yield Outcome("algebra-soundness", lab, not bad_j and not bad_k,
                      f"{SAMPLES} sampled triples, {len(bad_j)} Jacobi and {len(bad_k)} Killing failures")


def _per_entry(name: str, applies: Callable[[Context], bool] = lambda c: True):
    """Decorator for properties evaluated entry by entry; fn(ctx) -> (ok, detail)."""
    def deco(fn):
        def run(ctxs):
            for c in ctxs:
                try:
                    if not applies(c):
                        continue
                    ok, detail = fn(c)
                except (TheoremViolation, PreconditionError) as exc:
                    ok, detail = False, f"{type(exc).__name__}: {exc}"
                yield Outcome(name, c.name, bool(ok), detail)
        PROPERTIES[name] = run
        return fn
    return deco


@_per_entry("characteristic")
def p_characteristic(c: Context):
    from .pairs import verify_characteristic
    rep = verify_characteristic(c.pair, c.char.h1, c.char.h2)
    return rep.ok, ", ".join(rep.failed())


def random_subspace(rng: random.Random, space: Subspace, n: int) -> Subspace:
    if not space.dim:
        return space
    k = rng.randint(1, space.dim)
    return Subspace(n, [tuple(sum(rng.randint(-2, 2) * b[i] for b in space.basis) for i in range(n))
                        for _ in range(k)])


@_per_entry("ravno")
def p_ravno(c: Context):
    """Part 1 on h and on random subspaces of l1 (e1-limit) and l2 (e2-limit);
    part 2 on h.  Part 2 fails for general subspaces of z(h): see
    ``ravno_counterexample``."""
    hh = c.bg.cell(0, 0)
    n = c.alg.dim
    checks = [lemma_ravno(c.pair, hh, m) for m in ("e1", "e2", "both")]
    l1 = centralizer(c.alg, [c.char.h1])
    l2 = centralizer(c.alg, [c.char.h2])
    rng = random.Random(c.seed)
    for _ in range(3):
        checks.append(lemma_ravno(c.pair, random_subspace(rng, l1, n), "e1"))
        checks.append(lemma_ravno(c.pair, random_subspace(rng, l2, n), "e2"))
    return all(checks), f"{len(checks)} subspace/mode checks"


def ravno_counterexample():
    """A line M in z(h) for the sl3 partition (2,1) pair with lim_e M = 0.

    Returns (M, lim_e M).  (ad e1)(ad e2) kills M although neither factor
    does, so the e-filtration puts M in M(1,1) and the only summand vanishes.
    """
    c = Context("sl3-partition-2-1")
    real = c.entry.realization
    from .algebra import parse_matrix_expr
    v = real.from_matrix(parse_matrix_expr("diag(1,0,-1)", 3))
    m = Subspace(c.alg.dim, [v])
    return m, limit(m, c.pair, "both")


@_per_entry("sovpad")
def p_sovpad(c: Context):
    return sovpad_check(c.pair, c.bg), ""


@_per_entry("inclu")
def p_inclu(c: Context):
    res = inclu_check(c.pair, c.char, c.bg)
    return all(ok for _, ok in res), "; ".join(n for n, ok in res if not ok)


@_per_entry("dimension-identity")
def p_dimid(c: Context):
    rows = dimension_identity(c.bg.cell(0, 0), c.pair)
    bad = [r for r in rows if r[2] != r[3]]
    return not bad, f"{len(rows)} summands" + (f", mismatches {bad}" if bad else "")


@_per_entry("even", lambda c: c.flags["even"])
def p_even(c: Context):
    return c.flags["wonderful"] and c.flags["integral"], ""


@_per_entry("rectangular-wonderful", lambda c: c.flags["rectangular"])
def p_rect_w(c: Context):
    return c.flags["wonderful"], ""


@_per_entry("xarak", lambda c: c.flags["integral"])
def p_xarak(c: Context):
    lhs, rhs = xarak_check(c.pair, c.char, c.bg)
    return lhs == rhs, f"lhs {lhs}, rhs {rhs}"


NEGATIVE_SEARCH = (("A3", range(-2, 3), 3), ("C2", range(-2, 3), 3))
NEGATIVES_REQUIRED = 5


@_prop("xarak-negatives")
def p_xarak_neg(ctxs) -> Iterator[Outcome]:
    found, tried = [], 0
    for lab, box, terms in NEGATIVE_SEARCH:
        n, hits = labelled_non_wonderful(algebra(lab), box, terms)
        tried += n
        found.extend(hits)
    agree = all(xarak_check(p, ch) == (False, False) for p, ch in found)
    ok = len(found) >= NEGATIVES_REQUIRED and agree
    yield Outcome("xarak-negatives", "sl4+sp4", ok,
                  f"{tried} integral candidates searched, {len(found)} non-wonderful "
                  f"(need {NEGATIVES_REQUIRED})")


def _wi(c: Context) -> bool:
    return c.flags["wonderful"] and c.flags["integral"]


@_per_entry("pusto3", _wi)
def p_pusto3(c: Context):
    return pusto3_check(c.pair, c.char, c.bg), ""


@_per_entry("wond1", _wi)
def p_wond1(c: Context):
    res = wond1_check(c.pair, c.char, c.bg)
    return all(ok for _, ok in res), "; ".join(n for n, ok in res if not ok)


@_per_entry("wond2", _wi)
def p_wond2(c: Context):
    res = wond2_check(c.pair, c.char, c.bg)
    return all(ok for _, ok in res), "; ".join(n for n, ok in res if not ok)


@_per_entry("useful", _wi)
def p_useful(c: Context):
    out = []
    for side in ("e1", "e2"):
        hyp, concl = useful_check(c.pair, c.char, side, c.bg)
        out.append((not hyp) or concl)
    return all(out), ""


@_per_entry("richardson", _wi)
def p_richardson(c: Context):
    a = levi_richardson(c.pair, c.char, "e1", c.bg)
    b = levi_richardson(c.pair, c.char, "e2", c.bg)
    return a and b, f"e1 in l2: {a}, e2 in l1: {b}"


def _small_rect(c: Context) -> bool:
    return c.alg.root_system.label in ("A3", "C2") and c.flags["rectangular"]


@_per_entry("rectan")
def p_rectan(c: Context):
    # is_rectangular raises TheoremViolation when the two clauses disagree
    return True, f"rectangular: {is_rectangular(c.pair, c.char)}"


@_per_entry("pr-even", _small_rect)
def p_pr_even(c: Context):
    lhs, rhs = pr_even_check(c.pair, c.char, c.bg)
    return lhs == rhs, f"pair even {lhs}, e1 and e2 even {rhs}"


@_per_entry("killing-duality")
def p_duality(c: Context):
    lhs, rhs = killing_duality(c.pair)
    return lhs == rhs, f"dim {lhs.dim} vs {rhs.dim}"


@_per_entry("denominators")
def p_denominators(c: Context):
    d = denominator_check(c.pair, c.char, c.bg)
    return d["verdict"], f"max denominator {d['max_denominator']}, c({d['s_type']}) = {d['c_s']}"


FIGURES = (("figure1", "e6-d5-2a1"), ("figure2", "e7-a4a1"))


def golden_text(name: str) -> str:
    return resources.files("nilpairs").joinpath("data", f"{name}.txt").read_text(encoding="utf-8")


@_prop("figures")
def p_figures(ctxs, golden: dict | None = None) -> Iterator[Outcome]:
    golden = golden or {}
    for fig, entry in FIGURES:
        c = Context(entry)
        text = golden[fig] if fig in golden else golden_text(fig)
        got = GridRender.from_grading(c.bg, c.z)
        try:
            want = GridRender.parse(text)
        except (ValueError, IndexError) as exc:
            yield Outcome("figures", fig, False, f"unreadable golden: {exc}")
            continue
        ok = got.cells == want.cells and got.render() == text
        yield Outcome("figures", fig, ok, f"{entry}: total {got.total}, stars {len(got.stars)}")


# ---------------------------------------------------------------------------

def select(filter_: str | None) -> list[str]:
    """Comma-separated property names; a key that is not a name selects by substring."""
    names = list(PROPERTIES)
    if not filter_:
        return names
    keys = [k.strip() for k in filter_.split(",") if k.strip()]
    chosen = set()
    for k in keys:
        chosen |= {k} if k in PROPERTIES else {n for n in names if k in n}
    if not chosen:
        raise KeyError(f"no property matches {filter_!r}")
    return [n for n in names if n in chosen]


def run_suite(filter_: str | None = None, entries: Iterable[str] | None = None,
              seed: int = DEFAULT_SEED, golden: dict | None = None) -> list[Outcome]:
    names = sorted(entries) if entries is not None else catalog_names()
    ctxs = [Context(n, seed) for n in names]
    out: list[Outcome] = []
    for prop in select(filter_):
        fn = PROPERTIES[prop]
        it = fn(ctxs, golden) if prop == "figures" else fn(ctxs)
        out.extend(it)
    return out


def summary(outcomes: list[Outcome]) -> list[tuple[str, int, int]]:
    order: dict[str, list[int]] = {}
    for o in outcomes:
        acc = order.setdefault(o.prop, [0, 0])
        acc[0 if o.passed else 1] += 1
    return [(k, a, b) for k, (a, b) in order.items()]
