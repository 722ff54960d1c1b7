"""Classification predicates for nilpotent pairs and checks of the structure
theorems about them (wonderful, integral, even pairs, labels, exponents,
denominators)."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import lcm

from gmpy2 import mpq

from .algebra import LieAlgebraQ, cartan_labels
from .exactla import (QMatrix, Subspace, eigenvalues, kernel,
                      restrict_kernel)
from .grading import (BiGrading, bigrade, integral_fractional_split, is_integer, limit,
                      limit_terms, slice_)
from .pairs import (Characteristic, NilpotentPair, TheoremViolation, centralizer,
                    complete_sl2, is_rectangular)
from .rootsystem import levi_data, min_bound_d, subsystem_data, weyl_dominate


class PreconditionError(ValueError):
    pass


class HypothesisViolation(ValueError):
    pass


def _z(pair: NilpotentPair) -> Subspace:
    return centralizer(pair.alg, pair.elements)


def _bg(pair, char, bg):
    return bg if bg is not None else bigrade(pair.alg, char)


# ---------------------------------------------------------------------------
# wonderful / integral

def is_wonderful(pair: NilpotentPair, char: Characteristic, bg: BiGrading | None = None):
    """Compare (ad e1)^i (ad e2)^j h(i,j) with z(e)_{i,j} cell by cell."""
    bg = _bg(pair, char, bg)
    z = _z(pair)
    zpieces = slice_(bg, z, "PP").cells
    terms = limit_terms(bg.cell(0, 0), pair, "both")
    keys = set(terms) | {(int(p), int(q)) for p, q in zpieces}
    cert = []
    for i, j in sorted(keys):
        lhs = terms.get((i, j), Subspace.zero(pair.alg.dim))
        rhs = zpieces.get((mpq(i), mpq(j)), Subspace.zero(pair.alg.dim))
        cert.append((i, j, lhs.dim, rhs.dim, lhs == rhs))
    return all(c[-1] for c in cert), cert


def is_integral(pair: NilpotentPair, char: Characteristic, bg: BiGrading | None = None) -> bool:
    bg = _bg(pair, char, bg)
    direct = all(is_integer(p) and is_integer(q) for p, q in bg.support)
    z = _z(pair)
    via_z = slice_(bg, z, "ZZ").dim == z.dim
    if direct != via_z:
        raise TheoremViolation("integrality of the grading disagrees with integrality of z(e)")
    return direct


# ---------------------------------------------------------------------------
# report

@dataclass
class ClassificationReport:
    flags: dict
    dims: dict
    wonderful_certificate: list
    label_report: dict | None = None
    z_eigenvalues: list = field(default_factory=list)


def classification_report(pair: NilpotentPair, char: Characteristic,
                          bg: BiGrading | None = None, labels: bool = True) -> ClassificationReport:
    alg = pair.alg
    bg = _bg(pair, char, bg)
    z = _z(pair)
    dim_z, dim_h = z.dim, bg.cell(0, 0).dim
    rank = alg.rank
    wonderful, cert = is_wonderful(pair, char, bg)
    integral = is_integral(pair, char, bg)
    flags = {
        "trivial": pair.trivial,
        "principal": dim_z == rank,
        "almost_principal": dim_z == rank + 1,
        "even": dim_z == dim_h,
        "almost_even": dim_z == dim_h + 1,
        "wonderful": wonderful,
        "integral": integral,
        "rectangular": is_rectangular(pair, char),
    }
    if flags["principal"] and not flags["even"]:
        raise TheoremViolation("principal pair that is not even")
    if flags["almost_principal"] and not flags["almost_even"]:
        raise TheoremViolation("almost principal pair that is not almost even")
    if flags["even"] and not (wonderful and integral):
        raise TheoremViolation("even pair that is not wonderful and integral")
    if flags["rectangular"] and not wonderful:
        raise TheoremViolation("rectangular pair that is not wonderful")
    lab = None
    if labels and integral and cartan_labels(alg, char.h1) is not None and cartan_labels(alg, char.h2) is not None:
        lab = labels_report(pair, char, bg)
    return ClassificationReport(flags, {"dim_z_e": dim_z, "dim_z_h": dim_h, "rank": rank}, cert, lab,
                                bg.eigenvalue_multiset(z))


# ---------------------------------------------------------------------------
# theorem checks

def _z_cells(bg: BiGrading, space: Subspace) -> dict:
    return slice_(bg, space, "all").cells


def xarak_check(pair: NilpotentPair, char: Characteristic, bg: BiGrading | None = None):
    """Both sides of the characterization of wonderful integral pairs."""
    bg = _bg(pair, char, bg)
    if not is_integral(pair, char, bg):
        raise PreconditionError("pair is not integral")
    alg = pair.alg
    z = _z(pair)
    lhs = limit(bg.cell(0, 0), pair) == slice_(bg, z, "PP").subspace
    zc = _z_cells(bg, z)
    c1 = all(not (p < 0 and q < 0) for p, q in zc)
    z1 = _z_cells(bg, centralizer(alg, [pair.e1]))
    c2 = all(not (q == 0 and p < 0) for p, q in z1)
    z2 = _z_cells(bg, centralizer(alg, [pair.e2]))
    c3 = all(not (p == 0 and q < 0) for p, q in z2)
    rhs = c1 and c2 and c3
    if lhs != rhs:
        raise TheoremViolation(f"characterization sides disagree: lhs {lhs}, rhs {rhs}")
    return lhs, rhs


def pusto3_check(pair: NilpotentPair, char: Characteristic, bg: BiGrading | None = None) -> bool:
    bg = _bg(pair, char, bg)
    if not (is_wonderful(pair, char, bg)[0] and is_integral(pair, char, bg)):
        raise PreconditionError("pair must be wonderful and integral")
    return all(not (p < 0 and q < 0) for p, q in _z_cells(bg, _z(pair)))


def _bracket_image(alg: LieAlgebraQ, space: Subspace, e) -> Subspace:
    return Subspace(alg.dim, (alg.bracket(v, e) for v in space.basis))


def _row(bg: BiGrading, which: int, fixed, pred) -> dict:
    """Cells (p, q) with the other coordinate equal to ``fixed`` and pred(own)."""
    out = {}
    for (p, q), s in bg.cells.items():
        own, other = (p, q) if which == 1 else (q, p)
        if other == fixed and pred(own):
            out[own] = s
    return out


def levi_richardson(pair: NilpotentPair, char: Characteristic, side: str = "e1",
                    bg: BiGrading | None = None) -> bool:
    """e1 Richardson in l2 = g_{*,0}: [sum_{p>=0} g_{p,0}, e1] = sum_{p>=1} g_{p,0}
    (side "e2": the same for e2 in l1)."""
    bg = _bg(pair, char, bg)
    alg = pair.alg
    which, e = (1, pair.e1) if side == "e1" else (2, pair.e2)
    nonneg = _row(bg, which, 0, lambda x: is_integer(x) and x >= 0)
    pos = _row(bg, which, 0, lambda x: is_integer(x) and x >= 1)
    src = Subspace(alg.dim, [b for s in nonneg.values() for b in s.basis])
    tgt = Subspace(alg.dim, [b for s in pos.values() for b in s.basis])
    return _bracket_image(alg, src, e) == tgt


def richardson_check(pair: NilpotentPair, char: Characteristic, side: str,
                     bg: BiGrading | None = None) -> bool:
    """Side "e2": p2 = g_{*,P}, test [p2, e2] = g_{*,N}.  Side "e1": p1 = g_{P,*}."""
    bg = _bg(pair, char, bg)
    alg = pair.alg
    idx, e = (1, pair.e2) if side == "e2" else (0, pair.e1)
    par, nil = [], []
    for k, s in bg.cells.items():
        x = k[idx]
        if is_integer(x) and x >= 0:
            par.extend(s.basis)
            if x >= 1:
                nil.extend(s.basis)
    p = Subspace(alg.dim, par)
    return _bracket_image(alg, p, e) == Subspace(alg.dim, nil)


def wond1_check(pair: NilpotentPair, char: Characteristic, bg: BiGrading | None = None) -> list[tuple]:
    bg = _bg(pair, char, bg)
    alg = pair.alg
    hh = bg.cell(0, 0)
    e1, e2, h1, h2 = pair.e1, pair.e2, char.h1, char.h2
    P1 = ("sets", "P", "*")
    P2 = ("sets", "*", "P")
    out = [
        ("lim_e1 h = z(e1,h2)_P", limit(hh, pair, "e1") == slice_(bg, centralizer(alg, [e1, h2]), P1).subspace),
        ("lim_e2 h = z(e2,h1)_P", limit(hh, pair, "e2") == slice_(bg, centralizer(alg, [e2, h1]), P2).subspace),
        ("lim_e1 z(e2,h1,h2) = z(e2,e1,h2)_P",
         limit(centralizer(alg, [e2, h1, h2]), pair, "e1") == slice_(bg, centralizer(alg, [e1, e2, h2]), P1).subspace),
        ("lim_e2 z(e1,h1,h2) = z(e1,e2,h1)_P",
         limit(centralizer(alg, [e1, h1, h2]), pair, "e2") == slice_(bg, centralizer(alg, [e1, e2, h1]), P2).subspace),
    ]
    return out


def _graded_surjective(alg, pieces: dict, e) -> bool:
    """[A_i, e] = A_{i+1} for all integers i >= 0, pieces keyed by degree."""
    zero = Subspace.zero(alg.dim)
    degs = [d for d in pieces if is_integer(d) and d >= 0]
    top = max(degs, default=0)
    for i in range(int(top) + 1):
        src = pieces.get(mpq(i), zero)
        tgt = pieces.get(mpq(i + 1), zero)
        if _bracket_image(alg, src, e) != tgt:
            return False
    return True


def wond2_check(pair: NilpotentPair, char: Characteristic, bg: BiGrading | None = None) -> list[tuple]:
    bg = _bg(pair, char, bg)
    alg = pair.alg
    hh = bg.cell(0, 0)
    e1, e2, h1, h2 = pair.e1, pair.e2, char.h1, char.h2
    out = []
    z1 = centralizer(alg, [e1, h2])
    l1 = limit(hh, pair, "e1")
    out.append(("lim_e1 h = z(e1,h2)_Z = z(e1,h2)_P",
                l1 == slice_(bg, z1, ("sets", "Z", "*")).subspace == slice_(bg, z1, ("sets", "P", "*")).subspace))
    z2 = centralizer(alg, [e2, h1])
    l2 = limit(hh, pair, "e2")
    out.append(("lim_e2 h = z(e2,h1)_Z = z(e2,h1)_P",
                l2 == slice_(bg, z2, ("sets", "*", "Z")).subspace == slice_(bg, z2, ("sets", "*", "P")).subspace))
    out.append(("[g_{i,0}, e1] = g_{i+1,0}", _graded_surjective(alg, _row(bg, 1, 0, lambda x: True), e1)))
    out.append(("[g_{0,j}, e2] = g_{0,j+1}", _graded_surjective(alg, _row(bg, 2, 0, lambda x: True), e2)))
    # z(e2,h2) is graded by h1 and sits in q = 0
    za = {p: s for (p, q), s in slice_(bg, centralizer(alg, [e2, h2]), "all").cells.items()}
    out.append(("[z(e2,h2)_i, e1] = z(e2,h2)_{i+1}", _graded_surjective(alg, za, e1)))
    zb = {q: s for (p, q), s in slice_(bg, centralizer(alg, [e1, h1]), "all").cells.items()}
    out.append(("[z(e1,h1)_j, e2] = z(e1,h1)_{j+1}", _graded_surjective(alg, zb, e2)))
    return out


def useful_check(pair: NilpotentPair, char: Characteristic, side: str = "e1",
                 bg: BiGrading | None = None) -> tuple[bool, bool]:
    """On a = (l2)_Z graded by h1 (side e1) or (l1)_Z graded by h2 (side e2):
    returns (hypothesis dim z_a(e)_P = dim a_0, conclusion).  The conclusion
    is surjectivity [a_i, e] = a_{i+1} for i >= 0 and z_a(e) = z_a(e)_P."""
    bg = _bg(pair, char, bg)
    alg = pair.alg
    which, e = (1, pair.e1) if side == "e1" else (2, pair.e2)
    pieces = _row(bg, which, 0, is_integer)
    a = Subspace(alg.dim, [b for s in pieces.values() for b in s.basis])
    za = restrict_kernel(alg.ad(e), a)
    zcells = slice_(bg, za, "all").cells
    own = (lambda k: k[0]) if which == 1 else (lambda k: k[1])
    zp = sum(s.dim for k, s in zcells.items() if own(k) >= 0)
    a0 = pieces.get(mpq(0))
    hyp = zp == (a0.dim if a0 else 0)
    concl = _graded_surjective(alg, pieces, e) and zp == za.dim
    return hyp, concl


def lemma_ravno(pair: NilpotentPair, m: Subspace, mode: str) -> bool:
    return limit(m, pair, mode).dim == m.dim


def sovpad_check(pair: NilpotentPair, bg: BiGrading) -> bool:
    hh = bg.cell(0, 0)
    a = limit(limit(hh, pair, "e2"), pair, "e1")
    b = limit(limit(hh, pair, "e1"), pair, "e2")
    c = limit(hh, pair, "both")
    return a == b == c


def inclu_check(pair: NilpotentPair, char: Characteristic, bg: BiGrading) -> list[tuple]:
    alg = pair.alg
    hh = bg.cell(0, 0)
    z = _z(pair)
    return [
        ("lim_e1 h in z(e1,h2)_P", slice_(bg, centralizer(alg, [pair.e1, char.h2]), ("sets", "P", "*")).subspace
         .contains(limit(hh, pair, "e1"))),
        ("lim_e2 h in z(e2,h1)_P", slice_(bg, centralizer(alg, [pair.e2, char.h1]), ("sets", "*", "P")).subspace
         .contains(limit(hh, pair, "e2"))),
        ("lim_e h in z(e)_PP", slice_(bg, z, "PP").subspace.contains(limit(hh, pair))),
    ]


# ---------------------------------------------------------------------------
# single nilpotent elements

def is_even_nilpotent(alg: LieAlgebraQ, e) -> bool:
    """All eigenvalues of ad tih are even for an sl2-triple through e."""
    if not any(e):
        return True
    t = complete_sl2(alg, e)
    return all(lam.denominator == 1 and int(lam) % 2 == 0 for lam in eigenvalues(alg.ad(t.tih)))


def pr_even_check(pair: NilpotentPair, char: Characteristic, bg: BiGrading | None = None) -> tuple[bool, bool]:
    """For a rectangular pair: (pair even, both e_i even nilpotents)."""
    bg = _bg(pair, char, bg)
    if not is_rectangular(pair, char):
        raise PreconditionError("pair is not rectangular")
    alg = pair.alg
    lhs = _z(pair).dim == bg.cell(0, 0).dim
    rhs = is_even_nilpotent(alg, pair.e1) and is_even_nilpotent(alg, pair.e2)
    if lhs != rhs:
        raise TheoremViolation("evenness of the pair differs from evenness of e1 and e2")
    return lhs, rhs


# ---------------------------------------------------------------------------
# labels, exponents, denominators

def _levi_subset(labels) -> list[int]:
    return [i for i, x in enumerate(labels) if x == 0]


def _adapted(rs, primary, secondary, principalish: bool, richardson: bool | None):
    a, b, word = weyl_dominate(rs, primary, secondary)
    levi = _levi_subset(a)
    ld = levi_data(rs, levi)
    d = min_bound_d(rs, levi)
    out = {
        "primary": [str(x) for x in a],
        "secondary": [str(x) for x in b],
        "reflections": word,
        "levi": ld.type_label,
        "coxeter": ld.coxeter_max,
        "d": str(d) if d is not None else None,
    }
    lab = {
        "(i) primary labels in {0,1}": all(x in (0, 1) for x in a),
        "(ii) primary 0 => secondary in {0,1}": all(y in (0, 1) for x, y in zip(a, b) if x == 0),
        "(iii) primary 1 => d <= secondary <= 0": all(
            (d is None or y >= d) and y <= 0 for x, y in zip(a, b) if x == 1),
    }
    out["labels_theorem"] = lab
    if principalish:
        bound = -ld.coxeter_max + 1
        pc = {
            "(i) primary labels in {0,1}": lab["(i) primary labels in {0,1}"],
            "(ii) primary 0 => secondary = 1": all(y == 1 for x, y in zip(a, b) if x == 0),
            "(iii) coxeter bound": all(bound <= y <= 0 for x, y in zip(a, b) if x == 1),
        }
        out["pr_char"] = pc
        out["coxeter_bound"] = bound
        out["richardson"] = richardson
        out["min_secondary_on_primary_1"] = str(min((y for x, y in zip(a, b) if x == 1), default=0))
    return out


def labels_report(pair: NilpotentPair, char: Characteristic, bg: BiGrading | None = None) -> dict:
    """Labels of h1, h2 for simple roots adapted to h2 (and, symmetrically, to h1)."""
    alg = pair.alg
    bg = _bg(pair, char, bg)
    l1, l2 = cartan_labels(alg, char.h1), cartan_labels(alg, char.h2)
    if l1 is None or l2 is None:
        raise PreconditionError("h1, h2 must lie in the standard Cartan subalgebra")
    if not all(x.denominator == 1 for x in l1 + l2):
        raise PreconditionError("pair is not integral")
    rs = alg.root_system
    dim_z = _z(pair).dim
    principalish = dim_z in (rs.rank, rs.rank + 1)
    r2 = richardson_check(pair, char, "e2", bg) if principalish else None
    r1 = richardson_check(pair, char, "e1", bg) if principalish else None
    return {
        "labels_h1": [str(x) for x in l1],
        "labels_h2": [str(x) for x in l2],
        "adapted_to_h2": _adapted(rs, l2, l1, principalish, r2),
        "adapted_to_h1": _adapted(rs, l1, l2, principalish, r1),
    }


def limit_eigenvalues(pair: NilpotentPair, char: Characteristic, bg: BiGrading | None = None) -> list[tuple]:
    bg = _bg(pair, char, bg)
    return bg.eigenvalue_multiset(limit(bg.cell(0, 0), pair))


def levi_of(alg: LieAlgebraQ, h) -> "object":
    """LeviData of z(h) for a Cartan element with integral labels."""
    labels = cartan_labels(alg, h)
    if labels is None:
        raise PreconditionError("element must lie in the standard Cartan subalgebra")
    rs = alg.root_system
    roots = [r for r in rs.positive_roots if sum(labels[i] * r[i] for i in range(rs.rank)) == 0]
    return subsystem_data(rs, roots)


def exponents_check(pair: NilpotentPair, char: Characteristic, bg: BiGrading | None = None) -> dict:
    """Eigenvalues (a_i, b_i) of (h1, h2) on lim_e h against Levi exponents.

    The nonzero a_i are compared with the exponents of l2 = z(h2), and the
    nonzero b_i with those of l1 = z(h1).  The set {a_i : b_i != 0} is
    reported too, since it is the literal form of the statement sometimes
    quoted; it does not match in general.
    """
    alg = pair.alg
    bg = _bg(pair, char, bg)
    dim_z = _z(pair).dim
    if dim_z not in (alg.rank, alg.rank + 1):
        raise PreconditionError("pair is neither principal nor almost principal")
    ev = limit_eigenvalues(pair, char, bg)
    l2, l1 = levi_of(alg, char.h2), levi_of(alg, char.h1)
    side2 = sorted(int(a) for a, b in ev if a != 0)
    side1 = sorted(int(b) for a, b in ev if b != 0)
    printed2 = sorted(int(a) for a, b in ev if b != 0)
    return {
        "eigenvalues": [(str(a), str(b)) for a, b in ev],
        "l2": l2.type_label, "exponents_l2": sorted(l2.exponents), "alphas": side2,
        "l1": l1.type_label, "exponents_l1": sorted(l1.exponents), "betas": side1,
        "verdict_l2": Counter(side2) == Counter(l2.exponents),
        "verdict_l1": Counter(side1) == Counter(l1.exponents),
        "literal_alphas_with_beta_nonzero": printed2,
    }


def denominator_check(pair: NilpotentPair, char: Characteristic, bg: BiGrading | None = None) -> dict:
    """Denominators of the eigenvalues of ad h1, ad h2 against c(s), s = [g_ZZ, g_ZZ]."""
    alg = pair.alg
    bg = _bg(pair, char, bg)
    l1, l2 = cartan_labels(alg, char.h1), cartan_labels(alg, char.h2)
    if l1 is None or l2 is None:
        raise PreconditionError("h1, h2 must lie in the standard Cartan subalgebra")
    rs = alg.root_system

    def val(lab, r):
        return sum((lab[i] * r[i] for i in range(rs.rank)), mpq(0))

    roots = [r for r in rs.positive_roots if is_integer(val(l1, r)) and is_integer(val(l2, r))]
    s = subsystem_data(rs, roots)
    c = s.cartan_det
    dens = [x.denominator for k in bg.support for x in k]
    maxden = max(dens, default=1)
    den_lcm = lcm(*[int(d) for d in dens]) if dens else 1
    return {"max_denominator": int(maxden), "s_type": s.type_label, "c_s": c,
            "verdict": c % den_lcm == 0}


def rectangle_spectrum_check(h1: QMatrix, h2: QMatrix, e1: QMatrix, e2: QMatrix) -> dict:
    """Weights of a module given by the matrices of h1, h2, e1, e2 fill a rectangle."""
    from .exactla import joint_eigenspaces
    n = h1.nrows
    fixed = kernel(QMatrix._raw(e1.rows + e2.rows, n))
    if fixed.dim != 1:
        raise HypothesisViolation(f"fixed space of <e1, e2> has dimension {fixed.dim}, not 1")
    cells = {k: s.dim for k, s in joint_eigenspaces([h1, h2])}
    v = fixed.basis[0]
    p0 = next(h1.apply(v)[i] / v[i] for i in range(n) if v[i])
    q0 = next(h2.apply(v)[i] / v[i] for i in range(n) if v[i])
    rect = set()
    m = -p0
    while m <= p0:
        k = -q0
        while k <= q0:
            rect.add((m, k))
            k += 1
        m += 1
    return {
        "p0": p0, "q0": q0,
        "rectangle": set(cells) == rect,
        "cells_one_dimensional": all(d == 1 for d in cells.values()),
        "dimension_formula": n == (2 * p0 + 1) * (2 * q0 + 1),
    }


def module_of(alg: LieAlgebraQ, sub: Subspace, xs) -> list[QMatrix]:
    """Matrices of ad x restricted to an invariant subspace, in the basis of ``sub``."""
    out = []
    for x in xs:
        cols = [sub.coordinates(alg.bracket(x, b)) for b in sub.basis]
        out.append(QMatrix.from_columns(cols, sub.dim))
    return out


def almost_even_structure(pair: NilpotentPair, char: Characteristic, bg: BiGrading | None = None) -> dict:
    bg = _bg(pair, char, bg)
    alg = pair.alg
    z = _z(pair)
    if z.dim != bg.cell(0, 0).dim + 1:
        raise PreconditionError("pair is not almost even")
    lim = limit(bg.cell(0, 0), pair)
    zc = slice_(bg, z, "all").cells
    lc = slice_(bg, lim, "all").cells
    extra = [k for k, s in zc.items() if s.dim != (lc[k].dim if k in lc else 0)]
    if len(extra) != 1:
        raise TheoremViolation("z(e) is not lim_e h plus one line")
    p, q = extra[0]
    integral_case = is_integer(p) and is_integer(q)
    half = (not is_integer(p) and not is_integer(q) and is_integer(2 * p) and is_integer(2 * q))
    out = {"x_eigenvalue": (p, q), "integral_case": integral_case}
    if integral_case:
        out["verdict"] = p * q < 0
    else:
        ok = half and p > 0 and q > 0
        zz, _ = integral_fractional_split(bg)
        principal_zz = slice_(bg, z, "ZZ").dim == alg.rank
        rect = is_rectangular(pair, char)
        cartan = bg.cell(0, 0).dim == alg.rank
        out.update({"rectangular": rect, "principal_in_g_ZZ": principal_zz, "h_is_cartan": cartan,
                    "verdict": ok and rect and principal_zz and cartan})
    return out
