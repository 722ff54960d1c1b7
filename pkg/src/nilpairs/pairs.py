"""Nilpotent pairs, characteristics, rectangularity and sl2 completion.

Elements are coordinate tuples in the basis of a :class:`LieAlgebraQ`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .algebra import LieAlgebraQ
from .exactla import (ZERO, InconsistentSystem, IrrationalSpectrum, QMatrix, Subspace,
                      eigenvalues, image, kernel, minpoly_is_squarefree, qvec,
                      solve_affine, vec_add, vec_scale, zero_vec)


class TheoremViolation(AssertionError):
    """Two independently computed sides of a theorem disagree."""


class CharacteristicNotFound(ValueError):
    def __init__(self, stage: str, detail: str = ""):
        super().__init__(f"no solution found at stage {stage}" + (f": {detail}" if detail else ""))
        self.stage = stage


@dataclass(frozen=True)
class NilpotentPair:
    alg: LieAlgebraQ = field(repr=False, compare=False)
    e1: tuple
    e2: tuple

    @property
    def trivial(self) -> bool:
        return not any(self.e1) or not any(self.e2)

    @property
    def elements(self) -> tuple:
        return (self.e1, self.e2)

    def swapped(self) -> "NilpotentPair":
        return NilpotentPair(self.alg, self.e2, self.e1)


@dataclass(frozen=True)
class Characteristic:
    h1: tuple
    h2: tuple

    def swapped(self) -> "Characteristic":
        return Characteristic(self.h2, self.h1)


@dataclass(frozen=True)
class Sl2Triple:
    e: tuple
    tih: tuple
    f: tuple

    def check(self, alg: LieAlgebraQ) -> bool:
        br = alg.bracket
        return (br(self.tih, self.e) == vec_scale(2, self.e)
                and br(self.tih, self.f) == vec_scale(-2, self.f)
                and br(self.e, self.f) == tuple(self.tih))


def make_pair(alg: LieAlgebraQ, e1: Sequence, e2: Sequence) -> NilpotentPair:
    return NilpotentPair(alg, qvec(e1), qvec(e2))


# ---------------------------------------------------------------------------

def _stack(mats: Sequence[QMatrix]) -> QMatrix:
    rows = tuple(r for m in mats for r in m.rows)
    return QMatrix._raw(rows, mats[0].ncols)


def centralizer(alg: LieAlgebraQ, elements: Iterable[Sequence]) -> Subspace:
    mats = [alg.ad(x) for x in elements if any(x)]
    if not mats:
        return Subspace.full(alg.dim)
    return kernel(_stack(mats))


def is_ad_nilpotent(alg: LieAlgebraQ, x: Sequence) -> bool:
    """``ad x`` is nilpotent iff the descending chain of images reaches 0."""
    m = alg.ad(x)
    cur = image(m)
    while cur.dim:
        nxt = cur.image(m)
        if nxt.dim == cur.dim:
            return False
        cur = nxt
    return True


def nilpotency_index(alg: LieAlgebraQ, x: Sequence) -> int:
    """Least ``k`` with ``(ad x)^k = 0``."""
    m = alg.ad(x)
    cur, k = Subspace.full(alg.dim), 0
    while cur.dim:
        nxt = cur.image(m)
        if nxt.dim == cur.dim:
            raise ValueError("element is not ad-nilpotent")
        cur, k = nxt, k + 1
    return k


# ---------------------------------------------------------------------------
# characteristics

@dataclass
class CharacteristicReport:
    clauses: list  # (name, passed, detail)

    @property
    def ok(self) -> bool:
        return all(p for _, p, _ in self.clauses)

    def failed(self) -> list[str]:
        return [n for n, p, _ in self.clauses if not p]

    def clause(self, name: str) -> bool:
        for n, p, _ in self.clauses:
            if n == name:
                return p
        raise KeyError(name)


CLAUSES = ("commutation", "eigen-relations", "orthogonality", "semisimplicity", "rationality")


def _rational_spectrum(m: QMatrix) -> bool:
    try:
        lams = eigenvalues(m)
    except IrrationalSpectrum:
        return False
    if m.is_diagonal():
        return True
    return sum(kernel(m.shift(lam)).dim for lam in lams) == m.nrows


def verify_characteristic(pair: NilpotentPair, h1: Sequence, h2: Sequence,
                          z: Subspace | None = None) -> CharacteristicReport:
    alg = pair.alg
    br = alg.bracket
    h1, h2 = qvec(h1), qvec(h2)
    e1, e2 = pair.e1, pair.e2
    zero = alg.zero()
    clauses = []
    comm = not any(br(h1, h2)) and not any(br(e1, e2))
    clauses.append(("commutation", comm, "[h1,h2] = 0 and [e1,e2] = 0"))
    rel = (br(h1, e1) == e1 and br(h1, e2) == zero and br(h2, e1) == zero and br(h2, e2) == e2)
    clauses.append(("eigen-relations", rel, "[h_i, e_j] = delta_ij e_j"))
    if z is None:
        z = centralizer(alg, pair.elements)
    orth = all(alg.kappa(h, v) == 0 for h in (h1, h2) for v in z.basis)
    clauses.append(("orthogonality", orth, f"h1, h2 orthogonal to z(e) (dim {z.dim})"))
    ad1, ad2 = alg.ad(h1), alg.ad(h2)
    ss = minpoly_is_squarefree(ad1) and minpoly_is_squarefree(ad2)
    clauses.append(("semisimplicity", ss, "minimal polynomials of ad h_i squarefree"))
    rat = ss and _rational_spectrum(ad1) and _rational_spectrum(ad2)
    clauses.append(("rationality", rat, "ad h_i have rational spectrum"))
    return CharacteristicReport(clauses)


def _cartan_rows(alg: LieAlgebraQ) -> tuple:
    """Equations forcing the non-Cartan coordinates to vanish."""
    if alg.root_system is None:
        return ()
    r = alg.rank
    rows = []
    for k in range(r, alg.dim):
        row = [ZERO] * alg.dim
        row[k] = 1
        rows.append(tuple(qvec(row)))
    return tuple(rows)


def _solve_h(alg: LieAlgebraQ, base_rows: list, rhs: list, prefer_cartan: bool):
    n = alg.dim
    a = QMatrix._raw(tuple(tuple(r) for r in base_rows), n)
    if prefer_cartan:
        extra = _cartan_rows(alg)
        if extra:
            try:
                return solve_affine(QMatrix._raw(a.rows + extra, n), list(rhs) + [ZERO] * len(extra))
            except InconsistentSystem:
                pass
    return solve_affine(a, rhs)


def _representatives(part: tuple, ker: Subspace, limit: int = 64):
    yield part
    count = 0
    for b in ker.basis:
        for c in (1, -1):
            count += 1
            if count > limit:
                return
            yield vec_add(part, vec_scale(c, b))


def _semisimple(alg: LieAlgebraQ, h: tuple) -> bool:
    m = alg.ad(h)
    return minpoly_is_squarefree(m) and _rational_spectrum(m)


def solve_characteristic(pair: NilpotentPair, prefer_cartan: bool = True) -> Characteristic:
    """Construct a characteristic by affine solves (see module docstring of pairs)."""
    alg = pair.alg
    n = alg.dim
    z = centralizer(alg, pair.elements)
    kz = [alg.killing.T.apply(v) for v in z.basis]
    ad1, ad2 = alg.ad(pair.e1), alg.ad(pair.e2)

    def system(first: QMatrix, other: QMatrix, target: tuple, extra: tuple = ()):
        rows = list(first.rows) + list(other.rows) + kz + list(extra)
        rhs = [-c for c in target] + [ZERO] * (n + len(kz) + len(extra))
        return rows, rhs

    rows, rhs = system(ad1, ad2, pair.e1)
    try:
        p1, k1 = _solve_h(alg, rows, rhs, prefer_cartan)
    except InconsistentSystem:
        raise CharacteristicNotFound("1", "no h1 with [h1,e1]=e1, [h1,e2]=0, h1 orthogonal to z(e)")
    for h1 in _representatives(p1, k1):
        if not _semisimple(alg, h1):
            continue
        rows, rhs = system(ad2, ad1, pair.e2, alg.ad(h1).rows)
        try:
            p2, k2 = _solve_h(alg, rows, rhs, prefer_cartan)
        except InconsistentSystem:
            continue
        for h2 in _representatives(p2, k2):
            if _semisimple(alg, h2):
                rep = verify_characteristic(pair, h1, h2, z)
                if rep.ok:
                    return Characteristic(h1, h2)
    raise CharacteristicNotFound("4", "no semisimple representative among enumerated solutions")


def is_nilpotent_pair(alg: LieAlgebraQ, e1: Sequence, e2: Sequence) -> tuple[bool, Characteristic | None]:
    pair = make_pair(alg, e1, e2)
    if any(alg.bracket(pair.e1, pair.e2)):
        return False, None
    if not (is_ad_nilpotent(alg, pair.e1) and is_ad_nilpotent(alg, pair.e2)):
        return False, None
    try:
        return True, solve_characteristic(pair)
    except CharacteristicNotFound:
        return False, None


# ---------------------------------------------------------------------------
# rectangular pairs and sl2-triples

def in_image_of_ad(alg: LieAlgebraQ, e: Sequence, x: Sequence) -> bool:
    try:
        solve_affine(alg.ad(e), x)
        return True
    except InconsistentSystem:
        return False


def is_rectangular(pair: NilpotentPair, char: Characteristic) -> bool:
    """h1 in im(ad e1); the equivalent clause h2 in im(ad e2) is checked as well."""
    alg = pair.alg
    c1 = in_image_of_ad(alg, pair.e1, char.h1)
    c2 = in_image_of_ad(alg, pair.e2, char.h2)
    if c1 != c2:
        raise TheoremViolation(f"rectangularity clauses disagree: h1 {c1}, h2 {c2}")
    return c1


def complete_sl2(alg: LieAlgebraQ, e: Sequence) -> Sl2Triple:
    """Jacobson-Morozov completion of a nonzero ad-nilpotent ``e``."""
    e = qvec(e)
    if not any(e):
        raise ValueError("cannot complete the zero element")
    ad = alg.ad(e)
    try:
        zsol, _ = solve_affine(ad @ ad, vec_scale(-2, e))
    except InconsistentSystem:
        raise ValueError("element is not nilpotent")
    tih = ad.apply(zsol)
    return Sl2Triple(e, tih, _solve_f(alg, e, tih))


def _solve_f(alg: LieAlgebraQ, e: tuple, tih: tuple, extra_rows=(), extra_rhs=()) -> tuple:
    n = alg.dim
    adh = alg.ad(tih)
    rows = alg.ad(e).rows + adh.shift(-2).rows + tuple(extra_rows)
    rhs = list(tih) + [ZERO] * n + list(extra_rhs)
    f, _ = solve_affine(QMatrix._raw(rows, n), rhs)
    return f


def commuting_triples(pair: NilpotentPair, char: Characteristic) -> tuple[Sl2Triple, Sl2Triple] | None:
    """Commuting sl2-triples {e1, 2h1, f1}, {e2, 2h2, f2} for a rectangular pair."""
    alg = pair.alg
    t1, t2 = vec_scale(2, char.h1), vec_scale(2, char.h2)
    try:
        f1 = _solve_f(alg, pair.e1, t1)
    except InconsistentSystem:
        return None
    try:
        cons = alg.ad(pair.e1).rows + alg.ad(char.h1).rows + alg.ad(f1).rows
        f2 = _solve_f(alg, pair.e2, t2, cons, [ZERO] * (3 * alg.dim))
    except InconsistentSystem:
        return None
    s1, s2 = Sl2Triple(pair.e1, t1, f1), Sl2Triple(pair.e2, t2, f2)
    if not (s1.check(alg) and s2.check(alg)):
        return None
    for x in (s1.e, s1.tih, s1.f):
        for y in (s2.e, s2.tih, s2.f):
            if any(alg.bracket(x, y)):
                return None
    return s1, s2


def killing_duality(pair: NilpotentPair) -> tuple[Subspace, Subspace]:
    """Both sides of z(e)^perp = [g, e1] + [g, e2]."""
    from .exactla import orth_complement
    alg = pair.alg
    z = centralizer(alg, pair.elements)
    lhs = orth_complement(z, alg.killing)
    rhs = image(alg.ad(pair.e1)) + image(alg.ad(pair.e2))
    return lhs, rhs


def zero_characteristic(alg: LieAlgebraQ) -> Characteristic:
    return Characteristic(zero_vec(alg.dim), zero_vec(alg.dim))
