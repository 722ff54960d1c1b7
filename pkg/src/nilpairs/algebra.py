"""Lie algebras over Q given by structure constants, and Chevalley bases.

An element of an algebra is a tuple of rationals (coordinates in the algebra
basis).  For a Chevalley algebra the basis is ordered as

    h_1, ..., h_r,  e[beta] for positive beta,  f[beta] for positive beta

where ``h_i`` are the simple coroots and ``f[beta]`` is the root vector of
``-beta``.  Signs of the structure constants are fixed by Carter's
extraspecial-pair algorithm with the positive roots ordered by height and
then lexicographically.
"""
from __future__ import annotations

import re
from functools import cached_property
from typing import Sequence

from gmpy2 import mpq

from .exactla import (ZERO, InconsistentSystem, QMatrix, Subspace, kernel, lin_comb, qvec, solve_affine,
                      to_q, unit_vec, vec_sub, zero_vec)
from .rootsystem import RootSystem, add, neg, parse_root, root_label, sub


class LieAlgebraQ:
    """Finite-dimensional Lie algebra over Q with a sparse bracket table.

    ``table[i][j]`` is a tuple of ``(k, c)`` with ``[b_i, b_j] = sum c b_k``.
    """

    def __init__(self, labels: Sequence[str], table: dict[int, dict[int, tuple]],
                 root_system: RootSystem | None = None, weights: Sequence | None = None):
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.table = table
        self.root_system = root_system
        self.weights = tuple(weights) if weights is not None else None
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}

    def __repr__(self) -> str:
        name = self.root_system.label if self.root_system else "custom"
        return f"LieAlgebraQ({name}, dim={self.dim})"

    @property
    def rank(self) -> int:
        if self.root_system is None:
            raise ValueError("rank is only known for Chevalley algebras")
        return self.root_system.rank

    # -- elements -----------------------------------------------------------

    def zero(self) -> tuple:
        return zero_vec(self.dim)

    def basis_vector(self, i: int) -> tuple:
        return unit_vec(self.dim, i)

    def index(self, label: str) -> int:
        return self._label_index[label]

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        out = [ZERO] * self.dim
        ys = [(j, b) for j, b in enumerate(y) if b]
        table = self.table
        for i, a in enumerate(x):
            if not a:
                continue
            row = table.get(i)
            if not row:
                continue
            for j, b in ys:
                terms = row.get(j)
                if terms:
                    ab = a * b
                    for k, c in terms:
                        out[k] += ab * c
        return tuple(out)

    def ad(self, x: Sequence) -> QMatrix:
        """Matrix of ``ad x`` (column ``j`` holds ``[x, b_j]``)."""
        n = self.dim
        rows = [[ZERO] * n for _ in range(n)]
        for i, a in enumerate(x):
            if not a:
                continue
            for j, terms in self.table.get(i, {}).items():
                for k, c in terms:
                    rows[k][j] += a * c
        return QMatrix._raw(tuple(map(tuple, rows)), n)

    def ad_power_apply(self, x: Sequence, v: Sequence, k: int) -> tuple:
        for _ in range(k):
            v = self.bracket(x, v)
        return v

    # -- Killing form -------------------------------------------------------

    @cached_property
    def killing(self) -> QMatrix:
        """Gram matrix of the Killing form ``tr(ad x ad y)`` on the basis."""
        n = self.dim
        # M_i[k][j] = coefficient of b_k in [b_i, b_j]
        cols = []
        for i in range(n):
            m: dict[int, dict[int, mpq]] = {}
            for j, terms in self.table.get(i, {}).items():
                for k, c in terms:
                    m.setdefault(j, {})[k] = c  # column j of ad b_i
            cols.append(m)
        gram = [[ZERO] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                if self.weights is not None:
                    wa, wb = self.weights[a], self.weights[b]
                    if any(x + y for x, y in zip(wa, wb)):
                        continue
                # tr(ad a ad b) = sum_j sum_k (ad a)_{j k} (ad b)_{k j}
                s = ZERO
                ca, cb = cols[a], cols[b]
                for k, colb in cb.items():       # (ad b)_{j k} nonzero: b_k -> b_j
                    cola = ca
                    for j, bjk in colb.items():
                        ajk = cola.get(j, {}).get(k)
                        if ajk:
                            s += ajk * bjk
                gram[a][b] = gram[b][a] = s
        return QMatrix._raw(tuple(map(tuple, gram)), n)

    def kappa(self, x: Sequence, y: Sequence) -> mpq:
        kx = self.killing.T.apply(x)
        return sum((a * b for a, b in zip(kx, y) if a and b), ZERO)

    # -- parsing and printing ----------------------------------------------

    def format(self, x: Sequence) -> str:
        parts = []
        for lab, c in zip(self.labels, x):
            if not c:
                continue
            if c == 1:
                parts.append(f"+ {lab}")
            elif c == -1:
                parts.append(f"- {lab}")
            elif c > 0:
                parts.append(f"+ {c}*{lab}")
            else:
                parts.append(f"- {-c}*{lab}")
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def parse(self, text: str, realization: "MatrixRealization | None" = None) -> tuple:
        """Parse a rational combination of named basis vectors.

        Names are basis labels (``h1``, ``e[a1+a2]``, ``f[a2]``), the aliases
        ``e``/``f``/``h`` in rank one, or matrix units ``v23`` / ``v{10,11}``
        when a matrix realization is supplied.
        """
        text = text.strip()
        if text in ("", "0"):
            return self.zero()
        tokens = re.findall(r"([+-]?)\s*((?:\d+(?:/\d+)?\s*\*?\s*)?)([A-Za-z]+(?:\[[^\]]*\]|\{[^}]*\}|\d+)?)",
                            text)
        consumed = "".join(re.sub(r"\s", "", "".join(t)) for t in tokens)
        if consumed != re.sub(r"\s", "", text):
            raise ValueError(f"cannot parse element {text!r}")
        out = list(self.zero())
        mat = None
        for sign, coef, name in tokens:
            c = to_q(coef.replace("*", "").strip()) if coef.strip() else mpq(1)
            if sign == "-":
                c = -c
            unit = re.fullmatch(r"v(?:(\d)(\d)|\{(\d+),(\d+)\})", name)
            if unit and name not in self._label_index:
                if realization is None:
                    raise ValueError("matrix units need a matrix realization")
                i, j = (unit.group(1), unit.group(2)) if unit.group(1) else (unit.group(3), unit.group(4))
                term = _unit(realization.size, int(i) - 1, int(j) - 1, c)
                mat = term if mat is None else mat + term
                continue
            vec = self._name_vector(name, realization)
            for i, a in enumerate(vec):
                if a:
                    out[i] += c * a
        if mat is not None:
            try:
                vec = realization.from_matrix(mat)
            except InconsistentSystem:
                raise ValueError(f"{text!r} is not in the image of the realization")
            out = [a + b for a, b in zip(out, vec)]
        return tuple(out)

    def _name_vector(self, name: str, realization) -> tuple:
        if name in self._label_index:
            return self.basis_vector(self._label_index[name])
        if self.root_system is not None:
            rs = self.root_system
            if name in ("e", "f", "h") and rs.rank == 1:
                return self.basis_vector(self._label_index[{"e": "e[a1]", "f": "f[a1]", "h": "h1"}[name]])
            m = re.fullmatch(r"([ef])\[(.+)\]", name)
            if m:
                r = parse_root(m.group(2), rs.rank)
                key = f"{m.group(1)}[{root_label(r)}]"
                if key not in self._label_index:
                    raise ValueError(f"{m.group(2)!r} is not a root of {rs.label}")
                return self.basis_vector(self._label_index[key])
        raise ValueError(f"unknown basis name {name!r}")


def _structure_constants(rs: RootSystem) -> dict[tuple, int]:
    """``N[(r, s)]`` for all roots with ``r + s`` a root (Carter's algorithm)."""
    pos = rs.positive_roots
    idx = rs.positive_index
    is_root = rs.root_set.__contains__
    N: dict[tuple, mpq] = {}

    def p_of(r, s):
        p = 0
        while is_root(tuple(y - (p + 1) * x for x, y in zip(r, s))):
            p += 1
        return p

    extraspecial = {}
    for xi in pos:
        for a in pos:
            b = sub(xi, a)
            if b in idx and idx[a] < idx[b]:
                extraspecial[xi] = (a, b)
                break

    def n2(r):
        return rs.norm2(r)

    def get(r, s):
        key = (r, s)
        if key in N:
            return N[key]
        rp, sp = r in idx, s in idx
        if rp and sp:
            if idx[r] > idx[s]:
                val = -get(s, r)
            else:
                xi = add(r, s)
                a, b = extraspecial[xi]
                if (r, s) == (a, b):
                    val = mpq(p_of(a, b) + 1)
                else:
                    g, d = r, s
                    t = mpq(0)
                    da = sub(d, a)
                    if is_root(da):
                        t += get(d, neg(a)) * get(g, neg(b)) / n2(da)
                    ga = sub(g, a)
                    if is_root(ga):
                        t += get(neg(a), g) * get(d, neg(b)) / n2(ga)
                    val = n2(xi) * t / get(a, b)
        elif not rp and not sp:
            val = -get(neg(r), neg(s))
        elif not rp:
            val = -get(s, r)
        else:
            c = neg(add(r, s))
            if c in idx:        # r + s negative
                val = mpq(n2(c), n2(s)) * get(c, r)
            else:               # r + s positive: s, c negative
                val = -mpq(n2(c), n2(r)) * get(neg(s), neg(c))
        N[key] = val
        return val

    out = {}
    for r in rs.roots:
        for s in rs.roots:
            if is_root(add(r, s)):
                v = get(r, s)
                if v.denominator != 1:
                    raise ArithmeticError("non-integral structure constant")
                out[(r, s)] = int(v)
    return out


def chevalley_algebra(rs: RootSystem) -> LieAlgebraQ:
    r = rs.rank
    pos = rs.positive_roots
    npos = len(pos)
    labels = [f"h{i + 1}" for i in range(r)]
    labels += [f"e[{root_label(a)}]" for a in pos]
    labels += [f"f[{root_label(a)}]" for a in pos]
    root_index = {}
    for k, a in enumerate(pos):
        root_index[a] = r + k
        root_index[neg(a)] = r + npos + k
    weights = [(0,) * r] * r + list(pos) + [neg(a) for a in pos]
    N = _structure_constants(rs)
    cm = rs.cartan_matrix
    table: dict[int, dict[int, tuple]] = {}

    def put(i, j, terms):
        if terms:
            table.setdefault(i, {})[j] = tuple(terms)
            table.setdefault(j, {})[i] = tuple((k, -c) for k, c in terms)

    for i in range(r):
        for a, k in root_index.items():
            val = sum(cm[i][j] * a[j] for j in range(r))
            if val:
                put(i, k, [(k, mpq(val))])
    roots = list(root_index)
    for x in range(len(roots)):
        a = roots[x]
        for y in range(x + 1, len(roots)):
            b = roots[y]
            ia, ib = root_index[a], root_index[b]
            s = add(a, b)
            if not any(s):
                cor = rs.coroot_coords(a)
                put(ia, ib, [(i, c) for i, c in enumerate(cor) if c])
            elif s in root_index:
                put(ia, ib, [(root_index[s], mpq(N[(a, b)]))])
    alg = LieAlgebraQ(labels, table, rs, weights)
    alg.root_index = root_index
    return alg


def element_from_labels(alg: LieAlgebraQ, labels: Sequence) -> tuple:
    """Cartan element ``h`` with ``alpha_j(h) = labels[j]`` for the simple roots."""
    rs = alg.root_system
    n = rs.rank
    if len(labels) != n:
        raise ValueError("need one label per simple root")
    cm = rs.cartan_matrix
    # alpha_j(sum c_i h_i) = sum_i c_i cm[i][j]
    a = QMatrix([[cm[i][j] for i in range(n)] for j in range(n)])
    coeffs, _ = solve_affine(a, qvec(labels))
    return tuple(coeffs) + (ZERO,) * (alg.dim - n)


def cartan_labels(alg: LieAlgebraQ, h: Sequence) -> tuple | None:
    """Simple-root labels of ``h`` if it lies in the standard Cartan, else None."""
    n = alg.rank
    if any(h[n:]):
        return None
    cm = alg.root_system.cartan_matrix
    return tuple(sum((h[i] * cm[i][j] for i in range(n)), ZERO) for j in range(n))


def root_value(alg: LieAlgebraQ, h: Sequence, root) -> mpq:
    """``beta(h)`` for a Cartan element ``h``."""
    cm = alg.root_system.cartan_matrix
    n = alg.rank
    return sum((h[i] * cm[i][j] * root[j] for i in range(n) if h[i] for j in range(n) if root[j]), ZERO)


# ---------------------------------------------------------------------------
# defining-representation realizations of classical algebras

def _unit(n: int, i: int, j: int, c=1) -> QMatrix:
    rows = [[0] * n for _ in range(n)]
    rows[i][j] = c
    return QMatrix(rows)


def _commutator(a: QMatrix, b: QMatrix) -> QMatrix:
    return a @ b - b @ a


def classical_generators(family: str, rank: int) -> tuple[int, list[QMatrix], list[QMatrix], QMatrix | None]:
    """Defining-representation images of the Chevalley generators.

    Symplectic and orthogonal algebras use a Witt basis where coordinate
    ``i`` pairs with ``N + 1 - i``; the invariant form is returned too.
    """
    if family == "A":
        n = rank + 1
        es = [_unit(n, i, i + 1) for i in range(rank)]
        fs = [_unit(n, i + 1, i) for i in range(rank)]
        return n, es, fs, None
    if family not in "BCD":
        raise ValueError("only classical types have a defining realization here")
    size = {"B": 2 * rank + 1, "C": 2 * rank, "D": 2 * rank}[family]

    def sig(i):
        return size - 1 - i

    es, fs = [], []
    for i in range(rank - 1):
        es.append(_unit(size, i, i + 1) - _unit(size, sig(i + 1), sig(i)))
        fs.append(_unit(size, i + 1, i) - _unit(size, sig(i), sig(i + 1)))
    k = rank - 1
    if family == "C":
        es.append(_unit(size, k, k + 1))
        fs.append(_unit(size, k + 1, k))
        form = [[0] * size for _ in range(size)]
        for i in range(size):
            form[i][sig(i)] = 1 if i < rank else -1
    elif family == "B":
        es.append(_unit(size, k, k + 1) - _unit(size, k + 1, k + 2))
        fs.append((_unit(size, k + 1, k) - _unit(size, k + 2, k + 1)).scale(2))
        form = [[0] * size for _ in range(size)]
        for i in range(size):
            form[i][sig(i)] = 1
    else:
        es.append(_unit(size, k - 1, k + 1) - _unit(size, k, k + 2))
        fs.append(_unit(size, k + 1, k - 1) - _unit(size, k + 2, k))
        form = [[0] * size for _ in range(size)]
        for i in range(size):
            form[i][sig(i)] = 1
    return size, es, fs, QMatrix(form)


class MatrixRealization:
    """A faithful matrix representation of a Chevalley algebra, determined by
    the images of the generators ``e_i``, ``f_i``."""

    def __init__(self, alg: LieAlgebraQ, es: Sequence[QMatrix], fs: Sequence[QMatrix],
                 form: QMatrix | None = None):
        self.alg = alg
        self.form = form
        rs = alg.root_system
        r = rs.rank
        self.size = es[0].nrows
        mats: dict[int, QMatrix] = {}
        for i in range(r):
            a = rs.simple_root(i)
            mats[alg.root_index[a]] = es[i]
            mats[alg.root_index[neg(a)]] = fs[i]
            mats[i] = _commutator(es[i], fs[i])
        N = _structure_constants(rs)
        for xi in rs.positive_roots:
            if sum(xi) == 1:
                continue
            i = next(i for i in range(r) if rs.is_root(sub(xi, rs.simple_root(i)))
                     and sub(xi, rs.simple_root(i)) in rs.positive_index)
            a = rs.simple_root(i)
            b = sub(xi, a)
            mats[alg.root_index[xi]] = _commutator(mats[alg.root_index[a]], mats[alg.root_index[b]]).scale(
                mpq(1, N[(a, b)]))
            mats[alg.root_index[neg(xi)]] = _commutator(
                mats[alg.root_index[neg(a)]], mats[alg.root_index[neg(b)]]).scale(mpq(1, N[(neg(a), neg(b))]))
        self.matrices = [mats[k] for k in range(alg.dim)]
        flat = [tuple(x for row in m.rows for x in row) for m in self.matrices]
        self._flat = QMatrix.from_columns(flat, self.size * self.size)

    @classmethod
    def classical(cls, alg: LieAlgebraQ) -> "MatrixRealization":
        (fam, rk), = alg.root_system.components
        _, es, fs, form = classical_generators(fam, rk)
        return cls(alg, es, fs, form)

    def to_matrix(self, x: Sequence) -> QMatrix:
        out = QMatrix.zeros(self.size, self.size)
        for c, m in zip(x, self.matrices):
            if c:
                out = out + m.scale(c)
        return out

    def from_matrix(self, m: QMatrix) -> tuple:
        flat = tuple(x for row in m.rows for x in row)
        sol, _ = solve_affine(self._flat, flat)
        return sol

    def matrix_unit_coords(self, i: int, j: int) -> tuple:
        return self.from_matrix(_unit(self.size, i - 1, j - 1))

    def verify(self) -> bool:
        """Check the realization is a Lie algebra homomorphism on all basis pairs."""
        alg = self.alg
        for i in range(alg.dim):
            for j in range(i + 1, alg.dim):
                lhs = _commutator(self.matrices[i], self.matrices[j])
                rhs = self.to_matrix(alg.bracket(alg.basis_vector(i), alg.basis_vector(j)))
                if lhs != rhs:
                    return False
        return kernel(self._flat).dim == 0


def parse_matrix_expr(text: str, size: int) -> QMatrix:
    """``"v23 - v45"`` or ``"1/3*diag(-1,2,-1,1,-2,1)"`` style matrix expressions."""
    text = text.replace(" ", "")
    m = re.fullmatch(r"(?:([+-]?\d+(?:/\d+)?)\*?)?diag\(([^)]*)\)", text)
    if m:
        c = to_q(m.group(1)) if m.group(1) else mpq(1)
        return QMatrix.diag([c * to_q(x) for x in m.group(2).split(",")])
    out = QMatrix.zeros(size, size)
    for sign, coef, i, j, bi, bj in re.findall(r"([+-]?)(\d+(?:/\d+)?\*?)?v(?:(\d)(\d)|\{(\d+),(\d+)\})", text):
        c = to_q(coef.rstrip("*")) if coef else mpq(1)
        if sign == "-":
            c = -c
        a, b = (int(i), int(j)) if i else (int(bi), int(bj))
        out = out + _unit(size, a - 1, b - 1, c)
    return out


def is_homomorphism(src: LieAlgebraQ, dst: LieAlgebraQ, phi: QMatrix) -> bool:
    """``phi`` maps coordinates of ``src`` to ``dst`` (dst.dim x src.dim)."""
    for i in range(src.dim):
        for j in range(i + 1, src.dim):
            lhs = phi.apply(src.bracket(src.basis_vector(i), src.basis_vector(j)))
            rhs = dst.bracket(phi.column(i), phi.column(j))
            if lhs != rhs:
                return False
    return True


def subalgebra_is_closed(alg: LieAlgebraQ, sub: Subspace) -> bool:
    return all(sub.contains(alg.bracket(x, y)) for x in sub.basis for y in sub.basis)


def check_jacobi(alg: LieAlgebraQ, triples) -> list[tuple]:
    """Return the basis triples violating the Jacobi identity."""
    bad = []
    for i, j, k in triples:
        x, y, z = alg.basis_vector(i), alg.basis_vector(j), alg.basis_vector(k)
        s = lin_comb([1, 1, 1], [alg.bracket(x, alg.bracket(y, z)),
                                 alg.bracket(y, alg.bracket(z, x)),
                                 alg.bracket(z, alg.bracket(x, y))], alg.dim)
        if any(s):
            bad.append((i, j, k))
    return bad


def check_killing_invariance(alg: LieAlgebraQ, triples) -> list[tuple]:
    bad = []
    for i, j, k in triples:
        x, y, z = alg.basis_vector(i), alg.basis_vector(j), alg.basis_vector(k)
        if alg.kappa(alg.bracket(x, y), z) != alg.kappa(x, alg.bracket(y, z)):
            bad.append((i, j, k))
    return bad


def check_antisymmetry(alg: LieAlgebraQ) -> bool:
    for i in range(alg.dim):
        x = alg.basis_vector(i)
        if any(alg.bracket(x, x)):
            return False
        for j in range(i + 1, alg.dim):
            y = alg.basis_vector(j)
            if vec_sub(alg.bracket(x, y), tuple(-c for c in alg.bracket(y, x))) != alg.zero():
                return False
    return True
