"""Exact linear algebra over the rationals.

Everything here works with :class:`gmpy2.mpq` entries.  Subspaces are kept in
reduced row-echelon form, which makes equality a plain comparison of bases.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from gmpy2 import mpq

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)


class InconsistentSystem(ValueError):
    """Raised when a linear system has no solution."""


class NotSemisimple(ValueError):
    pass


class IrrationalSpectrum(ValueError):
    pass


def to_q(x) -> mpq:
    if isinstance(x, str):
        return mpq(x.strip())
    return mpq(x)


def qvec(xs: Iterable) -> tuple:
    return tuple(to_q(x) for x in xs)


def zero_vec(n: int) -> tuple:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> tuple:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u: Sequence) -> tuple:
    c = to_q(c)
    return tuple(c * a for a in u)


def is_zero(v: Sequence) -> bool:
    return not any(v)


def dot(u: Sequence, v: Sequence) -> mpq:
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def lin_comb(coeffs: Sequence, vecs: Sequence[Sequence], n: int) -> tuple:
    out = [ZERO] * n
    for c, v in zip(coeffs, vecs):
        if not c:
            continue
        for i, a in enumerate(v):
            if a:
                out[i] += c * a
    return tuple(out)


class QMatrix:
    """Dense rational matrix, stored row-major and treated as immutable."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(qvec(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "QMatrix":
        m = cls.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls._raw(tuple(unit_vec(n, i) for i in range(n)), n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "QMatrix":
        return cls._raw(tuple(zero_vec(n) for _ in range(m)), n)

    @classmethod
    def diag(cls, entries: Sequence) -> "QMatrix":
        n = len(entries)
        rows = []
        for i, x in enumerate(entries):
            r = [ZERO] * n
            r[i] = to_q(x)
            rows.append(tuple(r))
        return cls._raw(tuple(rows), n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "QMatrix":
        if not cols:
            return cls._raw(tuple(() for _ in range(nrows)), 0)
        return cls._raw(tuple(tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"QMatrix({self.nrows}x{self.ncols}: [{body}])"

    @property
    def T(self) -> "QMatrix":
        return QMatrix.from_columns(self.rows, self.ncols)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        nz = [(j, x) for j, x in enumerate(v) if x]
        out = []
        for r in self.rows:
            s = ZERO
            for j, x in nz:
                a = r[j]
                if a:
                    s += a * x
            out.append(s)
        return tuple(out)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        n = other.ncols
        out = []
        for r in self.rows:
            acc = [ZERO] * n
            for k, a in enumerate(r):
                if not a:
                    continue
                for j, b in enumerate(other.rows[k]):
                    if b:
                        acc[j] += a * b
            out.append(tuple(acc))
        return QMatrix._raw(tuple(out), n)

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise ValueError("dimension mismatch")
        return QMatrix._raw(tuple(vec_add(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise ValueError("dimension mismatch")
        return QMatrix._raw(tuple(vec_sub(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def scale(self, c) -> "QMatrix":
        return QMatrix._raw(tuple(vec_scale(c, r) for r in self.rows), self.ncols)

    def shift(self, lam) -> "QMatrix":
        """Return ``self - lam * I``."""
        lam = to_q(lam)
        rows = []
        for i, r in enumerate(self.rows):
            r = list(r)
            r[i] -= lam
            rows.append(tuple(r))
        return QMatrix._raw(tuple(rows), self.ncols)

    def vstack(self, other: "QMatrix") -> "QMatrix":
        if self.ncols != other.ncols:
            raise ValueError("dimension mismatch")
        return QMatrix._raw(self.rows + other.rows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_diagonal(self) -> bool:
        return all(not x or i == j for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def is_zero(self) -> bool:
        return all(is_zero(r) for r in self.rows)

    def trace(self) -> mpq:
        return sum((self.rows[i][i] for i in range(min(self.shape))), ZERO)

    def rank(self) -> int:
        return len(_rref_dicts(self.rows, self.ncols)[0])


# ---------------------------------------------------------------------------
# row reduction

def _rref_dicts(vectors: Iterable[Sequence], ncols: int) -> tuple[list[dict], list[int]]:
    """Incremental sparse Gauss-Jordan elimination.

    Returns the reduced rows (as ``{col: value}``) sorted by pivot, and the
    pivot columns.  Pivots are chosen leftmost-first; each pivot is 1 and the
    pivot column is zero in every other row.
    """
    basis: dict[int, dict] = {}
    for v in vectors:
        row = {j: to_q(x) for j, x in enumerate(v) if x}
        _insert_row(basis, row)
    pivots = sorted(basis)
    return [basis[p] for p in pivots], pivots


def _reduce(basis: dict[int, dict], row: dict) -> dict:
    for p in sorted(set(row) & basis.keys()):
        c = row.get(p)
        if not c:
            continue
        for j, a in basis[p].items():
            x = row.get(j, ZERO) - c * a
            if x:
                row[j] = x
            else:
                row.pop(j, None)
    return row


def _insert_row(basis: dict[int, dict], row: dict) -> bool:
    row = _reduce(basis, row)
    if not row:
        return False
    p = min(row)
    inv = 1 / row[p]
    row = {j: a * inv for j, a in row.items()}
    for q, r in basis.items():
        c = r.get(p)
        if c:
            for j, a in row.items():
                x = r.get(j, ZERO) - c * a
                if x:
                    r[j] = x
                else:
                    r.pop(j, None)
    basis[p] = row
    return True


def rref(m: QMatrix) -> tuple[QMatrix, list[int]]:
    rows, pivots = _rref_dicts(m.rows, m.ncols)
    dense = tuple(_densify(r, m.ncols) for r in rows)
    return QMatrix._raw(dense, m.ncols), pivots


def _densify(row: dict, n: int) -> tuple:
    out = [ZERO] * n
    for j, a in row.items():
        out[j] = a
    return tuple(out)


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """A linear subspace of Q^n, stored by its reduced row-echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_hash")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        rows, pivots = _rref_dicts(vectors, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis = tuple(_densify(r, ambient_dim) for r in rows)
        self.pivots = tuple(pivots)
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, (unit_vec(n, i) for i in range(n)))

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        return cls(n, (unit_vec(n, i) for i in sorted(indices)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self.basis))
        return self._hash

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def matrix(self) -> QMatrix:
        return QMatrix._raw(self.basis, self.ambient_dim)

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("dimension mismatch")

    def contains(self, x) -> bool:
        if isinstance(x, Subspace):
            self._check(x)
            return all(self.contains(v) for v in x.basis)
        if len(x) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        row = {j: to_q(a) for j, a in enumerate(x) if a}
        for p, b in zip(self.pivots, self.basis):
            c = row.get(p)
            if not c:
                continue
            for j, a in enumerate(b):
                if a:
                    y = row.get(j, ZERO) - c * a
                    if y:
                        row[j] = y
                    else:
                        row.pop(j, None)
        return not row

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def annihilator(self) -> "Subspace":
        """Vectors orthogonal to ``self`` under the standard dot product."""
        return kernel(self.matrix()) if self.basis else Subspace.full(self.ambient_dim)

    def coordinates(self, x: Sequence) -> tuple:
        """Coefficients of ``x`` in the echelon basis; raises if ``x`` is outside."""
        coeffs = tuple(x[p] for p in self.pivots)
        if tuple(x) != lin_comb(coeffs, self.basis, self.ambient_dim):
            raise ValueError("vector not in subspace")
        return coeffs

    def image(self, m: QMatrix) -> "Subspace":
        return Subspace(m.nrows, (m.apply(v) for v in self.basis))


def span(vectors: Iterable[Sequence], n: int) -> Subspace:
    return Subspace(n, vectors)


def kernel(m: QMatrix) -> Subspace:
    """Null space of ``m`` in canonical form."""
    n = m.ncols
    rows, pivots = _rref_dicts(m.rows, n)
    pivset = set(pivots)
    vecs = []
    for f in range(n):
        if f in pivset:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for p, r in zip(pivots, rows):
            a = r.get(f)
            if a:
                v[p] = -a
        vecs.append(v)
    return Subspace(n, vecs)


def image(m: QMatrix) -> Subspace:
    """Column space of ``m``."""
    return Subspace(m.nrows, m.columns())


def solve_affine(a: QMatrix, b: Sequence) -> tuple[tuple, Subspace]:
    """Solve ``a x = b``.

    Returns a particular solution (free variables set to zero) and the kernel.
    Raises :class:`InconsistentSystem` when ``b`` is not in the image of ``a``.
    """
    if a.nrows != len(b):
        raise ValueError("a.rows must equal len(b)")
    n = a.ncols
    aug = (tuple(r) + (to_q(x),) for r, x in zip(a.rows, b))
    rows, pivots = _rref_dicts(aug, n + 1)
    if pivots and pivots[-1] == n:
        raise InconsistentSystem("right-hand side is not in the image")
    x = [ZERO] * n
    for p, r in zip(pivots, rows):
        x[p] = r.get(n, ZERO)
    ker_rows = [tuple(r[:n]) for r in a.rows]
    return tuple(x), kernel(QMatrix._raw(tuple(ker_rows), n))


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    u._check(v)
    return Subspace(u.ambient_dim, u.basis + v.basis)


def intersect(u: Subspace, v: Subspace) -> Subspace:
    u._check(v)
    n = u.ambient_dim
    if u.dim == n:
        return v
    if v.dim == n:
        return u
    if not u.dim or not v.dim:
        return Subspace.zero(n)
    ann = u.annihilator().basis + v.annihilator().basis
    return kernel(QMatrix._raw(ann, n))


def orth_complement(u: Subspace, form: QMatrix) -> Subspace:
    """``{x : B(u, x) = 0 for all u in U}`` for a symmetric bilinear form ``B``."""
    n = u.ambient_dim
    if form.shape != (n, n):
        raise ValueError("dimension mismatch")
    if not u.dim:
        return Subspace.full(n)
    rows = tuple(form.T.apply(b) for b in u.basis)  # row i: b_i^T B
    return kernel(QMatrix._raw(rows, n))


def restrict_kernel(m: QMatrix, u: Subspace) -> Subspace:
    """``{x in U : m x = 0}``."""
    if not u.dim:
        return u
    imgs = [m.apply(b) for b in u.basis]
    # coefficient vectors c with sum c_i m b_i = 0
    ker = kernel(QMatrix.from_columns(imgs, m.nrows))
    return Subspace(u.ambient_dim, (lin_comb(c, u.basis, u.ambient_dim) for c in ker.basis))


# ---------------------------------------------------------------------------
# polynomials (coefficient lists, lowest degree first)

def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def poly_deriv(p: Sequence) -> list:
    return _trim([i * p[i] for i in range(1, len(p))])


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = _trim([to_q(x) for x in a])
    b = _trim([to_q(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for i, x in enumerate(b):
            a[k + i] -= c * x
        _trim(a)
    return _trim(q), a


def poly_gcd(a: Sequence, b: Sequence) -> list:
    a = _trim([to_q(x) for x in a])
    b = _trim([to_q(x) for x in b])
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return a
    lead = a[-1]
    return [x / lead for x in a]


def poly_eval(p: Sequence, x) -> mpq:
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_part(p: Sequence) -> list:
    g = poly_gcd(p, poly_deriv(p))
    s = poly_divmod(p, g)[0]
    return [x / s[-1] for x in s]


def charpoly(m: QMatrix) -> list:
    """Characteristic polynomial det(xI - m), monic, via Hessenberg reduction."""
    if not m.is_square():
        raise ValueError("matrix must be square")
    n = m.nrows
    h = [list(r) for r in m.rows]
    # reduce to upper Hessenberg form by similarity transforms
    for k in range(1, n - 1):
        piv = next((i for i in range(k, n) if h[i][k - 1]), None)
        if piv is None:
            continue
        if piv != k:
            h[piv], h[k] = h[k], h[piv]
            for r in h:
                r[piv], r[k] = r[k], r[piv]
        inv = 1 / h[k][k - 1]
        for i in range(k + 1, n):
            u = h[i][k - 1] * inv
            if not u:
                continue
            row_k = h[k]
            row_i = h[i]
            for j in range(n):
                if row_k[j]:
                    row_i[j] -= u * row_k[j]
            for r in h:
                if r[i]:
                    r[k] += u * r[i]
    # recurrence on leading principal submatrices
    polys = [[ONE]]
    for k in range(n):
        # p_{k+1}(x) = (x - h_kk) p_k(x) - sum_{i<k} h_ik * prod(h_{j,j-1}) p_i(x)
        pk = polys[-1]
        nxt = [ZERO] + list(pk)
        for i, c in enumerate(pk):
            nxt[i] -= h[k][k] * c
        t = ONE
        for i in range(k - 1, -1, -1):
            t *= h[i + 1][i]
            if not t:
                break
            coef = h[i][k] * t
            if coef:
                for d, c in enumerate(polys[i]):
                    nxt[d] -= coef * c
        polys.append(nxt)
    return polys[-1]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    divs = [1]
    for p, e in factors.items():
        divs = [x * p ** k for x in divs for k in range(e + 1)]
    return sorted(divs)


def rational_roots(p: Sequence) -> list[mpq]:
    """Distinct rational roots of ``p`` by the rational-root theorem."""
    p = _trim([to_q(x) for x in p])
    if len(p) <= 1:
        return []
    roots = []
    while p and not p[0]:
        if ZERO not in roots:
            roots.append(ZERO)
        p = p[1:]
    if len(p) <= 1:
        return roots
    from math import lcm
    den = 1
    for c in p:
        den = lcm(den, int(c.denominator))
    ints = [int(c * den) for c in p]
    for cand_num in _divisors(ints[0]):
        for cand_den in _divisors(ints[-1]):
            for sign in (1, -1):
                r = mpq(sign * cand_num, cand_den)
                if r in roots:
                    continue
                if poly_eval(ints, r) == 0:
                    roots.append(r)
    return sorted(roots)


def _poly_of_matrix_is_zero(p: Sequence, m: QMatrix) -> bool:
    acc = QMatrix.zeros(m.nrows, m.ncols)
    ident = QMatrix.identity(m.nrows)
    for c in reversed(p):
        acc = acc @ m + ident.scale(c)
    return acc.is_zero()


def minpoly_is_squarefree(m: QMatrix) -> bool:
    """True iff the minimal polynomial of ``m`` has no repeated factor."""
    if not m.is_square():
        raise ValueError("matrix must be square")
    if m.is_diagonal():
        return True
    s = squarefree_part(charpoly(m))
    roots = rational_roots(s)
    if len(roots) == len(s) - 1:
        n = m.nrows
        return sum(kernel(m.shift(r)).dim for r in roots) == n
    return _poly_of_matrix_is_zero(s, m)


def eigenvalues(m: QMatrix) -> list[mpq]:
    """Distinct eigenvalues of a semisimple matrix with rational spectrum."""
    if m.is_diagonal():
        return sorted({m.rows[i][i] for i in range(m.nrows)})
    s = squarefree_part(charpoly(m))
    roots = rational_roots(s)
    if len(roots) != len(s) - 1:
        raise IrrationalSpectrum("minimal polynomial has a non-rational root")
    return roots


def joint_eigenspaces(ops: Sequence[QMatrix]) -> list[tuple[tuple, Subspace]]:
    """Simultaneous eigenspace decomposition of commuting diagonalizable operators.

    Returns ``[(eigenvalues, subspace), ...]`` with nonzero subspaces only,
    sorted by eigenvalue tuple.
    """
    if not ops:
        raise ValueError("need at least one operator")
    n = ops[0].nrows
    for op in ops:
        if op.shape != (n, n):
            raise ValueError("dimension mismatch")
    if all(op.is_diagonal() for op in ops):
        cells: dict[tuple, list[int]] = {}
        for i in range(n):
            cells.setdefault(tuple(op.rows[i][i] for op in ops), []).append(i)
        return sorted(((k, Subspace.coordinate(n, idx)) for k, idx in cells.items()), key=lambda kv: kv[0])
    for op in ops:
        if not minpoly_is_squarefree(op):
            raise NotSemisimple("operator is not diagonalizable")
    pieces: list[tuple[tuple, Subspace]] = [((), Subspace.full(n))]
    for op in ops:
        lams = eigenvalues(op)
        spaces = [(lam, kernel(op.shift(lam))) for lam in lams]
        nxt = []
        for key, v in pieces:
            for lam, e in spaces:
                w = intersect(v, e)
                if w.dim:
                    nxt.append((key + (lam,), w))
        pieces = nxt
    if sum(w.dim for _, w in pieces) != n:
        raise NotSemisimple("operators are not simultaneously diagonalizable")
    return sorted(pieces, key=lambda kv: kv[0])
