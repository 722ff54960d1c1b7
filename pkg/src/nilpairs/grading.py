"""Bi-gradings g = sum g_{p,q}, graded slices, e-filtrations and limits."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

from gmpy2 import mpq

from .algebra import LieAlgebraQ
from .exactla import (ZERO, QMatrix, Subspace, joint_eigenspaces, kernel, lin_comb,
                      solve_affine)
from .pairs import Characteristic, NilpotentPair, TheoremViolation


class NotGraded(ValueError):
    """Target subspace is not stable under ad h1, ad h2."""


def is_integer(x) -> bool:
    return x.denominator == 1


def _cell_key(pq) -> tuple:
    return (-pq[1], -pq[0])


class BiGrading:
    """Joint eigenspaces of (ad h1, ad h2).  Cells are keyed by exact (p, q)."""

    def __init__(self, alg: LieAlgebraQ, char: Characteristic):
        self.alg = alg
        self.char = char
        spaces = joint_eigenspaces([alg.ad(char.h1), alg.ad(char.h2)])
        self.cells: dict[tuple, Subspace] = {
            k: v for k, v in sorted(spaces, key=lambda kv: _cell_key(kv[0]))}
        if sum(v.dim for v in self.cells.values()) != alg.dim:
            raise TheoremViolation("cells do not decompose the algebra")

    def __repr__(self) -> str:
        return f"BiGrading({len(self.cells)} cells, dim {self.alg.dim})"

    @property
    def support(self) -> list[tuple]:
        return list(self.cells)

    def cell(self, p, q) -> Subspace:
        return self.cells.get((mpq(p), mpq(q)), Subspace.zero(self.alg.dim))

    def dim(self, p, q) -> int:
        return self.cell(p, q).dim

    def dims(self) -> dict[tuple, int]:
        return {k: v.dim for k, v in self.cells.items()}

    @property
    def coordinate_cells(self) -> bool:
        return all(all(sum(1 for x in b if x) == 1 for b in v.basis) for v in self.cells.values())

    @cached_property
    def _decomposer(self):
        keys, cols = [], []
        for k, v in self.cells.items():
            for b in v.basis:
                keys.append(k)
                cols.append(b)
        return keys, QMatrix.from_columns(cols, self.alg.dim)

    @cached_property
    def _coordinate_owner(self) -> dict[int, tuple] | None:
        if not self.coordinate_cells:
            return None
        owner = {}
        for k, v in self.cells.items():
            for b in v.basis:
                owner[next(i for i, x in enumerate(b) if x)] = k
        return owner

    def components(self, x: Sequence) -> dict[tuple, tuple]:
        """Split ``x`` into its homogeneous components."""
        n = self.alg.dim
        out: dict[tuple, list] = {}
        owner = self._coordinate_owner
        if owner is not None:
            for i, c in enumerate(x):
                if c:
                    out.setdefault(owner[i], [ZERO] * n)[i] = c
            return {k: tuple(v) for k, v in out.items()}
        keys, mat = self._decomposer
        coeffs, _ = solve_affine(mat, x)
        for k, c, col in zip(keys, coeffs, mat.columns()):
            if c:
                acc = out.setdefault(k, [ZERO] * n)
                for i, a in enumerate(col):
                    if a:
                        acc[i] += c * a
        return {k: tuple(v) for k, v in out.items()}

    def degree(self, x: Sequence) -> tuple | None:
        comps = self.components(x)
        return next(iter(comps)) if len(comps) == 1 else None

    def is_graded(self, target: Subspace) -> bool:
        return all(target.contains(c) for b in target.basis for c in self.components(b).values())

    def graded_pieces(self, target: Subspace) -> dict[tuple, Subspace]:
        """``target ∩ g_{p,q}`` for every cell; raises NotGraded if target is not stable."""
        n = self.alg.dim
        vecs: dict[tuple, list] = {}
        for b in target.basis:
            for k, c in self.components(b).items():
                vecs.setdefault(k, []).append(c)
        pieces = {}
        for k in self.cells:
            if k in vecs:
                s = Subspace(n, vecs[k])
                if not target.contains(s):
                    raise NotGraded("target is not h-stable")
                pieces[k] = s
        if sum(s.dim for s in pieces.values()) != target.dim:
            raise NotGraded("target is not h-stable")
        return pieces

    def eigenvalue_multiset(self, target: Subspace) -> list[tuple]:
        out = []
        for k, s in self.graded_pieces(target).items():
            out.extend([k] * s.dim)
        return sorted(out)

    def total(self) -> int:
        return sum(v.dim for v in self.cells.values())

    def check_brackets(self) -> bool:
        """[g_{p,q}, g_{p',q'}] lies in g_{p+p',q+q'} for all basis products."""
        alg = self.alg
        items = list(self.cells.items())
        for (a, u) in items:
            for (b, v) in items:
                target = self.cells.get((a[0] + b[0], a[1] + b[1]))
                for x in u.basis:
                    for y in v.basis:
                        z = alg.bracket(x, y)
                        if any(z) and (target is None or not target.contains(z)):
                            return False
        return True


def bigrade(alg: LieAlgebraQ, char: Characteristic) -> BiGrading:
    return BiGrading(alg, char)


# ---------------------------------------------------------------------------
# slices

NAT = "P"   # non-negative integers


def _in_set(x, which: str) -> bool:
    if which == "*":
        return True
    if which == "Z":
        return is_integer(x)
    if which == "P":
        return is_integer(x) and x >= 0
    if which == "N":           # negative integers
        return is_integer(x) and x < 0
    raise ValueError(f"unknown index set {which!r}")


def descriptor_predicate(descriptor) -> Callable[[tuple], bool]:
    """Descriptors: "all", "ZZ", "PP", "fr", ("cell", p, q), ("row", q), ("col", p),
    ("sets", A, B) with A, B in {"*", "Z", "P", "N"}, or a predicate on (p, q)."""
    if callable(descriptor):
        return descriptor
    if descriptor == "all":
        return lambda k: True
    if descriptor == "ZZ":
        return lambda k: is_integer(k[0]) and is_integer(k[1])
    if descriptor == "PP":
        return lambda k: _in_set(k[0], "P") and _in_set(k[1], "P")
    if descriptor == "fr":
        return lambda k: not (is_integer(k[0]) and is_integer(k[1]))
    tag = descriptor[0]
    if tag == "cell":
        p, q = mpq(descriptor[1]), mpq(descriptor[2])
        return lambda k: k == (p, q)
    if tag == "row":
        q = mpq(descriptor[1])
        return lambda k: k[1] == q
    if tag == "col":
        p = mpq(descriptor[1])
        return lambda k: k[0] == p
    if tag == "sets":
        a, b = descriptor[1], descriptor[2]
        return lambda k: _in_set(k[0], a) and _in_set(k[1], b)
    raise ValueError(f"bad descriptor {descriptor!r}")


@dataclass(frozen=True)
class GradedSlice:
    subspace: Subspace
    descriptor: object
    cells: dict

    @property
    def dim(self) -> int:
        return self.subspace.dim


def slice_(bg: BiGrading, target: Subspace, descriptor="all") -> GradedSlice:
    pred = descriptor_predicate(descriptor)
    pieces = bg.graded_pieces(target)
    chosen = {k: v for k, v in pieces.items() if pred(k)}
    n = bg.alg.dim
    sub = Subspace(n, [b for v in chosen.values() for b in v.basis])
    return GradedSlice(sub, descriptor, chosen)


def integral_fractional_split(bg: BiGrading) -> tuple[GradedSlice, GradedSlice]:
    full = Subspace.full(bg.alg.dim)
    return slice_(bg, full, "ZZ"), slice_(bg, full, "fr")


# ---------------------------------------------------------------------------
# filtrations and limits

class Filtration:
    """M(i, j) = {x in M : (ad e1)^{i+1} x = 0 = (ad e2)^{j+1} x}.

    Indices are capped at the stabilization level; ``None`` stands for "*".
    """

    def __init__(self, m: Subspace, pair: NilpotentPair):
        self.m = m
        self.pair = pair
        self.alg = pair.alg
        self._levels = {1: self._chain(pair.e1), 2: self._chain(pair.e2)}

    def _chain(self, e) -> list[Subspace]:
        """[M(0), M(1), ...] for one operator, up to stabilization."""
        alg = self.alg
        basis = self.m.basis
        n = self.alg.dim
        if not basis:
            return [self.m]
        imgs = list(basis)
        levels = []
        while True:
            imgs = [alg.bracket(e, v) for v in imgs]
            ker = kernel(QMatrix.from_columns(imgs, n))
            level = Subspace(n, (lin_comb(c, basis, n) for c in ker.basis))
            levels.append(level)
            if level.dim == self.m.dim:
                return levels
            if len(levels) > n + 1:
                raise ValueError("operator is not nilpotent on M")

    def cap(self, which: int) -> int:
        return len(self._levels[which]) - 1

    def one(self, which: int, i) -> Subspace:
        if i is None:
            return self.m
        if i < 0:
            return Subspace.zero(self.alg.dim)
        lv = self._levels[which]
        return lv[min(i, len(lv) - 1)]

    def level(self, i, j) -> Subspace:
        a, b = self.one(1, i), self.one(2, j)
        if i is None:
            return b
        if j is None:
            return a
        return a & b


def filtration(m: Subspace, pair: NilpotentPair, i, j) -> Subspace:
    return Filtration(m, pair).level(i, j)


def _power_image(alg, e1, e2, i, j, space: Subspace) -> Subspace:
    vecs = []
    for v in space.basis:
        for _ in range(j):
            v = alg.bracket(e2, v)
        for _ in range(i):
            v = alg.bracket(e1, v)
        vecs.append(v)
    return Subspace(alg.dim, vecs)


def limit_terms(m: Subspace, pair: NilpotentPair, mode: str = "both") -> dict[tuple, Subspace]:
    """The summands (ad e1)^i (ad e2)^j M(i, j) of the limit, keyed by (i, j)."""
    alg = pair.alg
    fil = Filtration(m, pair)
    z = alg.zero()
    out = {}
    if mode == "e1":
        for i in range(fil.cap(1) + 1):
            out[(i, 0)] = _power_image(alg, pair.e1, z, i, 0, fil.level(i, None))
    elif mode == "e2":
        for j in range(fil.cap(2) + 1):
            out[(0, j)] = _power_image(alg, z, pair.e2, 0, j, fil.level(None, j))
    elif mode == "both":
        for i in range(fil.cap(1) + 1):
            for j in range(fil.cap(2) + 1):
                out[(i, j)] = _power_image(alg, pair.e1, pair.e2, i, j, fil.level(i, j))
    else:
        raise ValueError("mode must be e1, e2 or both")
    return out


def limit(m: Subspace, pair: NilpotentPair, mode: str = "both") -> Subspace:
    n = pair.alg.dim
    return Subspace(n, [b for s in limit_terms(m, pair, mode).values() for b in s.basis])


def dimension_identity(m: Subspace, pair: NilpotentPair) -> list[tuple]:
    """(i, j, lhs, rhs) for the inclusion-exclusion count of each limit summand."""
    fil = Filtration(m, pair)
    terms = limit_terms(m, pair, "both")
    out = []
    for (i, j), s in terms.items():
        rhs = (fil.level(i, j).dim - fil.level(i - 1, j).dim - fil.level(i, j - 1).dim
               + fil.level(i - 1, j - 1).dim)
        out.append((i, j, s.dim, rhs))
    return out
