"""Worked examples and families of nilpotent pairs.

Every entry carries expected values with a note on where it comes from and re-checks
them when it is built.  Entries are addressed by stable identifiers.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from gmpy2 import mpq

from .algebra import (LieAlgebraQ, MatrixRealization, chevalley_algebra, element_from_labels,
                      parse_matrix_expr)
from .exactla import QMatrix, Subspace, lin_comb
from .grading import bigrade
from .pairs import (Characteristic, NilpotentPair, centralizer, make_pair, solve_characteristic,
                    verify_characteristic)
from .rootsystem import build_root_system

PUBLISHED, TRIVIAL, COMPUTED = "published", "trivial", "computed"


class SearchFailure(RuntimeError):
    pass


class ExpectationFailure(AssertionError):
    pass


@dataclass
class CatalogEntry:
    name: str
    alg: LieAlgebraQ
    pair: NilpotentPair
    char: Characteristic
    expected: dict = field(default_factory=dict)   # name -> (value, source)
    realization: MatrixRealization | None = None
    description: str = ""
    seed: int | None = None
    tags: frozenset = frozenset()

    def check(self) -> "CatalogEntry":
        rep = verify_characteristic(self.pair, self.char.h1, self.char.h2)
        if not rep.ok:
            raise ExpectationFailure(f"{self.name}: characteristic fails {rep.failed()}")
        measured = measure(self)
        for key, (value, _) in self.expected.items():
            if key in measured and measured[key] != value:
                raise ExpectationFailure(f"{self.name}: {key} = {measured[key]}, expected {value}")
        return self


def measure(entry: CatalogEntry) -> dict:
    """Cheap quantities compared against ``expected`` at construction."""
    z = centralizer(entry.alg, entry.pair.elements)
    bg = bigrade(entry.alg, entry.char)
    out = {"dim_z": z.dim, "dim_g": entry.alg.dim, "dim_g00": bg.dim(0, 0)}
    for key in entry.expected:
        if key.startswith("dim_g[") and key.endswith("]"):
            p, q = key[6:-1].split(",")
            out[key] = bg.dim(mpq(p), mpq(q))
    if "z_eigenvalues" in entry.expected:
        out["z_eigenvalues"] = tuple(bg.eigenvalue_multiset(z))
    return out


# ---------------------------------------------------------------------------
# algebras (cached: construction is deterministic)

@lru_cache(maxsize=None)
def algebra(label: str) -> LieAlgebraQ:
    return chevalley_algebra(build_root_system(label))


@lru_cache(maxsize=None)
def classical_realization(label: str) -> MatrixRealization:
    return MatrixRealization.classical(algebra(label))


# ---------------------------------------------------------------------------
# partition pairs in sl_n

@dataclass
class PartitionPair:
    n: int
    partition: tuple
    cells: list          # (row, col), 1-based, in basis order
    alg: LieAlgebraQ
    realization: MatrixRealization
    e1: tuple
    e2: tuple
    h1: tuple
    h2: tuple
    matrices: dict

    @property
    def pair(self) -> NilpotentPair:
        return make_pair(self.alg, self.e1, self.e2)

    @property
    def char(self) -> Characteristic:
        return Characteristic(self.h1, self.h2)


def _check_partition(n: int, lam) -> tuple:
    lam = tuple(int(x) for x in lam)
    if n < 2 or sum(lam) != n or any(x <= 0 for x in lam) or list(lam) != sorted(lam, reverse=True):
        raise ValueError(f"{lam} is not a partition of {n} (n >= 2)")
    return lam


def partition_matrices(n: int, lam) -> tuple[list, dict]:
    """Young-diagram matrices: e1 moves a cell right, e2 moves it down.

    Cells are ordered by (row, col) decreasing, so both shifts are upper
    triangular.  h1 acts on cell (r, c) by c minus the mean column, h2 by r
    minus the mean row.
    """
    lam = _check_partition(n, lam)
    cells = sorted(((r + 1, c + 1) for r, k in enumerate(lam) for c in range(k)), reverse=True)
    idx = {rc: i for i, rc in enumerate(cells)}
    e1 = [[0] * n for _ in range(n)]
    e2 = [[0] * n for _ in range(n)]
    for (r, c), i in idx.items():
        if (r, c + 1) in idx:
            e1[idx[(r, c + 1)]][i] = 1
        if (r + 1, c) in idx:
            e2[idx[(r + 1, c)]][i] = 1
    cbar = mpq(sum(c for _, c in cells), n)
    rbar = mpq(sum(r for r, _ in cells), n)
    h1 = QMatrix.diag([c - cbar for _, c in cells])
    h2 = QMatrix.diag([r - rbar for r, _ in cells])
    return cells, {"e1": QMatrix(e1), "e2": QMatrix(e2), "h1": h1, "h2": h2}


def partition_pair(n: int, lam) -> PartitionPair:
    label = f"A{n - 1}"
    alg = algebra(label)
    real = classical_realization(label)
    cells, mats = partition_matrices(n, lam)
    coords = {k: real.from_matrix(m) for k, m in mats.items()}
    return PartitionPair(n, tuple(lam), cells, alg, real, coords["e1"], coords["e2"],
                         coords["h1"], coords["h2"], mats)


# ---------------------------------------------------------------------------
# sl_n inside sp_2n

@dataclass
class Embedding:
    src: LieAlgebraQ
    dst: LieAlgebraQ
    src_real: MatrixRealization
    dst_real: MatrixRealization
    phi: QMatrix            # dst.dim x src.dim

    def apply(self, x) -> tuple:
        return self.phi.apply(x)

    def image(self) -> Subspace:
        return Subspace(self.dst.dim, self.phi.columns())


def block_sl_to_sp(a: QMatrix) -> QMatrix:
    """A -> diag(A, -K A^T K), K the antidiagonal matrix of ones."""
    n = a.nrows
    k = QMatrix([[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)])
    d = (k @ a.T @ k).scale(-1)
    rows = [list(a.rows[i]) + [0] * n for i in range(n)] + [[0] * n + list(d.rows[i]) for i in range(n)]
    return QMatrix(rows)


def embed_sl_in_sp(n: int) -> Embedding:
    if n < 2:
        raise ValueError("n >= 2")
    src, dst = algebra(f"A{n - 1}"), algebra(f"C{n}")
    sr, dr = classical_realization(f"A{n - 1}"), classical_realization(f"C{n}")
    cols = [dr.from_matrix(block_sl_to_sp(m)) for m in sr.matrices]
    return Embedding(src, dst, sr, dr, QMatrix.from_columns(cols, dst.dim))


# ---------------------------------------------------------------------------
# generic elements

def _random_combo(rng: random.Random, space: Subspace, n: int) -> tuple:
    coeffs = [rng.choice((-3, -2, -1, 1, 2, 3)) for _ in space.basis]
    return lin_comb(coeffs, space.basis, n)


def generic_pair(alg: LieAlgebraQ, char: Characteristic, target_dim_z: int, seed: int,
                 attempts: int = 50) -> tuple[NilpotentPair, int]:
    """e1 random in g_{1,0}, e2 random in z(e1) ∩ g_{0,1}; retried until dim z(e) matches."""
    bg = bigrade(alg, char)
    c10, c01 = bg.cell(1, 0), bg.cell(0, 1)
    for k in range(attempts):
        rng = random.Random(seed + k)
        e1 = _random_combo(rng, c10, alg.dim)
        room = centralizer(alg, [e1]) & c01
        if not room.dim:
            continue
        e2 = _random_combo(rng, room, alg.dim)
        pair = make_pair(alg, e1, e2)
        if centralizer(alg, pair.elements).dim == target_dim_z and \
                verify_characteristic(pair, char.h1, char.h2).ok:
            return pair, seed + k
    raise SearchFailure(f"no generic pair found from seed {seed} in {attempts} attempts")


# ---------------------------------------------------------------------------
# entries

DEFAULT_SEED = 20240601

_BUILDERS: dict[str, Callable[[int], CatalogEntry]] = {}


def _register(name: str, tags=()):
    def deco(fn):
        _BUILDERS[name] = fn
        fn.tags = frozenset(tags)
        return fn
    return deco


@_register("sl2-trivial", ["integral", "rectangular"])
def _sl2_trivial(seed: int) -> CatalogEntry:
    alg = algebra("A1")
    pair = make_pair(alg, alg.parse("e"), alg.zero())
    char = solve_characteristic(pair)
    return CatalogEntry("sl2-trivial", alg, pair, char,
                        {"dim_z": (1, COMPUTED)},
                        description="trivial pair (e, 0) in sl2")


def partition_entry(n: int, lam) -> CatalogEntry:
    pp = partition_pair(n, lam)
    name = f"sl{n}-partition-" + "-".join(map(str, pp.partition))
    return CatalogEntry(name, pp.alg, pp.pair, pp.char, {"dim_z": (n - 1, COMPUTED)}, pp.realization,
                        description=f"principal pair of the partition {pp.partition}")


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


for _n in range(2, 6):
    for _lam in _partitions(_n):
        _nm = f"sl{_n}-partition-" + "-".join(map(str, _lam))
        _BUILDERS[_nm] = (lambda n, lam: (lambda seed: partition_entry(n, lam)))(_n, _lam)
        _BUILDERS[_nm].tags = frozenset({"partition", "integral"})


SP6_EIGENVALUES = tuple(sorted((mpq(a), mpq(b)) for a, b in
                               [(0, 0), (1, 0), (0, 1), ("1/3", "1/3"), ("2/3", "2/3"),
                                ("4/3", "-2/3"), ("-2/3", "4/3")]))
SP6_EIGENVALUES_AS_PRINTED = tuple(sorted((mpq(a), mpq(b)) for a, b in
                                          [(0, 0), (1, 0), (0, 1), ("1/3", "1/3"), ("2/3", "2/3"),
                                           ("4/3", "-2/3"), ("2/3", "-4/3")]))


def sp6_example() -> CatalogEntry:
    alg = algebra("C3")
    real = classical_realization("C3")
    e1 = alg.parse("v23 - v45", real)
    e2 = alg.parse("v13 - v46", real)
    h1 = real.from_matrix(parse_matrix_expr("1/3*diag(-1,2,-1,1,-2,1)", 6))
    h2 = real.from_matrix(parse_matrix_expr("1/3*diag(2,-1,-1,1,1,-2)", 6))
    return CatalogEntry("sp6-denom", alg, make_pair(alg, e1, e2), Characteristic(h1, h2),
                        {"dim_z": (7, PUBLISHED), "z_eigenvalues": (SP6_EIGENVALUES, COMPUTED),
                         "dim_g00": (3, COMPUTED)},
                        real, description="partition (2,1) pair of sl3 inside sp6")


_register("sp6-denom", ["fractional"])(lambda seed: sp6_example())


def sp_almost_principal(n: int, seed: int = DEFAULT_SEED) -> CatalogEntry:
    if n < 1:
        raise ValueError("n >= 1")
    alg = algebra(f"C{2 * n}")
    h1 = element_from_labels(alg, [1] * (2 * n - 1) + [-2 * n])
    h2 = element_from_labels(alg, [0] * (2 * n - 1) + [1])
    char = Characteristic(h1, h2)
    pair, used = generic_pair(alg, char, 2 * n + 1, seed)
    return CatalogEntry(f"sp4n-n{n}", alg, pair, char, {"dim_z": (2 * n + 1, PUBLISHED)},
                        description=f"almost principal pair in sp{4 * n}", seed=used)


_register("sp4n-n1", ["integral", "almost-principal"])(lambda seed: sp_almost_principal(1, seed))
_register("sp4n-n2", ["integral", "almost-principal"])(lambda seed: sp_almost_principal(2, seed))

EXCEPTIONAL_LABELS = {
    # Bourbaki numbering
    "E6": ((1, 1, 1, 1, 1, -7), (0, 0, 0, 0, 0, 1)),
    "E7": ((1, 1, 1, 1, -4, 1, -1), (0, 0, 0, 0, 1, 0, 1)),
}
E6_MIRROR_LABELS = ((-7, 1, 1, 1, 1, 1), (1, 0, 0, 0, 0, 0))


def exceptional_pair(which: str, seed: int = DEFAULT_SEED, labels=None) -> CatalogEntry:
    if which not in EXCEPTIONAL_LABELS:
        raise ValueError("which must be E6 or E7")
    alg = algebra(which)
    l1, l2 = labels or EXCEPTIONAL_LABELS[which]
    char = Characteristic(element_from_labels(alg, l1), element_from_labels(alg, l2))
    pair, used = generic_pair(alg, char, alg.rank, seed)
    if which == "E6":
        exp = {"dim_z": (6, PUBLISHED), "dim_g00": (6, PUBLISHED), "dim_g[1,0]": (5, PUBLISHED),
               "dim_g[-4,1]": (2, PUBLISHED), "dim_g": (78, PUBLISHED)}
        name = "e6-d5-2a1"
    else:
        exp = {"dim_z": (7, PUBLISHED), "dim_g00": (7, PUBLISHED), "dim_g": (133, PUBLISHED)}
        name = "e7-a4a1"
    return CatalogEntry(name, alg, pair, char, exp, description=f"principal pair in {which}", seed=used)


_register("e6-d5-2a1", ["integral", "principal", "exceptional"])(lambda seed: exceptional_pair("E6", seed))
_register("e7-a4a1", ["integral", "principal", "exceptional"])(lambda seed: exceptional_pair("E7", seed))


def _root_pair(label: str, name: str, e1: str, e2: str, expected: dict, description: str,
               matrix: bool = False) -> CatalogEntry:
    alg = algebra(label)
    real = classical_realization(label) if matrix else None
    pair = make_pair(alg, alg.parse(e1, real), alg.parse(e2, real))
    char = solve_characteristic(pair)
    return CatalogEntry(name, alg, pair, char, expected, real, description)


_register("sl4-rect-e12-e34", ["rectangular"])(lambda seed: _root_pair(
    "A3", "sl4-rect-e12-e34", "v12", "v34", {"dim_z": (5, COMPUTED)},
    "commuting sl2-triples through E12 and E34", matrix=True))

_register("sp4-rect-long", ["rectangular", "fractional"])(lambda seed: _root_pair(
    "C2", "sp4-rect-long", "e[2a1+a2]", "e[a2]", {"dim_z": (3, COMPUTED), "dim_g00": (2, COMPUTED)},
    "root vectors of the two orthogonal long roots of sp4; almost even with x at (1/2, 1/2)"))

_register("sp4-sl2-long", ["rectangular"])(lambda seed: _root_pair(
    "C2", "sp4-sl2-long", "e[a2]", "0", {"dim_z": (6, COMPUTED)},
    "trivial pair on a long root vector of sp4"))


# ---------------------------------------------------------------------------

def catalog_names() -> list[str]:
    return sorted(_BUILDERS)


def entry_tags(name: str) -> frozenset:
    return getattr(_BUILDERS[name], "tags", frozenset())


@lru_cache(maxsize=None)
def _cached(name: str, seed: int) -> CatalogEntry:
    return _BUILDERS[name](seed).check()


def get_entry(name: str, seed: int = DEFAULT_SEED) -> CatalogEntry:
    if name not in _BUILDERS:
        raise KeyError(f"unknown catalog entry {name!r}")
    return _cached(name, seed)
