"""Root systems of types A-G, Levi subsystems and their numerical invariants.

Simple roots follow Bourbaki's numbering:

====  =====================================================
type  Dynkin diagram (edges; ``=>`` points to the short root)
====  =====================================================
A_n   1 - 2 - ... - n
B_n   1 - 2 - ... - (n-1) => n
C_n   1 - 2 - ... - (n-1) <= n
D_n   1 - ... - (n-2) - (n-1),  (n-2) - n
E_n   1 - 3 - 4 - 5 - ... - n,  2 - 4
F_4   1 - 2 => 3 - 4
G_2   1 <= 2   (node 2 long)
====  =====================================================

Roots are integer tuples in the simple-root basis.  The inner product is
normalised so that short roots have squared length 2.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

from gmpy2 import mpq

from .exactla import QMatrix, solve_affine

Root = tuple[int, ...]

VALID_RANKS = {"A": (1, None), "B": (2, None), "C": (2, None), "D": (3, None),
               "E": (6, 8), "F": (4, 4), "G": (2, 2)}


def _edges_and_lengths(family: str, n: int) -> tuple[list[tuple[int, int]], list[int]]:
    lengths = [2] * n
    if family == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif family == "B":
        edges = [(i, i + 1) for i in range(n - 1)]
        lengths = [4] * (n - 1) + [2]
    elif family == "C":
        edges = [(i, i + 1) for i in range(n - 1)]
        lengths = [2] * (n - 1) + [4]
    elif family == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif family == "E":
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
    elif family == "F":
        edges = [(0, 1), (1, 2), (2, 3)]
        lengths = [4, 4, 2, 2]
    elif family == "G":
        edges = [(0, 1)]
        lengths = [2, 6]
    else:
        raise ValueError(f"unknown family {family!r}")
    return edges, lengths


def _check_type(family: str, rank: int) -> None:
    if family not in VALID_RANKS:
        raise ValueError(f"unknown family {family!r}")
    lo, hi = VALID_RANKS[family]
    if rank < lo or (hi is not None and rank > hi):
        raise ValueError(f"invalid rank {rank} for type {family}")


def parse_type(label: str) -> list[tuple[str, int]]:
    """``"E6"`` -> ``[("E", 6)]``; ``"A1+A1"`` or ``"2A1"`` -> two components."""
    comps = []
    for part in label.replace(" ", "").split("+"):
        m = re.fullmatch(r"(\d*)([A-Ga-g])(\d+)", part)
        if not m:
            raise ValueError(f"cannot parse type {label!r}")
        mult = int(m.group(1) or 1)
        fam, rk = m.group(2).upper(), int(m.group(3))
        _check_type(fam, rk)
        comps.extend([(fam, rk)] * mult)
    return comps


def type_string(components) -> str:
    if not components:
        return "T"
    counts: dict[tuple[str, int], int] = {}
    for c in components:
        counts[c] = counts.get(c, 0) + 1
    parts = []
    for (fam, rk), k in sorted(counts.items(), key=lambda kv: (-kv[0][1], kv[0][0])):
        parts.append(f"{k if k > 1 else ''}{fam}{rk}")
    return "+".join(parts)


@dataclass(frozen=True)
class RootSystem:
    components: tuple[tuple[str, int], ...]
    gram: tuple[tuple[int, ...], ...]          # (alpha_i, alpha_j), integral
    positive_roots: tuple[Root, ...]            # sorted by height, then lexicographically

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def label(self) -> str:
        return type_string(self.components)

    @cached_property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Entry ``[i][j]`` is ``<alpha_i^vee, alpha_j> = alpha_j(h_i)``."""
        g = self.gram
        n = self.rank
        return tuple(tuple(2 * g[i][j] // g[i][i] for j in range(n)) for i in range(n))

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        return self.positive_roots + tuple(neg(r) for r in self.positive_roots)

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    @cached_property
    def positive_index(self) -> dict[Root, int]:
        return {r: i for i, r in enumerate(self.positive_roots)}

    def simple_root(self, i: int) -> Root:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def inner(self, a, b) -> int:
        g = self.gram
        return sum(a[i] * g[i][j] * b[j] for i in range(len(a)) if a[i] for j in range(len(b)) if b[j])

    def norm2(self, a) -> int:
        return self.inner(a, a)

    def pairing(self, a, b) -> int:
        """``<a, b^vee> = 2 (a, b) / (b, b)`` for a root ``b``."""
        return 2 * self.inner(a, b) // self.norm2(b)

    def is_root(self, a) -> bool:
        return tuple(a) in self.root_set

    def reflect(self, a, b) -> Root:
        k = self.pairing(a, b)
        return tuple(x - k * y for x, y in zip(a, b))

    def coroot_coords(self, a: Root) -> tuple[mpq, ...]:
        """Coordinates of ``a^vee`` in the basis of simple coroots."""
        n2 = self.norm2(a)
        return tuple(mpq(a[i] * self.gram[i][i], n2) for i in range(self.rank))

    def height(self, a: Root) -> int:
        return sum(a)

    @cached_property
    def highest_root_height(self) -> int:
        return max(map(self.height, self.positive_roots))


def neg(a) -> Root:
    return tuple(-x for x in a)


def add(a, b) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def _enumerate_positive(gram: list[list[int]]) -> list[Root]:
    n = len(gram)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]

    def ip(a, b):
        return sum(a[i] * gram[i][j] * b[j] for i in range(n) for j in range(n))

    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for b in layer:
            for i, a in enumerate(simple):
                if b == a:
                    continue
                p = 0
                while tuple(x - (p + 1) * y for x, y in zip(b, a)) in found:
                    p += 1
                q = p - 2 * ip(b, a) // gram[i][i]
                if q > 0:
                    c = add(b, a)
                    if c not in found:
                        found.add(c)
                        nxt.append(c)
        layer = nxt
    return sorted(found, key=lambda r: (sum(r), r))


def build_root_system(family: str, rank: int | None = None) -> RootSystem:
    """Root system of a simple type, or of a semisimple label like ``"A1+A1"``."""
    if rank is None:
        comps = parse_type(family)
    else:
        _check_type(family.upper(), rank)
        comps = [(family.upper(), rank)]
    n = sum(r for _, r in comps)
    gram = [[0] * n for _ in range(n)]
    off = 0
    for fam, rk in comps:
        edges, lengths = _edges_and_lengths(fam, rk)
        for i, L in enumerate(lengths):
            gram[off + i][off + i] = L
        for i, j in edges:
            v = -max(lengths[i], lengths[j]) // 2
            gram[off + i][off + j] = gram[off + j][off + i] = v
        off += rk
    pos = _enumerate_positive(gram)
    return RootSystem(tuple(comps), tuple(map(tuple, gram)), tuple(pos))


# ---------------------------------------------------------------------------
# Levi subsystems and their invariants

def _det_int(rows) -> int:
    m = [[mpq(x) for x in r] for r in rows]
    n = len(m)
    det = mpq(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return 0
        if p != c:
            m[p], m[c] = m[c], m[p]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return int(det)


def _classify_component(cartan: list[list[int]], norms: list[int]) -> tuple[str, int]:
    """Identify a connected Cartan matrix by its diagram shape."""
    n = len(cartan)
    if n == 1:
        return ("A", 1)
    mult = {}
    deg = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if cartan[i][j]:
                mult[(i, j)] = cartan[i][j] * cartan[j][i]
                deg[i] += 1
                deg[j] += 1
    m = max(mult.values())
    if m == 3:
        return ("G", 2)
    if m == 2:
        if n == 4 and max(deg) == 2 and any(v == 2 for (i, j), v in mult.items()
                                             if deg[i] == 2 and deg[j] == 2):
            return ("F", 4)
        # B or C: double bond at an end; C if the end node is long
        (i, j), = [e for e, v in mult.items() if v == 2]
        end = i if deg[i] == 1 else j
        other = j if end == i else i
        if n == 2:
            return ("B", 2)   # B2 == C2
        return ("C", n) if norms[end] > norms[other] else ("B", n)
    if max(deg) <= 2:
        return ("A", n)
    branch = deg.index(3)
    legs = []
    for nb in [j for j in range(n) if j != branch and cartan[branch][j]]:
        length, prev, cur = 1, branch, nb
        while True:
            nxt = [k for k in range(n) if k not in (prev, cur) and cartan[cur][k]]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        legs.append(length)
    legs.sort()
    if legs[:2] == [1, 1]:
        return ("D", n)
    return ("E", n)


def _coxeter_number(fam: str, n: int) -> int:
    return {"A": n + 1, "B": 2 * n, "C": 2 * n, "D": 2 * n - 2,
            "E": {6: 12, 7: 18, 8: 30}.get(n, 0), "F": 12, "G": 6}[fam]


def exponents_from_heights(height_counts: list[int]) -> list[int]:
    """Dual partition of the root-height multiplicities (Kostant)."""
    if not height_counts:
        return []
    out = []
    for k in range(1, height_counts[0] + 1):
        out.append(sum(1 for c in height_counts if c >= k))
    return sorted(out)


@dataclass(frozen=True)
class LeviData:
    simple_subset: tuple[Root, ...]
    component_types: tuple[tuple[str, int], ...]
    exponents: tuple[int, ...]
    coxeter_max: int
    cartan_det: int
    positive_roots: tuple[Root, ...] = field(repr=False)

    @property
    def type_label(self) -> str:
        return type_string(self.component_types)


def subsystem_data(rs: RootSystem, roots) -> LeviData:
    """Invariants of a closed, symmetric subsystem of ``rs``.

    The positive system is inherited from ``rs``; simple roots are the
    positive ones that are not a sum of two positive ones.
    """
    rset = {tuple(r) for r in roots}
    pos = sorted((r for r in rset if r in rs.positive_index), key=lambda r: (sum(r), r))
    posset = set(pos)
    simple = [r for r in pos
              if not any(sub(r, s) in posset for s in pos if s != r)]
    k = len(simple)
    if not k:
        return LeviData((), (), (), 1, 1, ())
    cartan = [[rs.pairing(b, a) for b in simple] for a in simple]   # <a^vee, b>
    # connected components
    comp_of = [-1] * k
    comps = []
    for s in range(k):
        if comp_of[s] >= 0:
            continue
        stack, members = [s], []
        comp_of[s] = len(comps)
        while stack:
            x = stack.pop()
            members.append(x)
            for y in range(k):
                if comp_of[y] < 0 and cartan[x][y]:
                    comp_of[y] = len(comps)
                    stack.append(y)
        comps.append(sorted(members))
    types = []
    for members in comps:
        sub_c = [[cartan[i][j] for j in members] for i in members]
        types.append(_classify_component(sub_c, [rs.norm2(simple[i]) for i in members]))
    # heights w.r.t. the subsystem's own simple roots
    basis = QMatrix.from_columns([tuple(mpq(x) for x in s) for s in simple], rs.rank)
    heights = [int(sum(solve_affine(basis, r)[0])) for r in pos]
    counts = [0] * (max(heights) if heights else 0)
    for h in heights:
        counts[h - 1] += 1
    exps = exponents_from_heights(counts)
    cox = max((_coxeter_number(f, n) for f, n in types), default=1)
    det = _det_int(cartan)
    return LeviData(tuple(simple), tuple(sorted(types)), tuple(exps), cox, det, tuple(pos))


def levi_data(rs: RootSystem, subset) -> LeviData:
    """Invariants of the standard Levi subalgebra generated by simple roots in ``subset``.

    ``subset`` holds simple-root indices (0-based).
    """
    subset = sorted(set(subset))
    if any(i < 0 or i >= rs.rank for i in subset):
        raise ValueError("subset must consist of simple-root indices")
    roots = [r for r in rs.roots if all(r[j] == 0 for j in range(rs.rank) if j not in subset)]
    return subsystem_data(rs, roots)


def nu_vector(rs: RootSystem, levi: LeviData) -> tuple[mpq, ...]:
    """Sum of the positive coroots of the Levi, as an element of Q Pi."""
    out = [mpq(0)] * rs.rank
    for r in levi.positive_roots:
        n2 = rs.norm2(r)
        for i, x in enumerate(r):
            out[i] += mpq(2 * x, n2)
    return tuple(out)


def bound_d(rs: RootSystem, subset, mu: int) -> mpq:
    """``2 (mu | nu)`` for a simple root ``mu`` outside the Levi ``subset``."""
    subset = set(subset)
    if mu in subset:
        raise ValueError("mu must lie outside the Levi subset")
    levi = levi_data(rs, subset)
    nu = nu_vector(rs, levi)
    m = rs.simple_root(mu)
    g = rs.gram
    return 2 * sum(m[i] * g[i][j] * nu[j] for i in range(rs.rank) for j in range(rs.rank))


def min_bound_d(rs: RootSystem, subset) -> mpq | None:
    outside = [m for m in range(rs.rank) if m not in set(subset)]
    if not outside:
        return None
    return min(bound_d(rs, subset, m) for m in outside)


def dimension(rs: RootSystem) -> int:
    return rs.rank + len(rs.roots)


def weyl_dominate(rs: RootSystem, primary: list, secondary: list) -> tuple[list, list, list[int]]:
    """Move a pair of Cartan elements, given by simple-root labels, into the
    chamber where ``primary + eps * secondary`` is dominant for small ``eps > 0``.

    Returns the new label vectors and the sequence of simple reflections used.
    """
    a = [mpq(x) for x in primary]
    b = [mpq(x) for x in secondary]
    cm = rs.cartan_matrix
    word = []
    limit = 10 * (len(rs.positive_roots) + 1)
    while True:
        bad = next((i for i in range(rs.rank) if a[i] < 0 or (a[i] == 0 and b[i] < 0)), None)
        if bad is None:
            return a, b, word
        word.append(bad)
        ai, bi = a[bad], b[bad]
        # alpha_j(s_i h) = alpha_j(h) - <alpha_j, alpha_i^vee> alpha_i(h)
        for j in range(rs.rank):
            c = cm[bad][j]
            if c:
                a[j] -= c * ai
                b[j] -= c * bi
        if len(word) > limit:
            raise RuntimeError("Weyl chamber walk did not terminate")


def root_label(r: Root) -> str:
    parts = []
    for i, c in enumerate(r):
        if c:
            parts.append(f"{'' if c == 1 else c}a{i + 1}")
    return "+".join(parts)


def parse_root(text: str, rank: int) -> Root:
    out = [0] * rank
    for term in text.replace(" ", "").split("+"):
        m = re.fullmatch(r"(\d*)\*?a(\d+)", term)
        if not m:
            raise ValueError(f"bad root expression {text!r}")
        i = int(m.group(2)) - 1
        if not 0 <= i < rank:
            raise ValueError(f"simple root index out of range in {text!r}")
        out[i] += int(m.group(1) or 1)
    return tuple(out)


CLASSICAL_POSITIVE_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


def expected_positive_count(family: str, n: int) -> int:
    return CLASSICAL_POSITIVE_COUNTS[family](n)

