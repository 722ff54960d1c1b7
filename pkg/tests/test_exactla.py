import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from nilpairs.catalog import algebra, sp6_example
from nilpairs.exactla import (InconsistentSystem, IrrationalSpectrum, NotSemisimple, QMatrix, Subspace,
                              eigenvalues, intersect, joint_eigenspaces, kernel, minpoly_is_squarefree,
                              orth_complement, rref, solve_affine, subspace_sum)

# ---------------------------------------------------------------------------
# examples


def test_kernel_identity_is_zero():
    assert kernel(QMatrix.identity(2)).dim == 0


def test_kernel_ad_e_sl2():
    g = algebra("A1")
    e = g.parse("e")
    k = kernel(g.ad(e))
    assert k.dim == 1 and k == Subspace(3, [e])


def test_kernel_rank_one():
    k = kernel(QMatrix([[1, 2], [2, 4]]))
    assert k.dim == 1 and k == Subspace(2, [(-2, 1)])


def test_solve_identity():
    x, ker = solve_affine(QMatrix.identity(3), (1, mpq(1, 2), -4))
    assert x == (1, mpq(1, 2), -4) and ker.dim == 0


def test_solve_recovers_chevalley_f():
    # [e, f] = h and [h, f] = -2f, solved jointly for f
    g = algebra("A1")
    e, h = g.parse("e"), g.parse("h")
    a = QMatrix(list(g.ad(e).rows) + list(g.ad(h).shift(-2).rows))
    f, ker = solve_affine(a, list(h) + [0] * 3)
    assert ker.dim == 0
    assert f == g.parse("f")


def test_solve_inconsistent():
    with pytest.raises(InconsistentSystem):
        solve_affine(QMatrix.zeros(2, 2), (1, 0))


def test_subspace_idempotence():
    u = Subspace(3, [(1, 2, 3), (0, 1, 1)])
    assert u & u == u and u + u == u


def test_killing_full_space_perp_is_zero():
    g = algebra("A1")
    assert orth_complement(Subspace.full(3), g.killing).dim == 0


def test_joint_eigenspaces_zero_operator():
    res = joint_eigenspaces([QMatrix.zeros(4, 4)])
    assert len(res) == 1 and res[0][0] == (0,) and res[0][1].dim == 4


def test_joint_eigenspaces_ad_h_sl2():
    g = algebra("A1")
    res = dict(joint_eigenspaces([g.ad(g.parse("h"))]))
    assert sorted(k[0] for k in res) == [-2, 0, 2]
    assert all(s.dim == 1 for s in res.values())


def test_joint_eigenspaces_sp6_dims():
    e = sp6_example()
    res = joint_eigenspaces([e.alg.ad(e.char.h1), e.alg.ad(e.char.h2)])
    assert sum(s.dim for _, s in res) == 21


def test_minpoly_examples():
    assert minpoly_is_squarefree(QMatrix.diag([1, 1, 2]))
    assert not minpoly_is_squarefree(QMatrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]]))
    e = sp6_example()
    assert minpoly_is_squarefree(e.alg.ad(e.char.h1))


def test_not_semisimple_and_irrational():
    with pytest.raises(NotSemisimple):
        joint_eigenspaces([QMatrix([[0, 1], [0, 0]])])
    with pytest.raises(IrrationalSpectrum):
        eigenvalues(QMatrix([[0, 2], [1, 0]]))        # x^2 - 2


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        Subspace(2, [(1, 0)]) + Subspace(3, [(1, 0, 0)])


# ---------------------------------------------------------------------------
# properties

small = st.integers(min_value=-4, max_value=4)
rat = st.builds(lambda a, b: mpq(a, b), small, st.integers(min_value=1, max_value=3))


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(rat, min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_idempotent_and_rank_nullity(rows):
    m = QMatrix(rows)
    r, _ = rref(m)
    assert rref(r)[0] == r
    assert m.rank() + kernel(m).dim == m.ncols
    for v in kernel(m).basis:
        assert not any(m.apply(v))


@settings(max_examples=60, deadline=None)
@given(matrices(4, 4), matrices(4, 4))
def test_sum_intersection_dimension(a, b):
    n = min(len(a[0]), len(b[0]))
    u = Subspace(n, [r[:n] for r in a])
    v = Subspace(n, [r[:n] for r in b])
    s, i = subspace_sum(u, v), intersect(u, v)
    assert s.dim + i.dim == u.dim + v.dim
    assert all(u.contains(x) and v.contains(x) for x in i.basis)
    assert all(s.contains(x) for x in u.basis + v.basis)


@settings(max_examples=40, deadline=None)
@given(matrices(3, 3), matrices(3, 3), matrices(3, 3))
def test_modular_law(a, b, c):
    n = min(len(a[0]), len(b[0]), len(c[0]))
    u, v, w = (Subspace(n, [r[:n] for r in x]) for x in (a, b, c))
    # modular law: if u <= w then u + (v & w) = (u + v) & w
    w = u + w
    assert u + (v & w) == (u + v) & w


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=1, max_size=5), st.lists(small, min_size=5, max_size=5))
def test_joint_eigenspaces_direct_sum(diag1, diag2):
    n = len(diag1)
    d1, d2 = QMatrix.diag(diag1), QMatrix.diag(diag2[:n])
    res = joint_eigenspaces([d1, d2])
    assert sum(s.dim for _, s in res) == n
    for (l1, l2), s in res:
        for v in s.basis:
            assert not any(d1.shift(l1).apply(v)) and not any(d2.shift(l2).apply(v))


@settings(max_examples=30, deadline=None)
@given(st.lists(small, min_size=2, max_size=4), st.lists(rat, min_size=16, max_size=16))
def test_joint_eigenspaces_after_conjugation(diag, entries):
    # conjugate a diagonal matrix by a unipotent upper-triangular matrix
    n = len(diag)
    u = [[1 if i == j else (entries[i * 4 + j] if j > i else 0) for j in range(n)] for i in range(n)]
    um = QMatrix(u)
    uinv = kernel_inverse(um)
    a = um @ QMatrix.diag(diag) @ uinv
    res = joint_eigenspaces([a])
    assert sum(s.dim for _, s in res) == n
    assert sorted(k[0] for k, s in res for _ in range(s.dim)) == sorted(mpq(x) for x in diag)


def kernel_inverse(m: QMatrix) -> QMatrix:
    n = m.nrows
    cols = [solve_affine(m, tuple(1 if i == j else 0 for i in range(n)))[0] for j in range(n)]
    return QMatrix.from_columns(cols, n)
