import random
from itertools import combinations, product

import pytest
from gmpy2 import mpq

from nilpairs.algebra import (check_antisymmetry, check_jacobi,
                              check_killing_invariance, is_homomorphism, parse_matrix_expr,
                              subalgebra_is_closed)
from nilpairs.catalog import algebra, classical_realization, embed_sl_in_sp, partition_pair
from nilpairs.exactla import QMatrix, Subspace


def test_sl2_relations():
    g = algebra("A1")
    e, f, h = g.parse("e"), g.parse("f"), g.parse("h")
    assert g.bracket(h, e) == tuple(2 * c for c in e)
    assert g.bracket(h, f) == tuple(-2 * c for c in f)
    assert g.bracket(e, f) == h


def test_g2_jacobi_all_triples():
    g = algebra("G2")
    triples = list(combinations(range(g.dim), 3))
    assert len(triples) == 364
    assert check_jacobi(g, triples) == []


@pytest.mark.parametrize("lab", ["A1", "A2", "A3", "B2", "C2", "C3", "G2", "A1+A1"])
def test_exhaustive_soundness(lab):
    g = algebra(lab)
    triples = list(product(range(g.dim), repeat=3))
    assert check_antisymmetry(g)
    assert check_jacobi(g, triples) == []
    assert check_killing_invariance(g, triples) == []


@pytest.mark.parametrize("lab", ["E6", "E7"])
def test_sampled_jacobi_exceptional(lab):
    g = algebra(lab)
    rng = random.Random(7)
    triples = [tuple(rng.randrange(g.dim) for _ in range(3)) for _ in range(10_000)]
    assert check_jacobi(g, triples) == []


def test_killing_root_pairing_a2():
    g = algebra("A2")
    rs = g.root_system
    for a in rs.roots:
        for b in rs.roots:
            k = g.kappa(g.basis_vector(g.root_index[a]), g.basis_vector(g.root_index[b]))
            if b == tuple(-x for x in a):
                assert k != 0
            else:
                assert k == 0


def test_killing_nondegenerate():
    for lab in ("A3", "C3", "G2"):
        assert algebra(lab).killing.rank() == algebra(lab).dim


@pytest.mark.parametrize("lab", ["A2", "A3", "B2", "B3", "C2", "C3", "D4"])
def test_classical_realizations(lab):
    real = classical_realization(lab)
    assert real.verify()
    # the preserved form, if any, is respected: X^T J + J X = 0
    if real.form is not None:
        for m in real.matrices:
            assert (m.T @ real.form + real.form @ m).is_zero()


def test_parse_and_format_round_trip():
    g = algebra("B3")
    x = g.parse("2*e[a1+a2] - 1/3*f[a3] + h2")
    assert g.parse(g.format(x)) == x
    assert g.parse("0") == g.zero()
    with pytest.raises(ValueError):
        g.parse("e[a1+a3]")           # not a root
    with pytest.raises(ValueError):
        g.parse("banana")


def test_parse_matrix_units():
    g = algebra("C3")
    real = classical_realization("C3")
    x = g.parse("v23 - v45", real)
    assert real.to_matrix(x) == parse_matrix_expr("v23 - v45", 6)
    with pytest.raises(ValueError):
        g.parse("v23", real)          # a single unit is not symplectic
    with pytest.raises(ValueError):
        g.parse("v12")                # no realization given


def test_parse_matrix_expr_diag():
    m = parse_matrix_expr("1/3*diag(-1,2,-1,1,-2,1)", 6)
    assert m == QMatrix.diag([mpq(x, 3) for x in (-1, 2, -1, 1, -2, 1)])


def test_embedding_sl_in_sp():
    emb = embed_sl_in_sp(2)
    assert is_homomorphism(emb.src, emb.dst, emb.phi)
    emb3 = embed_sl_in_sp(3)
    assert emb3.image().dim == 8
    assert subalgebra_is_closed(emb3.dst, emb3.image())


def test_embedding_of_partition_pair_matches_sp6():
    from nilpairs.catalog import sp6_example
    pp = partition_pair(3, (2, 1))
    emb = embed_sl_in_sp(3)
    sp = sp6_example()
    # basis identification: up to sign of e2, the images agree with the explicit pair
    img1, img2 = emb.apply(pp.e1), emb.apply(pp.e2)
    assert Subspace(21, [img1]) == Subspace(21, [sp.pair.e1])
    assert Subspace(21, [img2]) == Subspace(21, [sp.pair.e2])
