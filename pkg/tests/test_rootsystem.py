import pytest
from gmpy2 import mpq

from nilpairs.catalog import algebra
from nilpairs.algebra import cartan_labels, element_from_labels
from nilpairs.rootsystem import (bound_d, build_root_system, expected_positive_count, levi_data,
                                 min_bound_d, parse_root, root_label, subsystem_data, weyl_dominate)

TYPES = [("A", n) for n in range(1, 6)] + [("B", n) for n in (2, 3, 4)] + [("C", n) for n in (2, 3, 4)] \
    + [("D", n) for n in (4, 5)] + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]


@pytest.mark.parametrize("fam,n", TYPES)
def test_positive_root_counts(fam, n):
    rs = build_root_system(fam, n)
    assert len(rs.positive_roots) == expected_positive_count(fam, n)
    assert all(all(c >= 0 for c in r) for r in rs.positive_roots)
    # closed under simple reflections up to sign
    for r in rs.roots:
        for i in range(n):
            assert rs.is_root(rs.reflect(rs.simple_root(i), r))


def test_examples_counts():
    assert len(build_root_system("A", 1).positive_roots) == 1
    assert len(build_root_system("E", 6).positive_roots) == 36
    assert len(build_root_system("C", 3).positive_roots) == 9
    assert algebra("E6").dim == 78 and algebra("C3").dim == 21


def test_short_roots_norm_two():
    for lab in ("B3", "C3", "F4", "G2", "E6"):
        rs = build_root_system(lab)
        assert min(rs.norm2(r) for r in rs.positive_roots) == 2


def test_invalid_types():
    for fam, n in (("B", 1), ("D", 2), ("E", 5), ("G", 3), ("Q", 2)):
        with pytest.raises(ValueError):
            build_root_system(fam, n)


def test_semisimple_label():
    rs = build_root_system("A1+A1")
    assert rs.rank == 2 and len(rs.positive_roots) == 2


def test_levi_empty_subset():
    ld = levi_data(build_root_system("A3"), [])
    assert ld.exponents == () and ld.coxeter_max == 1 and ld.cartan_det == 1


def test_levi_d5_in_e6():
    ld = levi_data(build_root_system("E6"), [0, 1, 2, 3, 4])
    assert ld.type_label == "D5"
    assert sorted(ld.exponents) == [1, 3, 4, 5, 7] and ld.coxeter_max == 8


def test_levi_a3():
    ld = levi_data(build_root_system("A3"), [0, 1, 2])
    assert sorted(ld.exponents) == [1, 2, 3] and ld.coxeter_max == 4 and ld.cartan_det == 4


@pytest.mark.parametrize("lab", ["A4", "B3", "C3", "D4", "E6", "F4", "G2"])
def test_exponent_sanity(lab):
    rs = build_root_system(lab)
    ld = levi_data(rs, range(rs.rank))
    assert sum(ld.exponents) == len(rs.positive_roots)
    assert max(ld.exponents) + 1 == ld.coxeter_max


def test_cartan_determinants():
    dets = {"A2": 3, "B2": 2, "C3": 2, "D4": 4, "E6": 3, "E7": 2, "G2": 1, "F4": 1}
    for lab, d in dets.items():
        rs = build_root_system(lab)
        assert levi_data(rs, range(rs.rank)).cartan_det == d


def test_subsystem_of_long_roots():
    rs = build_root_system("C2")
    long_roots = [r for r in rs.roots if rs.norm2(r) == 4]
    assert subsystem_data(rs, long_roots).type_label == "2A1"


def test_element_from_labels():
    g = algebra("A1")
    assert element_from_labels(g, [0]) == g.zero()
    assert element_from_labels(g, [2]) == g.parse("h")
    e6 = algebra("E6")
    h2 = element_from_labels(e6, [0, 0, 0, 0, 0, 1])
    assert cartan_labels(e6, h2) == tuple(mpq(x) for x in (0, 0, 0, 0, 0, 1))


def test_element_from_labels_linear():
    g = algebra("B3")
    a, b = [1, mpq(1, 2), -3], [0, 2, mpq(5, 3)]
    ha, hb = element_from_labels(g, a), element_from_labels(g, b)
    hab = element_from_labels(g, [x + y for x, y in zip(a, b)])
    assert hab == tuple(x + y for x, y in zip(ha, hb))


def test_bound_d_examples():
    assert bound_d(build_root_system("A2"), [], 1) == 0
    assert bound_d(build_root_system("A2"), [0], 1) == -2
    e6 = build_root_system("E6")
    d = bound_d(e6, [0, 1, 2, 3, 4], 5)
    assert d <= -7          # mu(h1) = -7 >= 2(mu|nu)
    assert min_bound_d(e6, [0, 1, 2, 3, 4]) == d
    with pytest.raises(ValueError):
        bound_d(e6, [0, 1], 1)


def test_weyl_dominate():
    rs = build_root_system("A2")
    a, b, word = weyl_dominate(rs, [-1, 0], [0, 0])
    assert all(x >= 0 for x in a)
    # primary zero, secondary negative gets flipped too
    a, b, _ = weyl_dominate(rs, [0, 1], [-1, 0])
    assert all(x >= 0 for x in a) and all(y >= 0 for x, y in zip(a, b) if x == 0)


def test_root_labels_round_trip():
    rs = build_root_system("E7")
    for r in rs.positive_roots:
        assert parse_root(root_label(r), 7) == r
