import pytest
from gmpy2 import mpq

from nilpairs.catalog import algebra, catalog_names, entry_tags, get_entry
from nilpairs.classify import (HypothesisViolation, PreconditionError, almost_even_structure,
                               classification_report, denominator_check, exponents_check,
                               is_even_nilpotent, is_integral, is_wonderful, labels_report,
                               levi_richardson, module_of, pr_even_check, pusto3_check,
                               rectangle_spectrum_check, richardson_check, useful_check,
                               wond1_check, wond2_check, xarak_check)
from nilpairs.exactla import QMatrix, Subspace
from nilpairs.grading import bigrade
from nilpairs.pairs import make_pair, solve_characteristic

CHEAP = [n for n in catalog_names() if not n.startswith("e7")]


def wonderful_integral(names):
    out = []
    for n in names:
        e = get_entry(n)
        if is_integral(e.pair, e.char) and is_wonderful(e.pair, e.char)[0]:
            out.append(n)
    return out


def test_flags_trivial_sl2():
    e = get_entry("sl2-trivial")
    f = classification_report(e.pair, e.char).flags
    assert f["trivial"] and f["principal"] and f["even"] and f["wonderful"] and f["integral"]


def test_flags_sp6():
    e = get_entry("sp6-denom")
    f = classification_report(e.pair, e.char, labels=False).flags
    assert f["wonderful"] and not f["integral"] and not f["rectangular"]


def test_flags_partition_pairs_principal_even():
    for n in range(2, 6):
        for name in [x for x in catalog_names() if x.startswith(f"sl{n}-partition")]:
            e = get_entry(name)
            rep = classification_report(e.pair, e.char, labels=False)
            assert rep.flags["principal"] and rep.flags["even"], name
            assert rep.dims["dim_z_e"] == n - 1


def test_flags_almost_principal():
    e = get_entry("sp4n-n1")
    f = classification_report(e.pair, e.char, labels=False).flags
    assert f["almost_principal"] and f["almost_even"] and not f["even"]


def test_wonderful_certificate_cells():
    e = get_entry("e6-d5-2a1")
    ok, cert = is_wonderful(e.pair, e.char)
    assert ok
    assert sum(c[2] for c in cert) == 6
    assert all(c[2] == c[3] for c in cert)


@pytest.mark.parametrize("name", [n for n in CHEAP if "integral" in entry_tags(n)])
def test_xarak_sides_agree(name):
    e = get_entry(name)
    lhs, rhs = xarak_check(e.pair, e.char)
    assert lhs == rhs


def test_xarak_precondition():
    e = get_entry("sp6-denom")
    with pytest.raises(PreconditionError):
        xarak_check(e.pair, e.char)


@pytest.mark.parametrize("name", wonderful_integral(CHEAP))
def test_wonderful_integral_consequences(name):
    e = get_entry(name)
    bg = bigrade(e.alg, e.char)
    assert pusto3_check(e.pair, e.char, bg)
    assert all(ok for _, ok in wond1_check(e.pair, e.char, bg))
    assert all(ok for _, ok in wond2_check(e.pair, e.char, bg))
    for side in ("e1", "e2"):
        hyp, concl = useful_check(e.pair, e.char, side, bg)
        assert hyp and concl
        assert levi_richardson(e.pair, e.char, side, bg)


def test_richardson_sides_sp4():
    e = get_entry("sp4n-n1")
    assert not richardson_check(e.pair, e.char, "e2")
    assert richardson_check(e.pair, e.char, "e1")


def test_labels_sp4_adapted_to_h2():
    e = get_entry("sp4n-n1")
    rep = labels_report(e.pair, e.char)
    a = rep["adapted_to_h2"]
    assert a["secondary"] == ["1", "-2"] and a["primary"] == ["0", "1"]
    assert all(a["labels_theorem"].values())
    assert a["pr_char"]["(iii) coxeter bound"] is False
    assert a["richardson"] is False
    assert all(rep["adapted_to_h1"]["pr_char"].values())


def test_labels_e6():
    e = get_entry("e6-d5-2a1")
    rep = labels_report(e.pair, e.char)
    a = rep["adapted_to_h2"]
    assert a["levi"] == "D5" and a["coxeter"] == 8 and a["coxeter_bound"] == -7
    assert all(a["pr_char"].values()) and a["richardson"]


def test_labels_precondition():
    e = get_entry("sp6-denom")
    with pytest.raises(PreconditionError):
        labels_report(e.pair, e.char)


def test_exponents_e6():
    e = get_entry("e6-d5-2a1")
    r = exponents_check(e.pair, e.char)
    assert r["l2"] == "D5" and r["alphas"] == [1, 3, 4, 5, 7] and r["verdict_l2"]
    assert r["l1"] == "2A1" and r["betas"] == [1, 1] and r["verdict_l1"]


def test_exponents_precondition():
    e = get_entry("sl4-rect-e12-e34")
    with pytest.raises(PreconditionError):
        exponents_check(e.pair, e.char)


def test_denominators_sp6():
    e = get_entry("sp6-denom")
    r = denominator_check(e.pair, e.char)
    assert r == {"max_denominator": 3, "s_type": "A2", "c_s": 3, "verdict": True}


@pytest.mark.parametrize("name", ["sp4-rect-long", "sp4-sl2-long", "sl2-trivial", "sl4-rect-e12-e34"])
def test_denominators_divide(name):
    e = get_entry(name)
    assert denominator_check(e.pair, e.char)["verdict"]


def test_rectangle_spectrum_defining_sl2():
    h = QMatrix.diag([mpq(1, 2), mpq(-1, 2)])
    e = QMatrix([[0, 1], [0, 0]])
    r = rectangle_spectrum_check(h, QMatrix.zeros(2, 2), e, QMatrix.zeros(2, 2))
    assert (r["p0"], r["q0"]) == (mpq(1, 2), 0)
    assert r["rectangle"] and r["cells_one_dimensional"] and r["dimension_formula"]


def test_rectangle_spectrum_reducible_modules():
    e = get_entry("sl4-rect-e12-e34")
    xs = [e.char.h1, e.char.h2, e.pair.e1, e.pair.e2]
    # the defining module splits as two planes, so the fixed space is 2-dimensional
    with pytest.raises(HypothesisViolation):
        rectangle_spectrum_check(*[e.realization.to_matrix(x) for x in xs])
    # the adjoint module has a 5-dimensional fixed space
    with pytest.raises(HypothesisViolation):
        rectangle_spectrum_check(*module_of(e.alg, Subspace.full(e.alg.dim), xs))


def test_rectangle_spectrum_two_dim_fixed_space():
    z = QMatrix.zeros(2, 2)
    with pytest.raises(HypothesisViolation):
        rectangle_spectrum_check(z, z, z, z)


def test_even_nilpotents():
    g = algebra("A2")
    assert is_even_nilpotent(g, g.parse("e[a1] + e[a2]"))
    assert not is_even_nilpotent(g, g.parse("e[a1]"))
    assert is_even_nilpotent(g, g.zero())


def test_pr_even():
    e = get_entry("sl4-rect-e12-e34")
    assert pr_even_check(e.pair, e.char) == (False, False)
    e = get_entry("sl4-partition-2-2")
    assert pr_even_check(e.pair, e.char) == (True, True)
    with pytest.raises(PreconditionError):
        e = get_entry("sl3-partition-2-1")
        pr_even_check(e.pair, e.char)


def test_almost_even_fractional():
    e = get_entry("sp4-rect-long")
    r = almost_even_structure(e.pair, e.char)
    assert r["x_eigenvalue"] == (mpq(1, 2), mpq(1, 2))
    assert r["rectangular"] and r["principal_in_g_ZZ"] and r["h_is_cartan"] and r["verdict"]


def test_almost_even_integral():
    e = get_entry("sp4n-n1")
    r = almost_even_structure(e.pair, e.char)
    assert r["integral_case"] and r["verdict"]
    p, q = r["x_eigenvalue"]
    assert p * q < 0


def test_almost_even_precondition():
    e = get_entry("sl3-partition-2-1")
    with pytest.raises(PreconditionError):
        almost_even_structure(e.pair, e.char)


def test_long_root_sl2_inside_sp4():
    g = algebra("C2")
    pair = make_pair(g, g.parse("e[a2]"), g.zero())
    char = solve_characteristic(pair)
    assert not is_integral(pair, char)
    r = denominator_check(pair, char)
    assert r == {"max_denominator": 2, "s_type": "2A1", "c_s": 4, "verdict": True}
    # a short root vector gives an integral grading
    pair = make_pair(g, g.parse("e[a1]"), g.zero())
    assert is_integral(pair, solve_characteristic(pair))
