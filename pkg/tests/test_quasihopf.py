import pytest

from twistlab.errors import SupportOverlap
from twistlab.quasihopf import (
    Legs, alpha_matrix, beta_matrix, build_alpha_beta, build_coassociator, check_antipode_axioms,
    check_axioms, check_coproduct_homomorphism, check_pentagon, check_twist_identities,
    coassociator_two_paths, substitute_arg, twist_matrix,
)
from twistlab.rep import Spin, build_jordanian
from twistlab.report import compare

from conftest import PAIRS, TRIPLES, assert_all_pass


@pytest.mark.parametrize("spins", TRIPLES)
def test_twist_identities(spins):
    rep = check_twist_identities(*spins)
    assert_all_pass(rep)
    for name in ("twist_counit_left", "twist_coboundary", "twist_cocycle", "shifted_coassociativity_Y"):
        assert rep.status_of(name) == "pass"


@pytest.mark.parametrize("spins", TRIPLES)
def test_axioms_without_pentagon(spins):
    assert_all_pass(check_axioms(*spins, pentagon=False, antipode=False))


@pytest.mark.parametrize("spins", [("1/2",) * 4, ("1",) * 4, ("1/2", "1", "1/2", "1")])
def test_pentagon(spins):
    assert check_pentagon(*spins).status_of("axiom_pentagon") == "pass"


@pytest.mark.parametrize("j", ["1/2", "1"])
def test_antipode_axioms(j):
    rep = check_antipode_axioms(j)
    assert_all_pass(rep)
    assert rep.status_of("axiom7_matrix_units") == "pass"
    assert rep.status_of("axiom8_T_reduction") == "pass"


@pytest.mark.parametrize("pair", PAIRS)
@pytest.mark.parametrize("twisted", [False, True])
def test_coproduct_is_homomorphism(pair, twisted):
    assert_all_pass(check_coproduct_homomorphism(*pair, twisted=twisted))


@pytest.mark.parametrize("j", ["1/2", "1"])
def test_alpha_beta_gauge_agree(j):
    rep = build_jordanian(Spin.parse(j))
    alpha, beta = build_alpha_beta(j)
    assert alpha == alpha_matrix(rep) and beta == beta_matrix(rep)


def test_coassociator_constructions_agree():
    reps = [build_jordanian(Spin.parse(j)) for j in ("1", "1/2", "1")]
    closed, shifted, gauge = coassociator_two_paths(*reps)
    assert closed == shifted == gauge
    assert build_coassociator("1", "1/2", "1").mat == closed


def test_twist_at_zero_parameter_is_identity():
    r = build_jordanian(Spin.parse("1"))
    assert twist_matrix(r, r).subs("y", 0).is_identity


def test_substitution_rejects_overlap():
    lg = Legs([build_jordanian(Spin.parse("1/2"))] * 3)
    with pytest.raises(SupportOverlap):
        substitute_arg(lg.F(1, 2), 2, lg.reps[1].T_power(4))


def test_mutated_cocycle_fails():
    """Dropping the shift from the cocycle relation must be detected."""
    lg = Legs([build_jordanian(Spin.parse("1/2")), build_jordanian(Spin.parse("1")), build_jordanian(Spin.parse("1/2"))])
    r23 = lg.rep(2, 3)
    r12 = lg.rep(1, 2)
    lhs = lg.F(2, 3) @ lg.on(twist_matrix(lg.reps[0], r23), 1, 2, 3)
    rhs = lg.F(1, 2) @ lg.on(twist_matrix(r12, lg.reps[2]), 1, 2, 3)
    res = compare("unshifted_cocycle", "", ("1/2", "1", "1/2"), lhs, rhs)
    assert res.status == "fail" and res.witness["lhs"] != res.witness["rhs"]


def test_untwisted_R_half_half_rows():
    from twistlab.quasihopf import rh_matrix, ry_matrix
    from twistlab.polymat import RingMatrix
    from twistlab.scalar import MPoly

    r = build_jordanian(Spin.parse("1/2"))
    expected = RingMatrix([[MPoly.parse(x) for x in row] for row in
                           [["1", "h", "-h", "h^2"], ["0", "1", "0", "h"], ["0", "0", "1", "-h"], ["0", "0", "0", "1"]]])
    assert rh_matrix(r, r) == expected == ry_matrix(r, r)


def test_twist_half_half_single_entry():
    r = build_jordanian(Spin.parse("1/2"))
    f = twist_matrix(r, r)
    nonzero_off_diag = [(i, j, str(x)) for i, j, x in f.nonzeros() if i != j]
    assert nonzero_off_diag == [(0, 3, "2*h^2*y")]


@pytest.mark.parametrize("j", ["1/2", "1", "3/2"])
def test_alpha_beta_product_identity(j):
    """alpha beta exp((y/2)(1 - T^-2)^2 (1 - T^4)) = 1 in the commutative T-subalgebra."""
    from gmpy2 import mpq

    from twistlab.polymat import nilpotent_exp
    from twistlab.scalar import MPoly

    r = build_jordanian(Spin.parse(j))
    ti2 = r.Tinv @ r.Tinv
    gen = ((r.I - ti2) @ (r.I - ti2) @ (r.I - r.T ** 4)).scale(MPoly.var("y") * mpq(1, 2))
    assert (alpha_matrix(r) @ beta_matrix(r) @ nilpotent_exp(gen)).is_identity
    if j == "1/2":
        assert alpha_matrix(r).is_identity
