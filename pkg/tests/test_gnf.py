import pytest

from twistlab.gnf import (
    check_closed_forms, check_comrep, check_exchange, check_gnf, check_rll, check_symmetric_gnf,
    closed_form_half, closed_form_one, gnf_sides, one_blocks, rll_states, shifted_R,
)
from twistlab.quasihopf import Legs, rh_matrix, ry_matrix
from twistlab.rep import Spin, build_jordanian
from twistlab.report import compare
from twistlab.scalar import MPoly

from conftest import PAIRS, TRIPLES, assert_all_pass

h, y = MPoly.var("h"), MPoly.var("y")


def rep(j):
    return build_jordanian(Spin.parse(j))


@pytest.mark.parametrize("spins", TRIPLES)
def test_gnf_family(spins):
    report = check_gnf(*spins)
    assert_all_pass(report)
    assert report.status_of("gnf") == "pass"
    assert report.status_of("quasi_yang_baxter") == "pass"


@pytest.mark.parametrize("pair", PAIRS)
def test_exchange_symmetry(pair):
    assert check_exchange(*pair).status_of("exchange_symmetry") == "pass"


@pytest.mark.parametrize("pair", PAIRS)
def test_comrep_holds(pair):
    assert check_comrep(*pair)


@pytest.mark.parametrize("spins", TRIPLES)
def test_symmetric_form(spins):
    assert check_symmetric_gnf(*spins).status_of("symmetric_gnf") == "pass"


@pytest.mark.parametrize("aux", PAIRS)
@pytest.mark.parametrize("quantum", ["1/2", "1"])
def test_rll(aux, quantum):
    assert check_rll(*aux, quantum).status_of("rll") == "pass"


def test_rll_mutation_detected():
    """Using the same shift on both sides breaks the exchange relation."""
    from twistlab.gnf import ShiftTerm, SymState, apply_terms, lax_terms

    lg = Legs([rep("1"), rep("1/2"), rep("1")])
    start = SymState.basis(lg.space)
    r12 = ShiftTerm(mult=shifted_R(lg, 1, 2, 3, 2))
    lhs = apply_terms([r12] + lax_terms(lg, 1, 3) + lax_terms(lg, 2, 3), start)
    rhs = apply_terms(lax_terms(lg, 2, 3) + lax_terms(lg, 1, 3) + [r12], start)
    assert lhs.first_difference(rhs) is not None
    good_l, good_r = rll_states("1", "1/2", "1")
    assert good_l.first_difference(good_r) is None


@pytest.mark.parametrize("j", ["1/2", "1", "3/2"])
def test_half_block_form(j):
    assert ry_matrix(rep("1/2"), rep(j)) == closed_form_half(j)
    assert check_closed_forms("1/2", j).status_of("r_matrix_half_block_form") == "pass"


@pytest.mark.parametrize("j", ["1/2", "1"])
def test_one_block_form(j):
    assert ry_matrix(rep("1"), rep(j)) == closed_form_one(j)


def test_block_A_formula():
    r = rep("1")
    T, I = r.T, r.I
    expected = -(r.TH.scale(2 * h)) - ((I - T @ T) @ (I - T ** 4)).scale(2 * h * y)
    assert one_blocks(r)["A"] == expected


def test_half_half_is_parameter_free():
    m = ry_matrix(rep("1/2"), rep("1/2"))
    assert "y" not in m.variables()
    assert m == rh_matrix(rep("1/2"), rep("1/2"))


def test_unshifted_gnf_is_violated():
    lg = Legs([rep("1"), rep("1/2"), rep("1")])
    lhs, _ = gnf_sides("1", "1/2", "1")
    plain = lg.Ry(2, 3) @ lg.Ry(1, 3) @ lg.Ry(1, 2)
    res = compare("plain_ybe", "", ("1", "1/2", "1"), lhs, plain)
    assert res.status == "fail"
