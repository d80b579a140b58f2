import pytest

from twistlab.contraction import (
    ContractionContext, RQ_CONVENTIONS, build_Fx, build_G, build_G_inverse, build_Rq,
    check_F_contraction, check_R_contraction, check_contraction_identities, contract, matrix_limit,
    order_trace, order_trace_csv, q_exponential,
)
from twistlab.errors import DivergentLimit, LimitMismatch
from twistlab.polymat import RingMatrix
from twistlab.quasihopf import rh_matrix, twist_matrix
from twistlab.rep import Spin, build_jordanian
from twistlab.scalar import QFraction

from conftest import PAIRS, assert_all_pass


@pytest.mark.parametrize("j", ["1/2", "1", "3/2"])
def test_contraction_identities(j):
    assert_all_pass(check_contraction_identities(j))


@pytest.mark.parametrize("pair", PAIRS)
def test_R_contracts_to_Rh(pair):
    rep = check_R_contraction(*pair)
    assert rep.status_of("R_contraction") == "pass"


@pytest.mark.parametrize("pair", PAIRS)
def test_F_contracts_to_twist(pair):
    assert check_F_contraction(*pair).status_of("F_contraction") == "pass"


def test_G_inverse():
    ctx = ContractionContext.create("1", "1/2")
    assert (build_G(ctx) @ build_G_inverse(ctx)).is_identity


def test_F_at_zero_is_identity():
    ctx = ContractionContext.create("1", "1")
    assert build_Fx(ctx, 0).is_identity


def test_q_exponential_of_zero():
    z = RingMatrix.zeros(3, QFraction)
    assert q_exponential(z).is_identity


def test_rejected_placements_recorded():
    rep = check_R_contraction("1", "1")
    assert rep.status_of("R_contraction_rejected_left_placed") == "skipped"
    with pytest.raises(DivergentLimit):
        ctx = ContractionContext.create("1", "1")
        matrix_limit(build_G_inverse(ctx) @ build_Rq(ctx, "left_placed") @ build_G(ctx))


def test_strict_mode_raises_without_passing_placement(monkeypatch):
    import twistlab.contraction as c

    monkeypatch.setattr(c, "RQ_CONVENTIONS", {"left_placed": RQ_CONVENTIONS["left_placed"]})
    with pytest.raises(LimitMismatch):
        c.check_R_contraction("1/2", "1/2", strict=True)


def test_contract_returns_exact_limits():
    out = contract("1/2", "1")
    a, b = build_jordanian(Spin.parse("1/2")), build_jordanian(Spin.parse("1"))
    assert out["R"] == rh_matrix(a, b)
    assert out["F"] == twist_matrix(a, b)


def test_order_trace_has_no_poles_after_conjugation():
    from twistlab.contraction import conjugated_Fx

    ctx = ContractionContext.create("1", "1/2")
    m = conjugated_Fx(ctx)
    assert all(den == 0 or (num is not None and num >= den) for _, _, num, den in order_trace(m))
    assert order_trace_csv(m).splitlines()[0] == "row,col,num_order,den_order"
