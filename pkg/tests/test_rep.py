import pytest

from twistlab.polymat import RingMatrix
from twistlab.rep import (
    Spin, build_classical, build_jordanian, build_qrep, counit_rep, find_antipode_impl,
    jordanian_at_h0, tensor_rep,
)
from twistlab.scalar import MPoly

h = MPoly.var("h")
ALL = ["1/2", "1", "3/2", "2"]


def M(rows):
    return RingMatrix([[MPoly.parse(x) if isinstance(x, str) else MPoly.const(x) for x in r] for r in rows])


@pytest.mark.parametrize("text, two_j, dim", [("1/2", 1, 2), ("1", 2, 3), ("3/2", 3, 4), ("2", 4, 5)])
def test_spin_parse(text, two_j, dim):
    s = Spin.parse(text)
    assert (s.two_j, s.dim, str(s)) == (two_j, dim, text)


@pytest.mark.parametrize("bad", ["-1/2", "1/3", "x"])
def test_spin_rejects(bad):
    with pytest.raises(ValueError):
        Spin.parse(bad)


def test_spin_one_reference_matrices():
    r = build_jordanian(Spin.parse("1"))
    assert r.X == M([[0, 2, 0], [0, 0, 2], [0, 0, 0]])
    assert r.Y == M([[0, "1/2*h^2", 0], [1, 0, "-3/2*h^2"], [0, 1, 0]])
    assert r.H == M([[2, 0, "-4*h^2"], [0, 0, 0], [0, 0, -2]])


def test_spin_half_is_undeformed():
    r = build_jordanian(Spin.parse("1/2"))
    c = build_classical(Spin.parse("1/2"))
    assert r.X == c.Jp and r.Y == c.Jm and r.H == c.J0


@pytest.mark.parametrize("j", ALL)
def test_relations_hold(j):
    r = build_jordanian(Spin.parse(j))
    for name, res in r.relation_residuals().items():
        assert res.is_zero, name


@pytest.mark.parametrize("j", ALL)
def test_h_to_zero_gives_classical(j):
    r, c = jordanian_at_h0(build_jordanian(Spin.parse(j))), build_classical(Spin.parse(j))
    assert r.X == c.Jp and r.Y == c.Jm and r.H == c.J0
    assert r.T.is_identity


@pytest.mark.parametrize("j", ALL)
def test_group_like_element_is_exponential_of_X(j):
    from twistlab.polymat import nilpotent_exp

    r = build_jordanian(Spin.parse(j))
    assert r.T == nilpotent_exp(r.X.scale(h))


def test_tensor_and_counit_modules_satisfy_relations():
    a, b = build_jordanian(Spin.parse("1/2")), build_jordanian(Spin.parse("1"))
    for rep in (tensor_rep(a, b), tensor_rep(counit_rep(), b)):
        assert all(res.is_zero for res in rep.relation_residuals().values())


@pytest.mark.parametrize("j", ["1/2", "1", "3/2"])
def test_antipode_implementer(j):
    rep = build_jordanian(Spin.parse(j))
    impl = find_antipode_impl(rep)
    assert impl.C @ impl.Cinv == rep.I
    assert impl.apply(rep.T) == rep.Tinv
    assert impl.apply(rep.Y) == -(rep.T @ rep.Y @ rep.Tinv)
    assert impl.apply(rep.H) == -(rep.T @ rep.H @ rep.Tinv)


def test_antipode_implementer_half_explicit():
    impl = find_antipode_impl(build_jordanian(Spin.parse("1/2")))
    assert impl.C == M([["h", -1], [1, 0]])


@pytest.mark.parametrize("j", ["1/2", "1", "3/2"])
def test_q_module_relations(j):
    rep = build_qrep(Spin.parse(j))
    for name, res in rep.relation_residuals().items():
        assert res.is_zero, name
