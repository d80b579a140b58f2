"""Cross-checks against sympy's general matrix exponential (independent of the nilpotent series code)."""

import pytest

sympy = pytest.importorskip("sympy")

from twistlab.polymat import RingMatrix  # noqa: E402
from twistlab.quasihopf import rh_matrix, twist_matrix  # noqa: E402
from twistlab.rep import Spin, build_jordanian  # noqa: E402

h, y = sympy.symbols("h y")


def to_sympy(m: RingMatrix):
    return sympy.Matrix([[sympy.sympify(str(x).replace("^", "**")) for x in r] for r in m.rows])


def kron(a, b):
    return sympy.kronecker_product(a, b)


@pytest.mark.parametrize("j", ["1/2", "1", "3/2"])
def test_T_is_exp_hX(j):
    r = build_jordanian(Spin.parse(j))
    X = to_sympy(r.X)
    assert sympy.simplify((h * X).exp() - to_sympy(r.T)) == sympy.zeros(r.dim)


@pytest.mark.parametrize("j1, j2", [("1/2", "1"), ("1", "1")])
def test_untwisted_R_from_two_exponentials(j1, j2):
    a, b = build_jordanian(Spin.parse(j1)), build_jordanian(Spin.parse(j2))
    Xa, Xb = to_sympy(a.X), to_sympy(b.X)
    THa, THb = to_sympy(a.TH), to_sympy(b.TH)
    R = (-h * kron(Xa, THb)).exp() * (h * kron(THa, Xb)).exp()
    assert sympy.expand(R - to_sympy(rh_matrix(a, b))) == sympy.zeros(a.dim * b.dim)


@pytest.mark.parametrize("j1, j2", [("1", "1/2"), ("1", "1")])
def test_twist_as_exponential(j1, j2):
    a, b = build_jordanian(Spin.parse(j1)), build_jordanian(Spin.parse(j2))
    Ta, Tb = to_sympy(a.T), to_sympy(b.T)
    Ia = sympy.eye(a.dim)
    gen = kron(Ia - Ta ** 2, Tb ** 2 - Tb ** 4) * (y / 2)
    assert sympy.expand(gen.exp() - to_sympy(twist_matrix(a, b))) == sympy.zeros(a.dim * b.dim)
