import pytest
from hypothesis import given, settings, strategies as st

from twistlab.errors import DivergentLimit
from twistlab.scalar import MPoly, QFraction, limit_orders, limit_q_to_1, q_factorial, q_number

h, y, q, s = (MPoly.var(v) for v in "hyqs")

small = st.integers(-5, 5)


@st.composite
def polys(draw):
    out = MPoly()
    for _ in range(draw(st.integers(0, 4))):
        c = draw(small)
        out = out + MPoly.const(c) * h ** draw(st.integers(0, 3)) * y ** draw(st.integers(0, 2))
    return out


def test_canonical_text():
    assert str((1 + h) ** 3) == "1 + 3*h + 3*h^2 + h^3"
    assert str(MPoly()) == "0"


@given(polys())
def test_text_round_trip(p):
    assert MPoly.parse(str(p)) == p


@settings(max_examples=60)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == MPoly()


@given(polys(), polys())
def test_diff_is_a_derivation(a, b):
    assert (a * b).diff("h") == a.diff("h") * b + a * b.diff("h")


def test_subs_and_coefficients():
    p = 1 + 2 * h * y + h ** 2
    assert p.subs("y", 0) == 1 + h ** 2
    assert p.coefficients("y") == {0: 1 + h ** 2, 1: 2 * h}


def test_fraction_reduces_over_q_minus_1():
    f = QFraction(q * q - 1, q - 1)
    assert f.is_polynomial
    assert f.to_mpoly() == q + 1


@pytest.mark.parametrize("n, num, den", [
    (1, MPoly.const(1), MPoly.const(1)),
    (2, q ** 2 + 1, q),
    (3, q ** 4 + q ** 2 + 1, q ** 2),
])
def test_q_number_values(n, num, den):
    assert q_number(n) == QFraction(num, den)


def test_q_number_in_square_root_variable():
    # q = s^2
    assert q_number(2, "s", 2) == QFraction(s ** 4 + 1, s ** 2)


@pytest.mark.parametrize("n", range(1, 6))
def test_q_numbers_contract_to_integers(n):
    assert limit_q_to_1(q_number(n)) == MPoly.const(n)
    fact = 1
    for k in range(1, n + 1):
        fact *= k
    assert limit_q_to_1(q_factorial(n)) == MPoly.const(fact)


def test_limit_with_cancelling_pole():
    f = QFraction(h * (q ** 3 - 1), q - 1)
    assert limit_q_to_1(f) == 3 * h


def test_divergent_limit():
    with pytest.raises(DivergentLimit):
        limit_q_to_1(QFraction(h, q - 1))
    assert limit_orders(QFraction(h * (q - 1), (q - 1) ** 2)) == (0, 1)
