import pytest
from hypothesis import given, settings, strategies as st

from twistlab.errors import NotNilpotent, NotUnipotent
from twistlab.polymat import (
    LegSpace, RingMatrix, embed_on_legs, exp_kron, kron, leg_permute, matrix_from_json,
    matrix_to_json, nilpotent_exp, nilpotent_log_unipotent, nilpotent_sqrt_one_plus, swap_matrix,
    unipotent_inv,
)
from twistlab.scalar import MPoly

h, y = MPoly.var("h"), MPoly.var("y")
atoms = st.sampled_from([MPoly(), MPoly.const(1), MPoly.const(-2), h, y, h * y, 1 + h])


def mats(n):
    return st.lists(st.lists(atoms, min_size=n, max_size=n), min_size=n, max_size=n).map(RingMatrix)


def strict_upper(n):
    def build(entries):
        m = RingMatrix.zeros(n)
        it = iter(entries)
        for i in range(n):
            for j in range(i + 1, n):
                m.rows[i][j] = next(it)
        return m
    return st.lists(atoms, min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2).map(build)


@settings(max_examples=40)
@given(mats(2), mats(2), mats(3), mats(3))
def test_kron_mixed_product(a, b, c, d):
    assert kron(a, c) @ kron(b, d) == kron(a @ b, c @ d)


@settings(max_examples=40)
@given(strict_upper(4))
def test_exp_log_inverse(n):
    e = nilpotent_exp(n)
    assert e.is_unipotent
    assert nilpotent_log_unipotent(e) == n
    assert e @ unipotent_inv(e) == RingMatrix.identity(4)


@given(strict_upper(3))
def test_sqrt_one_plus_squares(n):
    r = nilpotent_sqrt_one_plus(n)
    assert r @ r == RingMatrix.identity(3) + n


def test_power_chain_must_terminate():
    with pytest.raises(NotNilpotent):
        nilpotent_exp(RingMatrix.identity(2))
    with pytest.raises(NotUnipotent):
        unipotent_inv(RingMatrix.diag([2, 1]))


def test_general_inverse_over_fractions():
    m = RingMatrix([[1 + h, h], [MPoly.const(1), MPoly.const(1)]])
    assert m @ m.inverse() == RingMatrix.identity(2)


def test_swap_conjugates_kron():
    a = RingMatrix([[h, MPoly.const(1)], [MPoly(), y]])
    b = RingMatrix([[MPoly.const(1), h, MPoly()], [MPoly(), MPoly.const(2), y], [h, MPoly(), MPoly.const(1)]])
    p = swap_matrix(2, 3)
    assert p @ kron(a, b) @ p.transpose() == kron(b, a)


@pytest.mark.parametrize("perm", [(1, 2, 3), (2, 1, 3), (3, 1, 2), (1, 3, 2), (2, 3, 1)])
def test_leg_permute_matches_direct_embedding(perm):
    space = LegSpace((2, 2, 2))
    factors = [RingMatrix.identity(2) + RingMatrix.unit(2, 0, 1).scale(h * k) for k in (1, 2, 3)]
    op = embed_on_legs(space, kron(*factors), (1, 2, 3))
    assert leg_permute(op, perm) == embed_on_legs(space, kron(*factors), perm)


def test_leg_permute_swaps_content():
    space = LegSpace((2, 2, 2))
    a = RingMatrix([[MPoly.const(1), h], [MPoly(), MPoly.const(1)]])
    b = RingMatrix([[MPoly.const(1), MPoly()], [y, MPoly.const(1)]])
    op = embed_on_legs(space, kron(a, b), (1, 2))
    assert leg_permute(op, (2, 1, 3)) == embed_on_legs(space, kron(a, b), (2, 1))
    assert leg_permute(op, (3, 1, 2)) == embed_on_legs(space, kron(a, b), (3, 1))


def test_exp_kron_is_exponential_of_product():
    n = RingMatrix([[MPoly(), MPoly.const(1)], [MPoly(), MPoly()]])
    assert exp_kron(h, [n, n]) == nilpotent_exp(kron(n, n).scale(h))


def test_json_round_trip():
    m = RingMatrix([[1 + h, -3 * h * y], [MPoly(), y ** 2]])
    assert matrix_from_json(matrix_to_json(m)) == m
