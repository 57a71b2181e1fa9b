from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vsc.series import TruncatedSeries, substitute


def test_constructors_and_coefficients():
    s = TruncatedSeries(1, 3, {(1, (2,)): Fraction(5), (4, (0,)): Fraction(9)})
    assert s.coefficient(1, (2,)) == 5
    # beyond the cap is silently dropped
    assert s.coefficient(4, (0,)) == 0
    assert TruncatedSeries.constant(7, 2, 1).coefficient(0) == 7
    b = TruncatedSeries.block(1, 2, 1)
    assert b.coefficient(0, (0, 1)) == 1


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        TruncatedSeries(1, 2, {(0, (1, 1)): Fraction(1)})
    with pytest.raises(ValueError):
        TruncatedSeries.zero(1, 2) + TruncatedSeries.zero(2, 2)


def test_arithmetic():
    q = TruncatedSeries.q_power(1, 0, 4)
    s = (TruncatedSeries.constant(1, 0, 4) + q) ** 4
    assert [s.coefficient(d) for d in range(5)] == [1, 4, 6, 4, 1]
    assert (s - s).is_zero()
    assert s.scale(Fraction(1, 2)).coefficient(2) == 3


def test_mul_truncates_in_q_only():
    # block exponents are exact; only q degrees above the cap drop out
    x = TruncatedSeries.block(0, 1, 1)
    q = TruncatedSeries.q_power(1, 1, 1)
    p = (x + q) * (x + q)
    assert p.coefficient(0, (2,)) == 1
    assert p.coefficient(1, (1,)) == 2
    assert p.coefficient(2) == 0


def test_exp_log_known_series():
    q = TruncatedSeries.q_power(1, 0, 5)
    e = q.exp()
    assert [e.coefficient(d) for d in range(6)] == [
        1, 1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24), Fraction(1, 120)]
    lg = (TruncatedSeries.constant(1, 0, 5) + q).log()
    assert [lg.coefficient(d) for d in range(6)] == [
        0, 1, Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4), Fraction(1, 5)]


def test_exp_log_normalization_errors():
    one = TruncatedSeries.constant(1, 0, 3)
    with pytest.raises(ValueError):
        one.exp()
    with pytest.raises(ValueError):
        (one + one).log()
    with pytest.raises(ValueError):
        TruncatedSeries.zero(0, 3).inverse()
    # block content at q^0 blocks the inverse
    with pytest.raises(ValueError):
        (TruncatedSeries.constant(1, 1, 3) + TruncatedSeries.block(0, 1, 3)).inverse()


def test_inverse_geometric():
    q = TruncatedSeries.q_power(1, 0, 4)
    inv = (TruncatedSeries.constant(1, 0, 4) - q).inverse()
    assert [inv.coefficient(d) for d in range(5)] == [1, 1, 1, 1, 1]
    inv2 = (TruncatedSeries.constant(2, 0, 4) + q).inverse()
    assert inv2.coefficient(0) == Fraction(1, 2)
    assert inv2.coefficient(2) == Fraction(1, 8)


small_fracs = st.fractions(
    min_value=-3, max_value=3, max_denominator=4)


@st.composite
def q_series(draw, nblocks=0, q_cap=4, min_q=1):
    terms = {}
    for d in range(min_q, q_cap + 1):
        exps = (0,) * nblocks
        terms[(d, exps)] = draw(small_fracs)
    return TruncatedSeries(nblocks, q_cap, terms)


@settings(max_examples=40, deadline=None)
@given(q_series())
def test_exp_log_roundtrip(v):
    one = TruncatedSeries.constant(1, v.nblocks, v.q_cap)
    assert v.exp().log() == v
    assert (one + v).log().exp() == one + v


@settings(max_examples=40, deadline=None)
@given(q_series(), small_fracs.filter(bool))
def test_inverse_roundtrip(v, c):
    s = TruncatedSeries.constant(c, v.nblocks, v.q_cap) + v
    one = TruncatedSeries.constant(1, v.nblocks, v.q_cap)
    assert s * s.inverse() == one


def test_exp_of_sum_is_product():
    a = TruncatedSeries(0, 5, {(1, ()): Fraction(2), (3, ()): Fraction(-1, 3)})
    b = TruncatedSeries(0, 5, {(2, ()): Fraction(1, 2)})
    assert (a + b).exp() == a.exp() * b.exp()


def test_substitute_identity():
    s = TruncatedSeries(2, 3, {
        (1, (1, 0)): Fraction(3), (2, (0, 2)): Fraction(-1, 2), (0, (1, 1)): Fraction(7)})
    shift = TruncatedSeries.zero(2, 3)
    blocks = [TruncatedSeries.block(a, 2, 3) for a in range(2)]
    assert substitute(s, shift, blocks) == s


def test_substitute_hand_computed():
    # F = q x substituted on x^1 -> t^1 + 2q and x -> x + 3q:
    # q e^{2q} (x + 3q) = q x + 2q^2 x + 3q^2 + O(q^3)
    F = TruncatedSeries(1, 2, {(1, (1,)): Fraction(1)})
    shift = TruncatedSeries(1, 2, {(1, (0,)): Fraction(2)})
    block = TruncatedSeries.block(0, 1, 2) + TruncatedSeries.q_power(1, 1, 2).scale(3)
    got = substitute(F, shift, [block])
    want = TruncatedSeries(1, 2, {
        (1, (1,)): Fraction(1), (2, (1,)): Fraction(2), (2, (0,)): Fraction(3)})
    assert got == want


def test_substitute_scalar_exponential_shift():
    # sum_d q^d / d on x^1 -> t^1 + A turns each q^d into q^d e^{dA}
    cap = 4
    F = TruncatedSeries(0, cap, {(d, ()): Fraction(1, d) for d in range(1, cap + 1)})
    A = TruncatedSeries(0, cap, {(1, ()): Fraction(1)})
    got = substitute(F, A, [])
    expect = TruncatedSeries.zero(0, cap)
    for d in range(1, cap + 1):
        expect = expect + (TruncatedSeries.q_power(d, 0, cap) *
                           A.scale(d).exp()).scale(Fraction(1, d))
    assert got == expect


def test_json_roundtrip():
    s = TruncatedSeries(2, 3, {(1, (1, 0)): Fraction(3, 7), (3, (0, 5)): Fraction(-2)})
    assert TruncatedSeries.from_json(s.to_json()) == s
