"""Exact Laurent-fraction scalars, q-integers and Gaussian binomials."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schurq.qfield import (
    QPoleError,
    QScalar,
    parse_qscalar,
    qbinom,
    qint,
    specialize,
)

# small Laurent polynomials as hypothesis inputs
small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=5),
)

laurents = st.dictionaries(
    st.integers(min_value=-4, max_value=4),
    small_fractions,
    max_size=4,
).map(QScalar.from_laurent)

points = st.builds(
    Fraction,
    st.integers(min_value=-7, max_value=7).filter(lambda n: n != 0),
    st.integers(min_value=1, max_value=5),
)


# -- frozen example values -------------------------------------------------


def test_qint_two_is_q_plus_qinv():
    assert qint(2) == QScalar.from_laurent({1: 1, -1: 1})


def test_qint_zero_one_negative():
    assert qint(0).is_zero()
    assert qint(1).is_one()
    assert qint(-3) == -qint(3)


def test_qint_base_exponent():
    # [2] at base q^2 = q^2 + q^-2
    assert qint(2, 2) == QScalar.from_laurent({2: 1, -2: 1})
    with pytest.raises(ValueError):
        qint(2, 0)


def test_qbinom_three_choose_one():
    assert qbinom(3, 1) == qint(3)
    assert qbinom(3, 1) == QScalar.from_laurent({2: 1, 0: 1, -2: 1})


def test_qbinom_edges():
    assert qbinom(5, 0).is_one()
    assert qbinom(5, 5).is_one()
    assert qbinom(5, 6).is_zero()
    assert qbinom(5, -1).is_zero()
    with pytest.raises(ValueError):
        qbinom(-1, 0)


def test_specialize_example():
    assert specialize(qint(2), 2) == Fraction(5, 2)
    assert qint(2).specialize("one") == 2


def test_specialize_pole():
    s = QScalar.one() / (qint(2) - QScalar.from_rational(2))
    with pytest.raises(QPoleError):
        s.specialize("one")
    with pytest.raises(QPoleError):
        QScalar.q_pow(-1).specialize(0)


# -- q-Pascal, symmetry, bar invariance (n <= 8) ---------------------------


def test_q_pascal_identities():
    for n in range(1, 9):
        for k in range(0, n + 1):
            lhs = qbinom(n, k)
            assert lhs == QScalar.q_pow(k) * qbinom(n - 1, k) + QScalar.q_pow(
                k - n
            ) * qbinom(n - 1, k - 1)
            assert lhs == QScalar.q_pow(-k) * qbinom(n - 1, k) + QScalar.q_pow(
                n - k
            ) * qbinom(n - 1, k - 1)


def test_qbinom_symmetry_and_bar_invariance():
    for n in range(0, 9):
        for k in range(0, n + 1):
            b = qbinom(n, k)
            assert b == qbinom(n, n - k)
            assert b.bar() == b  # invariant under q -> q^-1
            assert b.is_laurent()


def test_qbinom_specializes_to_binomial():
    for n in range(0, 9):
        for k in range(0, n + 1):
            assert qbinom(n, k).specialize("one") == math.comb(n, k)


def test_qint_bar_and_specialization():
    for m in range(-8, 9):
        for d in (1, 2, 3):
            v = qint(m, d)
            assert v.bar() == v
            assert v.specialize("one") == m


# -- field axioms and specialization homomorphism (hypothesis) -------------


@given(a=laurents, b=laurents, c=laurents)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + QScalar.zero() == a
    assert a * QScalar.one() == a
    assert (a - a).is_zero()


@given(a=laurents)
@settings(max_examples=40, deadline=None)
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert (a * a.inverse()).is_one()


@given(a=laurents, b=laurents, x=points)
@settings(max_examples=60, deadline=None)
def test_specialize_is_a_homomorphism(a, b, x):
    assert (a + b).specialize(x) == a.specialize(x) + b.specialize(x)
    assert (a * b).specialize(x) == a.specialize(x) * b.specialize(x)


@given(a=laurents)
@settings(max_examples=40, deadline=None)
def test_bar_is_an_involution(a):
    assert a.bar().bar() == a


# -- text grammar round-trip ----------------------------------------------


@given(a=laurents, b=laurents)
@settings(max_examples=60, deadline=None)
def test_render_parse_round_trip(a, b):
    s = a
    if not b.is_zero():
        s = a / b
    assert parse_qscalar(s.render()) == s


def test_parse_examples():
    assert parse_qscalar("q + q^-1") == qint(2)
    assert parse_qscalar("0").is_zero()
    assert parse_qscalar("-q^2 + 3/2") == QScalar.from_laurent(
        {2: -1, 0: Fraction(3, 2)}
    )
    with pytest.raises(ValueError):
        parse_qscalar("q + +")
