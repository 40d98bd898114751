"""Tests for exact Bernoulli numbers and zeta values at negative odd integers."""

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from thetasing import bernoulli, zeta_negative_odd


def test_bernoulli_small_values():
    expected = {
        0: Fraction(1),
        1: Fraction(-1, 2),
        2: Fraction(1, 6),
        4: Fraction(-1, 30),
        6: Fraction(1, 42),
        8: Fraction(-1, 30),
        10: Fraction(5, 66),
        12: Fraction(-691, 2730),
    }
    for k, value in expected.items():
        assert bernoulli(k) == value


def test_bernoulli_odd_vanish():
    for k in range(3, 30, 2):
        assert bernoulli(k) == 0


@given(st.integers(min_value=1, max_value=40))
def test_bernoulli_recurrence(n):
    # sum_{k=0}^{n} C(n+1, k) B_k = 0 for n >= 1
    total = sum(Fraction(comb(n + 1, k)) * bernoulli(k) for k in range(n + 1))
    assert total == 0


def test_zeta_values():
    assert zeta_negative_odd(1) == Fraction(-1, 12)
    assert zeta_negative_odd(2) == Fraction(1, 120)
    assert zeta_negative_odd(3) == Fraction(-1, 252)
    assert zeta_negative_odd(4) == Fraction(1, 240)
    assert zeta_negative_odd(5) == Fraction(-1, 132)


def test_zeta_matches_bernoulli():
    for g in range(1, 12):
        assert zeta_negative_odd(g) == -bernoulli(2 * g) / (2 * g)


def test_zeta_rejects_nonpositive():
    with pytest.raises(ValueError):
        zeta_negative_odd(0)
    with pytest.raises(ValueError):
        zeta_negative_odd(-3)


def test_twist_constant_genus_three():
    # the factor 2 / (8 * zeta(-5)) shows up as an overall constant
    assert Fraction(2) / (8 * zeta_negative_odd(3)) == -63
