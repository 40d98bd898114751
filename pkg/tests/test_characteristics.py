"""Tests for theta characteristics, distinguished label sets, and parity counts."""

import itertools
from random import Random

import pytest
from hypothesis import given, settings, strategies as st

from thetasing import (
    BoundaryLabel,
    Characteristic,
    NonOrthogonalError,
    UncertifiedPatternError,
    brute_force_count,
    count_vanishing,
    enumerate_labels,
    enumerate_odd,
    symplectic_form,
    z_set,
)
from thetasing.characteristics import (
    brute_force_count_naive,
    count_from_pattern,
    orthogonal_tuples,
    random_orthogonal_tuple,
)


def label(g, packed):
    return BoundaryLabel.from_packed(g, packed)


def labels_strategy(g):
    return st.builds(lambda p: label(g, p), st.integers(1, (1 << (2 * g)) - 1))


# --- parity and the symplectic form ------------------------------------------

def test_odd_characteristic_counts():
    for g in range(1, 5):
        assert len(enumerate_odd(g)) == (1 << (g - 1)) * ((1 << g) - 1)


def test_enumerate_labels_count():
    for g in range(1, 4):
        assert len(enumerate_labels(g)) == (1 << (2 * g)) - 1


@given(labels_strategy(3), labels_strategy(3))
def test_parity_shift_rule(n1, n2):
    # sigma(a + b) = sigma(a) + sigma(b) + <a, b>  (mod 2)
    if n1.packed == n2.packed:
        return
    total = (n1.parity + n2.parity + symplectic_form(n1, n2)) & 1
    assert (n1 + n2).parity == total


@given(labels_strategy(3), labels_strategy(3), labels_strategy(3))
def test_form_bilinear(a, b, c):
    if a.packed == b.packed:
        return
    lhs = symplectic_form(a + b, c)
    rhs = (symplectic_form(a, c) + symplectic_form(b, c)) & 1
    assert lhs == rhs
    assert symplectic_form(a, c) == symplectic_form(c, a)


@given(labels_strategy(4))
def test_form_alternating(a):
    assert symplectic_form(a, a) == 0


def test_form_is_nondegenerate_genus2():
    g = 2
    for a in enumerate_labels(g):
        assert any(symplectic_form(a, b) for b in enumerate_labels(g))


# --- distinguished label sets -------------------------------------------------

def test_z_set_size_and_membership():
    for g in (1, 2, 3):
        expected = (1 << (2 * g - 1)) + (1 << (g - 1))
        for m in enumerate_odd(g):
            zs = z_set(m)
            assert len(zs) == expected
            # the label with the same underlying vector as m belongs to the set
            assert BoundaryLabel.from_packed(g, m.packed) in zs


def test_z_set_requires_odd():
    with pytest.raises(ValueError):
        z_set(Characteristic(2, 0, 0))


def test_z_set_total_incidence():
    # sum over odd m of |z_set(m)| counts (odd, even-shift) incidences
    for g in (1, 2, 3):
        total = sum(len(z_set(m)) for m in enumerate_odd(g))
        assert total == ((1 << (2 * g)) - 1) * (1 << (2 * g - 2))


def test_z_set_spot_checks_high_genus():
    for g in (4, 5):
        m = enumerate_odd(g)[0]
        assert len(z_set(m)) == (1 << (2 * g - 1)) + (1 << (g - 1))


# --- counting rule ------------------------------------------------------------

def test_count_examples_genus2():
    g = 2
    assert count_vanishing(g, []) == 6
    single = [label(g, 0b0101)]
    assert count_vanishing(g, single) == 4
    # an orthogonal pair: (0;01) and (0;10)
    pair = [label(g, 0b0001), label(g, 0b0010)]
    assert count_vanishing(g, pair) == 2
    # adding the sum gives a weight-3 relation, which kills the count
    triple = pair + [label(g, 0b0011)]
    assert count_vanishing(g, triple) == 0


def test_count_weight_four_relation():
    # four labels with sum zero: certified, count 2^(2g-1-3)
    g = 3
    quad = [label(g, p) for p in (0b000001, 0b000010, 0b000100, 0b000111)]
    assert count_vanishing(g, quad) == 1 << (2 * g - 4)
    assert brute_force_count(g, quad) == 1 << (2 * g - 4)


def test_count_empty_genus1():
    assert brute_force_count(1, []) == 1
    assert count_vanishing(1, []) == 1


def test_count_rejects_bad_input():
    g = 2
    with pytest.raises(NonOrthogonalError):
        count_vanishing(g, [label(g, 0b0001), label(g, 0b0100)])
    with pytest.raises(ValueError):
        count_vanishing(g, [label(g, 0b0001), label(g, 0b0001)])
    with pytest.raises(ValueError):
        count_vanishing(3, [label(2, 0b0001)])


def test_uncertified_pattern_is_refused():
    # six labels in a Lagrangian with two independent weight-4 relations:
    # realizable, even relation space, but not in the certified table.
    g = 4
    packs = [1, 2, 4, 1 ^ 2 ^ 4, 8, 1 ^ 2 ^ 8]
    labels = [label(g, p) for p in packs]
    for a, b in itertools.combinations(labels, 2):
        assert symplectic_form(a, b) == 0
    with pytest.raises(UncertifiedPatternError):
        count_vanishing(g, labels)
    # the oracle still knows the true count; refusal is conservative, not wrong
    assert brute_force_count(g, labels) >= 0


def test_count_from_pattern_unrealizable_rank():
    # rank exceeding g cannot come from pairwise-orthogonal labels
    assert count_from_pattern(5, 6, []) == 0


def test_count_matches_brute_force_exhaustive_genus2():
    g = 2
    seen = 0
    for tup in orthogonal_tuples(g, 5):
        assert count_vanishing(g, tup) == brute_force_count(g, tup)
        seen += 1
    # 15 singles, 45 orthogonal pairs, 15 triples inside isotropic planes
    assert seen == 75


def test_count_matches_brute_force_genus3_pairs():
    g = 3
    for tup in orthogonal_tuples(g, 2):
        assert count_vanishing(g, tup) == brute_force_count(g, tup)


@settings(max_examples=60)
@given(st.integers(0, 2**32 - 1))
def test_random_tuples_match_oracle_genus4(seed):
    g = 4
    tup = random_orthogonal_tuple(Random(seed), g)
    assert count_vanishing(g, tup) == brute_force_count(g, tup)


def test_random_tuple_shape():
    rng = Random(7)
    for _ in range(50):
        tup = random_orthogonal_tuple(rng, 5)
        assert 1 <= len(tup) <= 5
        assert len({n.packed for n in tup}) == len(tup)
        for a, b in itertools.combinations(tup, 2):
            assert symplectic_form(a, b) == 0


@settings(max_examples=40)
@given(st.lists(st.integers(1, 63), min_size=0, max_size=4))
def test_brute_bitset_matches_naive(packs):
    g = 3
    labels = [label(g, p) for p in set(packs)]
    assert brute_force_count(g, labels) == brute_force_count_naive(g, labels)


def test_brute_force_genus_cap():
    with pytest.raises(ValueError):
        brute_force_count(6, [])
