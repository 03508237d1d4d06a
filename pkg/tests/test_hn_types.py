from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_types
from ymstrata.hn_types import (
    HNType,
    Surface,
    SymmetricClass,
    SymmetricTypeClass,
    enumerate_symmetric,
    enumerate_types,
    separating_invariant,
    tau0,
    x_mu,
)


def entries(mu):
    return tuple(mu.entries())


def test_surface_invariants():
    assert Surface(2).genus == 2
    assert Surface(1, 1).double_cover_genus == 2
    assert Surface(1, 2).double_cover_genus == 3
    assert Surface(0, 1).euler_characteristic == 1
    with pytest.raises(ValueError):
        Surface(-1)
    with pytest.raises(ValueError):
        Surface(1, 3)
    with pytest.raises(ValueError):
        Surface(1, 1).genus


def test_hn_type_validation():
    assert HNType([(1, 1), (1, -1)]).slopes == (1, -1)
    with pytest.raises(ValueError):
        HNType([(1, 0), (1, 1)])
    with pytest.raises(ValueError):
        HNType([(1, 0), (1, 0)])
    with pytest.raises(ValueError):
        HNType([(0, 1)])


def test_from_entries_groups_blocks():
    mu = HNType.from_entries([Fraction(1, 2), Fraction(1, 2), 0, -1])
    assert mu.blocks == ((2, 1), (1, 0), (1, -1))
    assert str(mu) == "(1/2,1/2,0,-1)"
    with pytest.raises(ValueError):
        HNType.from_entries([Fraction(1, 2), 0])


def test_rank_two_genus_two_strata():
    types = enumerate_types(2, 0, Surface(2), 6)
    assert [entries(t) for t in types] == [(0, 0), (1, -1), (2, -2)]


def test_enumeration_sorted_and_bounded():
    types = enumerate_types(3, 1, Surface(2), 10)
    keys = [t.entries() for t in types]
    assert keys == sorted(keys)
    assert all(t.k == 1 and t.n == 3 for t in types)


@pytest.mark.parametrize("n,k,g,bound", [(2, 0, 2, 8), (2, 1, 3, 9), (3, 0, 2, 9), (3, 2, 2, 8), (3, -1, 3, 10), (4, 1, 2, 7)])
def test_enumeration_matches_brute_force(n, k, g, bound):
    ours = {entries(t) for t in enumerate_types(n, k, Surface(g), bound)}
    assert ours == brute_types(n, k, g, bound)


def test_genus_one_enumeration_terminates():
    types = enumerate_types(2, 0, Surface(1), 4)
    assert [entries(t) for t in types] == [(0, 0), (1, -1), (2, -2)]


def test_nonorientable_requires_degree_zero():
    with pytest.raises(ValueError):
        enumerate_types(2, 1, Surface(1, 1), 5)
    with pytest.raises(ValueError):
        enumerate_types(0, 0, Surface(1), 5)


def test_tau0_and_symmetric_types():
    mu = HNType([(1, 2), (2, 1), (1, -2)])
    assert entries(tau0(mu)) == (2, Fraction(-1, 2), Fraction(-1, 2), -2)
    assert tau0(tau0(mu)) == mu
    cls = SymmetricTypeClass.from_type(HNType([(1, 1), (1, 0), (1, -1)]), 1)
    assert cls.n0 == 1 and cls.n_prime == 1 and cls.k == 1
    assert cls.classification is SymmetricClass.ZERO_BLOCK
    assert cls.signs == (1, -1)
    with pytest.raises(ValueError):
        SymmetricTypeClass.from_type(HNType([(1, 1), (1, -2)]), 1)


def test_flat_type_lives_on_both_bundles():
    for i in (1, 2):
        flat = enumerate_symmetric(3, i, Surface(1, i), 0)
        assert len(flat) == 1
        assert flat[0].classification is SymmetricClass.ZERO_BLOCK and flat[0].signs == (1, -1)


@pytest.mark.parametrize("r", range(1, 6))
def test_rank_two_pairing_parity(r):
    mu = HNType([(1, r), (1, -r)])
    one = SymmetricTypeClass.from_type(mu, 1)
    two = SymmetricTypeClass.from_type(mu, 2)
    # odd r sits on the + bundle for i=1 and on the - bundle for i=2
    assert one.signs == ((1,) if r % 2 else (-1,))
    assert two.signs == ((-1,) if r % 2 else (1,))


def test_symmetric_enumeration_rank_four():
    found = enumerate_symmetric(4, 1, Surface(1, 1), 12)
    got = [(entries(c.mu), c.classification.name) for c in found]
    half = Fraction(1, 2)
    assert got == [
        ((0, 0, 0, 0), "ZERO_BLOCK"),
        ((half, half, -half, -half), "PAIRED_MINUS"),
        ((1, 0, 0, -1), "ZERO_BLOCK"),
        ((1, 1, -1, -1), "PAIRED_PLUS"),
    ]


@pytest.mark.parametrize("n", [1, 3, 5])
def test_odd_rank_has_only_zero_block(n):
    for i in (1, 2):
        for cls in enumerate_symmetric(n, i, Surface(1, i), 14):
            assert cls.classification is SymmetricClass.ZERO_BLOCK


def test_symmetric_enumeration_is_the_tau0_fixed_subset():
    for i in (1, 2):
        surface = Surface(1, i)
        genus = surface.double_cover_genus
        expected = {e for e in brute_types(4, 0, genus, 13) if tuple(-x for x in reversed(e)) == e}
        got = {entries(c.mu) for c in enumerate_symmetric(4, i, surface, 13)}
        assert got == expected


def test_x_mu_diagonal():
    np.testing.assert_allclose(x_mu(HNType([(1, 1), (1, -1)])), [-2j * np.pi, 2j * np.pi])


def _type_or_none(values):
    try:
        return HNType.from_entries(sorted(values, reverse=True))
    except ValueError:
        return None


fractions = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.lists(fractions, min_size=n, max_size=n), st.lists(fractions, min_size=n, max_size=n))))
def test_separating_invariant_is_injective(pair):
    mu, nu = (_type_or_none(v) for v in pair)
    if mu is None or nu is None:
        return
    assert (separating_invariant(mu) == separating_invariant(nu)) == (mu == nu)


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, -1)])
def test_tau0_is_a_bijection_between_opposite_degrees(n, k):
    surface = Surface(2)
    plus = enumerate_types(n, k, surface, 12)
    minus = set(enumerate_types(n, -k, surface, 12))
    assert {tau0(mu) for mu in plus} == minus
    assert len(plus) == len(minus)
