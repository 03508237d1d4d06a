from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import codim_entrywise
from ymstrata.hn_types import HNType, Surface, SymmetricTypeClass, enumerate_types
from ymstrata.morse import (
    CodimensionError,
    StratumRecord,
    codim_nonorientable,
    codim_orientable,
)


def test_rank_two_codimensions():
    assert codim_orientable(HNType([(1, 1), (1, -1)]), 2) == 3
    assert codim_orientable(HNType([(1, 2), (1, -2)]), 2) == 5
    assert codim_orientable(HNType([(2, 0)]), 5) == 0


def test_coprime_first_unstable_stratum():
    # (1, 0) for degree one: 1 - 0 + g - 1
    assert codim_orientable(HNType([(1, 1), (1, 0)]), 3) == 3


def test_negative_codimension_is_rejected():
    with pytest.raises(CodimensionError):
        codim_orientable(HNType([(2, 1), (1, 0)]), 0)


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_blockwise_sum_matches_entrywise_sum(g):
    for k in range(-2, 3):
        for mu in enumerate_types(3, k, Surface(g), 12):
            assert codim_orientable(mu, g) == codim_entrywise(mu.entries(), g - 1)


@settings(max_examples=80, deadline=None)
@given(
    st.lists(st.tuples(st.integers(1, 3), st.integers(-6, 6)), min_size=1, max_size=4),
    st.integers(1, 5),
)
def test_codimension_formula_property(blocks, g):
    blocks = sorted(blocks, key=lambda b: Fraction(b[1], b[0]), reverse=True)
    try:
        mu = HNType(blocks)
    except ValueError:
        return
    assert codim_orientable(mu, g) == codim_entrywise(mu.entries(), g - 1)


def test_nonorientable_uses_double_cover_shift():
    cls = SymmetricTypeClass.from_type(HNType([(1, 1), (1, 0), (1, -1)]), 2)
    surface = Surface(2, 2)
    assert codim_nonorientable(cls, surface) == codim_orientable(cls.mu, surface.double_cover_genus)
    with pytest.raises(ValueError):
        codim_nonorientable(cls, Surface(2))


@pytest.mark.parametrize("ell", [1, 2, 3])
@pytest.mark.parametrize("i", [1, 2])
def test_nonorientable_closed_forms(ell, i):
    surface = Surface(ell, i)
    for r in range(1, 4):
        assert codim_nonorientable(HNType([(1, 2 * r), (1, -2 * r)]), surface) == 4 * r + 2 * ell + i - 2
        assert codim_nonorientable(HNType([(1, 2 * r - 1), (1, 1 - 2 * r)]), surface) == 4 * r + 2 * ell + i - 4
        assert codim_nonorientable(HNType([(1, r), (1, 0), (1, -r)]), surface) == 4 * r + 3 * (2 * ell + i - 2)


def test_stratum_record_rows():
    mu = HNType([(1, 1), (1, -1)])
    row = StratumRecord.orientable(mu, Surface(2))
    assert (row.complex_codim, row.real_codim, row.bundle_sign) == (3, 6, None)
    cls = SymmetricTypeClass.from_type(mu, 1)
    row = StratumRecord.nonorientable(cls, 1, Surface(1, 1))
    assert (row.complex_codim, row.real_codim, row.classification) == (3, 3, "PAIRED_PLUS")
    assert row.as_dict()["mu"] == ["1", "-1"]
    with pytest.raises(ValueError):
        StratumRecord.nonorientable(cls, -1, Surface(1, 1))


@pytest.mark.parametrize("ell,i", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_nonorientable_codimensions_are_zero_or_at_least_two(ell, i):
    from ymstrata.hn_types import enumerate_symmetric

    surface = Surface(ell, i)
    for n in range(1, 5):
        for cls in enumerate_symmetric(n, i, surface, 14):
            d = codim_nonorientable(cls, surface)
            assert (d == 0) == (len(cls.mu.blocks) == 1)
            assert d == 0 or d >= 2


@pytest.mark.parametrize("g", [1, 2, 3])
def test_widening_slopes_increases_codimension(g):
    for k1 in range(0, 4):
        for k2 in range(-4, k1):
            narrow = HNType([(1, k1), (2, k2)]) if Fraction(k1) > Fraction(k2, 2) else None
            wide = HNType([(1, k1 + 1), (2, k2 - 1)])
            if narrow is not None:
                assert codim_orientable(wide, g) > codim_orientable(narrow, g)
