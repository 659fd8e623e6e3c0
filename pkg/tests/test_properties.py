"""Randomized invariants, driven by hypothesis."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

import ergopt as eo

words = st.lists(st.integers(0, 1), min_size=1, max_size=8).map(tuple)
rationals = st.fractions(min_value=-10, max_value=10, max_denominator=16)


def potential(space, values):
    table = {w: values[i] for i, w in enumerate(eo.admissible_words(space, 1))}
    return eo.ScalarPotential(space, 1, table)


@given(words)
def test_canonical_rotation_idempotent_and_invariant(w):
    canon = eo.canonical_rotation(w)
    assert eo.canonical_rotation(canon) == canon
    for i in range(len(w)):
        assert eo.canonical_rotation(w[i:] + w[:i]) == canon


@given(st.integers(1, 8).flatmap(
    lambda n: st.tuples(*[
        st.lists(st.integers(0, 1), min_size=n, max_size=n).map(tuple)
        for _ in range(3)])))
def test_point_distance_is_an_ultrametric(xyz):
    # on prefixes of equal length; truncation spoils it otherwise
    x, y, z = xyz
    dxy = eo.point_distance(x, y)
    assert dxy == eo.point_distance(y, x)
    assert dxy <= max(eo.point_distance(x, z), eo.point_distance(z, y))


@settings(max_examples=40)
@given(st.tuples(rationals, rationals), rationals)
def test_karp_beta_translation_covariance(values, c):
    space = eo.new_shift(2)
    f = potential(space, values)
    shifted = f + eo.constant_potential(space, c)
    assert eo.karp_beta(space, shifted) == eo.karp_beta(space, f) + c


@settings(max_examples=40)
@given(st.tuples(rationals, rationals), st.tuples(rationals, rationals))
def test_karp_beta_is_subadditive_in_the_potential(u, v):
    space = eo.new_shift(2)
    f, g = potential(space, u), potential(space, v)
    assert eo.karp_beta(space, f + g) <= (
        eo.karp_beta(space, f) + eo.karp_beta(space, g))


@settings(max_examples=40)
@given(st.lists(rationals, min_size=1, max_size=5),
       st.lists(rationals, min_size=1, max_size=5))
def test_hausdorff_symmetric_nonnegative_and_zero_on_equal(C, D):
    d = eo.hausdorff_distance(C, D)
    assert d == eo.hausdorff_distance(D, C)
    assert d >= 0
    assert eo.hausdorff_distance(C, C) == 0


@settings(max_examples=30)
@given(st.lists(rationals, min_size=2, max_size=10),
       st.integers(min_value=1, max_value=10))
def test_flatten_distance_band(values, n):
    sys = eo.identity_system(values)
    res = eo.flatten_top(sys, n)
    assert res.distance <= sys.sup_norm * Fraction(1, 2 ** n)
    assert max(res.flattened) <= sys.sup_norm
