"""Stratified Euler-characteristic engine, checked against classical formulas."""

import pytest
from hypothesis import given, settings, strategies as st

from spinseven.euler import chi_fermat, chi_fermat_chain
from spinseven.variety import Tower, fermat_equation
from spinseven.wps import WeightSystem


@pytest.mark.parametrize("d", range(2, 17))
def test_plane_curve_degrees(d):
    # smooth degree-d curve in CP^2: chi = 2 - (d-1)(d-2)
    assert chi_fermat((1, 1, 1), (d, d, d)) == 2 - (d - 1) * (d - 2)


@pytest.mark.parametrize("d", range(2, 17))
def test_projective_surface_degrees(d):
    # smooth degree-d surface in CP^3: chi = d^3 - 4d^2 + 6d
    assert chi_fermat((1, 1, 1, 1), (d, d, d, d)) == d * d * d - 4 * d * d + 6 * d


def test_chain_for_weighted_sixfold():
    chain = chi_fermat_chain((1, 1, 1, 1, 4, 4), (12, 12, 12, 12, 3, 3))
    assert chain == [12, -108, 1224, -2436, 4887]
    assert chi_fermat((1, 1, 1, 1, 4, 4), (12, 12, 12, 12, 3, 3)) == 4887


def test_further_weighted_fourfolds():
    assert chi_fermat((1, 1, 1, 1, 4, 8), (16, 16, 16, 16, 4, 2)) == 9498
    # the value with the singular stratum handled correctly -- a naive
    # smooth-point count lands one too high, on 23326
    assert chi_fermat((1, 1, 1, 1, 8, 12), (24, 24, 24, 24, 3, 2)) == 23325


def test_classical_fourfolds_in_cp5():
    # coefficient of h^4 in (1+h)^6/(1+dh), times d
    assert chi_fermat((1,) * 6, (3,) * 6) == 27  # cubic fourfold
    assert chi_fermat((1,) * 6, (4,) * 6) == 188  # quartic fourfold


def test_mismatched_degrees_rejected():
    with pytest.raises(ValueError):
        chi_fermat((1, 2), (3, 2))


@given(st.permutations(list(range(6))))
def test_permutation_invariance(perm):
    weights = (1, 1, 1, 1, 2, 2)
    exponents = (8, 8, 8, 8, 4, 4)
    shuffled_w = tuple(weights[i] for i in perm)
    shuffled_e = tuple(exponents[i] for i in perm)
    assert chi_fermat(shuffled_w, shuffled_e) == 2708


@given(st.permutations(list(range(5))))
@settings(max_examples=30)
def test_permutation_invariance_small_pool(perm):
    weights = (1, 1, 1, 2, 3)
    exponents = (6, 6, 6, 3, 2)
    shuffled_w = tuple(weights[i] for i in perm)
    shuffled_e = tuple(exponents[i] for i in perm)
    base = chi_fermat(weights, exponents)
    assert chi_fermat(shuffled_w, shuffled_e) == base


def _all_supports(n):
    out = []
    for mask in range(1, 1 << n):
        out.append(tuple(i for i in range(n) if mask >> i & 1))
    return out


def test_open_strata_sum_to_closed():
    # inclusion-exclusion sanity: the chi of a closed coordinate stratum is
    # the sum of the chi of every open stratum it contains
    tower = Tower(
        WeightSystem((1, 1, 1, 1, 4, 4)),
        (fermat_equation((12, 12, 12, 12, 3, 3)),),
    )
    engine = tower.engine()
    for support in _all_supports(6):
        inner = sum(
            engine.chi_open_on(sub)
            for sub in _all_supports(6)
            if set(sub) <= set(support)
        )
        assert engine.chi_closed_on(support) == inner
    assert engine.chi_closed_on(tuple(range(6))) == 4887


def test_restriction_chain_matches_closed_strata():
    tower = Tower(
        WeightSystem((1, 1, 1, 1, 4, 4)),
        (fermat_equation((12, 12, 12, 12, 3, 3)),),
    )
    engine = tower.engine()
    chain = chi_fermat_chain((1, 1, 1, 1, 4, 4), (12, 12, 12, 12, 3, 3))
    for j, value in enumerate(chain):
        assert engine.chi_closed_on(tuple(range(j + 2))) == value
