"""Weight systems, monomial counting, diagonal phase actions."""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from spinseven.exact import hcf
from spinseven.wps import (
    PhaseAction,
    WeightSystem,
    count_monomials,
    hypersurface_moduli_dimensions,
)

F = Fraction

# every ambient weight system a bundled construction uses, with the degree
# of its anticanonical member
PAPER_SYSTEMS = [
    ((1, 1, 1, 1, 4, 4), 12),
    ((1, 1, 1, 1, 4, 8), 16),
    ((1, 1, 1, 1, 8, 12), 24),
    ((1, 1, 5, 5, 8, 20), 40),
    ((1, 1, 1, 1, 2, 2), 8),
    ((1, 1, 1, 1, 4, 4, 4), 8),
    ((3, 3, 3, 3, 4, 4, 4), 12),
]


def brute_force_monomial_count(weights, degree):
    """Exhaustive enumeration, as an independent oracle.

    A weight-1 coordinate absorbs any remainder, so one such coordinate can
    be dropped and the condition relaxed to <= degree; otherwise enumerate
    full exponent tuples.
    """
    weights = list(weights)
    if 1 in weights:
        weights.remove(1)
        return sum(
            1
            for exps in product(*(range(degree // w + 1) for w in weights))
            if sum(e * w for e, w in zip(exps, weights)) <= degree
        )
    return sum(
        1
        for exps in product(*(range(degree // w + 1) for w in weights))
        if sum(e * w for e, w in zip(exps, weights)) == degree
    )


@pytest.mark.parametrize("weights,degree", PAPER_SYSTEMS)
def test_count_monomials_against_enumeration(weights, degree):
    assert count_monomials(weights, degree) == brute_force_monomial_count(
        weights, degree
    )


@given(
    st.lists(st.integers(min_value=1, max_value=6), min_size=2, max_size=4),
    st.integers(min_value=0, max_value=18),
)
def test_count_monomials_random_small(weights, degree):
    assert count_monomials(tuple(weights), degree) == brute_force_monomial_count(
        weights, degree
    )


def test_count_monomials_edge_cases():
    assert count_monomials((1, 1), 0) == 1  # the constant
    assert count_monomials((2,), 3) == 0
    assert count_monomials((5, 7), 1) == 0


def test_weight_system_validation():
    with pytest.raises(ValueError):
        WeightSystem((0, 1, 1))
    with pytest.raises(ValueError):
        WeightSystem((-1, 2))
    with pytest.raises(ValueError):
        WeightSystem((2, 2, 4))  # common factor


def test_stratum_orders():
    w = WeightSystem((1, 1, 1, 1, 4, 4))
    assert w.stratum_order((4, 5)) == 4
    assert w.stratum_order((0, 1)) == 1
    assert w.stratum_order((3, 4)) == 1
    assert w.dimension == 5
    assert (4, 5) in w.singular_supports()
    # no singular support may contain a weight-1 coordinate
    for sup in w.singular_supports():
        assert all(w[i] > 1 for i in sup)


def test_ambient_euler_characteristic():
    # a weighted projective 5-space has the euler characteristic of CP^5
    assert WeightSystem((1, 1, 1, 1, 4, 4)).euler_characteristic() == 6
    assert WeightSystem((1, 1, 1)).euler_characteristic() == 3


def test_moduli_dimension_count():
    got = hypersurface_moduli_dimensions(WeightSystem((1, 1, 1, 1, 4, 4)), 12)
    assert got == (893, 89, 804)


def test_phase_action_projective_order():
    w6 = WeightSystem((1, 1, 1, 1, 2, 2))
    beta = PhaseAction((F(1, 4),) * 4 + (F(0), F(0)))
    assert beta.projective_order(w6) == 2
    assert not beta.is_projectively_trivial(w6)
    # scaling by weights is projectively trivial
    assert PhaseAction(tuple(F(a, 7) for a in w6.weights)).is_projectively_trivial(w6)


def test_phase_action_fixed_components():
    w6 = WeightSystem((1, 1, 1, 1, 2, 2))
    beta = PhaseAction((F(1, 4),) * 4 + (F(0), F(0)))
    comps = beta.fixed_components(w6)
    assert ((0, 1, 2, 3), F(1, 4)) in comps
    assert ((4, 5), F(0)) in comps
    assert len(comps) == 2


@given(
    st.integers(min_value=0, max_value=11),
    st.integers(min_value=1, max_value=12),
)
def test_twisting_preserves_projective_class(num, den):
    w = WeightSystem((1, 1, 1, 1, 2, 2))
    beta = PhaseAction((F(1, 4),) * 4 + (F(0), F(0)))
    tau = F(num, den)
    twisted = beta.twisted_by(w, tau)
    assert twisted.projectively_equal(beta, w)
    # the fixed locus is twist-invariant; the scalar reported on each
    # component shifts by tau, canonically reduced modulo 1/gcd(weights)
    before = beta.fixed_components(w)
    after = twisted.fixed_components(w)
    assert [s for s, _ in after] == [s for s, _ in before]
    for (sup, t_after), (_, t_before) in zip(after, before):
        g = hcf(w[i] for i in sup)
        assert t_after == (t_before + tau) % F(1, g)


def test_fixed_components_keep_only_maximal_supports():
    # an action fixing a plane pointwise also fixes its lines; only the
    # plane should be reported
    w = WeightSystem((1, 1, 1))
    comps = PhaseAction((F(0), F(0), F(1, 2))).fixed_components(w)
    supports = [s for s, _tau in comps]
    assert (0, 1) in supports
    assert (2,) in supports
    assert all(len(s) > 1 or s == (2,) for s in supports)
    for s in supports:
        for t in supports:
            if s != t:
                assert not set(s) < set(t)
