"""The distinguished 4-form on R^8 and the monomial maps preserving it."""

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from spinseven.cayley import (
    CROSS_PAIRING,
    STANDARD_PAIRING,
    DifferentialShapeError,
    MultiForm,
    PhaseMap,
    acts_freely,
    base_group_generators,
    cayley_form,
    classify_half_turn_differential,
    extended_group_generators,
    fixed_vector,
    generate_group,
    hermitian_two_form,
    holomorphic_volume_real_part,
    preserves_form,
    pullback,
    su4_induced_form,
)

F = Fraction


# -- multiform arithmetic -------------------------------------------------------


def test_basis_ordering_and_sign():
    # index tuples are kept strictly increasing; signs live in coefficients
    with pytest.raises(ValueError):
        MultiForm.basis(2, 1)
    assert MultiForm.basis(1, 2).wedge(MultiForm.basis(3, 4)) == MultiForm.basis(
        1, 2, 3, 4
    )
    # descending wedge order costs a transposition sign
    assert MultiForm.basis(3, 4).wedge(MultiForm.basis(1, 2)) == MultiForm.basis(
        1, 2, 3, 4
    )
    assert MultiForm.basis(2).wedge(MultiForm.basis(1)) == -MultiForm.basis(1, 2)
    # repeated index annihilates
    assert MultiForm.basis(1, 2).wedge(MultiForm.basis(2, 3)).term_count() == 0


def test_wedge_sign_rule():
    a = MultiForm.basis(1, 2)  # degree 2
    c = MultiForm.basis(5, 6, 7)  # degree 3
    assert a.wedge(c) == c.wedge(a)  # even * odd commutes
    d = MultiForm.basis(4, 8)
    assert a.wedge(d) == d.wedge(a)
    e1 = MultiForm.basis(1)
    e2 = MultiForm.basis(2)
    assert e1.wedge(e2) == -(e2.wedge(e1))


def test_linear_structure():
    f = MultiForm.basis(1, 3) + 2 * MultiForm.basis(2, 4)
    g = MultiForm.basis(1, 3) - MultiForm.basis(2, 4)
    assert (f + g).term_count() == 2
    assert (f - f).term_count() == 0
    assert hash(f) == hash(MultiForm.basis(1, 3) + 2 * MultiForm.basis(2, 4))


@given(st.lists(st.sampled_from(list(combinations(range(1, 9), 2))), min_size=1,
                max_size=3, unique=True))
@settings(max_examples=40)
def test_wedge_distributes_over_sums(pairs):
    total = MultiForm(2, {})
    for p in pairs:
        total = total + MultiForm.basis(*p)
    probe = MultiForm.basis(7, 8)
    left = total.wedge(probe)
    right = MultiForm(4, {})
    for p in pairs:
        right = right + MultiForm.basis(*p).wedge(probe)
    assert left == right


# -- the distinguished 4-form -----------------------------------------------------


def test_fourteen_terms():
    phi = cayley_form()
    assert phi.degree == 4
    assert phi.term_count() == 14
    assert all(v in (1, -1) for v in phi.terms.values())


@pytest.mark.parametrize("pairing", [STANDARD_PAIRING, CROSS_PAIRING])
def test_unitary_structures_induce_the_form(pairing):
    omega = hermitian_two_form(pairing)
    re_vol = holomorphic_volume_real_part(pairing)
    assert F(1, 2) * omega.wedge(omega) + re_vol == cayley_form()
    assert su4_induced_form(pairing) == cayley_form()


# -- the base group ----------------------------------------------------------------


def test_base_group_relations():
    a, b = base_group_generators()
    assert not a.antilinear and b.antilinear
    a2 = a.compose(a)
    assert a2.compose(a2).is_identity()  # a^4 = 1
    b2 = b.compose(b)
    assert b2.compose(b2).is_identity()  # b^4 = 1
    assert a2 == b2  # a^2 = b^2
    a3 = a2.compose(a)
    assert a.compose(b) == b.compose(a3)  # ab = b a^3


def test_base_group_order_and_freeness():
    a, b = base_group_generators()
    group = generate_group((a, b))
    assert len(group) == 8
    report = acts_freely(group)
    assert report.free
    assert report.group_order == 8
    assert report.violations == []


def test_base_group_preserves_the_form_elementwise():
    phi = cayley_form()
    for g in generate_group(base_group_generators()):
        assert preserves_form(g, phi)


def test_nonidentity_elements_fix_no_vector():
    for g in generate_group(base_group_generators()):
        if not g.is_identity():
            assert fixed_vector(g) is None


@pytest.mark.parametrize("n", [1, 3, 5])
def test_extended_groups(n):
    gens = extended_group_generators(n)
    group = generate_group(gens)
    assert len(group) == 8 * n
    report = acts_freely(group)
    assert report.free and report.group_order == 8 * n
    phi = cayley_form()
    assert all(preserves_form(g, phi) for g in group)


def test_extension_degree_must_be_odd():
    with pytest.raises(ValueError):
        extended_group_generators(2)


# -- pullback is a contravariant wedge homomorphism -----------------------------------


@st.composite
def group_elements(draw):
    group = sorted(generate_group(base_group_generators()),
                   key=lambda g: (g.antilinear, g.perm, g.phases))
    return draw(st.sampled_from(group))


@st.composite
def small_forms(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    f = MultiForm(2, {})
    for _ in range(n):
        idx = draw(st.sampled_from(list(combinations(range(1, 9), 2))))
        coeff = draw(st.integers(min_value=-3, max_value=3).filter(bool))
        f = f + coeff * MultiForm.basis(*idx)
    return f


@given(group_elements(), group_elements(), small_forms())
@settings(max_examples=60, deadline=None)
def test_pullback_reverses_composition(g, h, f):
    assert pullback(g.compose(h), f) == pullback(h, pullback(g, f))


@given(group_elements(), small_forms(), small_forms())
@settings(max_examples=60, deadline=None)
def test_pullback_is_a_wedge_and_sum_homomorphism(g, f1, f2):
    assert pullback(g, f1 + f2) == pullback(g, f1) + pullback(g, f2)
    assert pullback(g, f1.wedge(f2)) == pullback(g, f1).wedge(pullback(g, f2))


@given(group_elements(), small_forms())
@settings(max_examples=40, deadline=None)
def test_pullback_by_inverse_inverts(g, f):
    assert pullback(g.inverse(), pullback(g, f)) == f


# -- differentials at half-turn points ------------------------------------------------


def test_resolvable_differential():
    _, b = base_group_generators()
    cls = classify_half_turn_differential(b)
    assert cls.resolvable
    assert cls.pfaffian == 1
    assert cls.kind == "resolvable"
    assert cls.scalar_powers == (F(1, 4),) * 4


def test_obstructed_differential():
    g = PhaseMap(4, (2, 1, 4, 3), (0, 2, 2, 0), True)
    assert g.compose(g) == PhaseMap.scalar(F(1, 2))
    cls = classify_half_turn_differential(g)
    assert not cls.resolvable
    assert cls.pfaffian == -1
    assert cls.kind == "obstructed"
    assert cls.scalar_powers == (F(1, 4), F(1, 4), F(3, 4), F(3, 4))


def test_classification_ignores_scalar_lift_choice():
    g = PhaseMap(4, (2, 1, 4, 3), (0, 2, 2, 0), True)
    lifted = PhaseMap.scalar(F(1, 4)).compose(g)
    assert classify_half_turn_differential(lifted) == classify_half_turn_differential(g)


def test_differential_shape_rejections():
    a, b = base_group_generators()
    with pytest.raises(DifferentialShapeError):
        classify_half_turn_differential(a)  # linear
    plain_conj = PhaseMap(1, (1, 2, 3, 4), (0, 0, 0, 0), True)
    with pytest.raises(DifferentialShapeError, match="squares to \\+1"):
        classify_half_turn_differential(plain_conj)
    with pytest.raises(DifferentialShapeError):
        classify_half_turn_differential(PhaseMap(4, (2, 3, 4, 1), (1, 1, 1, 1), True))


def test_plain_conjugation_fixes_a_vector():
    plain_conj = PhaseMap(1, (1, 2, 3, 4), (0, 0, 0, 0), True)
    vec = fixed_vector(plain_conj)
    assert vec is not None
    assert any(not c.is_zero() for c in vec)
    assert plain_conj.apply_to_vector(vec) == vec
