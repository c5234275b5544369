"""End-to-end acceptance: every headline number the toolkit must reproduce.

Each test pins exact integers; nothing here tolerates approximation.
"""

from fractions import Fraction
from itertools import product

from spinseven.cayley import (
    CROSS_PAIRING,
    STANDARD_PAIRING,
    acts_freely,
    base_group_generators,
    cayley_form,
    extended_group_generators,
    generate_group,
    preserves_form,
    pullback,
    su4_induced_form,
)
from spinseven.euler import chi_fermat, chi_fermat_chain
from spinseven.exact import Cyc
from spinseven.involution import (
    ConjBlock,
    Involution,
    PairBlock,
    fixed_points,
    match_point_orbits,
    preserves_variety,
)
from spinseven.ledger import (
    FIBER_C2_Z2,
    FIBER_C3_Z3,
    FIBER_C3_Z5,
    blowup_swapped_points,
    glue_ale,
    h31_prediction,
    lefschetz_seed,
    quotient_antiholomorphic,
    quotient_holomorphic,
    resolve_locus,
)
from spinseven.scenario import bundled_scenarios
from spinseven.shell import enumerate_candidates, paper_table, run_scenario
from spinseven.variety import Equation, PureTerm, Tower, fermat_equation
from spinseven.wps import WeightSystem, count_monomials

F = Fraction
H = F(1, 2)
ONE = Cyc.rational(1)
I2 = Cyc.imaginary_unit() * 2


def _swap_sigma():
    return Involution(
        (
            PairBlock(0, 1, F(0), H),
            PairBlock(2, 3, F(0), H),
            PairBlock(4, 5, F(0), F(0)),
        )
    )


def _conj_sigma(phase4=F(0), phase5=F(0)):
    return Involution(
        (
            PairBlock(0, 1, F(0), H),
            PairBlock(2, 3, F(0), H),
            ConjBlock(4, phase4),
            ConjBlock(5, phase5),
        )
    )


def _two_octics():
    eq1 = Equation(
        (
            PureTerm(0, 8, ONE),
            PureTerm(1, 8, ONE),
            PureTerm(2, 8, I2),
            PureTerm(3, 8, -I2),
            PureTerm(4, 2, ONE),
            PureTerm(5, 2, -ONE),
        )
    )
    eq2 = Equation(
        (
            PureTerm(0, 8, I2),
            PureTerm(1, 8, -I2),
            PureTerm(2, 8, ONE),
            PureTerm(3, 8, ONE),
            PureTerm(4, 2, ONE),
            PureTerm(6, 2, -ONE),
        )
    )
    return Tower(WeightSystem((1, 1, 1, 1, 4, 4, 4)), (eq1, eq2), plan=((1, 6), (0, 5)))


# 1 -- the euler-characteristic engine


def test_euler_engine_reference_values():
    assert chi_fermat_chain((1, 1, 1, 1, 4, 4), (12, 12, 12, 12, 3, 3)) == [
        12,
        -108,
        1224,
        -2436,
        4887,
    ]
    assert chi_fermat((1, 1, 1, 1, 4, 8), (16, 16, 16, 16, 4, 2)) == 9498
    # the singular stratum must be corrected for, else the count would be 23326
    assert chi_fermat((1, 1, 1, 1, 8, 12), (24, 24, 24, 24, 3, 2)) == 23325
    octic = Tower(
        WeightSystem((1, 1, 1, 1, 2, 2)), (fermat_equation((8, 8, 8, 8, 4, 4)),)
    )
    engine = octic.engine()
    assert engine.chi() == 2708
    assert engine.chi_closed_on((0, 1, 2, 3)) == 304
    assert _two_octics().chi() == 2580


# 2 -- the betti ledger, every pipeline end to end


def test_betti_ledger_rows():
    def glued(m):
        return (m.b2, m.b3, m.b4, m.b4_plus, m.b4_minus, m.moduli_dimension)

    m = glue_ale(quotient_antiholomorphic(lefschetz_seed(4887), 3), 3)
    assert glued(m) == (0, 0, 2446, 1639, 807, 808)

    y = blowup_swapped_points(lefschetz_seed(4887), 1)
    m = glue_ale(quotient_antiholomorphic(y, 1), 1)
    assert glued(m) == (1, 0, 2444, 1638, 806, 807)

    m = glue_ale(quotient_antiholomorphic(lefschetz_seed(9498), 2), 2)
    assert glued(m) == (0, 0, 4750, 3175, 1575, 1576)

    m = glue_ale(quotient_antiholomorphic(lefschetz_seed(23325), 1), 1)
    assert glued(m) == (0, 0, 11662, 7783, 3879, 3880)

    y = resolve_locus(lefschetz_seed(7453), 1, -4, FIBER_C3_Z5)
    m = glue_ale(quotient_antiholomorphic(y, 1), 1)
    assert glued(m) == (0, 6, 3730, 2493, 1237, 1238)

    y = resolve_locus(quotient_holomorphic(lefschetz_seed(2708), 308), 2, 304,
                      FIBER_C2_Z2)
    m = glue_ale(quotient_antiholomorphic(y, 4), 4)
    assert glued(m) == (0, 0, 910, 615, 295, 296)

    m = glue_ale(quotient_antiholomorphic(blowup_swapped_points(y, 1), 2), 2)
    assert glued(m) == (1, 0, 908, 614, 294, 295)

    m = glue_ale(quotient_antiholomorphic(lefschetz_seed(2580), 4), 4)
    assert glued(m) == (0, 0, 1294, 871, 423, 424)

    y = blowup_swapped_points(lefschetz_seed(2580), 1)
    m = glue_ale(quotient_antiholomorphic(y, 2), 2)
    assert glued(m) == (1, 0, 1292, 870, 422, 423)

    for k in range(5):
        y = resolve_locus(lefschetz_seed(389), 1, -64, FIBER_C3_Z3)
        y = blowup_swapped_points(y, 4 - k)
        m = glue_ale(quotient_antiholomorphic(y, 2 * k + 1), 2 * k + 1)
        assert glued(m) == (4 - k, 33, 200 + 2 * k, 132 + k, 68 + k, 69 + k)


# 3 -- the summary table reproduces all fourteen rows in ascending b4 order


def test_summary_table_is_complete_and_ordered():
    text, all_ok = paper_table()
    assert all_ok
    rows = [
        line.split()
        for line in text.splitlines()
        if line and not line.startswith(("scenario", "-", "["))
    ]
    triples = [(int(r[1]), int(r[2]), int(r[3])) for r in rows]
    assert triples == [
        (4, 33, 200),
        (3, 33, 202),
        (2, 33, 204),
        (1, 33, 206),
        (0, 33, 208),
        (1, 0, 908),
        (0, 0, 910),
        (1, 0, 1292),
        (0, 0, 1294),
        (1, 0, 2444),
        (0, 0, 2446),
        (0, 6, 3730),
        (0, 0, 4750),
        (0, 0, 11662),
    ]


# 4 -- fixed-point counts of the involutions


def test_fixed_point_counts():
    def fermat_tower(weights, exponents):
        return Tower(WeightSystem(weights), (fermat_equation(exponents),))

    sextic = fermat_tower((1, 1, 1, 1, 4, 4), (12, 12, 12, 12, 3, 3))
    assert fixed_points(sextic, _swap_sigma()).count == 3
    assert fixed_points(sextic, _conj_sigma()).count == 1

    t16 = fermat_tower((1, 1, 1, 1, 4, 8), (16, 16, 16, 16, 4, 2))
    assert fixed_points(t16, _conj_sigma(F(0), H)).count == 2

    t24 = fermat_tower((1, 1, 1, 1, 8, 12), (24, 24, 24, 24, 3, 2))
    assert fixed_points(t24, _conj_sigma()).count == 1

    octic = fermat_tower((1, 1, 1, 1, 2, 2), (8, 8, 8, 8, 4, 4))
    swap_report = fixed_points(octic, _swap_sigma())
    assert swap_report.count == 4
    quarter = _conj_sigma(F(0), F(1, 4))
    assert fixed_points(octic, quarter).count == 2
    orbits = match_point_orbits(octic.ambient, quarter, swap_report.points)
    assert len(orbits.fixed) == 2 and len(orbits.swapped) == 1

    for weights in (
        (1, 1, 1, 1, 2, 2),
        (1, 1, 1, 1, 4, 4),
        (1, 1, 3, 3, 2, 2),
        (1, 1, 3, 3, 8, 8),
        (1, 1, 5, 5, 4, 4),
    ):
        d = sum(weights)
        t = fermat_tower(weights, tuple(d // a for a in weights))
        assert preserves_variety(t, _swap_sigma()).status == "ok"
        assert fixed_points(t, _swap_sigma()).count == d // weights[5]


# 5 -- the invariant 4-form and its monomial symmetry groups


def test_form_and_group_algebra():
    phi = cayley_form()
    assert phi.term_count() == 14
    assert su4_induced_form(STANDARD_PAIRING) == phi
    assert su4_induced_form(CROSS_PAIRING) == phi

    a, b = base_group_generators()
    a2 = a.compose(a)
    b2 = b.compose(b)
    assert a2.compose(a2).is_identity()
    assert b2.compose(b2).is_identity()
    assert a2 == b2
    assert a.compose(b) == b.compose(a2.compose(a))
    group = generate_group((a, b))
    assert len(group) == 8
    report = acts_freely(group)
    assert report.free and report.group_order == 8
    assert all(preserves_form(g, phi) for g in group)
    assert all(pullback(g, phi) == phi for g in group)

    for n in (1, 3, 5):
        big = generate_group(extended_group_generators(n))
        assert len(big) == 8 * n
        assert acts_freely(big).free
        assert all(preserves_form(g, phi) for g in big)


# 6 -- index-theoretic consistency on every verified output


def test_index_identity_and_crosschecks():
    for name, scn in bundled_scenarios().items():
        result = run_scenario(scn)
        assert result.ok, f"{name} failed: {result.failures}"
        g = result.glued
        assert g is not None, name
        assert g.b4_plus + g.b4_minus == g.b4, name
        assert g.b4_plus - 2 * g.b4_minus == 25 + g.b2 - g.b3, name

    # the hypersurface moduli count independently predicts the minus part
    assert h31_prediction(804, 1, 0, 3) == 807
    swap = run_scenario(bundled_scenarios()["deg12_swap"])
    assert swap.glued.b4_minus == 807

    # a published value that disagrees with the derived one is surfaced as
    # an advisory and must not fail the run
    plain = run_scenario(bundled_scenarios()["deg24_plain"])
    assert plain.ok
    assert any("23231" in a and "23321" in a for a in plain.advisories)


# 7 -- classical oracles the engine must match on whole families


def test_classical_oracles_hold():
    for d in range(2, 17):
        assert chi_fermat((1, 1, 1), (d, d, d)) == 2 - (d - 1) * (d - 2)
        assert chi_fermat((1, 1, 1, 1), (d, d, d, d)) == d**3 - 4 * d**2 + 6 * d

    for weights, degree in (
        ((1, 1, 1, 1, 4, 4), 12),
        ((1, 1, 1, 1, 4, 8), 16),
        ((1, 1, 1, 1, 8, 12), 24),
        ((1, 1, 5, 5, 8, 20), 40),
        ((1, 1, 1, 1, 2, 2), 8),
        ((1, 1, 1, 1, 4, 4, 4), 8),
        ((3, 3, 3, 3, 4, 4, 4), 12),
    ):
        reduced = list(weights)
        reduced.remove(1) if 1 in reduced else None
        if 1 in weights:
            brute = sum(
                1
                for exps in product(*(range(degree // w + 1) for w in reduced))
                if sum(e * w for e, w in zip(exps, reduced)) <= degree
            )
        else:
            brute = sum(
                1
                for exps in product(*(range(degree // w + 1) for w in reduced))
                if sum(e * w for e, w in zip(exps, reduced)) == degree
            )
        assert count_monomials(weights, degree) == brute, weights


# 8 -- the weight-system enumerator recovers the bundled ambients


def test_enumerator_finds_reference_systems():
    rows = {
        (c.weights, c.degree, c.points)
        for c in enumerate_candidates(max_degree=24, singularity="z4-scalar")
    }
    assert ((1, 1, 1, 1, 4, 4), 12, 3) in rows
    assert ((1, 1, 1, 1, 4, 8), 16, 2) in rows
    assert ((1, 1, 1, 1, 8, 12), 24, 1) in rows
