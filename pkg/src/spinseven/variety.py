"""Fermat-type complete intersections: equations, towers, singular inventories.

An equation here is a sum of *pure terms* (coefficient times a power of a
single coordinate) plus optional *generic parts*: markers standing for a
general homogeneous polynomial in a declared set of variables.  A tower is a
weight system together with a list of such equations and an optional
retirement plan for the Euler-characteristic recursion.

The singular inventory walks every coordinate support on which the ambient
scaling has a nontrivial stabiliser, restricts the equations, and classifies
what the variety meets there: isolated quotient points (with exact phase/
modulus representatives whenever the restricted system is binomial),
positive-dimensional loci (with the induced equation system), or strata that
require externally supplied data because a generic part survives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .exact import (
    Cyc,
    hcf,
    mod1,
    positive_power_value,
    solve_positive_power_system,
    solve_turn_system,
)
from .wps import WeightSystem, count_monomials


@dataclass(frozen=True)
class PureTerm:
    variable: int
    exponent: int
    coefficient: Cyc

    def __post_init__(self) -> None:
        if self.exponent < 1:
            raise ValueError("exponent must be positive")
        if self.coefficient.is_zero():
            raise ValueError("pure term must have a nonzero coefficient")


@dataclass(frozen=True)
class GenericPart:
    """A general homogeneous polynomial in the given variables, known only by
    genericity.  `real` records that its coefficients are declared real, which
    matters when checking compatibility with antiholomorphic maps."""

    label: str
    variables: tuple[int, ...]
    real: bool = False


@dataclass(frozen=True)
class Equation:
    pure: tuple[PureTerm, ...]
    generic: tuple[GenericPart, ...] = ()
    declared_degree: int | None = None

    def __post_init__(self) -> None:
        seen = [t.variable for t in self.pure]
        if len(set(seen)) != len(seen):
            raise ValueError("pure terms must use distinct variables")
        pv = set(seen)
        for part in self.generic:
            if pv & set(part.variables):
                raise ValueError(
                    f"generic part {part.label} overlaps the pure variables"
                )
        if not self.pure and not self.generic:
            raise ValueError("an equation needs at least one term")

    def variables(self) -> frozenset[int]:
        out = {t.variable for t in self.pure}
        for part in self.generic:
            out.update(part.variables)
        return frozenset(out)

    def degree(self, weights: WeightSystem) -> int:
        degs = {weights[t.variable] * t.exponent for t in self.pure}
        if self.declared_degree is not None:
            degs.add(self.declared_degree)
        if len(degs) > 1:
            raise ValueError(f"terms of mixed degrees {sorted(degs)}")
        if not degs:
            raise ValueError("generic-only equation needs a declared degree")
        return degs.pop()


def fermat_equation(exponents: Sequence[int]) -> Equation:
    """Sum of one unit-coefficient power per coordinate."""
    return Equation(
        tuple(PureTerm(v, k, Cyc.rational(1)) for v, k in enumerate(exponents))
    )


@dataclass(frozen=True)
class Tower:
    ambient: WeightSystem
    equations: tuple[Equation, ...]
    plan: tuple[tuple[int, int], ...] | None = None

    @property
    def dimension(self) -> int:
        return self.ambient.dimension - len(self.equations)

    def degrees(self) -> tuple[int, ...]:
        return tuple(eq.degree(self.ambient) for eq in self.equations)

    def validate(self) -> list[str]:
        """Structural problems, empty when the tower is well formed."""
        problems = []
        m = len(self.ambient)
        for k, eq in enumerate(self.equations):
            stray = [v for v in eq.variables() if not 0 <= v < m]
            for v in stray:
                problems.append(f"equation {k}: variable {v} out of range")
            if stray:
                continue  # degree arithmetic would index past the ambient
            try:
                eq.degree(self.ambient)
            except ValueError as err:
                problems.append(f"equation {k}: {err}")
            for part in eq.generic:
                d = None
                try:
                    d = eq.degree(self.ambient)
                except ValueError:
                    continue
                sub = tuple(self.ambient[v] for v in part.variables)
                if count_monomials(sub, d) == 0:
                    problems.append(
                        f"equation {k}: generic part {part.label} admits no "
                        f"monomial of degree {d}"
                    )
        if self.plan:
            for pos, var in self.plan:
                if not 0 <= pos < len(self.equations):
                    problems.append(f"plan references equation {pos}")
                elif var not in self.equations[pos].variables():
                    problems.append(
                        f"plan retires variable {var} absent from equation {pos}"
                    )
        return problems

    def chern_class_zero(self) -> bool:
        """Degree bookkeeping for a trivial canonical class: the equation
        degrees must sum to the weight total."""
        return sum(self.degrees()) == sum(self.ambient.weights)

    # -- engine bridges -----------------------------------------------------

    def pure_system_on(
        self, support: Iterable[int] | None = None
    ) -> list[tuple[int, dict[int, tuple[int, Cyc]]]] | None:
        """The restricted equations as engine data, or None when a generic
        part survives on the support (making exact computation impossible)."""
        sup = set(range(len(self.ambient))) if support is None else set(support)
        out = []
        for pos, eq in enumerate(self.equations):
            if not self._generic_restricts_away(eq, sup):
                return None
            terms = {
                t.variable: (t.exponent, t.coefficient)
                for t in eq.pure
                if t.variable in sup
            }
            if terms:
                out.append((pos, terms))
        return out

    def _generic_restricts_away(self, eq: Equation, sup: set[int]) -> bool:
        for part in eq.generic:
            overlap = [v for v in part.variables if v in sup]
            if not overlap:
                continue
            sub = tuple(self.ambient[v] for v in overlap)
            if count_monomials(sub, eq.degree(self.ambient)) > 0:
                return False
        return True

    def engine(self, support: Iterable[int] | None = None):
        from .euler import ChiEngine, EngineError

        system = self.pure_system_on(support)
        if system is None:
            raise EngineError(
                "a generic part survives on this support; "
                "exact computation needs externally supplied data"
            )
        weights = {i: self.ambient[i] for i in range(len(self.ambient))}
        return ChiEngine(weights, system, plan=self.plan)

    def chi(self) -> int:
        return self.engine().chi()


def action_equation_turns(tower: Tower, turns: Sequence[Fraction]):
    """The turn by which each equation transforms under the diagonal phase
    action z_j -> e(turns[j]) z_j, as a tuple, or None when some equation is
    not carried to a scalar multiple of itself.

    A pure term picks up exponent * turn.  A generic part transforms
    uniformly exactly when the action restricted to its variables is a
    scaling, i.e. turns[v] = w_v * psi (mod 1) on the part's variables; the
    part then picks up degree * psi.
    """
    out = []
    for eq in tower.equations:
        seen: set[Fraction] = set()
        for t in eq.pure:
            seen.add(mod1(t.exponent * turns[t.variable]))
        for part in eq.generic:
            v0 = part.variables[0]
            w0 = tower.ambient[v0]
            degree = eq.degree(tower.ambient)
            psi = next(
                (
                    cand
                    for k in range(w0)
                    for cand in [mod1(Fraction(turns[v0] + k, w0))]
                    if all(
                        mod1(tower.ambient[v] * cand) == mod1(turns[v])
                        for v in part.variables
                    )
                ),
                None,
            )
            if psi is None:
                return None
            seen.add(mod1(degree * psi))
        if len(seen) != 1:
            return None
        out.append(seen.pop())
    return tuple(out)


@dataclass(frozen=True)
class TransversalityReport:
    status: str  # "ok" | "assumed" | "fail"
    reasons: tuple[str, ...]


def transversality_check(tower: Tower) -> TransversalityReport:
    """Decide smoothness away from the ambient singular set where possible.

    A single equation with a pure term in every variable is smooth away from
    the ambient singular set (its differential has a pure-power entry per
    coordinate which cannot all vanish on a solution).  A variable missing
    from every equation is an outright failure: the variety is a cone through
    that coordinate point.  Everything else is recorded as an assumption.
    """
    missing = set(range(len(tower.ambient)))
    for eq in tower.equations:
        missing -= set(eq.variables())
    if missing:
        return TransversalityReport(
            "fail",
            tuple(
                f"variable {v} appears in no equation: the variety is a "
                "singular cone through that coordinate point"
                for v in sorted(missing)
            ),
        )
    if len(tower.equations) == 1 and not tower.equations[0].generic:
        if {t.variable for t in tower.equations[0].pure} == set(
            range(len(tower.ambient))
        ):
            return TransversalityReport(
                "ok", ("full Fermat equation: smooth away from the ambient singular set",)
            )
    reasons = []
    if len(tower.equations) > 1:
        reasons.append(
            "multi-equation system: smoothness of the intersection away from "
            "the ambient singular set is assumed, not verified"
        )
    if any(eq.generic for eq in tower.equations):
        reasons.append("generic parts are taken at their declared genericity")
    if not reasons:
        reasons.append("partial-support equation: smoothness assumed")
    return TransversalityReport("assumed", tuple(reasons))


# ---------------------------------------------------------------------------
# stratum points


@dataclass(frozen=True)
class StratumPoint:
    """An exact point of a coordinate stratum: phases are turns relative to
    the base coordinate (normalised to 1); moduli record radii that differ
    from 1 as {prime: exponent} maps, serialised for hashability."""

    support: tuple[int, ...]
    phases: tuple[Fraction, ...]  # one per support entry, base entry = 0
    moduli: tuple[tuple[int, tuple[tuple[int, Fraction], ...]], ...] = ()

    @property
    def base(self) -> int:
        return self.support[0]

    def describe(self) -> str:
        bits = []
        for j, t in zip(self.support, self.phases):
            mod = dict(self.moduli).get(j)
            r = positive_power_value(dict(mod)) if mod else "1"
            if r == "1":
                bits.append(f"z{j}: turn {t}")
            else:
                bits.append(f"z{j}: {r} * turn {t}")
        return "{" + ", ".join(bits) + "}"


def canonical_point(
    weights: WeightSystem,
    support: tuple[int, ...],
    phases: dict[int, Fraction],
    moduli: dict[int, dict[int, Fraction]] | None = None,
) -> StratumPoint:
    """Normalise a point under the residual scaling of its chart.

    The chart sets the base coordinate to 1; the residual mu_{a_base} acts on
    the remaining phases by theta_j + a_j * s / a_base.  The representative is
    the lexicographically smallest phase tuple over all s, with moduli scaled
    so the base modulus is exactly 1.
    """
    support = tuple(sorted(support))
    base = support[0]
    a_base = weights[base]
    moduli = {k: dict(v) for k, v in (moduli or {}).items()}
    # scale moduli so r_base = 1
    r_base = moduli.get(base, {})
    if r_base:
        for j in support:
            scale = {p: -e * Fraction(weights[j], a_base) for p, e in r_base.items()}
            cur = moduli.setdefault(j, {})
            for p, e in scale.items():
                cur[p] = cur.get(p, Fraction(0)) + e
        moduli = {j: {p: e for p, e in m.items() if e} for j, m in moduli.items()}
    # gauge-fix the base phase to 0, minimising lexicographically
    theta0 = phases.get(base, Fraction(0))
    best: tuple[Fraction, ...] | None = None
    for s in range(a_base):
        psi = (Fraction(s) - theta0) / a_base
        cand = tuple(mod1(phases.get(j, Fraction(0)) + weights[j] * psi) for j in support)
        if best is None or cand < best:
            best = cand
    assert best is not None, "gauge fixing failed"
    clean_moduli = tuple(
        (j, tuple(sorted(moduli[j].items())))
        for j in support
        if moduli.get(j)
    )
    return StratumPoint(support, best, clean_moduli)


# ---------------------------------------------------------------------------
# singular inventory


@dataclass
class StratumRecord:
    support: tuple[int, ...]
    order: int
    dimension: int
    transverse_residues: tuple[int, ...]
    classification: str
    count: int | None = None
    points: tuple[StratumPoint, ...] | None = None
    point_note: str | None = None
    closed_chi: int | None = None
    open_chi: int | None = None
    reduced_weights: tuple[int, ...] | None = None
    needs_external: bool = False
    absorbed_into: tuple[int, ...] | None = None
    notes: list[str] = field(default_factory=list)


def _classify(order: int, dimension: int, residues: tuple[int, ...]) -> str:
    if dimension >= 1:
        return "nonisolated"
    if order == 4 and residues and (
        all(r % 4 == 1 for r in residues) or all(r % 4 == 3 for r in residues)
    ):
        return "z4-scalar-point"
    if order == 2 and residues and all(r % 2 == 1 for r in residues):
        return "half-turn-point"
    return "other"


def singular_locus(tower: Tower) -> list[StratumRecord]:
    """Inventory of the variety's intersection with the ambient singular set.

    One record per coordinate support with nontrivial stratum order whose
    open stratum actually meets the variety (or might, when generic parts
    prevent an exact decision).  Records contained in a larger nonisolated
    record are marked absorbed: they are boundary points of that locus, not
    separate singularities.
    """
    w = tower.ambient
    m = len(w)
    records: list[StratumRecord] = []
    for r in range(1, m + 1):
        for support in itertools.combinations(range(m), r):
            k = w.stratum_order(support)
            if k == 1:
                continue
            rec = _analyse_support(tower, support, k)
            if rec is not None:
                records.append(rec)
    nonisolated = [rec.support for rec in records if rec.classification == "nonisolated"]
    for rec in records:
        for big in nonisolated:
            if set(rec.support) < set(big):
                rec.absorbed_into = big
                break
    records.sort(key=lambda rec: rec.support)
    return records


def _analyse_support(
    tower: Tower, support: tuple[int, ...], k: int
) -> StratumRecord | None:
    w = tower.ambient
    sup = set(support)
    surviving = 0
    has_generic = False
    restricted_pure: list[tuple[int, dict[int, tuple[int, Cyc]]]] = []
    for pos, eq in enumerate(tower.equations):
        pure = {
            t.variable: (t.exponent, t.coefficient)
            for t in eq.pure
            if t.variable in sup
        }
        generic_here = not tower._generic_restricts_away(eq, sup)
        if not pure and not generic_here:
            continue  # identically zero: no condition
        surviving += 1
        if generic_here:
            has_generic = True
        elif len(pure) == 1:
            return None  # single pure term: the open stratum misses the variety
        restricted_pure.append((pos, pure))
    dim = len(support) - 1 - surviving
    residues = tuple(w[j] % k for j in range(len(w)) if j not in sup)
    if has_generic:
        if dim < 0:
            return None  # generically empty
        rec = StratumRecord(
            support=support,
            order=k,
            dimension=dim,
            transverse_residues=residues,
            classification=_classify(k, dim, residues),
            needs_external=True,
            point_note="generic part survives on this support",
        )
        return rec
    engine = tower.engine(support=support)
    closed = engine.chi_closed_on(support)
    open_chi = engine.chi_open_on(support)
    if dim <= 0 and open_chi == 0:
        return None  # the open stratum misses the variety
    rec = StratumRecord(
        support=support,
        order=k,
        dimension=max(dim, 0),
        transverse_residues=residues,
        classification=_classify(k, dim, residues),
        closed_chi=closed,
        open_chi=open_chi,
    )
    if dim == 0:
        rec.count = open_chi
        points, note = _stratum_points(tower, support, restricted_pure)
        rec.points = points
        rec.point_note = note
        if points is not None and len(points) != open_chi:
            raise AssertionError(
                f"point enumeration on {support} found {len(points)} points "
                f"but the stratified count is {open_chi}"
            )
    elif dim >= 1:
        g = hcf(w[j] for j in support)
        rec.reduced_weights = tuple(w[j] // g for j in support)
    return rec


def _stratum_points(
    tower: Tower,
    support: tuple[int, ...],
    equations: list[tuple[int, dict[int, tuple[int, Cyc]]]],
) -> tuple[tuple[StratumPoint, ...] | None, str | None]:
    """Exact representatives of a zero-dimensional stratum intersection.

    Only binomial restricted systems with unit-multiple coefficients are
    enumerable this way; anything else returns None with a reason (the count
    is still known from the stratified recursion).
    """
    w = tower.ambient
    support = tuple(sorted(support))
    base = support[0]
    unknowns = [j for j in support if j != base]
    at = {j: i for i, j in enumerate(unknowns)}
    phase_rows: list[tuple[list[int], Fraction]] = []
    power_eqs: list[tuple[dict[int, int], Fraction]] = []
    for _pos, terms in equations:
        if len(terms) != 2:
            return None, "restricted system is not binomial"
        (va, (ka, ca)), (vb, (kb, cb)) = sorted(terms.items())
        ua, ub = ca.as_unit_multiple(), cb.as_unit_multiple()
        if ua is None or ub is None:
            return None, "coefficient is not a rational multiple of a root of unity"
        (qa, ga), (qb, gb) = ua, ub
        # phases: ga + ka*ta = 1/2 + gb + kb*tb (mod 1)
        row = [0] * len(unknowns)
        if va != base:
            row[at[va]] += ka
        if vb != base:
            row[at[vb]] -= kb
        phase_rows.append((row, mod1(Fraction(1, 2) + gb - ga)))
        # moduli: ra^ka * qa = rb^kb * qb
        power_eqs.append(({va: ka, vb: -kb}, qb / qa))
    sols = solve_turn_system(phase_rows, len(unknowns))
    if sols.status == "empty":
        return (), None
    if sols.status == "infinite":
        return None, "phase system is positive-dimensional"
    power_eqs.append(({base: 1}, Fraction(1)))
    powers = solve_positive_power_system(power_eqs, list(support))
    if powers is None:
        return None, "modulus system inconsistent"
    if powers == "free":
        return None, "modulus system underdetermined"
    moduli = {j: dict(powers.get(j, {})) for j in support}
    out = set()
    for sol in sols.solutions:
        phases = {base: Fraction(0)}
        for j, t in zip(unknowns, sol):
            phases[j] = t
        out.add(canonical_point(w, support, phases, moduli))
    return tuple(sorted(out, key=lambda p: p.phases)), None


# ---------------------------------------------------------------------------
# classical low-dimensional cross-checks


def plane_curve_euler(degree: int) -> int:
    """chi of a smooth plane curve: 2 - (d-1)(d-2)."""
    return 2 - (degree - 1) * (degree - 2)


def plane_intersection_count(d1: int, d2: int) -> int:
    """Points of a transverse intersection of two plane curves."""
    return d1 * d2


def complete_intersection_curve_euler(d1: int, d2: int) -> int:
    """chi of a smooth curve cut by two surfaces in ordinary 3-space:
    2 - 2g with 2g - 2 = d1*d2*(d1 + d2 - 4)."""
    return -d1 * d2 * (d1 + d2 - 4)


def classical_curve_invariants(kind: str, *degrees: int) -> dict[str, int]:
    """Dispatcher for the classical formulas used as independent oracles."""
    if kind == "plane-curve":
        (d,) = degrees
        chi = plane_curve_euler(d)
        return {"chi": chi, "genus": (2 - chi) // 2}
    if kind == "plane-intersection":
        d1, d2 = degrees
        return {"count": plane_intersection_count(d1, d2)}
    if kind == "complete-intersection-curve":
        d1, d2 = degrees
        chi = complete_intersection_curve_euler(d1, d2)
        return {"chi": chi, "genus": (2 - chi) // 2}
    raise ValueError(f"unknown invariant kind: {kind}")
