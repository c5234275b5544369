"""Antiholomorphic symmetries of weighted hypersurface systems.

An antiholomorphic monomial map sends each coordinate to a unit multiple of
the conjugate of a coordinate of the same weight,

    sigma(z)_j = e(phi_j) * conj(z_{pi(j)}),        e(t) = exp(2*pi*i*t),

with pi an involutive permutation.  Such a map is described here by blocks:
a conjugated singleton sends a coordinate to a unit multiple of its own
conjugate, a pair block swaps two coordinates of equal weight.  All phases
are turns (rationals mod 1).

The fixed locus on a projective variety is computed support by support.  A
point whose nonzero coordinates are exactly I can be fixed only when pi
preserves I, which restricts I to unions of whole pair blocks and conjugated
singletons.  A pair block can only contribute when its two phases agree:
projective fixedness gives z_j = e(a_j*tau + phi_j) conj(z_l) and
z_l = e(a_l*tau + phi_l) conj(z_j), and substituting one into the other
forces (a_j - a_l)*tau + phi_j - phi_l = 0 with a_j = a_l.  On an admissible
support the fixedness conditions and the restricted (binomial) equations form
an integer congruence system in the coordinate phases and the rescaling turn
tau, solved exactly by Smith reduction; tau is then projected away and each
solution is reduced to canonical form in its chart.  Radii are handled by the
multiplicative positive-real solver, with one extra positive unknown for the
modulus of the rescaling.  Anything the congruence model cannot express —
surviving generic parts, non-binomial restrictions, positive-dimensional
solution sets — is reported as an unsupported support, never silently
dropped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Cyc, mod1, solve_positive_power_system, solve_turn_system
from .variety import StratumPoint, Tower, canonical_point
from .wps import PhaseAction, WeightSystem

# the detailed local model of a half-turn lift is classified in cayley;
# re-exported here because callers usually reach it from the involution side
from .cayley import (  # noqa: F401  (re-export)
    DifferentialClass,
    DifferentialShapeError,
    classify_half_turn_differential,
)


@dataclass(frozen=True)
class PairBlock:
    """sigma swaps two coordinates:
    sigma(z)_first = e(first_phase) * conj(z_second) and
    sigma(z)_second = e(second_phase) * conj(z_first)."""

    first: int
    second: int
    first_phase: Fraction = Fraction(0)
    second_phase: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.first == self.second:
            raise ValueError("a pair block needs two distinct coordinates")

    @property
    def indices(self) -> tuple[int, int]:
        return (self.first, self.second)


@dataclass(frozen=True)
class ConjBlock:
    """sigma(z)_index = e(phase) * conj(z_index)."""

    index: int
    phase: Fraction = Fraction(0)

    @property
    def indices(self) -> tuple[int]:
        return (self.index,)


@dataclass(frozen=True)
class Involution:
    blocks: tuple[PairBlock | ConjBlock, ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for block in self.blocks:
            for j in block.indices:
                if j < 0:
                    raise ValueError("coordinate indices must be nonnegative")
                if j in seen:
                    raise ValueError(f"coordinate {j} appears in two blocks")
                seen.add(j)

    @property
    def dimension(self) -> int:
        return 1 + max(j for b in self.blocks for j in b.indices)

    def permutation(self) -> tuple[int, ...]:
        perm = list(range(self.dimension))
        for block in self.blocks:
            if isinstance(block, PairBlock):
                perm[block.first] = block.second
                perm[block.second] = block.first
        return tuple(perm)

    def phases(self) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.dimension
        for block in self.blocks:
            if isinstance(block, PairBlock):
                out[block.first] = mod1(block.first_phase)
                out[block.second] = mod1(block.second_phase)
            else:
                out[block.index] = mod1(block.phase)
        return tuple(out)

    def problems(self, weights: WeightSystem) -> list[str]:
        """Structural obstructions to sigma being a well-defined involution
        of the weighted space; empty when there are none."""
        out = []
        covered = {j for b in self.blocks for j in b.indices}
        if covered != set(range(len(weights))):
            out.append(
                f"blocks cover {sorted(covered)} but the space has "
                f"{len(weights)} coordinates"
            )
            return out
        for block in self.blocks:
            if isinstance(block, PairBlock):
                if weights[block.first] != weights[block.second]:
                    out.append(
                        f"pair ({block.first},{block.second}) swaps weights "
                        f"{weights[block.first]} and {weights[block.second]}"
                    )
        if self.square_twist(weights) is None:
            out.append("sigma^2 is not a projective identity")
        return out

    def square_action(self) -> PhaseAction:
        """sigma^2 as a diagonal phase action: applying the map twice gives
        z_j -> e(phi_j - phi_{pi(j)}) z_j since pi is an involution."""
        perm = self.permutation()
        phi = self.phases()
        return PhaseAction(tuple(mod1(phi[j] - phi[perm[j]]) for j in range(len(phi))))

    def square_twist(self, weights: WeightSystem) -> Fraction | None:
        """The rescaling turn exhibiting sigma^2 = 1 projectively, or None."""
        return self.square_action().projective_twist(weights)

    def describe(self) -> str:
        perm = self.permutation()
        phi = self.phases()
        bits = []
        for j in range(self.dimension):
            unit = "" if phi[j] == 0 else f"e({phi[j]}) "
            bits.append(f"z{j} -> {unit}conj(z{perm[j]})")
        return ", ".join(bits)


# ---------------------------------------------------------------------------
# compatibility with the variety


@dataclass(frozen=True)
class PreservationReport:
    """Whether conjugating the equation system by sigma lands back in itself.

    status "ok" means every equation was matched exactly; "assumed" means the
    pure parts match but some generic part's compatibility rests on choosing
    it inside the sigma-compatible family; "fail" records an obstruction.
    equation_map pairs each source equation index with the index its
    transform matched, and scalars holds the matching multiple.
    """

    status: str
    equation_map: tuple[tuple[int, int], ...]
    scalars: tuple[Cyc, ...]
    reasons: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.status != "fail"


def _transformed_profile(tower: Tower, sigma: Involution, pos: int):
    """Pure and generic data of conj(eq o sigma), indexed by target variable."""
    perm = sigma.permutation()
    phi = sigma.phases()
    eq = tower.equations[pos]
    pure: dict[int, tuple[int, Cyc]] = {}
    for term in eq.pure:
        v = term.variable
        coeff = term.coefficient.conjugate() * Cyc.unit(mod1(-term.exponent * phi[v]))
        pure[perm[v]] = (term.exponent, coeff)
    generic = [
        (frozenset(perm[v] for v in part.variables), part) for part in eq.generic
    ]
    return pure, generic


def _match_equation(tower, sigma, pure, generic, target_pos):
    """Try to express a transformed equation as scalar * equations[target_pos].

    Returns (scalar, issues) on success — issues flag generic parts whose
    compatibility is assumed rather than proved — or None when the shapes
    do not match at all.
    """
    phi = sigma.phases()
    target = tower.equations[target_pos]
    target_pure = {t.variable: (t.exponent, t.coefficient) for t in target.pure}
    if {v: k for v, (k, _) in pure.items()} != {
        v: k for v, (k, _) in target_pure.items()
    }:
        return None
    scalar: Cyc | None = None
    for v in sorted(pure):
        _, got = pure[v]
        _, want = target_pure[v]
        ratio = got / want
        if scalar is None:
            scalar = ratio
        elif scalar != ratio:
            return None
    target_parts = {frozenset(p.variables): p for p in target.generic}
    if {vs for vs, _ in generic} != set(target_parts):
        return None
    if scalar is None:
        # generic-only equation: nothing pins the scalar, take 1
        scalar = Cyc.rational(1)
    issues = []
    one = Cyc.rational(1)
    minus_one = Cyc.rational(-1)
    for vs, part in generic:
        mate = target_parts[vs]
        turns = {mod1(phi[v]) for v in part.variables}
        if (
            part.real
            and mate.real
            and turns <= {Fraction(0)}
            and scalar == one
        ):
            continue  # conj(P)(z) = P(z) exactly
        if (
            part.real
            and mate.real
            and turns <= {Fraction(0), Fraction(1, 2)}
            and scalar in (one, minus_one)
        ):
            issues.append(
                f"generic part {part.label}: compatibility holds for members "
                "of the sign-symmetric family, taken as given"
            )
            continue
        return None
    return scalar, issues


def preserves_variety(tower: Tower, sigma: Involution) -> PreservationReport:
    n = len(tower.equations)
    profiles = [_transformed_profile(tower, sigma, i) for i in range(n)]
    for images in itertools.permutations(range(n)):
        scalars: list[Cyc] = []
        reasons: list[str] = []
        for i, j in enumerate(images):
            matched = _match_equation(tower, sigma, *profiles[i], j)
            if matched is None:
                break
            scalar, issues = matched
            scalars.append(scalar)
            reasons.extend(issues)
        else:
            status = "assumed" if reasons else "ok"
            return PreservationReport(
                status, tuple(enumerate(images)), tuple(scalars), tuple(reasons)
            )
    return PreservationReport(
        "fail",
        (),
        (),
        ("no assignment matches the transformed equations to the system",),
    )


# ---------------------------------------------------------------------------
# the action on exact stratum points


def sigma_image_point(
    weights: WeightSystem, sigma: Involution, point: StratumPoint
) -> StratumPoint:
    """The image of an exact stratum point, in canonical form.

    With w = sigma(z): w_j = e(phi_j) conj(z_{pi(j)}), so the image support
    is pi(I), the image phase at j is phi_j - theta_{pi(j)}, and the image
    radius at j is the radius at pi(j).
    """
    perm = sigma.permutation()
    phi = sigma.phases()
    theta = dict(zip(point.support, point.phases))
    radii = {j: dict(m) for j, m in point.moduli}
    support = tuple(sorted(perm[j] for j in point.support))
    phases = {j: mod1(phi[j] - theta[perm[j]]) for j in support}
    moduli = {j: radii[perm[j]] for j in support if radii.get(perm[j])}
    return canonical_point(weights, support, phases, moduli)


@dataclass(frozen=True)
class OrbitReport:
    """How sigma permutes a finite family of exact points."""

    fixed: tuple[StratumPoint, ...]
    swapped: tuple[tuple[StratumPoint, StratumPoint], ...]
    unmatched: tuple[str, ...]


def match_point_orbits(
    weights: WeightSystem, sigma: Involution, points: Sequence[StratumPoint]
) -> OrbitReport:
    index = {p: i for i, p in enumerate(points)}
    fixed = []
    swapped = []
    unmatched = []
    for i, p in enumerate(points):
        image = sigma_image_point(weights, sigma, p)
        if image == p:
            fixed.append(p)
        elif image in index:
            if i < index[image]:
                swapped.append((p, image))
        else:
            unmatched.append(
                f"image of the point on support {p.support} is not in the family"
            )
    return OrbitReport(tuple(fixed), tuple(swapped), tuple(unmatched))


# ---------------------------------------------------------------------------
# the fixed locus


@dataclass(frozen=True)
class FixedPointReport:
    admissible: tuple[tuple[int, ...], ...]
    points: tuple[StratumPoint, ...]
    unsupported: tuple[tuple[tuple[int, ...], str], ...]

    @property
    def is_exact(self) -> bool:
        return not self.unsupported

    @property
    def count(self) -> int | None:
        """The number of fixed points, when the analysis was complete."""
        return len(self.points) if self.is_exact else None


def _admissible_supports(sigma: Involution) -> list[tuple[int, ...]]:
    units: list[tuple[int, ...]] = []
    for block in sigma.blocks:
        if isinstance(block, PairBlock):
            if mod1(block.first_phase) == mod1(block.second_phase):
                units.append(block.indices)
        else:
            units.append(block.indices)
    out = []
    for r in range(1, len(units) + 1):
        for combo in itertools.combinations(units, r):
            out.append(tuple(sorted(j for unit in combo for j in unit)))
    return sorted(out, key=lambda s: (len(s), s))


def fixed_points(tower: Tower, sigma: Involution) -> FixedPointReport:
    """All projective fixed points of sigma on the variety, exactly.

    Every fixed point found is verified by applying sigma to it again; the
    count is complete unless some support lands in the unsupported list.
    """
    w = tower.ambient
    perm = sigma.permutation()
    phi = sigma.phases()
    admissible = _admissible_supports(sigma)
    found: set[StratumPoint] = set()
    unsupported: list[tuple[tuple[int, ...], str]] = []
    for support in admissible:
        system = tower.pure_system_on(support)
        if system is None:
            unsupported.append(
                (support, "a generic part survives; the fixed set here needs "
                          "externally supplied data")
            )
            continue
        if any(len(terms) == 1 for _pos, terms in system):
            continue  # an equation restricts to one term: the stratum misses the variety
        if any(len(terms) > 2 for _pos, terms in system):
            unsupported.append((support, "a restricted equation is not binomial"))
            continue
        base = support[0]
        unknowns = [j for j in support if j != base]
        at = {j: i for i, j in enumerate(unknowns)}
        tau = len(unknowns)  # the rescaling turn is the last unknown
        rows: list[tuple[list[int], Fraction]] = []
        power_eqs: list[tuple[dict[int, int], Fraction]] = []
        bad = None
        for _pos, terms in system:
            (va, (ka, ca)), (vb, (kb, cb)) = sorted(terms.items())
            ua, ub = ca.as_unit_multiple(), cb.as_unit_multiple()
            if ua is None or ub is None:
                bad = "a coefficient is not a rational multiple of a root of unity"
                break
            (qa, ga), (qb, gb) = ua, ub
            row = [0] * (tau + 1)
            if va != base:
                row[at[va]] += ka
            if vb != base:
                row[at[vb]] -= kb
            rows.append((row, mod1(Fraction(1, 2) + gb - ga)))
            power_eqs.append(({va: ka, vb: -kb}, qb / qa))
        if bad:
            unsupported.append((support, bad))
            continue
        for j in support:
            # z_j = e(a_j tau + phi_j) conj(z_{pi(j)}):
            # theta_j + theta_{pi(j)} - a_j tau = phi_j  (mod 1)
            row = [0] * (tau + 1)
            if j != base:
                row[at[j]] += 1
            if perm[j] != base:
                row[at[perm[j]]] += 1
            row[tau] = -w[j]
            rows.append((row, phi[j]))
            coeffs = {j: 1}
            coeffs[perm[j]] = coeffs.get(perm[j], 0) - 1
            coeffs[-1] = -w[j]  # -1 tags the modulus of the rescaling
            power_eqs.append(({k: v for k, v in coeffs.items() if v}, Fraction(1)))
        sols = solve_turn_system(rows, tau + 1)
        if sols.status == "infinite":
            unsupported.append((support, "the fixed set here is positive-dimensional"))
            continue
        if sols.status == "empty" or not sols.solutions:
            continue
        power_eqs.append(({base: 1}, Fraction(1)))
        powers = solve_positive_power_system(power_eqs, [-1] + list(support))
        if powers == "free":
            unsupported.append((support, "the radius system is underdetermined"))
            continue
        if powers is None:
            continue  # phases work but no radii do: nothing is fixed here
        moduli = {j: dict(powers.get(j, {})) for j in support}
        for sol in sols.solutions:
            phases = {base: Fraction(0)}
            for j in unknowns:
                phases[j] = sol[at[j]]
            point = canonical_point(w, support, phases, moduli)
            assert sigma_image_point(w, sigma, point) == point, (
                "a solved fixed point moved under sigma; "
                "the congruence model is inconsistent"
            )
            found.add(point)
    points = tuple(sorted(found, key=lambda p: (p.support, p.phases)))
    return FixedPointReport(tuple(admissible), points, tuple(unsupported))


# ---------------------------------------------------------------------------
# compatibility with a phase-action quotient


def normalizes_phase_action(
    weights: WeightSystem, sigma: Involution, action: PhaseAction
) -> bool:
    """Whether sigma descends to the quotient by the cyclic group the action
    generates: conjugating the action by sigma must give the action or its
    inverse, projectively.  A short computation shows sigma a sigma^{-1}
    multiplies coordinate j by e(-t_{pi(j)})."""
    perm = sigma.permutation()
    conjugated = PhaseAction(
        tuple(mod1(-action.turns[perm[j]]) for j in range(len(weights)))
    )
    inverse = PhaseAction(tuple(mod1(-t) for t in action.turns))
    return conjugated.projectively_equal(action, weights) or (
        conjugated.projectively_equal(inverse, weights)
    )
