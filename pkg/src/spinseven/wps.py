"""Weighted projective spaces: weights, strata, monomial counts, phase actions.

A weight system (a_0, ..., a_m) of positive integers with overall hcf 1
determines the quotient of C^{m+1} minus the origin by the scaling
u . (z_0, ..., z_m) = (u^{a_0} z_0, ..., u^{a_m} z_m).  The combinatorics this
module owns:

* coordinate strata T_I (points whose support is exactly I) and the subgroup
  mu_{hcf(a_i : i in I)} acting trivially along them — the ambient singular
  locus is the union of the strata with nontrivial hcf;
* counting monomials of a given weighted degree (the graded dimension of the
  coordinate ring), plus the dimension count for the group of reweightings of
  a hypersurface equation;
* diagonal phase actions on the space, their fixed components, and projective
  comparisons of such actions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .exact import hcf, mod1


@dataclass(frozen=True)
class WeightSystem:
    """Positive integer weights with hcf 1, one per homogeneous coordinate."""

    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.weights:
            raise ValueError("at least one weight is required")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive integers")
        if hcf(self.weights) != 1:
            raise ValueError("weights must have highest common factor 1")

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, i: int) -> int:
        return self.weights[i]

    @property
    def dimension(self) -> int:
        """Complex dimension of the projective space."""
        return len(self.weights) - 1

    def stratum_order(self, support: Iterable[int]) -> int:
        """hcf of the weights over the given support: the order of the scaling
        subgroup fixing the stratum pointwise."""
        support = tuple(support)
        if not support:
            raise ValueError("support must be nonempty")
        return hcf(self.weights[i] for i in support)

    def singular_supports(self) -> list[tuple[int, ...]]:
        """Maximal coordinate supports with nontrivial stratum order, sorted.

        Every singular stratum of the space itself is contained in one of
        these; smaller supports with larger hcf are refinements, not new
        components.
        """
        m = len(self.weights)
        candidates: list[tuple[int, ...]] = []
        for r in range(m, 0, -1):
            for support in itertools.combinations(range(m), r):
                if self.stratum_order(support) > 1:
                    if not any(set(support) <= set(c) for c in candidates):
                        candidates.append(support)
        return sorted(candidates)

    def euler_characteristic(self) -> int:
        """chi of the weighted projective space (same as straight projective
        space of equal dimension: the strata glue to even-dimensional cells)."""
        return len(self.weights)


@lru_cache(maxsize=None)
def _count_monomials(weights: tuple[int, ...], degree: int) -> int:
    """Number of monomials z^e with sum_i weights[i]*e_i = degree, e_i >= 0."""
    if degree < 0:
        return 0
    counts = [0] * (degree + 1)
    counts[0] = 1
    for w in weights:
        for d in range(w, degree + 1):
            counts[d] += counts[d - w]
    return counts[degree]


def count_monomials(weights: "WeightSystem | Sequence[int]", degree: int) -> int:
    w = weights.weights if isinstance(weights, WeightSystem) else tuple(weights)
    return _count_monomials(w, degree)


def hypersurface_moduli_dimensions(weights: WeightSystem, degree: int) -> tuple[int, int, int]:
    """(monomial count - 1, reweighting dimension, difference).

    The first entry is the projective dimension of the space of degree-d
    equations, the second the dimension of the group of coordinate changes
    z_j -> z_j + (degree-a_j homogeneous) acting on them, and the difference
    estimates the dimension of the family of distinct hypersurfaces.
    """
    m = count_monomials(weights, degree) - 1
    n = sum(count_monomials(weights, a) for a in weights.weights) - 1
    return m, n, m - n


# ---------------------------------------------------------------------------
# diagonal phase actions


@dataclass(frozen=True)
class PhaseAction:
    """A diagonal action z_j -> exp(2*pi*i*turns[j]) * z_j on the ambient
    space of a weight system.  Only well defined up to the scaling subgroup:
    turns and turns + tau*weights give the same projective map."""

    turns: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "turns", tuple(mod1(t) for t in self.turns))

    def is_projectively_trivial(self, weights: WeightSystem) -> bool:
        return self.projective_twist(weights) is not None

    def projective_twist(self, weights: WeightSystem) -> Fraction | None:
        """The scaling turn tau with turns = tau * weights (mod 1), if any."""
        denom = 1
        for t, a in zip(self.turns, weights.weights):
            denom = denom * (t + Fraction(0)).denominator // gcd(denom, t.denominator)
            denom = denom * a // gcd(denom, a)
        # candidate taus are multiples of 1/(denom) — but simpler: solve from
        # the first coordinate and check the rest for each residue class.
        a0 = weights.weights[0]
        t0 = self.turns[0]
        for k in range(a0):
            tau = mod1(Fraction(t0 + k, a0))
            if all(mod1(a * tau) == t for a, t in zip(weights.weights, self.turns)):
                return tau
        return None

    def projective_order(self, weights: WeightSystem) -> int:
        """Smallest k >= 1 with the k-th iterate projectively trivial."""
        k = 1
        current = self
        while not current.is_projectively_trivial(weights):
            current = PhaseAction(tuple(mod1(t + s) for t, s in zip(current.turns, self.turns)))
            k += 1
            if k > 1000:
                raise RuntimeError("projective order did not terminate")
        return k

    def fixed_components(self, weights: WeightSystem) -> list[tuple[tuple[int, ...], Fraction]]:
        """Maximal supports pointwise-fixed after a scaling correction.

        A point with support S is fixed iff some scaling turn tau satisfies
        turns[j] = a_j * tau (mod 1) for all j in S.  Grouping coordinates by
        compatible tau values yields the components: one maximal support per
        usable tau class.  Returns (support, tau) pairs, sorted by support.
        """
        taus: set[Fraction] = set()
        for j, a in enumerate(weights.weights):
            for k in range(a):
                taus.add(mod1(Fraction(self.turns[j] + k, a)))
        components = []
        for tau in sorted(taus):
            support = tuple(
                j
                for j, a in enumerate(weights.weights)
                if mod1(a * tau) == self.turns[j]
            )
            if support and not any(support == s for s, _ in components):
                components.append((support, tau))
        # keep only maximal supports (distinct taus can cut the same component
        # when the stratum hcf is nontrivial)
        maximal = [
            (s, tau)
            for s, tau in components
            if not any(set(s) < set(s2) for s2, _ in components)
        ]
        seen: set[tuple[int, ...]] = set()
        out = []
        for s, tau in sorted(maximal):
            if s not in seen:
                seen.add(s)
                out.append((s, tau))
        return out

    def twisted_by(self, weights: WeightSystem, tau: Fraction) -> "PhaseAction":
        return PhaseAction(tuple(mod1(t + a * tau) for t, a in zip(self.turns, weights.weights)))

    def projectively_equal(self, other: "PhaseAction", weights: WeightSystem) -> bool:
        diff = PhaseAction(tuple(mod1(t - s) for t, s in zip(self.turns, other.turns)))
        return diff.is_projectively_trivial(weights)
