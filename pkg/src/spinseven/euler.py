"""Exact Euler characteristics of Fermat-type complete intersections.

The varieties handled here are cut out of a weighted projective space by
equations whose terms are pure powers, one variable per term (plus, upstream,
generic pieces that must restrict away before reaching this engine).  Their
topology is computed by an exact stratified recursion with no cohomology and
no numerics; the answer is always an integer.

The recursion on chi of V(E) inside the subspace spanned by a variable set S:

* an equation that restricts to zero on S imposes no condition and is
  dropped; if none remain, the answer is |S| (the ambient weighted projective
  space has chi equal to its coordinate count);
* a single-term equation c*z_v^k forces z_v = 0: recurse on S minus v;
* otherwise pick a *retirement* (e, v) with v appearing in no other equation
  and split off the branch locus: with E_base = E minus e and
  E_branch = E_base plus (e minus its v-term),

      chi = sum over nonempty I <= S-{v} of
            chi_open(E_branch, I)
            + (chi_open(E_base, I) - chi_open(E_branch, I)) * f(k, l_I, a_v)

  where chi_open(E, I) is the chi of V(E) intersected with the *open* stratum
  (all coordinates of I nonzero), obtained from closed values by inclusion-
  exclusion, l_I is the hcf of the weights over I, and
  f = k * gcd(l_I, a_v) / l_I counts the points of the cyclic k-fold cover
  over an open-stratum point after the residual mu_{l_I} identification.
  (Over a point not on the branch locus the fibre of [z] -> [z without v] is
  the k-th root set of a nonzero number; the stratum's scaling stabiliser
  mu_{l_I} acts on it through its quotient mu_{l_I / gcd(l_I, a_v)}, freely,
  which divides the k roots into f projective points.  Integrality of f is
  asserted, not assumed.)
* when no equation owns a private variable, the system is first *recombined*:
  subtracting an exact multiple of one equation from another to cancel a
  shared pure power preserves the variety and, for the towers treated here,
  restores privateness.  Coefficient arithmetic is exact cyclotomic, so
  cancellation detection is decidable.

Everything is memoised on a canonical form of (weights, equations).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .exact import Cyc, hcf
from .wps import WeightSystem

# an engine equation: (position, terms) with terms a tuple of (var, exp, Cyc)
EngineEq = tuple[int, tuple[tuple[int, int, Cyc], ...]]


class EngineError(ValueError):
    """The system left the class the recursion can handle."""


def _canonical_terms(terms: Iterable[tuple[int, int, Cyc]]) -> tuple[tuple[int, int, Cyc], ...]:
    return tuple(sorted(terms, key=lambda t: t[0]))


class ChiEngine:
    """Stratified Euler-characteristic computation for one system.

    weights: {var: weight}; equations: [(position, {var: (exp, coeff)})];
    plan: optional retirement order [(position, var), ...].  Positions tie the
    plan to equations across restriction; they carry no other meaning.
    """

    def __init__(
        self,
        weights: Mapping[int, int],
        equations: Sequence[tuple[int, Mapping[int, tuple[int, Cyc]]]],
        plan: Sequence[tuple[int, int]] | None = None,
        memoize: bool = True,
    ):
        self.weights = dict(weights)
        self.equations: list[EngineEq] = [
            (pos, _canonical_terms((v, e, c) for v, (e, c) in eq.items()))
            for pos, eq in equations
        ]
        for _pos, terms in self.equations:
            for v, e, c in terms:
                if v not in self.weights:
                    raise EngineError(f"equation uses unknown variable {v}")
                if e < 1:
                    raise EngineError("exponents must be positive")
                if c.is_zero():
                    raise EngineError("zero coefficient in equation")
        if plan is None:
            plan = [
                (pos, max(v for v, _e, _c in terms))
                for pos, terms in reversed(self.equations)
                if terms
            ]
        self.plan = list(plan)
        self.memoize = memoize
        self._memo: dict = {}

    # -- public entry points ------------------------------------------------

    def chi(self) -> int:
        return self.chi_closed(frozenset(self.weights), tuple(self.equations))

    def chi_closed_on(self, support: Iterable[int]) -> int:
        return self.chi_closed(frozenset(support), tuple(self.equations))

    def chi_open_on(self, support: Iterable[int]) -> int:
        support = tuple(sorted(support))
        return self._chi_open(tuple(self.equations), support)

    # -- recursion ------------------------------------------------------------

    def chi_closed(self, sup: frozenset[int], eqs: tuple[EngineEq, ...]) -> int:
        if not sup:
            return 0
        restricted: list[EngineEq] = []
        for pos, terms in eqs:
            rt = tuple(t for t in terms if t[0] in sup)
            if rt:
                restricted.append((pos, rt))
        key = None
        if self.memoize:
            key = (
                tuple(sorted((v, self.weights[v]) for v in sup)),
                tuple(
                    sorted(
                        tuple((v, e, c.key()) for v, e, c in terms)
                        for _pos, terms in restricted
                    )
                ),
            )
            if key in self._memo:
                return self._memo[key]
        value = self._chi_closed_work(sup, restricted)
        if self.memoize:
            self._memo[key] = value
        return value

    def _chi_closed_work(self, sup: frozenset[int], eqs: list[EngineEq]) -> int:
        if not eqs:
            return len(sup)
        for pos, terms in eqs:
            if len(terms) == 1:
                v = terms[0][0]
                return self.chi_closed(sup - {v}, tuple(eqs))
        eqs = self._ensure_private(sup, eqs)
        pos, terms, v = self._choose_retirement(eqs)
        k = next(e for var, e, _c in terms if var == v)
        a_v = self.weights[v]
        base = tuple(eq for eq in eqs if eq[0] != pos)
        branch = base + ((pos, tuple(t for t in terms if t[0] != v)),)
        rest = tuple(sorted(sup - {v}))
        total = 0
        for r in range(1, len(rest) + 1):
            for subset in itertools.combinations(rest, r):
                chi_br = self._chi_open(branch, subset)
                chi_ba = self._chi_open(base, subset)
                l = hcf(self.weights[i] for i in subset)
                fibre_num = k * gcd(l, a_v)
                if fibre_num % l:
                    raise EngineError(
                        f"non-integral fibre count on stratum {subset}: "
                        f"k={k}, l={l}, weight={a_v}"
                    )
                total += chi_br + (chi_ba - chi_br) * (fibre_num // l)
        return total

    def _chi_open(self, eqs: tuple[EngineEq, ...], support: tuple[int, ...]) -> int:
        """chi of V(eqs) on the open stratum (coords of `support` all nonzero),
        by inclusion-exclusion over closed values."""
        total = 0
        n = len(support)
        for r in range(1, n + 1):
            sign = (-1) ** (n - r)
            for subset in itertools.combinations(support, r):
                total += sign * self.chi_closed(frozenset(subset), eqs)
        return total

    # -- retirement choice -----------------------------------------------------

    def _private_vars(self, eqs: Sequence[EngineEq], pos: int) -> list[int]:
        mine = next(terms for p, terms in eqs if p == pos)
        others: set[int] = set()
        for p, terms in eqs:
            if p != pos:
                others.update(v for v, _e, _c in terms)
        return [v for v, _e, _c in mine if v not in others]

    def _choose_retirement(self, eqs: list[EngineEq]) -> tuple[int, tuple, int]:
        present = {pos for pos, _ in eqs}
        for pos, var in self.plan:
            if pos in present:
                terms = next(t for p, t in eqs if p == pos)
                if any(v == var for v, _e, _c in terms) and var in self._private_vars(eqs, pos):
                    return pos, terms, var
        candidates = []
        for pos, terms in eqs:
            for v in self._private_vars(eqs, pos):
                candidates.append((v, -pos, pos, terms))
        if not candidates:
            raise EngineError("no equation owns a private variable")
        v, _negpos, pos, terms = max(candidates)
        return pos, terms, v

    # -- recombination ----------------------------------------------------------

    def _plan_rank(self, pos: int) -> int:
        for i, (p, _v) in enumerate(self.plan):
            if p == pos:
                return i
        return len(self.plan) + pos

    def _ensure_private(self, sup: frozenset[int], eqs: list[EngineEq]) -> list[EngineEq]:
        guard = 4 * len(eqs) * max(len(sup), 1)
        for _ in range(guard):
            if any(self._private_vars(eqs, pos) for pos, _ in eqs):
                return eqs
            step = self._recombine_once(eqs)
            if step is None:
                raise EngineError(
                    "system is not triangulable: no private variable and no "
                    "recombination cancels a shared pure power"
                )
            eqs = step
        raise EngineError("recombination did not terminate")

    def _recombine_once(self, eqs: list[EngineEq]) -> list[EngineEq] | None:
        """Replace one equation by itself minus a multiple of another so that a
        shared pure power cancels; None when no admissible pair exists."""
        ranked = sorted(eqs, key=lambda eq: self._plan_rank(eq[0]))
        for t_pos, t_terms in reversed(ranked):  # modify the latest-planned eq
            t_map = {v: (e, c) for v, e, c in t_terms}
            for s_pos, s_terms in ranked:
                if s_pos == t_pos:
                    continue
                s_map = {v: (e, c) for v, e, c in s_terms}
                shared = sorted(set(t_map) & set(s_map))
                if not shared:
                    continue
                if any(t_map[v][0] != s_map[v][0] for v in shared):
                    continue  # mixed exponents: subtraction would leave impure terms
                for u in shared:
                    lam = t_map[u][1] / s_map[u][1]
                    new_terms = []
                    for v in sorted(set(t_map) | set(s_map)):
                        if v in t_map and v in s_map:
                            c = t_map[v][1] - lam * s_map[v][1]
                            e = t_map[v][0]
                        elif v in t_map:
                            e, c = t_map[v]
                        else:
                            e, c = s_map[v][0], -lam * s_map[v][1]
                        if not c.is_zero():
                            new_terms.append((v, e, c))
                    if any(v == u for v, _e, _c in new_terms):
                        continue  # should not happen; u cancels by construction
                    out = []
                    for pos, terms in eqs:
                        if pos != t_pos:
                            out.append((pos, terms))
                        elif new_terms:
                            out.append((pos, _canonical_terms(new_terms)))
                        # a fully cancelled target was proportional to the
                        # source: dropping it keeps the same variety
                    return out
        return None


# ---------------------------------------------------------------------------
# convenience entry points


def _coeffs_or_default(
    count: int, coefficients: Sequence[Cyc] | None
) -> list[Cyc]:
    if coefficients is None:
        return [Cyc.rational(1)] * count
    if len(coefficients) != count:
        raise ValueError("coefficient count does not match variable count")
    return list(coefficients)


def chi_fermat_chain(
    weights: WeightSystem | Sequence[int],
    exponents: Sequence[int],
    coefficients: Sequence[Cyc] | None = None,
) -> list[int]:
    """chi of the single-equation variety restricted to the first j+1
    coordinates, for j = 1 .. m.  The full-space value is the last entry."""
    w = weights.weights if isinstance(weights, WeightSystem) else tuple(weights)
    if len(exponents) != len(w):
        raise ValueError("one exponent per variable is required")
    degrees = {a * e for a, e in zip(w, exponents)}
    if len(degrees) != 1:
        raise ValueError(f"terms are not equi-degree: degrees {sorted(degrees)}")
    coeffs = _coeffs_or_default(len(w), coefficients)
    eq = {i: (exponents[i], coeffs[i]) for i in range(len(w))}
    engine = ChiEngine({i: a for i, a in enumerate(w)}, [(0, eq)])
    return [engine.chi_closed_on(range(j + 1)) for j in range(1, len(w))]


def chi_fermat(
    weights: WeightSystem | Sequence[int],
    exponents: Sequence[int],
    coefficients: Sequence[Cyc] | None = None,
) -> int:
    """chi of a one-equation Fermat hypersurface in its weighted space."""
    return chi_fermat_chain(weights, exponents, coefficients)[-1]
