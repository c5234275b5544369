"""Constant-coefficient forms on R^8, monomial (anti)unitary maps, and their groups.

The triple-purpose of this module:

* build the distinguished self-dual 4-form on R^8 (14 monomial terms) and the
  2-form/4-form package induced by a choice of complex structure, so that the
  two constructions can be compared exactly;
* model monomial-phase maps of C^4 — maps sending z_i to a root of unity
  times z_{pi(i)} or its conjugate — with exact composition, pullback on real
  forms, group closure, and a decidable fixed-vector test with witnesses;
* classify the differential of an antiholomorphic involution at an isolated
  half-turn quotient point into the two genuinely different shapes (one
  admits an equivariant small resolution pattern, the other does not),
  by the sign of a Pfaffian.

All coefficients are Fractions or cyclotomic numbers from `exact`; nothing
here is numeric.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import Cyc, hcf, lcm, mod1


# ---------------------------------------------------------------------------
# real constant-coefficient forms


def _merge_sign(a: Sequence[int], b: Sequence[int]) -> tuple[tuple[int, ...], int] | None:
    """Merge two strictly increasing index tuples; None when they overlap."""
    if set(a) & set(b):
        return None
    merged = tuple(sorted(a + tuple(b)))
    # count inversions of the concatenation relative to sorted order
    concat = list(a) + list(b)
    inv = 0
    for i in range(len(concat)):
        for j in range(i + 1, len(concat)):
            if concat[i] > concat[j]:
                inv += 1
    return merged, (-1) ** inv


class MultiForm:
    """A constant-coefficient alternating form on R^8 with rational coefficients.

    Terms map strictly increasing index tuples (values 1..8) to Fractions.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.degree = degree
        clean: dict[tuple[int, ...], Fraction] = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"index tuple {idx} has wrong length for degree {degree}")
            if list(idx) != sorted(set(idx)):
                raise ValueError(f"index tuple {idx} must be strictly increasing")
            if any(i < 1 or i > 8 for i in idx):
                raise ValueError(f"index {idx} out of range 1..8")
            c = Fraction(c)
            if c:
                clean[idx] = c
        self.terms = clean

    @classmethod
    def basis(cls, *indices: int) -> "MultiForm":
        return cls(len(indices), {tuple(indices): Fraction(1)})

    def __add__(self, other: "MultiForm") -> "MultiForm":
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        out = dict(self.terms)
        for idx, c in other.terms.items():
            out[idx] = out.get(idx, Fraction(0)) + c
        return MultiForm(self.degree, out)

    def __neg__(self) -> "MultiForm":
        return MultiForm(self.degree, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other: "MultiForm") -> "MultiForm":
        return self + (-other)

    def __rmul__(self, scalar: int | Fraction) -> "MultiForm":
        s = Fraction(scalar)
        return MultiForm(self.degree, {i: s * c for i, c in self.terms.items()})

    def wedge(self, other: "MultiForm") -> "MultiForm":
        out: dict[tuple[int, ...], Fraction] = {}
        for ia, ca in self.terms.items():
            for ib, cb in other.terms.items():
                merged = _merge_sign(ia, ib)
                if merged is None:
                    continue
                idx, sign = merged
                out[idx] = out.get(idx, Fraction(0)) + sign * ca * cb
        return MultiForm(self.degree + other.degree, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiForm):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.degree, tuple(sorted(self.terms.items()))))

    def term_count(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return f"MultiForm({self.degree}, 0)"
        bits = []
        for idx in sorted(self.terms):
            c = self.terms[idx]
            name = "dx" + "".join(str(i) for i in idx)
            bits.append(f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}{name}")
        return "".join(bits)


def cayley_form() -> MultiForm:
    """The 14-term self-dual 4-form whose stabiliser is the 21-dimensional
    compact exceptional subgroup of GL(8,R) acting on spinors."""
    plus = ["1234", "1256", "1278", "1357", "2468", "3456", "3478", "5678"]
    minus = ["1368", "1458", "1467", "2358", "2367", "2457"]
    terms: dict[tuple[int, ...], Fraction] = {}
    for word in plus:
        terms[tuple(int(ch) for ch in word)] = Fraction(1)
    for word in minus:
        terms[tuple(int(ch) for ch in word)] = Fraction(-1)
    return MultiForm(4, terms)


# ---------------------------------------------------------------------------
# complex structures on R^8 given by signed coordinate pairings


@dataclass(frozen=True)
class CoordinatePairing:
    """A complex structure datum: four ordered pairs ((i, s), (j, t)) meaning
    the k-th complex coordinate is s*x_i + sqrt(-1)*t*x_j with s, t in {+1,-1}.
    """

    pairs: tuple[tuple[tuple[int, int], tuple[int, int]], ...]

    def __post_init__(self) -> None:
        used = [i for pair in self.pairs for (i, _s) in pair]
        if sorted(used) != list(range(1, 9)):
            raise ValueError("pairing must use each of x_1..x_8 exactly once")
        for pair in self.pairs:
            for _i, s in pair:
                if s not in (1, -1):
                    raise ValueError("pairing signs must be +1 or -1")


STANDARD_PAIRING = CoordinatePairing(
    (((1, 1), (2, 1)), ((3, 1), (4, 1)), ((5, 1), (6, 1)), ((7, 1), (8, 1)))
)

# The second complex structure: coordinates -x1 + i x3, x2 + i x4,
# -x5 + i x7, x6 + i x8.  It induces the *same* 4-form as the standard one,
# which is the hallmark of the 4-form's larger symmetry group.
CROSS_PAIRING = CoordinatePairing(
    (((1, -1), (3, 1)), ((2, 1), (4, 1)), ((5, -1), (7, 1)), ((6, 1), (8, 1)))
)


class _ComplexExpansion:
    """A form with cyclotomic coefficients over the real dx basis."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict[tuple[int, ...], Cyc]):
        self.degree = degree
        self.terms = {i: c for i, c in terms.items() if not c.is_zero()}

    @classmethod
    def one_form(cls, combo: Iterable[tuple[int, Cyc]]) -> "_ComplexExpansion":
        return cls(1, {(i,): c for i, c in combo})

    def wedge(self, other: "_ComplexExpansion") -> "_ComplexExpansion":
        out: dict[tuple[int, ...], Cyc] = {}
        for ia, ca in self.terms.items():
            for ib, cb in other.terms.items():
                merged = _merge_sign(ia, ib)
                if merged is None:
                    continue
                idx, sign = merged
                val = out.get(idx, Cyc.zero()) + sign * (ca * cb)
                out[idx] = val
        return _ComplexExpansion(self.degree + other.degree, out)

    def real_part(self) -> MultiForm:
        half = Fraction(1, 2)
        terms: dict[tuple[int, ...], Fraction] = {}
        for idx, c in self.terms.items():
            re = half * (c + c.conjugate())
            v = re.rational_value()
            if v is None:
                raise ArithmeticError("real part of coefficient is not rational")
            if v:
                terms[idx] = v
        return MultiForm(self.degree, terms)

    def rational_form(self) -> MultiForm:
        terms: dict[tuple[int, ...], Fraction] = {}
        for idx, c in self.terms.items():
            v = c.rational_value()
            if v is None:
                raise ArithmeticError(f"coefficient {c!r} of {idx} is not rational")
            terms[idx] = v
        return MultiForm(self.degree, terms)


def _complex_basis_expansions(pairing: CoordinatePairing) -> tuple[list[_ComplexExpansion], list[_ComplexExpansion]]:
    """Expansions of the holomorphic/antiholomorphic coordinate 1-forms."""
    i_unit = Cyc.imaginary_unit()
    dz, dzbar = [], []
    for (a, s), (b, t) in pairing.pairs:
        dz.append(_ComplexExpansion.one_form([(a, Cyc.rational(s)), (b, i_unit * t)]))
        dzbar.append(_ComplexExpansion.one_form([(a, Cyc.rational(s)), (b, -(i_unit * t))]))
    return dz, dzbar


def hermitian_two_form(pairing: CoordinatePairing) -> MultiForm:
    """The (1,1) 2-form sum_k (i/2) dz_k ^ dzbar_k, expanded over the dx basis."""
    dz, dzbar = _complex_basis_expansions(pairing)
    total = MultiForm(2)
    i_half = Fraction(1, 2)
    for k in range(4):
        w = dz[k].wedge(dzbar[k])
        # multiply by i/2 and take the (automatically real) value
        scaled = _ComplexExpansion(2, {idx: Cyc.imaginary_unit() * c for idx, c in w.terms.items()})
        total = total + i_half * scaled.rational_form()
    return total


def holomorphic_volume_real_part(pairing: CoordinatePairing) -> MultiForm:
    """Re(dz_1 ^ dz_2 ^ dz_3 ^ dz_4) over the dx basis."""
    dz, _ = _complex_basis_expansions(pairing)
    theta = dz[0].wedge(dz[1]).wedge(dz[2]).wedge(dz[3])
    return theta.real_part()


def su4_induced_form(pairing: CoordinatePairing = STANDARD_PAIRING) -> MultiForm:
    """The canonical 4-form of the complex structure: half the square of the
    hermitian 2-form plus the real part of the holomorphic volume form."""
    omega = hermitian_two_form(pairing)
    return Fraction(1, 2) * omega.wedge(omega) + holomorphic_volume_real_part(pairing)


# ---------------------------------------------------------------------------
# monomial phase maps of C^4


@dataclass(frozen=True)
class PhaseMap:
    """A map of C^4 sending z_i to zeta^phases[i-1] * z_{perm[i-1]} (or its
    complex conjugate when antilinear), zeta = exp(2*pi*i/order).

    perm is 1-based: perm[i-1] is the index whose coordinate feeds slot i.
    """

    order: int
    perm: tuple[int, int, int, int]
    phases: tuple[int, int, int, int]
    antilinear: bool

    def __post_init__(self) -> None:
        if sorted(self.perm) != [1, 2, 3, 4]:
            raise ValueError("perm must be a permutation of 1..4")
        if self.order < 1:
            raise ValueError("order must be positive")
        # canonicalise: phases into [0, order), then lower the order if possible
        phases = tuple(p % self.order for p in self.phases)
        g = hcf([self.order, *phases])
        if g > 1:
            object.__setattr__(self, "order", self.order // g)
            phases = tuple(p // g for p in phases)
        object.__setattr__(self, "phases", phases)

    # -- constructors --------------------------------------------------------

    @classmethod
    def identity(cls) -> "PhaseMap":
        return cls(1, (1, 2, 3, 4), (0, 0, 0, 0), False)

    @classmethod
    def scalar(cls, turn: Fraction) -> "PhaseMap":
        t = mod1(turn)
        n = t.denominator
        return cls(n, (1, 2, 3, 4), (t.numerator,) * 4, False)

    # -- group structure -----------------------------------------------------

    def _promoted_phases(self, order: int) -> tuple[int, ...]:
        step = order // self.order
        return tuple(p * step for p in self.phases)

    def compose(self, other: "PhaseMap") -> "PhaseMap":
        """self after other: (self.compose(other))(z) = self(other(z))."""
        n = lcm(self.order, other.order)
        ep = self._promoted_phases(n)
        fp = other._promoted_phases(n)
        sign = -1 if self.antilinear else 1
        perm = tuple(other.perm[self.perm[i] - 1] for i in range(4))
        phases = tuple((ep[i] + sign * fp[self.perm[i] - 1]) % n for i in range(4))
        return PhaseMap(n, perm, phases, self.antilinear ^ other.antilinear)

    def inverse(self) -> "PhaseMap":
        inv_perm = [0, 0, 0, 0]
        for i in range(4):
            inv_perm[self.perm[i] - 1] = i + 1
        sign = 1 if self.antilinear else -1
        phases = tuple(
            (sign * self.phases[inv_perm[j] - 1]) % self.order for j in range(4)
        )
        return PhaseMap(self.order, tuple(inv_perm), phases, self.antilinear)

    def power(self, k: int) -> "PhaseMap":
        if k < 0:
            return self.inverse().power(-k)
        out = PhaseMap.identity()
        for _ in range(k):
            out = out.compose(self)
        return out

    def is_identity(self) -> bool:
        return self == PhaseMap.identity()

    def phase_turn(self, i: int) -> Fraction:
        """The phase on slot i (1-based) as a turn."""
        return Fraction(self.phases[i - 1], self.order)

    def apply_to_vector(self, z: Sequence[Cyc]) -> tuple[Cyc, ...]:
        out = []
        for i in range(4):
            w = z[self.perm[i] - 1]
            if self.antilinear:
                w = w.conjugate()
            out.append(Cyc.unit(Fraction(self.phases[i], self.order)) * w)
        return tuple(out)

    def __repr__(self) -> str:
        kind = "anti" if self.antilinear else ""
        return f"PhaseMap({kind}linear, perm={self.perm}, phases={self.phases}/{self.order})"


# -- pullback of real forms --------------------------------------------------


def pullback(g: PhaseMap, form: MultiForm) -> MultiForm:
    """Pull a real form on R^8 back along the real-linear map underlying g.

    Real coordinates pair as z_k = x_{2k-1} + i x_{2k}.  The computation runs
    through the complex basis: the pullback of dz_i is a root of unity times
    dz or dzbar at the permuted slot, and the real answer is recovered at the
    end (an exception here would indicate an internal bookkeeping bug).
    """
    n = lcm(4, g.order)
    dz, dzbar = _complex_basis_expansions(STANDARD_PAIRING)

    def pull_one(idx: int) -> _ComplexExpansion:
        # idx 1..4 -> dz_idx, 5..8 -> dzbar_{idx-4}
        if idx <= 4:
            u = Cyc.unit(Fraction(g.phases[idx - 1], g.order))
            target = dzbar if g.antilinear else dz
            return _scale(target[g.perm[idx - 1] - 1], u)
        j = idx - 4
        u = Cyc.unit(Fraction(-g.phases[j - 1], g.order))
        target = dz if g.antilinear else dzbar
        return _scale(target[g.perm[j - 1] - 1], u)

    # express each real basis 1-form through the complex ones, pull back, expand
    half = Cyc.rational(Fraction(1, 2))
    i_unit = Cyc.imaginary_unit()
    pulled_dx: dict[int, _ComplexExpansion] = {}
    for k in range(1, 5):
        pz = pull_one(k)
        pzbar = pull_one(k + 4)
        # dx_{2k-1} = (dz_k + dzbar_k)/2 ; dx_{2k} = (dz_k - dzbar_k)/(2i)
        pulled_dx[2 * k - 1] = _combine(pz, pzbar, half, half)
        pulled_dx[2 * k] = _combine(pz, pzbar, -(i_unit * half), i_unit * half)

    total: dict[tuple[int, ...], Cyc] = {}
    for idx, coeff in form.terms.items():
        expansion = _ComplexExpansion(0, {(): Cyc.rational(1)})
        for i in idx:
            expansion = expansion.wedge(pulled_dx[i])
        for t, c in expansion.terms.items():
            total[t] = total.get(t, Cyc.zero()) + Cyc.rational(coeff) * c
    return _ComplexExpansion(form.degree, total).rational_form()


def _scale(form: _ComplexExpansion, c: Cyc) -> _ComplexExpansion:
    return _ComplexExpansion(form.degree, {i: c * v for i, v in form.terms.items()})


def _combine(a: _ComplexExpansion, b: _ComplexExpansion, ca: Cyc, cb: Cyc) -> _ComplexExpansion:
    out = dict(_scale(a, ca).terms)
    for i, v in _scale(b, cb).terms.items():
        out[i] = out.get(i, Cyc.zero()) + v
    return _ComplexExpansion(a.degree, out)


def preserves_form(g: PhaseMap, form: MultiForm) -> bool:
    return pullback(g, form) == form


# -- group closure and freeness ------------------------------------------------


def generate_group(generators: Iterable[PhaseMap], cap: int = 4096) -> list[PhaseMap]:
    """Closure of the generators under composition (breadth-first)."""
    gens = list(generators)
    seen = {PhaseMap.identity()}
    frontier = [PhaseMap.identity()]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = a.compose(g)
                if b not in seen:
                    seen.add(b)
                    new.append(b)
                    if len(seen) > cap:
                        raise RuntimeError(f"group closure exceeded cap {cap}")
        frontier = new
    return sorted(seen, key=lambda m: (m.antilinear, m.perm, m.order, m.phases))


def _perm_cycles(perm: tuple[int, int, int, int]) -> list[list[int]]:
    seen: set[int] = set()
    cycles = []
    for start in range(1, 5):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        nxt = perm[start - 1]
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt - 1]
        cycles.append(cyc)
    return cycles


def fixed_vector(g: PhaseMap) -> tuple[Cyc, ...] | None:
    """A nonzero vector fixed by g, or None when only the origin is fixed.

    Linear case: a cycle of the permutation supports a fixed vector iff the
    phases around the cycle sum to a whole number of turns.  Antilinear case:
    an odd-length cycle always supports one (solve z = u*conj(z) with a square
    root of u); an even cycle does iff the alternating phase sum vanishes.
    """
    if g.is_identity():
        return tuple(Cyc.rational(1) for _ in range(4))
    n = g.order
    for cycle in _perm_cycles(g.perm):
        # phases along the cycle: z_{c_k} = zeta^{e_{c_k}} * (conj?) z_{c_{k+1}}
        e = [g.phases[i - 1] for i in cycle]
        length = len(cycle)
        if not g.antilinear:
            if sum(e) % n:
                continue
            z = [Cyc.zero()] * 4
            val = Cyc.rational(1)
            for k, i in enumerate(cycle):
                z[i - 1] = val
                val = Cyc.unit(Fraction(-e[k], n)) * val
            return tuple(z)
        if length % 2 == 1:
            # consistency phase u = zeta^{alternating sum}; z_{c_1} = sqrt(u)
            alt = sum(((-1) ** k) * e[k] for k in range(length))
            z = [Cyc.zero()] * 4
            val: Cyc = Cyc.unit(Fraction(alt, 2 * n))
            for k, i in enumerate(cycle):
                z[i - 1] = val
                val = (Cyc.unit(Fraction(e[k], n)) * val).conjugate()
                # val now equals conj(zeta^{-e_k} z_{c_k}) = z_{c_{k+1}}
            return tuple(z)
        alt = sum(((-1) ** k) * e[k] for k in range(length))
        if alt % n:
            continue
        z = [Cyc.zero()] * 4
        val = Cyc.rational(1)
        for k, i in enumerate(cycle):
            z[i - 1] = val
            val = (Cyc.unit(Fraction(-e[k], n)) * val).conjugate()
        return tuple(z)
    return None


@dataclass
class FreenessReport:
    free: bool
    group_order: int
    violations: list[tuple[PhaseMap, tuple[Cyc, ...]]]


def acts_freely(elements: Iterable[PhaseMap]) -> FreenessReport:
    """Check that no element except the identity fixes a nonzero vector."""
    elements = list(elements)
    violations = []
    for g in elements:
        if g.is_identity():
            continue
        w = fixed_vector(g)
        if w is not None:
            check = g.apply_to_vector(w)
            if any(not (a - b).is_zero() for a, b in zip(check, w)):
                raise AssertionError("internal error: fixed-vector witness failed verification")
            violations.append((g, w))
    return FreenessReport(not violations, len(elements), violations)


# -- the standard order-8 group and its odd extensions -------------------------


def base_group_generators() -> tuple[PhaseMap, PhaseMap]:
    """Generators of the order-8 monomial group: a quarter-turn scalar and an
    antilinear pair-swap; they satisfy a^4 = b^4 = 1, a^2 = b^2, a b = b a^3."""
    a = PhaseMap.scalar(Fraction(1, 4))
    b = PhaseMap(4, (2, 1, 4, 3), (0, 2, 0, 2), True)
    return a, b


def extended_group_generators(n: int) -> tuple[PhaseMap, PhaseMap, PhaseMap]:
    """Generators of the order-8n extension (n odd): the base group together
    with a scalar of order n acting with opposite turns on the two pairs."""
    if n < 1 or n % 2 == 0:
        raise ValueError("the extension parameter must be odd and positive")
    m = 4 * n
    alpha = PhaseMap(m, (1, 2, 3, 4), (4 % m, (-4) % m, 4 % m, (-4) % m), False)
    beta = PhaseMap.scalar(Fraction(1, 4))
    gamma = PhaseMap(m, (2, 1, 4, 3), (0, 2 * n, 0, 2 * n), True)
    return alpha, beta, gamma


# ---------------------------------------------------------------------------
# differential shapes at half-turn quotient points


class DifferentialShapeError(ValueError):
    """Raised when a map is not an admissible involution differential."""


@dataclass(frozen=True)
class DifferentialClass:
    resolvable: bool
    pfaffian: int
    scalar_powers: tuple[Fraction, Fraction, Fraction, Fraction]

    @property
    def kind(self) -> str:
        return "resolvable" if self.resolvable else "obstructed"


def classify_half_turn_differential(g: PhaseMap) -> DifferentialClass:
    """Classify an antilinear monomial map with g^2 = -1 up to special unitary
    change of coordinates.

    Writing g(z) = M conj(z), the constraints force M to be antisymmetric with
    two 2x2 blocks; volume compatibility pins the Pfaffian of a *normalised*
    representative down to +1 or -1, which is a complete invariant.  Pf = +1
    is the shape whose order-4 extension acts on each resolved direction by a
    quarter turn; Pf = -1 acts by opposite quarter turns on the two blocks and
    obstructs that pattern.

    The lift of an involution through a quarter-turn quotient is only defined
    up to composition with the scalar quarter turn, which flips the raw
    Pfaffian sign; the classification must not depend on that choice.  So the
    map is first normalised by a scalar to put a phase of 1 on the first slot
    (this keeps the square at -1 and picks the same representative out of all
    four lifts), and the Pfaffian of the normalised matrix is the invariant.
    """
    if not g.antilinear:
        raise DifferentialShapeError("differential must be antilinear")
    square = g.compose(g)
    minus_one = PhaseMap.scalar(Fraction(1, 2))
    if square != minus_one:
        if square.is_identity():
            raise DifferentialShapeError(
                "differential squares to +1, so it fixes a real 4-space; "
                "it is not the differential of a free half-turn lift"
            )
        raise DifferentialShapeError("differential must square to -1")
    cycles = _perm_cycles(g.perm)
    if sorted(len(c) for c in cycles) != [2, 2]:
        raise DifferentialShapeError(
            "unrecognised shape: the permutation must be a product of two 2-cycles"
        )
    first_turn = Fraction(g.phases[0], g.order)
    if first_turn:
        g = PhaseMap.scalar(-first_turn).compose(g)
    # entries M[i][pi(i)] = zeta^{e_i}; g^2 = -1 already forces antisymmetry,
    # assert it anyway as a guard against bad canonicalisation
    entries: dict[tuple[int, int], Cyc] = {}
    for i in range(1, 5):
        entries[(i, g.perm[i - 1])] = Cyc.unit(Fraction(g.phases[i - 1], g.order))
    for (i, j), v in list(entries.items()):
        if not (entries[(j, i)] + v).is_zero():
            raise DifferentialShapeError("conjugation matrix is not antisymmetric")
    # Pfaffian of a 4x4 antisymmetric matrix restricted to the block pattern
    pf = Cyc.zero()
    if (1, 2) in entries and (3, 4) in entries:
        pf = entries[(1, 2)] * entries[(3, 4)]
    elif (1, 3) in entries and (2, 4) in entries:
        pf = -(entries[(1, 3)] * entries[(2, 4)])
    elif (1, 4) in entries and (2, 3) in entries:
        pf = entries[(1, 4)] * entries[(2, 3)]
    if pf == Cyc.rational(1):
        sign = 1
    elif pf == Cyc.rational(-1):
        sign = -1
    else:
        raise DifferentialShapeError(
            "volume-incompatible differential: the Pfaffian of the conjugation "
            "matrix must be +1 or -1"
        )
    q = Fraction(1, 4)
    powers = (q, q, q, q) if sign == 1 else (q, q, 3 * q, 3 * q)
    return DifferentialClass(sign == 1, sign, powers)
