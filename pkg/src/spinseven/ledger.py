"""Betti-number bookkeeping along the resolution/quotient/gluing pipeline.

A pipeline run carries a compact complex 4-orbifold through a fixed sequence
of surgeries: quotient by a holomorphic half-turn, crepant resolution of a
singular locus, blow-up of exceptional point pairs, quotient by an
antiholomorphic involution, and finally the replacement of isolated quartic
scalar singularities by asymptotically locally Euclidean pieces.  Each step
has an exact effect on the Euler characteristic and Betti numbers; this
module records those effects and nothing else.  Geometry (which locus, how
many fixed points, which transverse model) is resolved by the callers and
passed in as numbers.

Degree-2 classes are tracked one by one, annotated with how each will behave
under the eventual antiholomorphic quotient: the hyperplane class and the
classes introduced by crepant resolution of an invariant locus are odd (the
involution reverses their sign), classes of exceptional divisors over swapped
point pairs are exchanged in pairs (each pair contributing one invariant
class), and externally declared even classes survive outright.

Everything is integer arithmetic with hard validation; a step that would
need a non-integer Betti number raises LedgerError rather than rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class LedgerError(ValueError):
    pass


# how a degree-2 class behaves under the antiholomorphic quotient
MINUS = "minus"      # sign-reversed: dies in the quotient
PLUS = "plus"        # invariant: survives
SWAPPED = "swapped"  # exchanged with a partner: one class per pair survives

_PARITIES = (MINUS, PLUS, SWAPPED)


@dataclass(frozen=True)
class H2Class:
    kind: str     # "hyperplane", "locus", "point", ...
    parity: str

    def __post_init__(self) -> None:
        if self.parity not in _PARITIES:
            raise LedgerError(f"unknown parity {self.parity!r}")


@dataclass(frozen=True)
class SpaceState:
    """Rational cohomology summary of a compact 4-orbifold with b1 = 0."""

    chi: int
    b2: int
    b3: int
    b4: int
    h2: tuple[H2Class, ...] = ()

    def __post_init__(self) -> None:
        if min(self.b2, self.b3, self.b4) < 0:
            raise LedgerError("negative Betti number")
        if self.chi != 2 + 2 * self.b2 - 2 * self.b3 + self.b4:
            raise LedgerError(
                f"chi {self.chi} inconsistent with Betti numbers "
                f"(2, {self.b2}, {self.b3}, {self.b4}) under duality"
            )
        if self.h2 and len(self.h2) != self.b2:
            raise LedgerError("h2 annotations do not match b2")

    def betti(self) -> tuple[int, int, int, int, int]:
        return (1, 0, self.b2, self.b3, self.b4)


def lefschetz_seed(chi: int) -> SpaceState:
    """State of a quasi-smooth member of an anticanonical system: below the
    middle degree its cohomology is that of the ambient space, so only the
    middle Betti number carries information and duality fixes it from chi."""
    if chi < 4:
        raise LedgerError(f"chi {chi} is too small for a seed")
    return SpaceState(chi, 1, 0, chi - 4, (H2Class("hyperplane", MINUS),))


def quotient_holomorphic(state: SpaceState, fixed_chi: int) -> SpaceState:
    """Quotient by a holomorphic involution with fixed locus of the given
    Euler characteristic.

    chi is averaged over the two group elements.  Only seed-shaped states
    (b2 = 1, b3 = 0) are supported: there the invariant cohomology below the
    middle is spanned by the hyperplane class, and duality recovers the rest.
    """
    if (state.b2, state.b3) != (1, 0):
        raise LedgerError(
            "holomorphic quotient implemented only for seed-shaped states"
        )
    chi = state.chi + fixed_chi
    if chi % 2:
        raise LedgerError("chi + fixed chi must be even")
    chi //= 2
    return SpaceState(chi, 1, 0, chi - 4, state.h2)


@dataclass(frozen=True)
class TransverseFiber:
    """Exceptional fiber of the crepant resolution of a transverse quotient
    singularity: its Betti numbers in degrees 2 and 4, and its chi."""

    name: str
    turns: tuple[Fraction, ...]
    b2: int
    b4: int
    chi: int


# resolutions of the three transverse models the pipeline meets
FIBER_C2_Z2 = TransverseFiber(
    "c2/z2", (Fraction(1, 2), Fraction(1, 2)), 1, 0, 2
)
FIBER_C3_Z3 = TransverseFiber(
    "c3/z3(1,1,1)", (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)), 1, 1, 3
)
FIBER_C3_Z5 = TransverseFiber(
    "c3/z5(1,1,3)", (Fraction(1, 5), Fraction(1, 5), Fraction(3, 5)), 2, 2, 5
)

KNOWN_FIBERS = (FIBER_C2_Z2, FIBER_C3_Z3, FIBER_C3_Z5)


def infer_fiber(turns) -> TransverseFiber | None:
    """Match the nonzero transverse turns of a singular stratum against the
    known resolution models (order of the turns is immaterial)."""
    key = tuple(sorted(t for t in turns if t))
    for fiber in KNOWN_FIBERS:
        if tuple(sorted(fiber.turns)) == key:
            return fiber
    return None


def locus_betti(dimension: int, chi: int) -> tuple[int, ...]:
    """Betti numbers of a smooth connected locus of complex dimension 1 or 2
    from its Euler characteristic (for surfaces, of the kind met here: simply
    connected with no middle torsion)."""
    if dimension == 1:
        if chi > 2 or chi % 2:
            raise LedgerError(f"chi {chi} is not that of a smooth curve")
        return (1, 2 - chi, 1)
    if dimension == 2:
        if chi < 3:
            raise LedgerError(f"chi {chi} is too small for a surface here")
        return (1, 0, chi - 2, 0, 1)
    raise LedgerError(f"unsupported locus dimension {dimension}")


def resolve_locus(
    state: SpaceState, dimension: int, locus_chi: int, fiber: TransverseFiber
) -> SpaceState:
    """Crepant resolution of a singular locus with the given transverse
    fiber.  The exceptional set fibers over the locus, so each cohomology
    degree gains fiber.b2 copies of the locus two degrees down and fiber.b4
    copies four degrees down; chi gains (fiber.chi - 1) per point of the
    locus.  The new degree-2 classes are locus classes, odd under the
    eventual antiholomorphic involution."""
    lb = locus_betti(dimension, locus_chi)
    get = lambda k: lb[k] if 0 <= k < len(lb) else 0
    new_h2 = state.h2 + tuple(H2Class("locus", MINUS) for _ in range(fiber.b2))
    return SpaceState(
        state.chi + (fiber.chi - 1) * locus_chi,
        state.b2 + fiber.b2 * get(0),
        state.b3 + fiber.b2 * get(1),
        state.b4 + fiber.b2 * get(2) + fiber.b4 * get(0),
        new_h2 if state.h2 else (),
    )


def blowup_swapped_points(state: SpaceState, pairs: int) -> SpaceState:
    """Blow up isolated points that the coming antiholomorphic involution
    exchanges in pairs.  Each point adds one exceptional class in degree 2
    and its dual in degree 4; the classes of a pair are marked swapped."""
    if pairs < 0:
        raise LedgerError("negative number of pairs")
    new_h2 = state.h2 + tuple(H2Class("point", SWAPPED) for _ in range(2 * pairs))
    return SpaceState(
        state.chi + 6 * pairs,
        state.b2 + 2 * pairs,
        state.b3,
        state.b4 + 2 * pairs,
        new_h2 if state.h2 else (),
    )


def quotient_antiholomorphic(state: SpaceState, fixed_points: int) -> SpaceState:
    """Quotient by an antiholomorphic involution whose fixed set consists of
    the given number of isolated points.

    chi averages as usual.  In degree 2 only the even classes and one class
    per swapped pair survive; degree 3 halves (the involution is free on an
    open dense set and acts without invariant classes in odd degree by the
    same dimension count on both eigenspaces); degree 4 is recovered from
    duality.
    """
    if fixed_points < 0:
        raise LedgerError("negative fixed point count")
    if not state.h2:
        raise LedgerError("antiholomorphic quotient needs annotated h2")
    chi = state.chi + fixed_points
    if chi % 2:
        raise LedgerError("chi + fixed points must be even")
    chi //= 2
    swapped = sum(1 for c in state.h2 if c.parity == SWAPPED)
    if swapped % 2:
        raise LedgerError("swapped classes must come in pairs")
    if state.b3 % 2:
        raise LedgerError("degree-3 Betti number must be even")
    swapped_classes = [c for c in state.h2 if c.parity == SWAPPED]
    survivors = tuple(c for c in state.h2 if c.parity == PLUS) + tuple(
        H2Class(c.kind, PLUS) for c in swapped_classes[: swapped // 2]
    )
    b2 = sum(1 for c in state.h2 if c.parity == PLUS) + swapped // 2
    b3 = state.b3 // 2
    b4 = chi - 2 - 2 * b2 + 2 * b3
    if b4 < 0:
        raise LedgerError("negative middle Betti number after quotient")
    if len(survivors) != b2:  # pragma: no cover - internal consistency
        raise LedgerError("h2 survivor bookkeeping out of step")
    return SpaceState(chi, b2, b3, b4, survivors)


def ahat_split(b2: int, b3: int, b4: int) -> tuple[int, int]:
    """Split the middle Betti number of a closed manifold of the kind the
    gluing produces into self-dual and anti-self-dual parts.

    A unit index for the Dirac operator together with the signature theorem
    pins both parts: b4+ - 2*b4- = 25 + b2 - b3 combined with
    b4+ + b4- = b4.  Both must come out as nonnegative integers.
    """
    plus3 = b2 - b3 + 2 * b4 + 25
    minus3 = -b2 + b3 + b4 - 25
    if plus3 % 3 or minus3 % 3:
        raise LedgerError(
            f"betti numbers ({b2}, {b3}, {b4}) admit no integral split"
        )
    plus, minus = plus3 // 3, minus3 // 3
    if plus < 0 or minus < 0:
        raise LedgerError(f"split ({plus}, {minus}) is negative")
    return plus, minus


@dataclass(frozen=True)
class GluedManifold:
    """The closed 8-manifold built by replacing k isolated quartic scalar
    singularities with asymptotically locally Euclidean pieces.  Each piece
    contributes one class in the middle degree (anti-self-dual), so b4 grows
    by k; the split and the moduli dimension follow."""

    chi: int
    b2: int
    b3: int
    b4: int
    b4_plus: int
    b4_minus: int
    pieces: tuple[int, ...]
    fundamental_group: str
    moduli_dimension: int

    def betti(self) -> tuple[int, int, int, int, int]:
        return (1, 0, self.b2, self.b3, self.b4)


def glue_ale(state: SpaceState, pieces: tuple[int, ...] | int) -> GluedManifold:
    """Glue one piece per isolated singular point.  pieces lists the piece
    type at each point: 1 for the simply connected model, 2 for the model
    with a richer asymptotic group; an int means that many points all of
    type 1.  The result is simply connected exactly when some piece has
    type 2; otherwise the fundamental group has order 2."""
    if isinstance(pieces, int):
        pieces = tuple([1] * pieces)
    if any(n not in (1, 2) for n in pieces):
        raise LedgerError("piece types must be 1 or 2")
    k = len(pieces)
    b4 = state.b4 + k
    chi = state.chi + 3 * k
    plus, minus = ahat_split(state.b2, state.b3, b4)
    return GluedManifold(
        chi,
        state.b2,
        state.b3,
        b4,
        plus,
        minus,
        tuple(pieces),
        "Z/2" if all(n == 1 for n in pieces) else "1",
        1 + minus,
    )


def h31_prediction(
    h31_cover: int, b2_cover: int, b2_quotient: int, glued_points: int
) -> int:
    """Predicted anti-self-dual middle Betti number of the glued manifold
    from the complex-structure moduli count of the resolved cover: the
    quotient inherits h31_cover + b2_cover - b2_quotient - 1 anti-self-dual
    classes and each glued piece adds one."""
    return h31_cover + b2_cover - b2_quotient - 1 + glued_points
