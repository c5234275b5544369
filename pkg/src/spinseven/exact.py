"""Exact arithmetic kernel: rational turns, cyclotomic numbers, lattice congruences.

Everything downstream (form pullbacks, freeness certificates, branched-cover
Euler characteristics, fixed-point enumeration) must be decided exactly, so
this module supplies the three primitives they share:

* *turns* — angles measured in full revolutions, i.e. elements of Q/Z kept as
  `Fraction` values normalised to [0, 1);
* `Cyc` — numbers in a cyclotomic field Q(zeta_N), stored as Fraction
  coefficient vectors reduced modulo the N-th cyclotomic polynomial, which
  makes zero-testing (and therefore cancellation detection) decidable;
* solvers for small integer congruence systems A x = c (mod 1) via Smith
  normal form, and for multiplicative systems prod x_v^{c_v} = q over the
  positive reals via prime-exponent bookkeeping.

No floating point anywhere.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence


def mod1(x: Fraction | int) -> Fraction:
    """Reduce a rational number to the half-open interval [0, 1)."""
    f = Fraction(x)
    return f - (f.numerator // f.denominator)


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else 0


def hcf(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


# ---------------------------------------------------------------------------
# cyclotomic polynomials


_CYCLOTOMIC_CACHE: dict[int, tuple[int, ...]] = {}


def _poly_divide_exact(num: Sequence[int], den: Sequence[int]) -> tuple[int, ...]:
    """Divide two integer polynomials known to divide exactly (low-degree first)."""
    num_l = list(num)
    quot = [0] * (len(num_l) - len(den) + 1)
    for k in range(len(quot) - 1, -1, -1):
        c = num_l[k + len(den) - 1]
        if c % den[-1]:
            raise ArithmeticError("inexact polynomial division")
        q = c // den[-1]
        quot[k] = q
        if q:
            for j, d in enumerate(den):
                num_l[k + j] -= q * d
    if any(num_l):
        raise ArithmeticError("inexact polynomial division")
    return tuple(quot)


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("order must be positive")
    cached = _CYCLOTOMIC_CACHE.get(n)
    if cached is not None:
        return cached
    # x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    poly = [-1] + [0] * (n - 1) + [1]
    result = tuple(poly)
    for d in range(1, n):
        if n % d == 0:
            result = _poly_divide_exact(result, cyclotomic_polynomial(d))
    _CYCLOTOMIC_CACHE[n] = result
    return result


def _reduce_mod_cyclotomic(coeffs: dict[int, Fraction], order: int) -> dict[int, Fraction]:
    """Reduce exponent->coefficient data modulo Phi_order, dropping zeros."""
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    dense = [Fraction(0)] * order
    for e, c in coeffs.items():
        dense[e % order] += c
    # long division by the monic polynomial phi
    for k in range(order - 1, deg - 1, -1):
        c = dense[k]
        if c:
            dense[k] = Fraction(0)
            for j in range(deg):
                dense[k - deg + j] -= c * phi[j]
    return {e: c for e, c in enumerate(dense[:deg]) if c}


class Cyc:
    """An element of the cyclotomic field Q(zeta_N), zeta_N = exp(2*pi*i/N).

    Internally a dict {exponent: Fraction} reduced modulo the N-th cyclotomic
    polynomial, with the order lowered whenever the element actually lives in
    a subfield generated by a power of zeta_N.  Reduction makes equality and
    zero-testing trivially decidable; order-lowering makes values like 1 or i
    compare equal no matter which field they were computed in.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Mapping[int, Fraction], *, _reduced: bool = False):
        if not _reduced:
            coeffs = _reduce_mod_cyclotomic(dict(coeffs), order)
        # descend to the smallest field that contains the value
        order, coeffs = self._descend(order, dict(coeffs))
        self.order = order
        self.coeffs = coeffs

    @staticmethod
    def _descend(order: int, coeffs: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]]:
        while order > 1:
            g = hcf([order] + list(coeffs))
            if g <= 1:
                break
            order //= g
            coeffs = _reduce_mod_cyclotomic(
                {e // g: c for e, c in coeffs.items()}, order
            )
        return order, coeffs

    # -- constructors ------------------------------------------------------

    @classmethod
    def rational(cls, q: Fraction | int) -> "Cyc":
        q = Fraction(q)
        return cls(1, {0: q} if q else {})

    @classmethod
    def unit(cls, turn: Fraction | int) -> "Cyc":
        """exp(2*pi*i*turn) for a rational turn."""
        t = mod1(Fraction(turn))
        return cls(t.denominator, {t.numerator: Fraction(1)})

    @classmethod
    def imaginary_unit(cls) -> "Cyc":
        return cls.unit(Fraction(1, 4))

    @classmethod
    def zero(cls) -> "Cyc":
        return cls(1, {})

    # -- ring structure ----------------------------------------------------

    def _promoted(self, order: int) -> dict[int, Fraction]:
        step = order // self.order
        return {e * step: c for e, c in self.coeffs.items()}

    def __add__(self, other: "Cyc | int | Fraction") -> "Cyc":
        other = _as_cyc(other)
        n = lcm(self.order, other.order)
        a = self._promoted(n)
        for e, c in other._promoted(n).items():
            a[e] = a.get(e, Fraction(0)) + c
        return Cyc(n, a)

    __radd__ = __add__

    def __neg__(self) -> "Cyc":
        return Cyc(self.order, {e: -c for e, c in self.coeffs.items()}, _reduced=True)

    def __sub__(self, other: "Cyc | int | Fraction") -> "Cyc":
        return self + (-_as_cyc(other))

    def __rsub__(self, other: "Cyc | int | Fraction") -> "Cyc":
        return _as_cyc(other) + (-self)

    def __mul__(self, other: "Cyc | int | Fraction") -> "Cyc":
        other = _as_cyc(other)
        n = lcm(self.order, other.order)
        a = self._promoted(n)
        b = other._promoted(n)
        prod: dict[int, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = (e1 + e2) % n
                prod[e] = prod.get(e, Fraction(0)) + c1 * c2
        return Cyc(n, prod)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Cyc":
        if k < 0:
            raise ValueError("negative powers are not needed; conjugate units instead")
        out = Cyc.rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Cyc":
        return Cyc(self.order, {(-e) % self.order: c for e, c in self.coeffs.items()})

    def inverse(self) -> "Cyc":
        """Multiplicative inverse via the Galois norm: the product of all
        conjugates of a nonzero cyclotomic number is a nonzero rational."""
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic division by zero")
        n = self.order
        partial = Cyc.rational(1)
        for k in range(2, n + 1):
            if gcd(k, n) == 1:
                partial = partial * Cyc(
                    n, {(k * e) % n: c for e, c in self.coeffs.items()}
                )
        norm = (self * partial).rational_value()
        if norm is None or norm == 0:
            raise ArithmeticError("norm computation failed")
        return partial * Cyc.rational(Fraction(1) / norm)

    def __truediv__(self, other: "Cyc | int | Fraction") -> "Cyc":
        return self * _as_cyc(other).inverse()

    # -- predicates & views -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def rational_value(self) -> Fraction | None:
        """The value as a Fraction if it is rational, else None."""
        if not self.coeffs:
            return Fraction(0)
        if self.order == 1:
            return self.coeffs[0]
        return None

    def as_unit_multiple(self) -> tuple[Fraction, Fraction] | None:
        """Write the value as q * exp(2*pi*i*t) with q > 0 rational.

        Returns (q, t) with t a turn in [0, 1), or None when the value is zero
        or not of that shape (e.g. 1 + i).
        """
        if self.is_zero():
            return None
        for e in range(self.order):
            q = (self * Cyc.unit(Fraction(-e, self.order))).rational_value()
            if q is None:
                continue
            if q > 0:
                return q, mod1(Fraction(e, self.order))
            return -q, mod1(Fraction(e, self.order) + Fraction(1, 2))
        return None

    def key(self) -> tuple:
        """A hashable canonical key (used for memoisation downstream)."""
        return (self.order, tuple(sorted(self.coeffs.items())))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyc.rational(other)
        if not isinstance(other, Cyc):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        if self.is_zero():
            return "Cyc(0)"
        parts = []
        for e, c in sorted(self.coeffs.items()):
            if e == 0:
                parts.append(str(c))
            else:
                parts.append(f"{c}*z{self.order}^{e}")
        return "Cyc(" + " + ".join(parts) + ")"


def _as_cyc(x: "Cyc | int | Fraction") -> Cyc:
    if isinstance(x, Cyc):
        return x
    return Cyc.rational(x)


def unit_from_turn(turn: Fraction, magnitude: Fraction | int = 1) -> Cyc:
    """Convenience: magnitude * exp(2*pi*i*turn)."""
    return Cyc.rational(magnitude) * Cyc.unit(turn)


# ---------------------------------------------------------------------------
# Smith normal form and congruence systems mod 1


def smith_normal_form(
    matrix: Sequence[Sequence[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (U, D, V) with U*A*V = D diagonal and U, V unimodular."""
    a = [list(row) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i: int, j: int, q: int) -> None:  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i: int, j: int, q: int) -> None:  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def eliminate() -> None:
        t = 0
        while t < m and t < n:
            # find a pivot
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j]:
                        pivot = (i, j)
                        break
                if pivot:
                    break
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            while True:
                # clear column t
                done = True
                for i in range(t + 1, m):
                    if a[i][t]:
                        q = a[i][t] // a[t][t]
                        row_op(i, t, q)
                        if a[i][t]:
                            swap_rows(t, i)
                            done = False
                for j in range(t + 1, n):
                    if a[t][j]:
                        q = a[t][j] // a[t][t]
                        col_op(j, t, q)
                        if a[t][j]:
                            swap_cols(t, j)
                            done = False
                if done:
                    break
            t += 1

    eliminate()
    # diagonal is not enough: enforce the divisibility chain d0 | d1 | ...
    # by folding a violating entry back into the previous column and
    # re-eliminating (the pivot gcds strictly shrink, so this terminates)
    while True:
        bad = None
        for i in range(min(m, n) - 1):
            if a[i][i] and a[i + 1][i + 1] % a[i][i]:
                bad = i
                break
        if bad is None:
            break
        col_op(bad, bad + 1, -1)
        eliminate()
    for i in range(min(m, n)):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]
    return u, a, v


class TurnSolutions:
    """Solution set of an integer congruence system A x = c (mod 1).

    status is one of "empty", "finite", "infinite".  For "finite" the
    `solutions` list holds every solution as a tuple of turns in [0,1),
    sorted, with multiplicity removed.
    """

    def __init__(self, status: str, solutions: list[tuple[Fraction, ...]]):
        self.status = status
        self.solutions = solutions

    def __repr__(self) -> str:
        return f"TurnSolutions({self.status}, {len(self.solutions)} solutions)"


def solve_turn_system(
    rows: Sequence[tuple[Sequence[int], Fraction]], nvars: int
) -> TurnSolutions:
    """Solve A x = c (mod 1) for x in (Q/Z)^nvars, exactly.

    Works by Smith normal form: with U A V = D, substitute x = V y; the
    system splits into independent congruences D_ii y_i = (U c)_i (mod 1).
    A zero row is consistent iff its right-hand side is an integer; a zero
    *column* (rank deficiency) leaves a free circle direction, reported as
    status "infinite".
    """
    if not rows:
        return TurnSolutions("infinite" if nvars else "finite", [tuple()] if not nvars else [])
    matrix = [list(r[0]) for r in rows]
    rhs = [mod1(r[1]) for r in rows]
    u, d, v = smith_normal_form(matrix)
    m = len(matrix)
    uc = [sum(Fraction(u[i][j]) * rhs[j] for j in range(m)) for i in range(m)]
    rank = 0
    while rank < min(m, nvars) and d[rank][rank]:
        rank += 1
    for i in range(rank, m):
        if mod1(uc[i]) != 0:
            return TurnSolutions("empty", [])
    if rank < nvars:
        return TurnSolutions("infinite", [])
    # enumerate y then map back through V
    choices = []
    for i in range(rank):
        s = abs(d[i][i])
        base = uc[i] / d[i][i]
        choices.append([mod1(base + Fraction(t, d[i][i])) for t in range(s)])
    seen = set()
    out = []
    for combo in itertools.product(*choices):
        x = tuple(
            mod1(sum(Fraction(v[i][j]) * combo[j] for j in range(rank)))
            for i in range(nvars)
        )
        if x not in seen:
            seen.add(x)
            out.append(x)
    out.sort()
    return TurnSolutions("finite", out)


# ---------------------------------------------------------------------------
# multiplicative systems over the positive reals


def _prime_exponents(q: Fraction) -> dict[int, int]:
    out: dict[int, int] = {}
    for value, sign in ((q.numerator, 1), (q.denominator, -1)):
        n = value
        p = 2
        while p * p <= n:
            while n % p == 0:
                out[p] = out.get(p, 0) + sign
                n //= p
            p += 1
        if n > 1:
            out[n] = out.get(n, 0) + sign
    return out


def solve_positive_power_system(
    equations: Sequence[tuple[dict[int, int], Fraction]], variables: Sequence[int]
) -> dict[int, dict[int, Fraction]] | None | str:
    """Solve prod_v x_v^{e_v} = q (q > 0 rational) for positive reals x_v.

    Solutions are sought in the multiplicative group generated by rational
    prime powers, i.e. each x_v = prod_p p^{y_{v,p}} with rational y.  Writing
    the system additively in the y's gives one rational linear system per
    prime, all sharing the coefficient matrix.  Returns {var: {prime: exp}}
    on success (only nonzero exponents kept), None when inconsistent, or the
    string "free" when the solution is not unique (positive-dimensional
    family).
    """
    var_index = {v: i for i, v in enumerate(variables)}
    nv = len(variables)
    matrix = []
    rhs_primes: dict[int, list[Fraction]] = {}
    for k, (coeffs, q) in enumerate(equations):
        if q <= 0:
            return None
        row = [Fraction(0)] * nv
        for v, e in coeffs.items():
            row[var_index[v]] += e
        matrix.append(row)
        for p, e in _prime_exponents(q).items():
            rhs_primes.setdefault(p, [Fraction(0)] * len(equations))
            rhs_primes[p][k] = Fraction(e)
    for p in rhs_primes:
        while len(rhs_primes[p]) < len(equations):
            rhs_primes[p].append(Fraction(0))
    # Gaussian elimination with the same matrix for all prime right-hand sides.
    primes = sorted(rhs_primes)
    aug = [row[:] + [rhs_primes[p][i] for p in primes] for i, row in enumerate(matrix)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(nv):
        piv = next((i for i in range(r, len(aug)) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        scale = aug[r][col]
        aug[r] = [x / scale for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append((r, col))
        r += 1
    for i in range(r, len(aug)):
        if any(aug[i][nv:]):
            return None
    if len(pivots) < nv:
        return "free"
    solution: dict[int, dict[int, Fraction]] = {}
    for row, col in pivots:
        exps = {p: aug[row][nv + k] for k, p in enumerate(primes) if aug[row][nv + k]}
        if exps:
            solution[variables[col]] = exps
    return solution


def positive_power_value(exps: dict[int, Fraction]) -> str:
    """Human-readable rendering of prod p^{e_p}, e.g. '2^(1/3)*3'."""
    if not exps:
        return "1"
    parts = []
    for p in sorted(exps):
        e = exps[p]
        if e == 1:
            parts.append(str(p))
        elif e.denominator == 1:
            parts.append(f"{p}^{e.numerator}")
        else:
            parts.append(f"{p}^({e})")
    return "*".join(parts)
