"""Line-oriented scenario files describing one pipeline run each.

A scenario bundles the ambient weight system, the defining equations, the
antiholomorphic involution, the surgery steps in order, externally supplied
facts the exact engines cannot derive (each carrying a note explaining where
the number comes from), published values to cross-check against, and the
expected invariants of the glued manifold.

Format by example::

    format: 1
    name: example
    ambient: 1 1 1 1 4 4
    equation: z0^12 + z1^12 + z2^12 + z3^12 + z4^3 + z5^3
    involution:
      pair(0,1; 0,1/2)
      pair(2,3; 0,1/2)
      pair(4,5; 0,0)
    steps:
      seed
      involution-quotient
      glue n=1,1,1
    expect fixed: 3
    expect b2: 0
    expect b3: 0
    expect b4: 2446

Lines are independent; `#` starts a comment.  On `external` and `published`
lines the comment is kept as the note explaining the value, and `external`
lines refuse to parse without one — a number the engines cannot derive must
say where it comes from.  Equation terms are separated by standalone `+`/`-`
tokens; a term is `z<j>^<k>` with an optional `q*`, `i*` or `qi*` coefficient
prefix, or a generic part `Label(z4,z5,z6;real)` written without spaces.
Prefixing a monomial with `~` leaves its coefficient generic: `~z4^3` is
shorthand for a one-variable generic part, and the exponent is checked
against the equation degree.  Involution blocks allow `pair(0,1)` for a plain
swap, `pair(0,1; -)` for the anti-diagonal one (second phase a half turn),
and `conj(5)` for an undressed conjugation.  Multi-line blocks
(`involution:`, `steps:`) hold indented lines.

The step sequence must fit the one shape the pipeline supports: `seed`,
optionally `quotient`, any number of `resolve-locus`, optionally
`blowup-swapped`, then `involution-quotient` and `glue`.
"""

from __future__ import annotations

import importlib.resources
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .exact import Cyc, mod1
from .involution import ConjBlock, Involution, PairBlock
from .variety import Equation, GenericPart, PureTerm, Tower
from .wps import WeightSystem

SCENARIO_ENV = "SPINSEVEN_SCENARIOS"


class ParseError(ValueError):
    def __init__(self, source: str, line: int, message: str):
        super().__init__(f"{source}:{line}: {message}")
        self.source = source
        self.line = line


@dataclass(frozen=True)
class Step:
    kind: str
    params: tuple[tuple[str, str], ...] = ()
    line: int = 0

    def get(self, key: str, default: str | None = None) -> str | None:
        return dict(self.params).get(key, default)


@dataclass(frozen=True)
class External:
    key: str
    value: str
    note: str
    line: int = 0


@dataclass(frozen=True)
class Scenario:
    name: str
    ambient: WeightSystem
    equations: tuple[Equation, ...]
    involution: Involution
    steps: tuple[Step, ...]
    plan: tuple[tuple[int, int], ...] | None = None
    externals: tuple[External, ...] = ()
    published: tuple[tuple[str, int, str], ...] = ()
    expectations: tuple[tuple[str, str], ...] = ()
    source: str = "<string>"

    def tower(self) -> Tower:
        return Tower(self.ambient, self.equations, self.plan)

    def external(self, key: str) -> External | None:
        for ext in self.externals:
            if ext.key == key:
                return ext
        return None

    def externals_for(self, key: str) -> tuple[External, ...]:
        return tuple(ext for ext in self.externals if ext.key == key)

    def expected(self, key: str) -> str | None:
        for k, v in self.expectations:
            if k == key:
                return v
        return None


_STEP_SHAPE = re.compile(
    r"^seed (quotient )?(resolve-locus )*(blowup-swapped )?involution-quotient glue $"
)

_TERM = re.compile(
    r"^(?P<generic>~)?(?:(?P<q>\d+(?:/\d+)?)?(?P<i>i)?\*)?z(?P<var>\d+)\^(?P<exp>\d+)$"
)
_GENERIC = re.compile(
    r"^(?P<label>[A-Za-z]\w*)\((?P<vars>z\d+(?:,z\d+)*)(?:;(?P<flags>[a-z,]+))?\)$"
)
_PAIR = re.compile(r"^pair\((\d+),(\d+)(?:;(-|[^,]+,[^,]+))?\)$")
_CONJ = re.compile(r"^conj\((\d+)(?:;([^,]+))?\)$")


def _fraction(text: str, source: str, line: int) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(source, line, f"bad rational {text!r}") from None


@dataclass(frozen=True)
class _Sugar:
    """A `~z4^3` term: one monomial whose coefficient is left generic."""

    variable: int
    exponent: int


def _parse_term(tok: str, negate: bool, source: str, line: int):
    m = _TERM.match(tok)
    if m:
        var = int(m.group("var"))
        if m.group("generic"):
            if m.group("q") or m.group("i"):
                raise ParseError(
                    source, line, "~ replaces the coefficient; drop the prefix"
                )
            if negate:
                raise ParseError(
                    source, line,
                    "a generic coefficient absorbs its sign; write it with +",
                )
            return _Sugar(var, int(m.group("exp")))
        q = Fraction(m.group("q")) if m.group("q") else Fraction(1)
        if negate:
            q = -q
        coeff = Cyc.rational(q)
        if m.group("i"):
            coeff = coeff * Cyc.imaginary_unit()
        try:
            return PureTerm(var, int(m.group("exp")), coeff)
        except ValueError as exc:
            raise ParseError(source, line, str(exc)) from None
    g = _GENERIC.match(tok)
    if g:
        if negate:
            raise ParseError(
                source, line, "a generic part absorbs its sign; write it with +"
            )
        flags = set((g.group("flags") or "").split(",")) - {""}
        if not flags <= {"real"}:
            raise ParseError(source, line, f"unknown generic flags {sorted(flags)}")
        variables = tuple(int(v[1:]) for v in g.group("vars").split(","))
        return GenericPart(g.group("label"), variables, real="real" in flags)
    raise ParseError(source, line, f"cannot read term {tok!r}")


def _parse_equation(
    body: str, source: str, line: int
) -> tuple[Equation, tuple[_Sugar, ...]]:
    tokens = body.split()
    pure: list[PureTerm] = []
    generic: list[GenericPart] = []
    sugar: list[_Sugar] = []
    negate = False
    expect_term = True
    for tok in tokens:
        if tok in ("+", "-"):
            if expect_term:
                raise ParseError(source, line, "two signs in a row")
            negate = tok == "-"
            expect_term = True
            continue
        if not expect_term:
            raise ParseError(
                source, line, f"missing +/- before {tok!r} (signs need spaces)"
            )
        parsed = _parse_term(tok, negate, source, line)
        if isinstance(parsed, PureTerm):
            pure.append(parsed)
        elif isinstance(parsed, _Sugar):
            if any(s.variable == parsed.variable for s in sugar):
                raise ParseError(
                    source, line, f"two generic terms in z{parsed.variable}"
                )
            sugar.append(parsed)
            generic.append(
                GenericPart(f"c{parsed.variable}", (parsed.variable,), real=False)
            )
        else:
            generic.append(parsed)
        negate = False
        expect_term = False
    if expect_term:
        raise ParseError(source, line, "equation ends with a dangling sign")
    try:
        return Equation(tuple(pure), tuple(generic)), tuple(sugar)
    except ValueError as exc:
        raise ParseError(source, line, str(exc)) from None


def _parse_involution_line(body: str, source: str, line: int):
    compact = body.replace(" ", "")
    m = _PAIR.match(compact)
    if m:
        tail = m.group(3)
        if tail is None:
            phases = (Fraction(0), Fraction(0))
        elif tail == "-":
            # shorthand for the anti-diagonal swap
            phases = (Fraction(0), Fraction(1, 2))
        else:
            p, q = tail.split(",")
            phases = (_fraction(p, source, line), _fraction(q, source, line))
        return PairBlock(
            int(m.group(1)), int(m.group(2)), mod1(phases[0]), mod1(phases[1])
        )
    m = _CONJ.match(compact)
    if m:
        phase = _fraction(m.group(2), source, line) if m.group(2) else Fraction(0)
        return ConjBlock(int(m.group(1)), mod1(phase))
    raise ParseError(source, line, f"cannot read involution block {body!r}")


_STEP_KINDS = {
    "seed", "quotient", "resolve-locus", "blowup-swapped",
    "involution-quotient", "glue",
}


def _parse_step(body: str, source: str, line: int) -> Step:
    parts = body.split()
    kind = parts[0]
    if kind not in _STEP_KINDS:
        raise ParseError(source, line, f"unknown step {kind!r}")
    params = []
    for chunk in parts[1:]:
        if "=" not in chunk:
            raise ParseError(source, line, f"step parameter {chunk!r} needs key=value")
        key, _, value = chunk.partition("=")
        params.append((key, value))
    return Step(kind, tuple(params), line)


def parse_scenario(text: str, source: str = "<string>") -> Scenario:
    name: str | None = None
    fmt: int | None = None
    ambient: WeightSystem | None = None
    equations: list[Equation] = []
    sugar_terms: list[tuple[int, tuple[_Sugar, ...], int]] = []
    plan: tuple[tuple[int, int], ...] | None = None
    blocks: list = []
    steps: list[Step] = []
    externals: list[External] = []
    published: list[tuple[str, int, str]] = []
    expectations: list[tuple[str, str]] = []
    block: str | None = None  # current indented block, if any

    for n, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        note = comment.strip()
        if not body.strip():
            continue
        indented = body[0] in " \t"
        line = body.strip()
        if indented:
            if block == "involution":
                blocks.append(_parse_involution_line(line, source, n))
            elif block == "steps":
                steps.append(_parse_step(line, source, n))
            else:
                raise ParseError(source, n, "indented line outside a block")
            continue
        block = None
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(source, n, f"expected 'key: value', got {line!r}")
        key = key.strip()
        value = value.strip()
        if fmt is None and key != "format":
            raise ParseError(source, n, "the first entry must be 'format: 1'")
        if key == "format":
            if fmt is not None:
                raise ParseError(source, n, "duplicate format line")
            if value != "1":
                raise ParseError(source, n, f"unsupported format {value!r}")
            fmt = 1
        elif key == "name":
            name = value
        elif key == "ambient":
            try:
                ambient = WeightSystem(tuple(int(w) for w in value.split()))
            except ValueError as exc:
                raise ParseError(source, n, str(exc)) from None
        elif key == "equation":
            eq, sugar = _parse_equation(value, source, n)
            equations.append(eq)
            if sugar:
                sugar_terms.append((len(equations) - 1, sugar, n))
        elif key == "plan":
            plan = tuple(
                tuple(int(x) for x in chunk.split(","))  # type: ignore[misc]
                for chunk in value.split()
            )
            if any(len(p) != 2 for p in plan):
                raise ParseError(source, n, "plan entries are index pairs")
        elif key in ("involution", "steps"):
            if value:
                raise ParseError(source, n, f"{key} is a block; put entries below")
            block = key
        elif key.startswith("external "):
            if not note:
                raise ParseError(
                    source, n,
                    "external data needs a provenance note (a trailing # comment "
                    "saying where the value comes from)",
                )
            externals.append(External(key[len("external "):].strip(), value, note, n))
        elif key.startswith("published "):
            try:
                published.append((key[len("published "):].strip(), int(value), note))
            except ValueError:
                raise ParseError(source, n, "published values are integers") from None
        elif key.startswith("expect "):
            expectations.append((key[len("expect "):].strip(), value))
        else:
            raise ParseError(source, n, f"unknown entry {key!r}")

    if ambient is None:
        raise ParseError(source, 0, "missing ambient weights")
    for eq_index, entries, n in sugar_terms:
        try:
            d = equations[eq_index].degree(ambient)
        except ValueError:
            continue  # mixed degrees are reported by the tower check below
        for s in entries:
            if not 0 <= s.variable < len(ambient):
                continue  # likewise out-of-range variables
            if ambient[s.variable] * s.exponent != d:
                raise ParseError(
                    source, n,
                    f"~z{s.variable}^{s.exponent} has degree "
                    f"{ambient[s.variable] * s.exponent}, the equation has {d}",
                )
    if not equations:
        raise ParseError(source, 0, "missing equations")
    if not blocks:
        raise ParseError(source, 0, "missing involution block")
    if not steps:
        raise ParseError(source, 0, "missing steps block")
    shape = " ".join(s.kind for s in steps) + " "
    if not _STEP_SHAPE.match(shape):
        raise ParseError(
            source, steps[0].line,
            f"step sequence {shape.strip()!r} does not fit the pipeline shape "
            "seed [quotient] [resolve-locus ...] [blowup-swapped] "
            "involution-quotient glue",
        )
    try:
        involution = Involution(tuple(blocks))
    except ValueError as exc:
        raise ParseError(source, 0, str(exc)) from None
    if name is None:
        stem = Path(source).stem
        name = stem if stem and stem != "<string>" else "unnamed"
    scenario = Scenario(
        name=name,
        ambient=ambient,
        equations=tuple(equations),
        involution=involution,
        steps=tuple(steps),
        plan=plan,
        externals=tuple(externals),
        published=tuple(published),
        expectations=tuple(expectations),
        source=source,
    )
    problems = scenario.tower().validate() + involution.problems(ambient)
    if problems:
        raise ParseError(source, 0, "; ".join(problems))
    return scenario


def load_scenario(path: str | os.PathLike) -> Scenario:
    p = Path(path)
    return parse_scenario(p.read_text(), str(p))


def scenario_directory() -> Path:
    """The directory scenario files are read from: the bundled collection,
    unless the environment variable names another location."""
    override = os.environ.get(SCENARIO_ENV)
    if override:
        return Path(override)
    return Path(str(importlib.resources.files("spinseven") / "data" / "scenarios"))


def bundled_scenarios() -> dict[str, Scenario]:
    """All scenarios in the active directory, keyed and sorted by name."""
    directory = scenario_directory()
    out = {}
    for path in sorted(directory.glob("*.scn")):
        scn = load_scenario(path)
        if scn.name in out:
            raise ParseError(str(path), 0, f"duplicate scenario name {scn.name!r}")
        out[scn.name] = scn
    return dict(sorted(out.items()))
