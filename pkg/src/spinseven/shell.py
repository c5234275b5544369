"""Scenario runner and command line interface.

run_scenario drives a parsed scenario through the pipeline — seed, optional
holomorphic quotient, crepant resolutions, blow-up of swapped point pairs,
antiholomorphic quotient, gluing — cross-checking every step against the
exact engines (Euler characteristics, singular inventory, fixed points).
Declared data that the engines can verify is verified; a contradiction is a
failure, not a warning.  Externally supplied numbers are used only where the
engines genuinely cannot reach (surviving generic parts) and are folded into
the consistency checks everywhere else.

The command line groups the tools:

    analyze     run one scenario and print the full report
    chi         Euler characteristics and singular inventory, from a scenario
                or directly from weights and exponents
    paper-table run all bundled scenarios and tabulate the glued invariants
    enumerate   search weight systems by the singularity type of their
                diagonal anticanonical member
    algebra     structural checks of the local model: the invariant 4-form,
                the monomial symmetry groups, and the half-turn lift classes
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .cayley import (
    CROSS_PAIRING,
    STANDARD_PAIRING,
    PhaseMap,
    acts_freely,
    base_group_generators,
    cayley_form,
    classify_half_turn_differential,
    extended_group_generators,
    generate_group,
    preserves_form,
    su4_induced_form,
)
from .euler import EngineError, chi_fermat_chain
from .involution import (
    fixed_points,
    match_point_orbits,
    normalizes_phase_action,
    preserves_variety,
)
from .ledger import (
    GluedManifold,
    LedgerError,
    SpaceState,
    TransverseFiber,
    blowup_swapped_points,
    glue_ale,
    h31_prediction,
    infer_fiber,
    lefschetz_seed,
    quotient_antiholomorphic,
    quotient_holomorphic,
    resolve_locus,
)
from .scenario import ParseError, Scenario, Step, bundled_scenarios, load_scenario
from .variety import (
    StratumPoint,
    Tower,
    action_equation_turns,
    fermat_equation,
    singular_locus,
    transversality_check,
)
from .wps import PhaseAction, WeightSystem, hypersurface_moduli_dimensions
from .exact import mod1


@dataclass(frozen=True)
class Check:
    key: str
    wanted: str
    got: str

    @property
    def passed(self) -> bool:
        return self.wanted == self.got


@dataclass
class RunResult:
    scenario: Scenario
    glued: GluedManifold | None = None
    seed_chi: int | None = None
    seed_b4: int | None = None
    fixed_count: int | None = None
    checks: list[Check] = field(default_factory=list)
    advisories: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    log: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and all(c.passed for c in self.checks)


@dataclass
class _LocusInfo:
    support: tuple[int, ...]
    dimension: int
    chi: int | None
    fiber: TransverseFiber
    origin: str  # "stratum" or "quotient"


class _Runner:
    def __init__(self, scn: Scenario):
        self.scn = scn
        self.tower: Tower = scn.tower()
        self.weights: WeightSystem = scn.ambient
        self.result = RunResult(scn)
        self.state: SpaceState | None = None
        # singular points destined for gluing, when the engines know them
        self.points: list[StratumPoint] = []
        # externally declared point counts (support, total)
        self.external_points: list[tuple[tuple[int, ...], int]] = []
        self.pending_half_turn: list = []  # records awaiting a quotient step
        self.loci: dict[tuple[int, ...], _LocusInfo] = {}
        self.resolved: list[tuple[int, ...]] = []
        self.blowup_done = False
        # second Betti numbers on both sides of the antiholomorphic quotient,
        # for the complex-moduli crosscheck at the end
        self.b2_before_sigma: int | None = None
        self.b2_after_sigma: int | None = None

    # -- small helpers -------------------------------------------------------

    def fail(self, message: str) -> None:
        self.result.failures.append(message)

    def note(self, message: str) -> None:
        self.result.log.append(message)

    def external_int(self, key: str) -> int | None:
        ext = self.scn.external(key)
        if ext is None:
            return None
        try:
            return int(ext.value)
        except ValueError:
            self.fail(f"external {key} is not an integer: {ext.value!r}")
            return None

    # -- the pipeline ----------------------------------------------------------

    def run(self) -> RunResult:
        self.preflight()
        for step in self.scn.steps:
            if self.result.failures:
                break
            try:
                getattr(self, "step_" + step.kind.replace("-", "_"))(step)
            except LedgerError as exc:
                self.fail(f"{step.kind}: {exc}")
        if not self.result.failures:
            self.evaluate_expectations()
        return self.result

    def preflight(self) -> None:
        scn = self.scn
        problems = self.tower.validate() + scn.involution.problems(self.weights)
        for p in problems:
            self.fail(p)
        if problems:
            return
        trans = transversality_check(self.tower)
        if trans.status == "fail":
            for r in trans.reasons:
                self.fail(r)
            return
        for r in trans.reasons:
            self.note(f"transversality: {r}")
        preservation = preserves_variety(self.tower, scn.involution)
        if preservation.status == "fail":
            for r in preservation.reasons:
                self.fail(f"involution does not preserve the variety: {r}")
            return
        self.note(
            "involution preserves the equations ("
            + ", ".join(f"{i}->{j}" for i, j in preservation.equation_map)
            + f"; status {preservation.status})"
        )
        for r in preservation.reasons:
            self.result.advisories.append(f"preservation: {r}")

    def step_seed(self, step: Step) -> None:
        declared = self.external_int("chi")
        try:
            chi = self.tower.chi()
            if declared is not None and declared != chi:
                self.fail(
                    f"external chi {declared} contradicts the engine value {chi}"
                )
                return
        except EngineError as exc:
            if declared is None:
                self.fail(f"seed: {exc}; an 'external chi' entry is required")
                return
            chi = declared
            self.note(f"seed chi {chi} taken from external data")
        self.state = lefschetz_seed(chi)
        self.result.seed_chi = chi
        self.result.seed_b4 = self.state.b4
        self.note(
            f"seed: chi {chi}, (b2, b3, b4) = "
            f"({self.state.b2}, {self.state.b3}, {self.state.b4})"
        )
        self.check_published("cover-chi", chi)
        self.check_published("cover-b4", self.state.b4)
        self.take_inventory()

    def take_inventory(self) -> None:
        externals = {}
        for ext in self.scn.externals_for("singular-count"):
            spec = dict(
                chunk.partition("=")[::2] for chunk in ext.value.split()
            )
            try:
                support = tuple(sorted(int(x) for x in spec["support"].split(",")))
                externals[support] = int(spec["count"])
            except (KeyError, ValueError):
                self.fail(
                    "external singular-count needs support=i,j,... count=n "
                    f"(got {ext.value!r})"
                )
                return
        for rec in singular_locus(self.tower):
            if rec.absorbed_into is not None:
                self.note(
                    f"singular stratum {rec.support} absorbed into {rec.absorbed_into}"
                )
                continue
            if rec.classification == "z4-scalar-point":
                if rec.needs_external:
                    if rec.support not in externals:
                        self.fail(
                            f"stratum {rec.support} needs an external "
                            "singular-count entry"
                        )
                        return
                    count = externals.pop(rec.support)
                    self.external_points.append((rec.support, count))
                    self.note(
                        f"singular points on {rec.support}: {count} "
                        "quartic scalar points (external)"
                    )
                else:
                    self.points.extend(rec.points or ())
                    self.note(
                        f"singular points on {rec.support}: {rec.count} "
                        "quartic scalar points"
                    )
            elif rec.classification == "half-turn-point":
                self.pending_half_turn.append(rec)
                self.note(
                    f"singular points on {rec.support}: {rec.count} half-turn "
                    "points (need a quotient step)"
                )
            elif rec.classification == "nonisolated":
                turns = tuple(
                    Fraction(r, rec.order)
                    for r in rec.transverse_residues
                    if r % rec.order
                )
                fiber = infer_fiber(turns)
                if fiber is None:
                    self.fail(
                        f"no known transverse model for stratum {rec.support} "
                        f"with turns {turns}"
                    )
                    return
                self.loci[rec.support] = _LocusInfo(
                    rec.support, rec.dimension, None, fiber, "stratum"
                )
                self.note(
                    f"singular locus on {rec.support}: dimension {rec.dimension}, "
                    f"transverse model {fiber.name}"
                )
            else:
                self.fail(
                    f"unsupported singularity on {rec.support} "
                    f"(classified {rec.classification})"
                )
                return
        for support in externals:
            self.fail(
                f"external singular-count for {support} matches no stratum "
                "needing external data"
            )

    def step_quotient(self, step: Step) -> None:
        phases = step.get("phases")
        if phases is None:
            self.fail("quotient step needs phases=t0,t1,...")
            return
        try:
            action = PhaseAction(tuple(Fraction(t) for t in phases.split(",")))
        except (ValueError, ZeroDivisionError):
            self.fail(f"cannot read quotient phases {phases!r}")
            return
        if len(action.turns) != len(self.weights):
            self.fail("quotient phases must list one turn per coordinate")
            return
        if action.projective_order(self.weights) != 2:
            self.fail("the quotient action must have projective order 2")
            return
        if action_equation_turns(self.tower, action.turns) is None:
            self.fail("the quotient action does not preserve the equations")
            return
        if not normalizes_phase_action(self.weights, self.scn.involution, action):
            self.fail("the involution does not descend through the quotient")
            return
        components = action.fixed_components(self.weights)
        live = []
        for support, tau in components:
            chi = self.tower.engine(support).chi_closed_on(support)
            if chi == 0:
                continue
            system = self.tower.pure_system_on(support) or []
            dim = len(support) - 1 - sum(1 for _pos, terms in system if terms)
            live.append((support, tau, chi, dim))
        for (s1, *_), (s2, *_) in zip(live, live[1:]):
            if set(s1) & set(s2):
                self.fail("overlapping fixed components are not supported")
                return
        fixed_chi = 0
        for support, tau, chi, dim in live:
            fixed_chi += chi
            if dim == 0:
                upgraded = [
                    rec for rec in self.pending_half_turn if rec.support == support
                ]
                if not upgraded:
                    self.fail(
                        f"the quotient fixes unexpected points on {support}"
                    )
                    return
                for rec in upgraded:
                    self.pending_half_turn.remove(rec)
                    self.points.extend(rec.points or ())
                    self.note(
                        f"quotient upgrades {rec.count} half-turn points on "
                        f"{support} to quartic scalar points"
                    )
            else:
                turns = tuple(
                    mod1(action.turns[j] - self.weights[j] * tau)
                    for j in range(len(self.weights))
                    if j not in support
                )
                if any(t == 0 for t in turns):
                    self.fail(
                        f"fixed component {support} has a tangent quotient "
                        "direction; not a transverse model"
                    )
                    return
                fiber = infer_fiber(turns)
                if fiber is None:
                    self.fail(
                        f"no known transverse model for the quotient locus "
                        f"{support} with turns {turns}"
                    )
                    return
                self.loci[support] = _LocusInfo(support, dim, chi, fiber, "quotient")
                self.note(
                    f"quotient creates a locus on {support}: dimension {dim}, "
                    f"chi {chi}, transverse model {fiber.name}"
                )
        for rec in self.pending_half_turn:
            self.fail(
                f"half-turn points on {rec.support} are not fixed by the "
                "quotient action; unsupported"
            )
            return
        self.state = quotient_holomorphic(self.state, fixed_chi)
        self.note(
            f"holomorphic quotient: fixed chi {fixed_chi}, now chi "
            f"{self.state.chi}, b4 {self.state.b4}"
        )

    def step_resolve_locus(self, step: Step) -> None:
        raw = step.get("support")
        if raw is None:
            self.fail("resolve-locus needs support=i,j,...")
            return
        support = tuple(sorted(int(x) for x in raw.split(",")))
        info = self.loci.pop(support, None)
        if info is None:
            self.fail(f"no resolvable locus on {support}")
            return
        declared = step.get("fiber")
        if declared is not None and declared != info.fiber.name:
            self.fail(
                f"declared fiber {declared} differs from the inferred "
                f"{info.fiber.name}"
            )
            return
        chi = info.chi
        if chi is None:
            chi = self.tower.engine(support).chi_closed_on(support)
        self.state = resolve_locus(self.state, info.dimension, chi, info.fiber)
        self.resolved.append(support)
        self.note(
            f"resolve locus {support}: chi {chi}, fiber {info.fiber.name}, "
            f"now chi {self.state.chi}, (b2, b3, b4) = "
            f"({self.state.b2}, {self.state.b3}, {self.state.b4})"
        )

    def step_blowup_swapped(self, step: Step) -> None:
        self.blowup_done = True
        pairs = 0
        if self.points:
            orbits = match_point_orbits(
                self.weights, self.scn.involution, self.points
            )
            if orbits.unmatched:
                for reason in orbits.unmatched:
                    self.fail(f"blow-up: {reason}")
                return
            pairs += len(orbits.swapped)
            self.points = list(orbits.fixed)
        external_pairs = self.external_int("swapped-pairs")
        if self.external_points:
            if external_pairs is None:
                self.fail(
                    "blow-up with externally declared points needs an "
                    "'external swapped-pairs' entry"
                )
                return
            pairs += external_pairs
        elif external_pairs:
            self.fail("external swapped-pairs given but no external points exist")
            return
        self.state = blowup_swapped_points(self.state, pairs)
        plural = "pair" if pairs == 1 else "pairs"
        self.note(
            f"blow up {pairs} swapped {plural}: now chi {self.state.chi}, "
            f"(b2, b4) = ({self.state.b2}, {self.state.b4})"
        )

    def step_involution_quotient(self, step: Step) -> None:
        report = fixed_points(self.tower, self.scn.involution)
        for support in self.resolved:
            for p in report.points:
                if set(p.support) <= set(support):
                    self.fail(
                        f"a fixed point on {p.support} lies on the resolved "
                        f"locus {support}"
                    )
                    return
            perm = self.scn.involution.permutation()
            if tuple(sorted(perm[j] for j in support)) != support:
                self.fail(
                    f"the involution moves the resolved locus {support}"
                )
                return
        count = len(self.points)
        if report.is_exact:
            if self.external_points:
                self.fail(
                    "external points declared but the fixed-point engine "
                    "is complete; drop the external entries"
                )
                return
            expect = set(self.points)
            got = set(report.points)
            if not self.blowup_done and got != expect:
                self.fail(
                    "the involution's fixed points do not match the singular "
                    f"points: {sorted(got - expect)} extra, "
                    f"{sorted(expect - got)} missing"
                )
                return
            if self.blowup_done and got != expect:
                self.fail(
                    "after blowing up swapped pairs the remaining singular "
                    "points must be exactly the fixed points"
                )
                return
        else:
            declared_fixed = self.external_int("fixed-count")
            if declared_fixed is None:
                self.fail(
                    "the fixed-point engine is incomplete here "
                    f"({'; '.join(r for _s, r in report.unsupported)}); "
                    "an 'external fixed-count' entry is required"
                )
                return
            covered = [s for s, _t in self.external_points]
            for support, reason in report.unsupported:
                if not any(set(support) <= set(c) for c in covered):
                    self.fail(
                        f"fixed points on {support} are out of reach "
                        f"({reason}) and not covered by external data"
                    )
                    return
            external_total = sum(t for _s, t in self.external_points)
            external_pairs = self.external_int("swapped-pairs") or 0
            consumed = 2 * external_pairs if self.blowup_done else 0
            if declared_fixed + consumed != external_total:
                self.fail(
                    f"external bookkeeping is inconsistent: {declared_fixed} "
                    f"fixed + {consumed} blown up != {external_total} declared"
                )
                return
            for p in report.points:
                if p not in self.points:
                    self.fail(
                        f"engine-found fixed point on {p.support} is not a "
                        "known singular point"
                    )
                    return
            count += declared_fixed
        if self.pending_half_turn:
            self.fail(
                "half-turn singular points remain; the pipeline cannot glue them"
            )
            return
        self.result.fixed_count = count
        self.note(
            f"freeness: the involution is free away from the {count} recorded "
            "singular points"
        )
        self.b2_before_sigma = self.state.b2
        self.state = quotient_antiholomorphic(self.state, count)
        self.b2_after_sigma = self.state.b2
        self.note(
            f"antiholomorphic quotient: {count} fixed points, now chi "
            f"{self.state.chi}, (b2, b3, b4) = "
            f"({self.state.b2}, {self.state.b3}, {self.state.b4})"
        )

    def step_glue(self, step: Step) -> None:
        raw = step.get("n")
        if raw is None:
            self.fail("glue needs n=<piece types>")
            return
        try:
            pieces = tuple(int(x) for x in raw.split(","))
        except ValueError:
            self.fail(f"cannot read glue pieces {raw!r}")
            return
        if len(pieces) != (self.result.fixed_count or 0):
            self.fail(
                f"glue lists {len(pieces)} pieces for "
                f"{self.result.fixed_count} singular points"
            )
            return
        glued = glue_ale(self.state, pieces)
        self.result.glued = glued
        self.note(
            f"glue {len(pieces)} pieces {pieces}: b4 {glued.b4}, split "
            f"({glued.b4_plus}, {glued.b4_minus}), fundamental group "
            f"{glued.fundamental_group}, moduli dimension "
            f"{glued.moduli_dimension}"
        )
        if (
            glued.b4_plus - 2 * glued.b4_minus == 25 + glued.b2 - glued.b3
            and glued.b4_plus + glued.b4_minus == glued.b4
        ):
            self.note("index identity: the middle-degree split is consistent")
        else:
            self.fail("index identity violated by the glued invariants")
        self.h31_crosscheck(glued)

    def h31_crosscheck(self, glued: GluedManifold) -> None:
        """Compare the anti-self-dual middle Betti number against the count
        of complex-structure moduli of the cover.  Only meaningful when the
        cover is a single hypersurface with explicit coefficients and no
        intermediate holomorphic quotient; advisory, not a hard check."""
        scn = self.scn
        if len(scn.equations) != 1 or scn.equations[0].generic:
            return
        if any(s.kind == "quotient" for s in scn.steps):
            return
        if self.b2_before_sigma is None or self.b2_after_sigma is None:
            return
        degree = scn.equations[0].degree(self.weights)
        h31 = hypersurface_moduli_dimensions(self.weights, degree)[2]
        predicted = h31_prediction(
            h31, self.b2_before_sigma, self.b2_after_sigma, len(glued.pieces)
        )
        if predicted == glued.b4_minus:
            self.note(
                f"moduli crosscheck: {h31} hypersurface moduli predict "
                f"b4- = {predicted}, matching"
            )
        else:
            self.result.advisories.append(
                f"moduli crosscheck: {h31} hypersurface moduli predict "
                f"b4- = {predicted}, but the ledger gives {glued.b4_minus}"
            )

    # -- verdicts --------------------------------------------------------------

    def check_published(self, key: str, derived: int) -> None:
        for k, value, note in self.scn.published:
            if k != key:
                continue
            if value != derived:
                extra = f" ({note})" if note else ""
                self.result.advisories.append(
                    f"published {key} = {value} disagrees with the derived "
                    f"value {derived}{extra}"
                )
            else:
                self.note(f"published {key} = {value} confirmed")

    def evaluate_expectations(self) -> None:
        glued = self.result.glued
        values: dict[str, str] = {}
        if self.result.seed_chi is not None:
            values["cover-chi"] = str(self.result.seed_chi)
        if self.result.fixed_count is not None:
            values["fixed"] = str(self.result.fixed_count)
        if glued is not None:
            values.update(
                {
                    "chi": str(glued.chi),
                    "b2": str(glued.b2),
                    "b3": str(glued.b3),
                    "b4": str(glued.b4),
                    "b4+": str(glued.b4_plus),
                    "b4-": str(glued.b4_minus),
                    "moduli": str(glued.moduli_dimension),
                    "pi1": glued.fundamental_group,
                }
            )
        for key, wanted in self.scn.expectations:
            got = values.get(key)
            if got is None:
                self.result.failures.append(f"nothing computes expectation {key!r}")
                continue
            self.result.checks.append(Check(key, wanted, got))


def run_scenario(scn: Scenario) -> RunResult:
    return _Runner(scn).run()


def render_run(result: RunResult, verbose: bool = False) -> str:
    lines = [f"scenario {result.scenario.name}"]
    if verbose or result.failures:
        lines += [f"  | {entry}" for entry in result.log]
    elif result.glued is not None:
        lines += [f"  | {entry}" for entry in result.log[-3:]]
    for adv in result.advisories:
        lines.append(f"  ! {adv}")
    for failure in result.failures:
        lines.append(f"  FAIL {failure}")
    for check in result.checks:
        mark = "ok" if check.passed else "MISMATCH"
        lines.append(f"  check {check.key}: wanted {check.wanted}, got {check.got}: {mark}")
    g = result.glued
    if g is not None:
        lines.append(
            f"  summary: pi1 {g.fundamental_group}, holonomy Spin(7), "
            f"(b2, b3, b4) = ({g.b2}, {g.b3}, {g.b4}), "
            f"moduli {g.moduli_dimension}"
        )
    lines.append(f"  verdict: {'ok' if result.ok else 'FAILED'}")
    return "\n".join(lines)


def render_dump(result: RunResult) -> str:
    """The same verdict as key=value pairs, for scripting against."""
    pairs: list[tuple[str, str]] = [("scenario", result.scenario.name)]
    if result.seed_chi is not None:
        pairs.append(("seed.chi", str(result.seed_chi)))
    if result.seed_b4 is not None:
        pairs.append(("seed.b4", str(result.seed_b4)))
    if result.fixed_count is not None:
        pairs.append(("fixed", str(result.fixed_count)))
    g = result.glued
    if g is not None:
        pairs += [
            ("glued.chi", str(g.chi)),
            ("glued.b2", str(g.b2)),
            ("glued.b3", str(g.b3)),
            ("glued.b4", str(g.b4)),
            ("glued.b4_plus", str(g.b4_plus)),
            ("glued.b4_minus", str(g.b4_minus)),
            ("glued.pi1", g.fundamental_group),
            ("glued.moduli", str(g.moduli_dimension)),
        ]
    for check in result.checks:
        pairs.append((f"check.{check.key}", "ok" if check.passed else "mismatch"))
    for i, adv in enumerate(result.advisories, start=1):
        pairs.append((f"advisory.{i}", adv))
    for i, failure in enumerate(result.failures, start=1):
        pairs.append((f"failure.{i}", failure))
    pairs.append(("verdict", "ok" if result.ok else "failed"))
    return "\n".join(f"{k}={v}" for k, v in pairs)


# ---------------------------------------------------------------------------
# tables


def paper_table(scenarios=None) -> tuple[str, bool]:
    """Run every scenario and tabulate the glued invariants, rows ordered by
    the middle Betti number (ties broken by b3 then b2), which is the order
    the reference table lists them in."""
    if scenarios is None:
        scenarios = bundled_scenarios()
    results = [(name, run_scenario(scn)) for name, scn in sorted(scenarios.items())]

    def row_key(item):
        name, result = item
        g = result.glued
        if g is None:  # failures sink to the bottom
            return (1, 0, 0, 0, name)
        return (0, g.b4, g.b3, g.b2, name)

    header = (
        f"{'scenario':<20} {'b2':>4} {'b3':>4} {'b4':>6} {'b4+':>6} {'b4-':>6} "
        f"{'moduli':>7} {'fixed':>6} {'pi1':>4}  status"
    )
    rows = [header, "-" * len(header)]
    footnotes = []
    all_ok = True
    for name, result in sorted(results, key=row_key):
        all_ok = all_ok and result.ok
        if result.glued is None:
            rows.append(f"{name:<20} {'-':>4} {'-':>4} {'-':>6} "
                        f"{'-':>6} {'-':>6} {'-':>7} {'-':>6} {'-':>4}  FAILED")
            footnotes.extend(f"[{name}] {f}" for f in result.failures)
            continue
        g = result.glued
        mark = "ok" if result.ok else "FAILED"
        if result.advisories:
            mark += " !"
            footnotes.extend(f"[{name}] {a}" for a in result.advisories)
        if not result.ok:
            footnotes.extend(f"[{name}] {f}" for f in result.failures)
            footnotes.extend(
                f"[{name}] {c.key}: wanted {c.wanted}, got {c.got}"
                for c in result.checks
                if not c.passed
            )
        rows.append(
            f"{name:<20} {g.b2:>4} {g.b3:>4} {g.b4:>6} {g.b4_plus:>6} "
            f"{g.b4_minus:>6} {g.moduli_dimension:>7} "
            f"{result.fixed_count:>6} {g.fundamental_group:>4}  {mark}"
        )
    if footnotes:
        rows.append("")
        rows.extend(footnotes)
    return "\n".join(rows), all_ok


@dataclass(frozen=True)
class Candidate:
    weights: tuple[int, ...]
    degree: int
    points: int
    strata: tuple[tuple[tuple[int, ...], str, int | None], ...] = ()


SINGULARITY_FILTERS = ("z4-scalar", "half-turn", "smooth", "any")


def enumerate_candidates(
    max_degree: int = 24,
    length: int = 6,
    singularity: str = "z4-scalar",
    paired: bool = False,
    cap: int = 64,
) -> list[Candidate]:
    """Weight systems whose anticanonical member of the simplest diagonal
    shape passes the requested singularity filter.

    Searched: nondecreasing weight tuples with no common factor, each weight
    dividing the total (so the diagonal member exists and is quasi-smooth),
    total at most max_degree.  The filter keeps systems whose only singular
    strata are isolated quartic scalar points ("z4-scalar"), isolated
    half-turn points ("half-turn", gluable only after a quotient), no strata
    at all ("smooth"), or anything ("any").  `paired` additionally requires
    the weights to come in equal pairs, so a coordinate swap exists.  The
    search space grows quickly, so max_degree is held under a cap; raise the
    cap explicitly for a bigger hunt.
    """
    if max_degree > cap:
        raise ValueError(
            f"degree bound {max_degree} is over the cap {cap}; pass a larger cap"
        )
    if singularity not in SINGULARITY_FILTERS:
        raise ValueError(
            f"unknown filter {singularity!r}; choose from {SINGULARITY_FILTERS}"
        )
    out = []
    for weights in _weight_tuples(max_degree, length):
        d = sum(weights)
        if any(d % a for a in weights):
            continue
        if gcd(*weights) != 1:
            continue
        if paired and any(
            weights[i] != weights[i + 1] for i in range(0, length - 1, 2)
        ):
            continue
        tower = Tower(
            WeightSystem(weights),
            (fermat_equation(tuple(d // a for a in weights)),),
        )
        live = [r for r in singular_locus(tower) if r.absorbed_into is None]
        if singularity == "smooth":
            if live:
                continue
        elif singularity != "any":
            wanted = singularity + "-point"
            if not live:
                continue
            if any(
                r.classification != wanted or r.needs_external for r in live
            ):
                continue
        count = sum(r.count or 0 for r in live)
        strata = tuple((r.support, r.classification, r.count) for r in live)
        out.append(Candidate(weights, d, count, strata))
    return out


def _weight_tuples(max_total: int, length: int, smallest: int = 1):
    if length == 1:
        for a in range(smallest, max_total + 1):
            yield (a,)
        return
    for a in range(smallest, max_total // length + 1):
        for rest in _weight_tuples(max_total - a, length - 1, a):
            yield (a,) + rest


def render_candidates(candidates) -> str:
    lines = [f"{'weights':<24} {'degree':>6} {'points':>7}  strata"]
    lines.append("-" * len(lines[0]))
    for c in candidates:
        w = " ".join(str(a) for a in c.weights)
        if c.strata:
            strata = "; ".join(
                f"{support} {cls}" + (f" x{count}" if count is not None else "")
                for support, cls, count in c.strata
            )
        else:
            strata = "none"
        lines.append(f"{w:<24} {c.degree:>6} {c.points:>7}  {strata}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# the local model


def algebra_report(extension: int = 3, check: str = "all") -> tuple[str, bool]:
    """Structural checks of the flat local model.  `check` selects the
    sections: "forms" for the invariant 4-form, "groups" for the monomial
    symmetry groups and the half-turn lift classes, "all" for both."""
    if check not in ("forms", "groups", "all"):
        raise ValueError(f"unknown check {check!r}; choose forms, groups or all")
    lines = []
    ok = True
    form = cayley_form()
    if check in ("forms", "all"):
        standard = su4_induced_form(STANDARD_PAIRING)
        cross = su4_induced_form(CROSS_PAIRING)
        lines.append(f"invariant 4-form: {len(form.terms)} terms")
        if len(form.terms) != 14 or form != standard or form != cross:
            ok = False
            lines.append("  MISMATCH between coordinate pairings")
        else:
            lines.append("  induced identically by both coordinate pairings")

    if check in ("groups", "all"):
        base = generate_group(base_group_generators())
        free = acts_freely(base)
        forms_ok = all(preserves_form(g, form) for g in base)
        lines.append(
            f"base monomial group: order {len(base)}, "
            f"form {'preserved' if forms_ok else 'NOT preserved'}, "
            f"action {'free' if free.free else 'NOT free'}"
        )
        ok = ok and forms_ok and free.free

        ext = generate_group(extended_group_generators(extension))
        free_e = acts_freely(ext)
        forms_e = all(preserves_form(g, form) for g in ext)
        lines.append(
            f"extended group (parameter {extension}): order {len(ext)}, "
            f"form {'preserved' if forms_e else 'NOT preserved'}, "
            f"action {'free' if free_e.free else 'NOT free'}"
        )
        ok = ok and forms_e and free_e.free and len(ext) == 8 * extension

        lines.append("half-turn lift classes (all four scalar dressings each):")
        for label, phases in (
            ("quarter turns aligned", (0, 2, 0, 2)),
            ("quarter turns opposed", (0, 2, 2, 0)),
        ):
            kinds = set()
            signs = set()
            for s in range(4):
                lift = PhaseMap.scalar(Fraction(s, 4)).compose(
                    PhaseMap(4, (2, 1, 4, 3), phases, True)
                )
                cls = classify_half_turn_differential(lift)
                kinds.add(cls.kind)
                signs.add(cls.pfaffian)
            if len(kinds) != 1 or len(signs) != 1:
                ok = False
                lines.append(
                    f"  {label}: INCONSISTENT across dressings: {sorted(kinds)}"
                )
            else:
                lines.append(f"  {label}: {kinds.pop()} (Pfaffian {signs.pop():+d})")
    return "\n".join(lines), ok


# ---------------------------------------------------------------------------
# command line


def _load(ref: str) -> Scenario:
    if os.sep in ref or ref.endswith(".scn"):
        return load_scenario(ref)
    catalog = bundled_scenarios()
    if ref not in catalog:
        known = ", ".join(catalog)
        raise KeyError(f"unknown scenario {ref!r}; bundled: {known}")
    return catalog[ref]


def _cmd_analyze(args) -> int:
    scn = _load(args.scenario)
    result = run_scenario(scn)
    if args.dump:
        print(render_dump(result))
    else:
        print(render_run(result, verbose=args.verbose))
    return 0 if result.ok else 2


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.replace(",", " ").split())


def _cmd_chi(args) -> int:
    if args.weights or args.exponents:
        if not (args.weights and args.exponents):
            raise ValueError("--weights and --exponents go together")
        if args.scenario:
            raise ValueError("give either a scenario or --weights/--exponents")
        weights = _ints(args.weights)
        chain = chi_fermat_chain(weights, _ints(args.exponents))
        for j, value in enumerate(chain[:-1], start=1):
            print(f"chi restricted to z0..z{j}: {value}")
        print(f"chi: {chain[-1]}")
        return 0
    if not args.scenario:
        raise ValueError("give a scenario name or --weights/--exponents")
    scn = _load(args.scenario)
    tower = scn.tower()
    if args.support:
        support = tuple(sorted(int(x) for x in args.support.split(",")))
        chi = tower.engine(support).chi_closed_on(support)
        print(f"chi of the closed slice on {support}: {chi}")
        return 0
    try:
        print(f"chi: {tower.chi()}")
    except EngineError as exc:
        ext = scn.external("chi")
        if ext is None:
            print(f"chi: not computable ({exc})")
            return 2
        print(f"chi: {ext.value} (external: {ext.note or 'declared'})")
    print("singular strata:")
    for rec in singular_locus(tower):
        bits = [
            f"  {rec.support}: order {rec.order}, dimension {rec.dimension}, "
            f"{rec.classification}"
        ]
        if rec.count is not None:
            bits.append(f", {rec.count} point" + ("s" if rec.count != 1 else ""))
        if rec.needs_external:
            bits.append(", needs external data")
        if rec.absorbed_into is not None:
            bits.append(f", absorbed into {rec.absorbed_into}")
        print("".join(bits))
    return 0


def _cmd_paper_table(args) -> int:
    text, ok = paper_table()
    print(text)
    return 0 if ok else 2


def _cmd_enumerate(args) -> int:
    candidates = enumerate_candidates(
        args.max_d, singularity=args.filter, paired=args.paired, cap=args.cap
    )
    print(render_candidates(candidates))
    return 0


def _cmd_algebra(args) -> int:
    text, ok = algebra_report(args.extension, args.check)
    print(text)
    return 0 if ok else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinseven",
        description="exact pipeline tools for compact Spin(7) constructions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run one scenario and report")
    p.add_argument("scenario", help="bundled scenario name or path to a .scn file")
    p.add_argument("--verbose", action="store_true", help="show the full log")
    p.add_argument(
        "--dump", action="store_true", help="key=value output for scripting"
    )
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("chi", help="Euler characteristics and singular strata")
    p.add_argument("scenario", nargs="?",
                   help="bundled scenario name or path to a .scn file")
    p.add_argument("--weights", help="comma-separated ambient weights")
    p.add_argument("--exponents",
                   help="comma-separated diagonal exponents; prints the "
                        "restriction chain")
    p.add_argument("--support",
                   help="comma-separated coordinate subset (scenario mode)")
    p.set_defaults(func=_cmd_chi)

    p = sub.add_parser("paper-table", help="run all bundled scenarios")
    p.set_defaults(func=_cmd_paper_table)

    p = sub.add_parser("enumerate", help="search candidate weight systems")
    p.add_argument("--max-d", "--max-degree", dest="max_d", type=int, default=24,
                   help="largest total degree to search")
    p.add_argument("--filter", choices=SINGULARITY_FILTERS, default="z4-scalar",
                   help="singularity filter (default z4-scalar)")
    p.add_argument("--paired", action="store_true",
                   help="require the weights to come in equal pairs")
    p.add_argument("--cap", type=int, default=64,
                   help="refuse degree bounds over this")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("algebra", help="local model structure checks")
    p.add_argument("--check", choices=("forms", "groups", "all"), default="all",
                   help="which sections to run")
    p.add_argument("--extension", type=int, default=3, help="odd group parameter")
    p.set_defaults(func=_cmd_algebra)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError, EngineError, LedgerError) as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
