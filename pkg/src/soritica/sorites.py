"""Soritical scenarios, constraint checks, schema runners, and reports.

A scenario pairs an indexed series ``a_lo .. a_hi`` with one predicate
backend (sharp cutoff, three-valued penumbra, fuzzy membership,
precisification family, or the nonstandard order-of-magnitude model) and
optional infinitely-large witness indices.  The runners check the three
soritical constraints, the induction and conditional argument schemata,
and the doubling analysis, producing deterministic reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from . import __version__
from .formulas import Atom, Index
from .neutrix import ExternalNumber, classify
from .semantics import HALF, TRUE, FALSE, SuperVerdict, eval_super
from .series import EpsSeries, ParseError, parse_series

__all__ = [
    "Naive",
    "Witness",
    "ClassicalCutoff",
    "KleenePenumbra",
    "FuzzyMembership",
    "Superval",
    "Nonstandard",
    "SoritesScenario",
    "SoritesReport",
    "ChainThroughWitness",
    "BackendUnsupported",
    "ConfigError",
    "DEFAULT_WITNESSES",
    "barnes_check",
    "run_induction",
    "run_conditional",
    "doubling_analysis",
    "run_scenario",
    "load_scenario",
    "scenario_from_dict",
]


class ChainThroughWitness(ValueError):
    """A modus-ponens chain may only be iterated a naive number of times."""


class BackendUnsupported(ValueError):
    pass


class ConfigError(ValueError):
    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer}: {message}")
        self.pointer = pointer
        self.message = message


@dataclass(frozen=True)
class Naive:
    """A plain finite natural: reachable from zero by adding one."""

    value: int


@dataclass(frozen=True)
class Witness:
    """An infinitely large index, given as a series of negative valuation."""

    series: EpsSeries

    def __post_init__(self):
        if not self.series.valuation < 0:
            raise ValueError(f"witness {self.series} is not unlimited")


ModelInteger = Union[Naive, Witness]

DEFAULT_WITNESSES: Tuple[Witness, ...] = (
    Witness(parse_series("e^(-1)")),
    Witness(parse_series("e^(-2)")),
    Witness(parse_series("e^(-1) + 7")),
)


# -- backends --------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalCutoff:
    """Hidden sharp boundary: S(a_n) holds exactly below the cutoff."""

    cutoff: int

    id = "classical_cutoff"

    def truth(self, n: int) -> bool:
        return n < self.cutoff

    def designated_true(self, n: int) -> bool:
        return self.truth(n)

    def designated_false(self, n: int) -> bool:
        return not self.truth(n)

    def describe(self) -> str:
        return f"classical cutoff at {self.cutoff}"


@dataclass(frozen=True)
class KleenePenumbra:
    """Three-valued: true below t1, undefined on t1..t2, false above t2."""

    t1: int
    t2: int

    id = "kleene_penumbra"

    def __post_init__(self):
        if self.t1 > self.t2:
            raise ValueError("penumbra bounds must satisfy t1 <= t2")

    def truth(self, n: int) -> Fraction:
        if n < self.t1:
            return TRUE
        if n <= self.t2:
            return HALF
        return FALSE

    def designated_true(self, n: int) -> bool:
        return self.truth(n) == TRUE

    def designated_false(self, n: int) -> bool:
        return self.truth(n) == FALSE

    def describe(self) -> str:
        return f"three-valued penumbra on {self.t1}..{self.t2}"


@dataclass(frozen=True)
class FuzzyMembership:
    """Piecewise-linear degree function over the index range.

    ``points`` are (index, degree) breakpoints with increasing indices;
    degrees between breakpoints are interpolated exactly.
    """

    points: Tuple[Tuple[int, Fraction], ...]
    threshold: Fraction = Fraction(1)

    id = "fuzzy_membership"

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("need at least two breakpoints")
        indices = [n for n, _ in self.points]
        if indices != sorted(set(indices)):
            raise ValueError("breakpoint indices must be strictly increasing")
        for _, degree in self.points:
            if not 0 <= degree <= 1:
                raise ValueError("degrees must lie in [0, 1]")

    def truth(self, n: int) -> Fraction:
        points = self.points
        if n <= points[0][0]:
            return points[0][1]
        if n >= points[-1][0]:
            return points[-1][1]
        for (x0, y0), (x1, y1) in zip(points, points[1:]):
            if x0 <= n <= x1:
                return y0 + (y1 - y0) * Fraction(n - x0, x1 - x0)
        raise AssertionError("unreachable")

    def designated_true(self, n: int) -> bool:
        return self.truth(n) >= self.threshold

    def designated_false(self, n: int) -> bool:
        return self.truth(n) <= 1 - self.threshold

    def implication(self, n: int) -> Fraction:
        return max(1 - self.truth(n), self.truth(n + 1))

    def describe(self) -> str:
        pts = ", ".join(f"({n}, {d})" for n, d in self.points)
        return f"fuzzy membership through {pts}"


@dataclass(frozen=True)
class Superval:
    """Family of classical cutoff precisifications."""

    cutoffs: Tuple[int, ...]

    id = "superval"

    def __post_init__(self):
        if not self.cutoffs:
            raise ValueError("precisification family must be nonempty")

    def truth(self, n: int) -> SuperVerdict:
        return eval_super(Atom("S", Index(None, n)), self.cutoffs)

    def verdict(self, formula) -> SuperVerdict:
        return eval_super(formula, self.cutoffs)

    def designated_true(self, n: int) -> bool:
        return self.truth(n) is SuperVerdict.SUPERTRUE

    def designated_false(self, n: int) -> bool:
        return self.truth(n) is SuperVerdict.SUPERFALSE

    def describe(self) -> str:
        return f"supervaluation over cutoffs {list(self.cutoffs)}"


@dataclass(frozen=True)
class Nonstandard:
    """Order-of-magnitude predicate: membership in the limited numbers,
    or position below an explicit series bound."""

    bound: Optional[EpsSeries] = None  # None: S(x) iff x is limited

    id = "nonstandard"

    def holds(self, x: EpsSeries) -> bool:
        if self.bound is None:
            return x.is_zero or x.valuation >= 0
        return x < self.bound

    def truth(self, n: int) -> bool:
        return self.holds(EpsSeries.from_rational(n))

    def designated_true(self, n: int) -> bool:
        return self.truth(n)

    def designated_false(self, n: int) -> bool:
        return not self.truth(n)

    def describe(self) -> str:
        if self.bound is None:
            return "nonstandard: S(x) iff x is limited"
        return f"nonstandard cut: S(x) iff x < {self.bound}"


Backend = Union[
    ClassicalCutoff, KleenePenumbra, FuzzyMembership, Superval, Nonstandard
]


@dataclass(frozen=True)
class SoritesScenario:
    name: str
    lo: int
    hi: int
    backend: Backend
    witnesses: Tuple[Witness, ...] = ()
    chain_length: Optional[ModelInteger] = None

    def __post_init__(self):
        if self.lo >= self.hi:
            raise ValueError("range must contain at least two indices")

    def naive_indices(self) -> range:
        return range(self.lo, self.hi + 1)


# -- report fragments ------------------------------------------------------


@dataclass(frozen=True)
class BarnesResult:
    c1: bool
    c2: bool
    c3: bool
    evidence: Tuple[str, ...]

    def all_pass(self) -> bool:
        return self.c1 and self.c2 and self.c3


@dataclass(frozen=True)
class InductionResult:
    basis: bool
    basis_detail: str
    step_holds: bool
    step_counterexample: Optional[int]
    step_detail: str
    witness_details: Tuple[str, ...]


@dataclass(frozen=True)
class ConditionalResult:
    completed: bool
    chain_length: str
    failing_link: Optional[int]
    conclusion: str


@dataclass(frozen=True)
class DoublingResult:
    invariant: bool
    witness: Optional[str]
    detail: str


@dataclass(frozen=True)
class SoritesReport:
    scenario: str
    backend_id: str
    backend_detail: str
    barnes: BarnesResult
    induction: InductionResult
    conditional: Optional[ConditionalResult]
    doubling: Optional[DoublingResult]
    notes: Tuple[str, ...]
    version: str = __version__

    def to_dict(self) -> Dict:
        def fragment(obj):
            if obj is None:
                return None
            return {
                key: (list(v) if isinstance(v, tuple) else v)
                for key, v in vars(obj).items()
            }

        return {
            "scenario": self.scenario,
            "backend": {
                "id": self.backend_id,
                "detail": self.backend_detail,
            },
            "barnes": fragment(self.barnes),
            "induction": fragment(self.induction),
            "conditional": fragment(self.conditional),
            "doubling": fragment(self.doubling),
            "notes": list(self.notes),
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        tick = lambda ok: "PASS" if ok else "FAIL"
        lines = [
            f"scenario: {self.scenario}",
            f"backend: {self.backend_detail}",
            f"tool version: {self.version}",
            "",
            "Barnes constraints:",
            f"  c1 first item designated true   .. {tick(self.barnes.c1)}",
            f"  c2 last item designated false   .. {tick(self.barnes.c2)}",
            f"  c3 no adjacent true->false flip .. {tick(self.barnes.c3)}",
        ]
        for item in self.barnes.evidence:
            lines.append(f"    - {item}")
        ind = self.induction
        lines += [
            "",
            "Induction schema:",
            f"  basis .. {tick(ind.basis)} ({ind.basis_detail})",
            f"  step  .. {tick(ind.step_holds)} ({ind.step_detail})",
        ]
        if ind.step_counterexample is not None:
            lines.append(
                f"    counterexample at n={ind.step_counterexample}"
            )
        for item in ind.witness_details:
            lines.append(f"  witness: {item}")
        if self.conditional is not None:
            cond = self.conditional
            lines += [
                "",
                f"Conditional chain (length {cond.chain_length}):",
                f"  completed .. {tick(cond.completed)}",
            ]
            if cond.failing_link is not None:
                lines.append(
                    f"  first failing link: "
                    f"{cond.failing_link} -> {cond.failing_link + 1}"
                )
            lines.append(f"  conclusion: {cond.conclusion}")
        if self.doubling is not None:
            dbl = self.doubling
            lines += [
                "",
                "Doubling analysis:",
                f"  invariance .. {tick(dbl.invariant)} ({dbl.detail})",
            ]
            if dbl.witness is not None:
                lines.append(f"  witness: {dbl.witness}")
        if self.notes:
            lines.append("")
            lines.append("Notes:")
            for note in self.notes:
                lines.append(f"  - {note}")
        return "\n".join(lines) + "\n"


# -- runners ---------------------------------------------------------------


def barnes_check(scenario: SoritesScenario) -> BarnesResult:
    """The three soritical constraints with concrete evidence."""
    backend = scenario.backend
    evidence: List[str] = []

    c1 = backend.designated_true(scenario.lo)
    evidence.append(f"S(a_{scenario.lo}) designated-true: {c1}")

    if isinstance(backend, Nonstandard) and scenario.witnesses:
        c2 = all(
            not backend.holds(w.series) for w in scenario.witnesses
        )
        witnesses = ", ".join(str(w.series) for w in scenario.witnesses)
        evidence.append(f"~S at witnesses {witnesses}: {c2}")
    else:
        c2 = backend.designated_false(scenario.hi)
        evidence.append(f"S(a_{scenario.hi}) designated-false: {c2}")

    c3 = True
    for n in range(scenario.lo, scenario.hi):
        if backend.designated_true(n) and backend.designated_false(n + 1):
            c3 = False
            evidence.append(
                f"adjacent flip: S(a_{n}) designated-true, "
                f"S(a_{n + 1}) designated-false (witness {n})"
            )
            break
    if c3:
        evidence.append("no adjacent designated-true -> designated-false step")
        if isinstance(backend, Nonstandard) and backend.bound is None:
            evidence.append(
                "no representable adjacent flip: limited + 1 stays limited"
            )
    return BarnesResult(c1, c2, c3, tuple(evidence))


def run_induction(scenario: SoritesScenario) -> InductionResult:
    backend = scenario.backend
    basis = backend.designated_true(scenario.lo)
    witness_details: List[str] = []

    if isinstance(backend, FuzzyMembership):
        basis_degree = backend.truth(scenario.lo)
        min_step = min(
            backend.implication(n)
            for n in range(scenario.lo, scenario.hi)
        )
        return InductionResult(
            basis=basis,
            basis_detail=f"degree of S(a_{scenario.lo}) = {basis_degree}",
            step_holds=min_step >= backend.threshold,
            step_counterexample=None,
            step_detail=f"minimum step-implication degree = {min_step}",
            witness_details=(),
        )

    step_holds = True
    counterexample = None
    for n in range(scenario.lo, scenario.hi):
        step_true = not backend.designated_true(n) or backend.designated_true(
            n + 1
        )
        if isinstance(backend, Superval):
            step_true = (
                backend.verdict(
                    _step_formula(n)
                )
                is SuperVerdict.SUPERTRUE
            )
        if not step_true:
            step_holds = False
            counterexample = n
            break

    if isinstance(backend, Nonstandard):
        for w in scenario.witnesses:
            holds = backend.holds(w.series)
            cls = classify(ExternalNumber.make(w.series))
            witness_details.append(
                f"~S({w.series}): {not holds} "
                f"(classified {cls.value})"
            )
        step_detail = (
            "demonstrated on naive samples "
            f"{scenario.lo}..{scenario.hi}; external induction covers "
            "exactly the naive numbers"
        )
    elif isinstance(backend, Superval):
        step_detail = "step instance supertrue for every sampled n"
        if counterexample is not None:
            step_detail = (
                f"step instance not supertrue at n={counterexample} "
                "(some precisification cuts there)"
            )
    else:
        step_detail = "step designated-true for every sampled n"
        if counterexample is not None:
            step_detail = f"step fails at n={counterexample}"

    return InductionResult(
        basis=basis,
        basis_detail=f"S(a_{scenario.lo}) designated-true: {basis}",
        step_holds=step_holds,
        step_counterexample=counterexample,
        step_detail=step_detail,
        witness_details=tuple(witness_details),
    )


def _step_formula(n: int):
    from .formulas import Implies

    return Implies(Atom("S", Index(None, n)), Atom("S", Index(None, n + 1)))


def run_conditional(
    scenario: SoritesScenario,
    chain_length: Optional[ModelInteger] = None,
) -> ConditionalResult:
    """Apply modus ponens link by link from the first premise."""
    backend = scenario.backend
    length = chain_length if chain_length is not None else scenario.chain_length
    if length is None:
        length = Naive(scenario.hi)
    if isinstance(length, int):
        length = Naive(length)

    if isinstance(length, Witness):
        if isinstance(backend, Nonstandard):
            raise ChainThroughWitness(
                f"chain length {length.series} is not naive: modus ponens "
                "may only be iterated a naive number of times"
            )
        raise ValueError("witness chain lengths apply to the nonstandard backend")

    target = length.value
    if not scenario.lo <= target <= scenario.hi:
        raise ValueError(
            f"chain length {target} outside range "
            f"{scenario.lo}..{scenario.hi}"
        )

    if isinstance(backend, FuzzyMembership):
        final = backend.truth(target)
        min_link = (
            min(
                backend.implication(n)
                for n in range(scenario.lo, target)
            )
            if target > scenario.lo
            else Fraction(1)
        )
        return ConditionalResult(
            completed=True,
            chain_length=str(target),
            failing_link=None,
            conclusion=(
                f"degree of S(a_{target}) = {final}; "
                f"minimum link degree = {min_link}"
            ),
        )

    for n in range(scenario.lo, target):
        link_true = not backend.designated_true(n) or backend.designated_true(
            n + 1
        )
        if isinstance(backend, Superval):
            link_true = (
                backend.verdict(_step_formula(n)) is SuperVerdict.SUPERTRUE
            )
        if not link_true:
            return ConditionalResult(
                completed=False,
                chain_length=str(target),
                failing_link=n,
                conclusion=f"chain stops at link {n} -> {n + 1}",
            )
    designated = backend.designated_true(target)
    return ConditionalResult(
        completed=True,
        chain_length=str(target),
        failing_link=None,
        conclusion=f"S(a_{target}) designated-true: {designated}",
    )


def doubling_analysis(scenario: SoritesScenario) -> DoublingResult:
    """Invariance of the predicate under doubling, for the nonstandard model."""
    backend = scenario.backend
    if not isinstance(backend, Nonstandard):
        raise BackendUnsupported(
            "doubling analysis is defined only for the nonstandard backend"
        )
    samples: List[EpsSeries] = [
        EpsSeries.from_rational(n) for n in scenario.naive_indices()
    ]
    samples.extend(w.series for w in scenario.witnesses)
    if backend.bound is not None:
        samples.append(backend.bound * Fraction(1, 2))
    for x in samples:
        if backend.holds(x) and not backend.holds(x * 2):
            return DoublingResult(
                invariant=False,
                witness=str(x),
                detail=f"S({x}) holds but S({x * 2}) fails",
            )
    return DoublingResult(
        invariant=True,
        witness=None,
        detail="S(x) implies S(2x) on every sample",
    )


def run_scenario(scenario: SoritesScenario) -> SoritesReport:
    backend = scenario.backend
    notes: List[str] = []
    barnes = barnes_check(scenario)
    induction = run_induction(scenario)

    conditional: Optional[ConditionalResult]
    try:
        conditional = run_conditional(scenario)
    except ChainThroughWitness as exc:
        conditional = None
        notes.append(f"conditional chain refused: {exc}")

    doubling: Optional[DoublingResult]
    if isinstance(backend, Nonstandard):
        doubling = doubling_analysis(scenario)
        notes.append(
            "nonstandard step checking is a sampling-based demonstration, "
            "not a proof: external induction is an axiom schema"
        )
    else:
        doubling = None

    return SoritesReport(
        scenario=scenario.name,
        backend_id=backend.id,
        backend_detail=backend.describe(),
        barnes=barnes,
        induction=induction,
        conditional=conditional,
        doubling=doubling,
        notes=tuple(notes),
    )


# -- JSON configuration ----------------------------------------------------


def _require(config: dict, key: str, pointer: str):
    if key not in config:
        raise ConfigError(f"{pointer}/{key}", "missing required field")
    return config[key]


def _parse_backend(raw, pointer: str) -> Backend:
    if not isinstance(raw, dict):
        raise ConfigError(pointer, "backend must be an object")
    backend_type = _require(raw, "type", pointer)
    params = raw.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError(f"{pointer}/params", "params must be an object")
    try:
        if backend_type == "classical_cutoff":
            return ClassicalCutoff(int(_require(params, "cutoff", f"{pointer}/params")))
        if backend_type == "kleene_penumbra":
            return KleenePenumbra(
                int(_require(params, "t1", f"{pointer}/params")),
                int(_require(params, "t2", f"{pointer}/params")),
            )
        if backend_type == "fuzzy_membership":
            points = _require(params, "points", f"{pointer}/params")
            parsed = tuple(
                (int(n), Fraction(str(degree))) for n, degree in points
            )
            threshold = Fraction(str(params.get("threshold", 1)))
            return FuzzyMembership(parsed, threshold)
        if backend_type == "superval":
            cutoffs = _require(params, "cutoffs", f"{pointer}/params")
            return Superval(tuple(int(k) for k in cutoffs))
        if backend_type == "nonstandard":
            threshold = params.get("threshold", "limited")
            if threshold == "limited":
                return Nonstandard(None)
            return Nonstandard(parse_series(str(threshold)))
    except ConfigError:
        raise
    except (ValueError, TypeError, ParseError) as exc:
        raise ConfigError(f"{pointer}/params", str(exc)) from exc
    raise ConfigError(f"{pointer}/type", f"unknown backend type {backend_type!r}")


def scenario_from_dict(config: dict) -> SoritesScenario:
    if not isinstance(config, dict):
        raise ConfigError("", "scenario config must be an object")
    name = _require(config, "name", "")
    raw_range = _require(config, "range", "")
    if (
        not isinstance(raw_range, (list, tuple))
        or len(raw_range) != 2
        or not all(isinstance(v, int) for v in raw_range)
    ):
        raise ConfigError("/range", "range must be [lo, hi] integers")
    backend = _parse_backend(_require(config, "backend", ""), "/backend")

    witnesses: List[Witness] = []
    for i, text in enumerate(config.get("witnesses", [])):
        try:
            witnesses.append(Witness(parse_series(str(text))))
        except (ParseError, ValueError) as exc:
            raise ConfigError(f"/witnesses/{i}", str(exc)) from exc

    chain_length: Optional[ModelInteger] = None
    if "chainLength" in config:
        raw_length = config["chainLength"]
        if isinstance(raw_length, int):
            chain_length = Naive(raw_length)
        else:
            try:
                chain_length = Witness(parse_series(str(raw_length)))
            except (ParseError, ValueError) as exc:
                raise ConfigError("/chainLength", str(exc)) from exc

    try:
        return SoritesScenario(
            name=str(name),
            lo=raw_range[0],
            hi=raw_range[1],
            backend=backend,
            witnesses=tuple(witnesses),
            chain_length=chain_length,
        )
    except ValueError as exc:
        raise ConfigError("/range", str(exc)) from exc


def load_scenario(path) -> SoritesScenario:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            config = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ConfigError("", f"invalid JSON: {exc}") from exc
    return scenario_from_dict(config)
