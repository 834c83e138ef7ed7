"""Decision drivers for the thickened-surface and ambient-manifold criteria, plus staking."""

from __future__ import annotations

import time
from dataclasses import dataclass, field, fields
from enum import Enum
from itertools import combinations
from typing import Any, Iterator

from .conditions import (
    DEFAULT_BUDGET,
    check_condition_ii,
    check_condition_iii,
    check_condition_iv,
)
from .diagram import Corner, Diagram, ValidationReport, capped_genus, validate_structure
from .primeness import check_reduced, check_weakly_prime
from .regions import trace_regions


class Status(str, Enum):
    TG_HYPERBOLIC = "TG_HYPERBOLIC"
    NOT_TG_HYPERBOLIC = "NOT_TG_HYPERBOLIC"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    UNDECIDED = "UNDECIDED"


class Theorem(str, Enum):
    THICKENED = "THICKENED"
    AMBIENT = "AMBIENT"


PRECONDITIONS = ("connected", "alternating", "has_crossing", "surface_not_disk",
                 "has_boundary", "reduced")


@dataclass(frozen=True)
class AmbientAssertions:
    y_irreducible: bool = False
    y_boundary_irreducible: bool = False
    f_incompressible: bool = False
    f_boundary_incompressible: bool = False
    essential_tori_meet_f: bool = False
    essential_annuli_meet_f: bool = False

    @classmethod
    def all(cls) -> "AmbientAssertions":
        return cls(*([True] * len(fields(cls))))

    @classmethod
    def names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    @classmethod
    def parse(cls, text: str) -> "AmbientAssertions":
        """``all`` or a comma-separated list of flag names."""
        items = [x.strip() for x in text.split(",") if x.strip()]
        if items == ["all"]:
            return cls.all()
        unknown = [x for x in items if x not in cls.names()]
        if unknown:
            raise ValueError(f"unknown ambient assertion(s): {', '.join(unknown)}")
        return cls(**{x: True for x in items})

    @property
    def complete(self) -> bool:
        return all(getattr(self, f) for f in self.names())

    def missing(self) -> list[str]:
        return [f for f in self.names() if not getattr(self, f)]


@dataclass
class ConditionResult:
    passed: bool | None          # None: undecided
    witness: Any = None
    note: str = ""

    def to_json(self):
        w = self.witness
        if hasattr(w, "to_json"):
            w = w.to_json()
        out = {"passed": self.passed, "witness": w}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Verdict:
    status: Status
    theorem: Theorem
    preconditions: dict[str, bool]
    conditions: dict[str, ConditionResult] = field(default_factory=dict)
    validation: ValidationReport | None = None
    reduced_witness: Any = None
    diagnostics: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def failures(self) -> list[str]:
        return [k for k, r in self.conditions.items() if r.passed is False]

    def to_json(self):
        return {
            "status": self.status.value,
            "theorem": self.theorem.value,
            "preconditions": dict(self.preconditions),
            "conditions": {k: r.to_json() for k, r in self.conditions.items()},
            "diagnostics": list(self.diagnostics),
        }


class _Clock:
    def __init__(self, timings):
        self.timings = timings

    def run(self, name, fn, *args, **kw):
        t0 = time.perf_counter()
        out = fn(*args, **kw)
        self.timings[name] = self.timings.get(name, 0.0) + time.perf_counter() - t0
        return out


def _preconditions(d: Diagram, clock: _Clock):
    report = clock.run("validation", validate_structure, d)
    pre = {
        "connected": report.connected,
        "alternating": report.alternating,
        "has_crossing": report.has_crossing,
        "surface_not_disk": not report.surface_is_disk,
        "has_boundary": report.n_boundary >= 1,
        "reduced": False,
    }
    rm = None
    witness = None
    if report.connected:
        rm = clock.run("regions", trace_regions, d)
        witness = clock.run("reduced", check_reduced, d, rm)
        pre["reduced"] = witness is None
    return report, rm, pre, witness


def _condition_i(d, rm, clock) -> ConditionResult:
    w = clock.run("i", check_weakly_prime, d, rm)
    if w is None:
        return ConditionResult(True)
    note = ""
    cut = w.circle.cut_edges
    if cut[0] == cut[1] and len(w.disk_side.crossings_inside) == d.n_crossings:
        note = "circle around part of one edge; the disk side holds every crossing"
    return ConditionResult(False, w, note)


def theorem_thickened_verdict(d: Diagram, budget: int = DEFAULT_BUDGET) -> Verdict:
    timings: dict[str, float] = {}
    clock = _Clock(timings)
    report, rm, pre, rw = _preconditions(d, clock)
    v = Verdict(Status.NOT_APPLICABLE, Theorem.THICKENED, pre, validation=report,
                reduced_witness=rw, diagnostics=list(report.messages), timings=timings)
    if not all(pre.values()):
        return v

    v.conditions["i"] = _condition_i(d, rm, clock)
    r = clock.run("ii", check_condition_ii, rm)
    v.conditions["ii"] = ConditionResult(r is None, r)
    e = clock.run("iii", check_condition_iii, rm)
    v.conditions["iii"] = ConditionResult(
        e is None, e, "self-adjacency" if e is not None and e.self_adjacent else "")
    res = clock.run("iv", check_condition_iv, d, rm, budget)
    if res.exhausted:
        v.conditions["iv"] = ConditionResult(None, None, f"budget of {budget} search nodes exceeded")
    else:
        v.conditions["iv"] = ConditionResult(res.passed, res.witness)

    if v.failures:
        v.status = Status.NOT_TG_HYPERBOLIC
    elif res.exhausted:
        v.status = Status.UNDECIDED
    else:
        v.status = Status.TG_HYPERBOLIC
    return v


def theorem_ambient_verdict(d: Diagram, a: AmbientAssertions) -> Verdict:
    timings: dict[str, float] = {}
    clock = _Clock(timings)
    report, rm, pre, rw = _preconditions(d, clock)
    pre["ambient_assertions"] = a.complete
    v = Verdict(Status.NOT_APPLICABLE, Theorem.AMBIENT, pre, validation=report,
                reduced_witness=rw, diagnostics=list(report.messages), timings=timings)
    if not a.complete:
        v.diagnostics.append("ambient hypotheses not asserted: " + ", ".join(a.missing()))
    if report.connected and report.capped_genus == 0 and report.n_boundary == 2:
        v.diagnostics.append("F is an annulus, which the ambient hypotheses are meant to exclude")
    if not all(pre.values()):
        return v

    v.conditions["i"] = _condition_i(d, rm, clock)
    r = clock.run("ii", check_condition_ii, rm)
    v.conditions["ii"] = ConditionResult(r is None, r)
    v.status = Status.NOT_TG_HYPERBOLIC if v.failures else Status.TG_HYPERBOLIC
    return v


def stake(d: Diagram, poles) -> Diagram:
    """Add one puncture per pole; each pole is a corner ``(crossing, index)``."""
    if d.punctures:
        raise ValueError("staking needs a diagram without punctures")
    return d.with_punctures(tuple(poles))


@dataclass(frozen=True)
class Staking:
    regions: tuple[int, ...]
    poles: tuple[Corner, ...]
    verdict: Verdict = field(compare=False)


def candidate_stakings(d: Diagram, max_poles: int) -> Iterator[tuple[tuple[int, ...], tuple[Corner, ...]]]:
    """Region subsets forming an independent set of the adjacency graph, by size then lexicographically."""
    rm = trace_regions(d)
    adjacent = set()
    for a, b in rm.edge_sides:
        adjacent.add((min(a, b), max(a, b)))
    usable = [r.id for r in rm.regions if (r.id, r.id) not in adjacent]
    sphere = capped_genus(d) == 0
    for size in range(1, max_poles + 1):
        if size == 1 and sphere:
            continue
        for subset in combinations(usable, size):
            if any((x, y) in adjacent for x, y in combinations(subset, 2)):
                continue
            yield subset, tuple(rm.regions[r].corners[0] for r in subset)


def iter_hyperbolic_stakings(d: Diagram, max_poles: int, budget: int = DEFAULT_BUDGET) -> Iterator[Staking]:
    if d.punctures:
        raise ValueError("staking search needs a diagram without punctures")
    for subset, poles in candidate_stakings(d, max_poles):
        v = theorem_thickened_verdict(stake(d, poles), budget)
        if v.status is Status.TG_HYPERBOLIC:
            yield Staking(subset, poles, v)


def find_hyperbolic_staking(d: Diagram, max_poles: int, budget: int = DEFAULT_BUDGET) -> Staking | None:
    return next(iter_hyperbolic_stakings(d, max_poles, budget), None)
