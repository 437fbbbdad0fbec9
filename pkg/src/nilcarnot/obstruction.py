"""Lipschitz-injection / translation-like-action verdicts for pairs of groups."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .carnot import associated_graded
from .growth import homogeneous_dimension
from .iso import DEFAULT_BUDGET, IsoVerdict, iso_verdict
from .lie import LieAlgebra, validate
from .nilgroup import GeneratingSet

OBSTRUCTED = "ObstructedBothDirections"
GROWTH_DIFFERS = "NotApplicable_GrowthDiffers"
CONES_ISOMORPHIC = "NotApplicable_ConesIsomorphic"
INCONCLUSIVE = "Inconclusive_IsoUnknown"


@dataclass(frozen=True)
class NilpotentGroupSpec:
    """A torsion-free nilpotent group given by its rational Lie algebra."""

    name: str
    algebra: LieAlgebra
    generators: GeneratingSet | None = None
    hom: dict | None = field(default=None, compare=False)
    packing: dict | None = field(default=None, compare=False)
    layers: tuple[int, ...] | None = None

    def __post_init__(self):
        report = validate(self.algebra)
        if not report.ok:
            raise ValueError(f"{self.name}: {report.message}")


def conclusion(d_a: int, d_b: int, verdict_kind: str | None) -> str:
    """The verdict as a pure function of the two degrees and the cone verdict."""
    if d_a != d_b:
        return GROWTH_DIFFERS
    return {
        "NonIsomorphic": OBSTRUCTED,
        "Isomorphic": CONES_ISOMORPHIC,
        "Unknown": INCONCLUSIVE,
    }[verdict_kind]


@dataclass(frozen=True)
class ObstructionReport:
    name_a: str
    name_b: str
    d_a: int
    d_b: int
    cone_verdict: IsoVerdict | None
    conclusion: str
    statements: tuple[str, ...]
    blocked: dict | None = None

    def to_dict(self) -> dict:
        return {
            "groups": [self.name_a, self.name_b],
            "d": [self.d_a, self.d_b],
            "cone_verdict": self.cone_verdict.to_dict() if self.cone_verdict else None,
            "conclusion": self.conclusion,
            "blocked": self.blocked,
            "statements": list(self.statements),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [
            f"{self.name_a}: d = {self.d_a}",
            f"{self.name_b}: d = {self.d_b}",
        ]
        if self.cone_verdict is not None:
            lines.append(f"Carnot completions: {self.cone_verdict.kind} ({self.cone_verdict.note})")
        lines.append(f"conclusion: {self.conclusion}")
        lines += [f"  - {s}" for s in self.statements]
        return "\n".join(lines) + "\n"


def obstruction_verdict(
    a: NilpotentGroupSpec, b: NilpotentGroupSpec, budget: int = DEFAULT_BUDGET, seed: int = 0
) -> ObstructionReport:
    d_a, d_b = homogeneous_dimension(a.algebra), homogeneous_dimension(b.algebra)
    if d_a != d_b:
        big, small = (a, b) if d_a > d_b else (b, a)
        statements = (
            f"{big.name} cannot act translation-like on, or Lipschitz-inject into, {small.name}: "
            f"its growth degree {max(d_a, d_b)} exceeds {min(d_a, d_b)}",
            f"whether {small.name} acts translation-like on {big.name} is outside the theorem's scope",
            "the equal-growth theorem does not apply",
        )
        blocked = {"actor": big.name, "acted_on": small.name, "reason": "growth"}
        return ObstructionReport(a.name, b.name, d_a, d_b, None, GROWTH_DIFFERS, statements, blocked)
    verdict = iso_verdict(associated_graded(a.algebra), associated_graded(b.algebra), budget, seed)
    concl = conclusion(d_a, d_b, verdict.kind)
    if concl == OBSTRUCTED:
        statements = (
            f"no Lipschitz injection {a.name} -> {b.name} and none {b.name} -> {a.name}",
            f"neither {a.name} nor {b.name} acts translation-like on the other",
        )
    elif concl == CONES_ISOMORPHIC:
        statements = ("Carnot completions are isomorphic; the theorem gives no obstruction",)
    else:
        statements = ("isomorphism of the Carnot completions is undecided; theorem not applied",)
    return ObstructionReport(a.name, b.name, d_a, d_b, verdict, concl, statements)
