"""Analysis of Competing Hypotheses matrices and their argumentation encoding.

Evidence rows attack the hypotheses they are inconsistent with (``I`` or
``II``).  Hypotheses are mutually exclusive, so every ordered pair of distinct
hypotheses is an attack.  Consistency labels (``C``, ``CC``) carry no edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .framework import ArgumentationError, DungFramework, check_id
from .praf import ProbabilisticFramework, check_probability

CELL_LABELS = ("II", "I", "NA", "C", "CC")
INCONSISTENT = ("I", "II")


@dataclass(frozen=True)
class Hypothesis:
    id: str
    text: str = ""


@dataclass(frozen=True)
class Evidence:
    id: str
    uncertainty: str
    text: str = ""


@dataclass(frozen=True)
class AchMatrix:
    hypotheses: tuple
    evidence: tuple
    cells: Mapping = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))
        object.__setattr__(self, "evidence", tuple(self.evidence))
        if not self.hypotheses:
            raise ArgumentationError("an ACH matrix needs at least one hypothesis")
        seen = set()
        for item in (*self.hypotheses, *self.evidence):
            check_id(item.id)
            if item.id in seen:
                raise ArgumentationError(f"duplicate id {item.id}")
            seen.add(item.id)
        for ev in self.evidence:
            for h in self.hypotheses:
                label = self.cells.get((ev.id, h.id))
                if label is None:
                    raise ArgumentationError(f"missing cell ({ev.id},{h.id})")
                if label not in CELL_LABELS:
                    raise ArgumentationError(f"cell ({ev.id},{h.id}): unknown label {label!r}")
        if len(self.cells) != len(self.evidence) * len(self.hypotheses):
            raise ArgumentationError("cells reference unknown evidence or hypotheses")

    def label(self, evidence_id: str, hypothesis_id: str) -> str:
        return self.cells[(evidence_id, hypothesis_id)]


@dataclass(frozen=True)
class ProbabilityMapping:
    uncertainty_map: Mapping = field(default_factory=lambda: {"certain": 1.0, "likely": 0.65}, hash=False)
    inconsistency_map: Mapping = field(default_factory=lambda: {"I": 0.5, "II": 1.0}, hash=False)

    def __post_init__(self):
        for k, p in self.uncertainty_map.items():
            check_probability(p, f"uncertainty {k}")
        if set(self.inconsistency_map) != set(INCONSISTENT):
            raise ArgumentationError("inconsistency map must give probabilities for exactly I and II")
        for k, p in self.inconsistency_map.items():
            check_probability(p, f"inconsistency {k}")

    @classmethod
    def from_pairs(cls, pairs: Mapping) -> "ProbabilityMapping":
        """Overlay ``label -> p`` pairs on the defaults; I and II go to the inconsistency map."""
        base = cls()
        unc = dict(base.uncertainty_map)
        inc = dict(base.inconsistency_map)
        for k, p in pairs.items():
            (inc if k in INCONSISTENT else unc)[k] = p
        return cls(unc, inc)


def _edges(m: AchMatrix) -> list:
    edges = []
    for ev in m.evidence:
        for h in m.hypotheses:
            if m.label(ev.id, h.id) in INCONSISTENT:
                edges.append((ev.id, h.id))
    for h in m.hypotheses:
        for g in m.hypotheses:
            if h.id != g.id:
                edges.append((h.id, g.id))
    return edges


def ach_to_daf(m: AchMatrix) -> DungFramework:
    args = [ev.id for ev in m.evidence] + [h.id for h in m.hypotheses]
    return DungFramework(frozenset(args), frozenset(_edges(m)))


def ach_to_praf(m: AchMatrix, pm: ProbabilityMapping = None) -> ProbabilisticFramework:
    pm = pm or ProbabilityMapping()
    arg_prob = {}
    for ev in m.evidence:
        if ev.uncertainty not in pm.uncertainty_map:
            raise ArgumentationError(f"evidence {ev.id}: no probability for uncertainty {ev.uncertainty!r}")
        arg_prob[ev.id] = float(pm.uncertainty_map[ev.uncertainty])
    hyp_ids = {h.id for h in m.hypotheses}
    for h in hyp_ids:
        arg_prob[h] = 1.0
    att_prob = {}
    for s, t in _edges(m):
        att_prob[(s, t)] = 1.0 if s in hyp_ids else float(pm.inconsistency_map[m.label(s, t)])
    return ProbabilisticFramework(ach_to_daf(m), arg_prob, att_prob)
