"""Text formats: framework documents, ACH CSV and evaluation reports.

Framework documents hold one directive per line::

    arg(a1).
    arg(a2,0.8).
    att(a1,a2).
    att(a2,a1,0.4).

``#`` starts a comment, blank lines are ignored and an omitted probability
means 1.  Probabilities are plain decimals in (0,1].
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Iterable, Optional, Union

from .ach import CELL_LABELS, AchMatrix, Evidence, Hypothesis
from .framework import ArgumentationError, DungFramework, ObservationBundle
from .praf import ProbabilisticFramework

_ID = r"[A-Za-z0-9_]+"
_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)"
_ARG_RE = re.compile(rf"arg\(({_ID})(?:,({_NUM}))?\)\.\Z")
_ATT_RE = re.compile(rf"att\(({_ID}),({_ID})(?:,({_NUM}))?\)\.\Z")


class FormatError(ArgumentationError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _prob(token: Optional[str], line: int) -> float:
    if token is None:
        return 1.0
    value = Decimal(token)
    if not (0 < value <= 1):
        raise FormatError(f"probability {token} outside (0,1]", line)
    return float(value)


def _directives(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _ARG_RE.match(line)
        if m:
            yield lineno, "arg", (m.group(1),), _prob(m.group(2), lineno)
            continue
        m = _ATT_RE.match(line)
        if m:
            yield lineno, "att", (m.group(1), m.group(2)), _prob(m.group(3), lineno)
            continue
        raise FormatError(f"syntax error: {raw.strip()!r}", lineno)


def _read(text: str, known: frozenset = frozenset()):
    args, atts = {}, {}
    for lineno, kind, ids, p in _directives(text):
        if kind == "arg":
            (a,) = ids
            if a in args or a in known:
                raise FormatError(f"duplicate argument {a}", lineno)
            args[a] = p
        else:
            for end in ids:
                if end not in args and end not in known:
                    raise FormatError(f"attack ({ids[0]},{ids[1]}) before argument {end} is declared", lineno)
            if ids in atts:
                raise FormatError(f"duplicate attack ({ids[0]},{ids[1]})", lineno)
            atts[ids] = p
    return args, atts


def parse_framework(text: str) -> Union[DungFramework, ProbabilisticFramework]:
    """Parse a framework document; any probability below 1 makes it a PrAF."""
    args, atts = _read(text)
    base = DungFramework(frozenset(args), frozenset(atts))
    if all(p == 1.0 for p in (*args.values(), *atts.values())):
        return base
    return ProbabilisticFramework(base, args, atts)


def parse_bundle(text: str, framework) -> ObservationBundle:
    """Parse a fragment of new ``arg``/``att`` lines against an existing framework."""
    args, atts = _read(text, known=frozenset(framework.arguments))
    return ObservationBundle(args, atts)


def format_probability(p: float) -> str:
    return f"{p:.6f}".rstrip("0").rstrip(".")


def serialize_framework(fw: Union[DungFramework, ProbabilisticFramework]) -> str:
    if isinstance(fw, ProbabilisticFramework):
        base, arg_prob, att_prob = fw.base, fw.arg_prob, fw.att_prob
    else:
        base, arg_prob, att_prob = fw, {}, {}
    lines = []
    for a in base.sorted_arguments():
        p = arg_prob.get(a, 1.0)
        lines.append(f"arg({a})." if p == 1.0 else f"arg({a},{format_probability(p)}).")
    for s, t in base.sorted_attacks():
        p = att_prob.get((s, t), 1.0)
        lines.append(f"att({s},{t})." if p == 1.0 else f"att({s},{t},{format_probability(p)}).")
    return "".join(line + "\n" for line in lines)


def parse_ach_csv(text: str) -> AchMatrix:
    rows = [r for r in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in r)]
    if not rows:
        raise FormatError("empty ACH file")
    header = [c.strip() for c in rows[0]]
    if len(header) < 3 or header[0] != "id" or header[1] != "uncertainty":
        raise FormatError("header must be id,uncertainty,<hypothesis ids...>", 1)
    hyp_ids = header[2:]
    evidence, cells = [], {}
    for rowno, row in enumerate(rows[1:], start=2):
        row = [c.strip() for c in row]
        if len(row) != len(header):
            raise FormatError(f"expected {len(header)} fields, got {len(row)}", rowno)
        ev_id, unc = row[0], row[1]
        evidence.append(Evidence(ev_id, unc))
        for h, label in zip(hyp_ids, row[2:]):
            if label not in CELL_LABELS:
                raise FormatError(f"row {ev_id}, column {h}: unknown cell label {label!r}", rowno)
            cells[(ev_id, h)] = label
    return AchMatrix(tuple(Hypothesis(h) for h in hyp_ids), tuple(evidence), cells)


def serialize_ach_csv(m: AchMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "uncertainty", *(h.id for h in m.hypotheses)])
    for ev in m.evidence:
        w.writerow([ev.id, ev.uncertainty, *(m.label(ev.id, h.id) for h in m.hypotheses)])
    return buf.getvalue()


@dataclass
class Report:
    """Everything a CLI command prints; unset fields are left out of the text."""

    command: str
    framework: str
    semantics: str
    inference: str
    method: Optional[str] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    accepted: Optional[Iterable[str]] = None
    probabilities: Optional[dict] = None
    std_error: Optional[dict] = None
    objective: Optional[Iterable[str]] = None
    target: Optional[Iterable[str]] = None
    utility: Optional[str] = None
    difference: Optional[str] = None
    candidate: Optional[str] = None
    value: Optional[float] = None
    ranking: Optional[list] = field(default=None)


def format_value(v: float) -> str:
    if v == math.inf:
        return "inf"
    if v == -math.inf:
        return "-inf"
    if v == 0:
        v = 0.0
    return f"{v:.6f}"


def candidate_label(key) -> str:
    return key if isinstance(key, str) else ",".join(sorted(key))


def render_report(r: Report) -> str:
    out = [f"command: {r.command}", f"framework: {r.framework}",
           f"semantics: {r.semantics}", f"inference: {r.inference}"]
    if r.method is not None:
        out.append(f"method: {r.method}")
    if r.samples is not None:
        out.append(f"samples: {r.samples}")
    if r.seed is not None:
        out.append(f"seed: {r.seed}")
    if r.objective is not None:
        out.append(f"objective: {','.join(sorted(r.objective))}")
    if r.target is not None:
        out.append(f"target: {','.join(sorted(r.target))}")
    if r.utility is not None:
        out.append(f"utility: {r.utility}")
    if r.difference is not None:
        out.append(f"difference: {r.difference}")
    if r.accepted is not None:
        out.append(f"accepted: {','.join(sorted(r.accepted))}")
    if r.probabilities is not None:
        out.append("probabilities:")
        out.extend(f"{a} {format_value(p)}" for a, p in sorted(r.probabilities.items()))
    if r.std_error is not None:
        out.append("std_error:")
        out.extend(f"{a} {format_value(p)}" for a, p in sorted(r.std_error.items()))
    if r.candidate is not None:
        out.append(f"candidate: {r.candidate}")
    if r.value is not None:
        out.append(f"value: {format_value(r.value)}")
    if r.ranking is not None:
        out.append("ranking:")
        out.extend(f"{candidate_label(k)} {format_value(v)}" for k, v in r.ranking)
    return "\n".join(out) + "\n"
