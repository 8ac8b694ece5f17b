"""Command-line entry point.

Canonical utility/difference pairings: daf-target-output or praf-target-output
with signed, daf-maximising-change or praf-maximising-change with absolute,
praf-entropy with signed, praf-probability with kl.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .ach import ProbabilityMapping, ach_to_daf, ach_to_praf
from .framework import ArgumentationError, DungFramework, Inference, Semantics, accepted_arguments
from .formats import Report, candidate_label, parse_ach_csv, parse_bundle, parse_framework, render_report, serialize_framework
from .praf import (
    DEFAULT_EXACT_LIMIT,
    MonteCarloConfig,
    ProbabilisticFramework,
    acceptance_probabilities_exact,
    acceptance_probabilities_mc,
)
from .voi import (
    DifferenceKind,
    Evaluator,
    Objective,
    UtilityKind,
    rank_observed,
    rank_single_attacks,
    value_of_observation,
    value_of_observed,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _id_list(text: str) -> list:
    return [t.strip() for t in text.split(",") if t.strip()]


def _probability(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a probability: {text!r}")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--semantics", choices=[s.value for s in Semantics], default=Semantics.GROUNDED.value)
    p.add_argument("--inference", choices=[i.value for i in Inference], default=Inference.SCEPTICAL.value)
    p.add_argument("--method", choices=["exact", "mc"], default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--exact-limit", type=int, default=DEFAULT_EXACT_LIMIT)
    p.add_argument("-o", "--output", default="-", help="output path, '-' for stdout")


def _add_objective(p: argparse.ArgumentParser) -> None:
    p.add_argument("--objective", required=True, help="comma-separated objective arguments")
    p.add_argument("--target", default=None, help="comma-separated target subset")
    p.add_argument("--utility", required=True, choices=[u.value for u in UtilityKind])
    p.add_argument("--difference", required=True, choices=[d.value for d in DifferenceKind])


def _add_rank_attacks(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rank-attacks", action="store_true")
    p.add_argument("--new-arg-prob", type=_probability, default=1.0)
    p.add_argument("--attack-prob", type=_probability, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="argvoi", description="Argumentation evaluation and value of information.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evaluate", help="acceptance of every argument")
    p.add_argument("framework")
    _add_common(p)

    p = sub.add_parser("voi-observed", help="value of removing existing arguments")
    p.add_argument("framework")
    _add_common(p)
    _add_objective(p)
    p.add_argument("--remove", default=None, help="comma-separated arguments to remove")
    p.add_argument("--rank", action="store_true")
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--allow-objective-removal", action="store_true")

    p = sub.add_parser("voi-observation", help="value of adding new arguments and attacks")
    p.add_argument("framework")
    _add_common(p)
    _add_objective(p)
    p.add_argument("--bundle", default=None, help="framework-document fragment with new arg/att lines")
    _add_rank_attacks(p)

    p = sub.add_parser("voi-rank", help="rank removal subsets or single-attack bundles")
    p.add_argument("framework")
    _add_common(p)
    _add_objective(p)
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--allow-objective-removal", action="store_true")
    _add_rank_attacks(p)

    p = sub.add_parser("ach-convert", help="translate an ACH CSV into a framework document")
    p.add_argument("csv")
    p.add_argument("--mapping", default=None, help="e.g. certain=1.0,likely=0.65,I=0.5,II=1.0")
    p.add_argument("--daf", action="store_true", help="emit the Dung framework without probabilities")
    p.add_argument("-o", "--output", default="-")
    return parser


def _evaluator(ns) -> Evaluator:
    if ns.method != "mc":
        if ns.samples is not None or ns.seed is not None:
            raise UsageError("--samples/--seed require --method mc")
        return Evaluator(exact_limit=ns.exact_limit)
    try:
        return Evaluator(mc=MonteCarloConfig(ns.samples if ns.samples is not None else 10_000,
                                             ns.seed if ns.seed is not None else 0),
                         exact_limit=ns.exact_limit)
    except ArgumentationError as exc:
        raise UsageError(str(exc))


def _method_fields(fw, ev: Evaluator) -> dict:
    if not isinstance(fw, ProbabilisticFramework):
        return {}
    if ev.mc is None:
        return {"method": "exact"}
    return {"method": "monte-carlo", "samples": ev.mc.samples, "seed": ev.mc.seed}


def _kind(fw) -> str:
    return "praf" if isinstance(fw, ProbabilisticFramework) else "daf"


def _objective(ns) -> Objective:
    return Objective(
        extension=_id_list(ns.objective),
        utility=ns.utility,
        difference=ns.difference,
        target=_id_list(ns.target) if ns.target is not None else None,
        semantics=ns.semantics,
        inference=ns.inference,
    )


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ArgumentationError(f"cannot read {path}: {exc.strerror}")


def _base_report(ns, fw, ev, **extra) -> Report:
    return Report(command=ns.command, framework=_kind(fw), semantics=ns.semantics,
                  inference=ns.inference, **_method_fields(fw, ev), **extra)


def _objective_fields(obj: Objective) -> dict:
    return dict(objective=obj.extension, target=obj.target, utility=obj.utility.value,
                difference=obj.difference.value)


def cmd_evaluate(ns) -> str:
    ev = _evaluator(ns)
    fw = parse_framework(_read_text(ns.framework))
    if isinstance(fw, DungFramework):
        return render_report(_base_report(ns, fw, ev, accepted=accepted_arguments(fw, ns.semantics, ns.inference)))
    if ev.mc is not None:
        res = acceptance_probabilities_mc(fw, ns.semantics, ns.inference, ev.mc)
    else:
        res = acceptance_probabilities_exact(fw, ns.semantics, ns.inference, ev.exact_limit)
    return render_report(_base_report(ns, fw, ev, probabilities=dict(res.per_argument),
                                      std_error=dict(res.std_error) if res.std_error else None))


def _rank_observed_report(ns, fw, ev, obj) -> str:
    if ns.max_size is None:
        raise UsageError("ranking removals needs --max-size")
    ranking = rank_observed(fw, obj, ns.max_size, allow_objective=ns.allow_objective_removal, evaluator=ev)
    return render_report(_base_report(ns, fw, ev, **_objective_fields(obj), ranking=ranking))


def _rank_attacks_report(ns, fw, ev, obj) -> str:
    ranking = rank_single_attacks(fw, obj, ns.new_arg_prob, ns.attack_prob, evaluator=ev)
    return render_report(_base_report(ns, fw, ev, **_objective_fields(obj), ranking=ranking))


def cmd_voi_observed(ns) -> str:
    ev = _evaluator(ns)
    if (ns.remove is None) == (not ns.rank):
        raise UsageError("give exactly one of --remove or --rank")
    if ns.remove is not None and ns.max_size is not None:
        raise UsageError("--max-size only applies with --rank")
    obj = _objective(ns)
    fw = parse_framework(_read_text(ns.framework))
    if ns.rank:
        return _rank_observed_report(ns, fw, ev, obj)
    alpha = frozenset(_id_list(ns.remove))
    v = value_of_observed(fw, obj, alpha, allow_objective=ns.allow_objective_removal, evaluator=ev)
    return render_report(_base_report(ns, fw, ev, **_objective_fields(obj),
                                      candidate=candidate_label(alpha), value=v))


def cmd_voi_observation(ns) -> str:
    ev = _evaluator(ns)
    if (ns.bundle is None) == (not ns.rank_attacks):
        raise UsageError("give exactly one of --bundle or --rank-attacks")
    obj = _objective(ns)
    fw = parse_framework(_read_text(ns.framework))
    if ns.rank_attacks:
        return _rank_attacks_report(ns, fw, ev, obj)
    bundle = parse_bundle(_read_text(ns.bundle), fw)
    v = value_of_observation(fw, obj, bundle, evaluator=ev)
    return render_report(_base_report(ns, fw, ev, **_objective_fields(obj),
                                      candidate=candidate_label(bundle.arguments), value=v))


def cmd_voi_rank(ns) -> str:
    ev = _evaluator(ns)
    if ns.rank_attacks == (ns.max_size is not None):
        raise UsageError("give exactly one of --rank-attacks or --max-size")
    obj = _objective(ns)
    fw = parse_framework(_read_text(ns.framework))
    if ns.rank_attacks:
        return _rank_attacks_report(ns, fw, ev, obj)
    return _rank_observed_report(ns, fw, ev, obj)


def _parse_mapping(text: Optional[str]) -> ProbabilityMapping:
    if text is None:
        return ProbabilityMapping()
    pairs = {}
    for item in _id_list(text):
        label, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"mapping entry {item!r} is not label=probability")
        try:
            pairs[label.strip()] = float(value)
        except ValueError:
            raise UsageError(f"mapping entry {item!r} has a non-numeric probability")
    return ProbabilityMapping.from_pairs(pairs)


def cmd_ach_convert(ns) -> str:
    pm = _parse_mapping(ns.mapping)
    matrix = parse_ach_csv(_read_text(ns.csv))
    fw = ach_to_daf(matrix) if ns.daf else ach_to_praf(matrix, pm)
    return serialize_framework(fw)


COMMANDS = {
    "evaluate": cmd_evaluate,
    "voi-observed": cmd_voi_observed,
    "voi-observation": cmd_voi_observation,
    "voi-rank": cmd_voi_rank,
    "ach-convert": cmd_ach_convert,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except UsageError as exc:
        print(f"{parser.prog}: usage error: {exc}", file=stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = COMMANDS[ns.command](ns)
    except UsageError as exc:
        print(f"{parser.prog} {ns.command}: usage error: {exc}", file=stderr)
        return 2
    except ArgumentationError as exc:
        print(f"{parser.prog} {ns.command}: error: {exc}", file=stderr)
        return 1
    if ns.output in ("-", "stdout"):
        stdout.write(text)
    else:
        try:
            Path(ns.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"{parser.prog} {ns.command}: error: cannot write {ns.output}: {exc.strerror}", file=stderr)
            return 1
    return 0


def main() -> None:
    sys.exit(run())
