"""Value of observed arguments and of new observations against an objective."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Union

from .framework import (
    ArgumentationError,
    DungFramework,
    Inference,
    ObservationBundle,
    Semantics,
    accepted_arguments,
    extend_framework,
    remove_arguments,
)
from .praf import (
    DEFAULT_EXACT_LIMIT,
    MonteCarloConfig,
    ProbabilisticFramework,
    acceptance_probabilities_exact,
    acceptance_probabilities_mc,
    praf_extend,
    praf_remove_arguments,
)

Framework = Union[DungFramework, ProbabilisticFramework]


class UtilityKind(str, enum.Enum):
    DAF_TARGET_OUTPUT = "daf-target-output"
    DAF_MAXIMISING_CHANGE = "daf-maximising-change"
    PRAF_TARGET_OUTPUT = "praf-target-output"
    PRAF_ENTROPY = "praf-entropy"
    PRAF_MAXIMISING_CHANGE = "praf-maximising-change"
    PRAF_PROBABILITY = "praf-probability"

    @property
    def for_praf(self) -> bool:
        return self.value.startswith("praf-")

    @property
    def needs_target(self) -> bool:
        return self in (UtilityKind.DAF_TARGET_OUTPUT, UtilityKind.PRAF_TARGET_OUTPUT)


class DifferenceKind(str, enum.Enum):
    SIGNED = "signed"
    ABSOLUTE = "absolute"
    KL = "kl"


@dataclass(frozen=True)
class Objective:
    extension: frozenset
    utility: UtilityKind
    difference: DifferenceKind
    target: Optional[frozenset] = None
    semantics: Semantics = Semantics.GROUNDED
    inference: Inference = Inference.SCEPTICAL

    def __post_init__(self):
        object.__setattr__(self, "extension", frozenset(self.extension))
        object.__setattr__(self, "utility", UtilityKind(self.utility))
        object.__setattr__(self, "difference", DifferenceKind(self.difference))
        object.__setattr__(self, "semantics", Semantics(self.semantics))
        object.__setattr__(self, "inference", Inference(self.inference))
        if self.target is not None:
            object.__setattr__(self, "target", frozenset(self.target))
            if not self.target <= self.extension:
                raise ArgumentationError("target must be a subset of the objective extension")
        elif self.utility.needs_target:
            raise ArgumentationError(f"utility {self.utility.value} requires a target set")

    def check_against(self, framework: Framework) -> None:
        missing = self.extension - framework.arguments
        if missing:
            raise ArgumentationError(f"objective arguments not in framework: {', '.join(sorted(missing))}")
        is_praf = isinstance(framework, ProbabilisticFramework)
        if self.utility.for_praf != is_praf:
            kind = "probabilistic" if is_praf else "Dung"
            raise ArgumentationError(f"utility {self.utility.value} does not apply to a {kind} framework")


@dataclass(frozen=True)
class Evaluator:
    """How probabilistic frameworks are evaluated; Dung frameworks ignore it."""

    mc: Optional[MonteCarloConfig] = None
    exact_limit: int = DEFAULT_EXACT_LIMIT

    def __call__(self, framework: Framework, objective: Objective):
        sem, mode = objective.semantics, objective.inference
        if isinstance(framework, DungFramework):
            return accepted_arguments(framework, sem, mode)
        if self.mc is not None:
            return acceptance_probabilities_mc(framework, sem, mode, self.mc).per_argument
        return acceptance_probabilities_exact(framework, sem, mode, self.exact_limit).per_argument


def _plogp(p: float) -> float:
    return 0.0 if p <= 0.0 else p * math.log(p)


def utility(e: str, framework: Framework, objective: Objective, evaluation) -> float:
    """Utility of objective argument ``e`` given an evaluation of ``framework``.

    ``evaluation`` is the accepted set for a Dung framework or the per-argument
    acceptance probabilities for a PrAF.  An argument absent from the
    framework counts as not accepted (probability 0).
    """
    if e not in objective.extension:
        raise ArgumentationError(f"{e} is not an objective argument")
    kind = objective.utility
    if kind.needs_target and objective.target is None:
        raise ArgumentationError(f"utility {kind.value} requires a target set")

    if not kind.for_praf:
        accepted = e in evaluation
        if kind is UtilityKind.DAF_MAXIMISING_CHANGE:
            return float(accepted)
        in_target = e in objective.target
        return float(accepted == in_target)

    p = float(evaluation.get(e, 0.0))
    if kind is UtilityKind.PRAF_TARGET_OUTPUT:
        return p if e in objective.target else 1.0 - p
    if kind is UtilityKind.PRAF_ENTROPY:
        return _plogp(p) + _plogp(1.0 - p)
    return p


def _kl_term(x: float, y: float) -> float:
    if x == 0.0:
        return 0.0
    if y == 0.0:
        return math.inf
    return x * math.log(x / y)


def difference(kind: DifferenceKind, x: float, y: float) -> float:
    kind = DifferenceKind(kind)
    if kind is DifferenceKind.SIGNED:
        return x - y
    if kind is DifferenceKind.ABSOLUTE:
        return abs(x - y)
    for v in (x, y):
        if not (0.0 <= v <= 1.0):
            raise ArgumentationError(f"KL difference needs values in [0,1], got {v!r}")
    # clamp rounding noise when x and y agree to within an ulp or two
    return max(0.0, _kl_term(x, y) + _kl_term(1.0 - x, 1.0 - y))


def _total(terms: list) -> float:
    if any(t == math.inf for t in terms):
        return math.inf
    return math.fsum(terms)


def _value(objective: Objective, first: Framework, first_eval, second: Framework, second_eval) -> float:
    terms = []
    for e in sorted(objective.extension):
        u1 = utility(e, first, objective, first_eval)
        u2 = utility(e, second, objective, second_eval)
        terms.append(difference(objective.difference, u1, u2))
    return _total(terms)


def _remove(framework: Framework, alpha) -> Framework:
    if isinstance(framework, ProbabilisticFramework):
        return praf_remove_arguments(framework, alpha)
    return remove_arguments(framework, alpha)


def _check_bundle(framework: Framework, bundle: ObservationBundle) -> None:
    if isinstance(framework, ProbabilisticFramework):
        return
    probs = list(bundle.arguments.values()) + list(bundle.attacks.values())
    if any(p is not None and p != 1.0 for p in probs):
        raise ArgumentationError("bundle carries probabilities below 1 but the framework is a Dung framework")


def _extend(framework: Framework, bundle: ObservationBundle) -> Framework:
    _check_bundle(framework, bundle)
    if isinstance(framework, ProbabilisticFramework):
        return praf_extend(framework, bundle)
    return extend_framework(framework, bundle)


def _check_alpha(framework: Framework, objective: Objective, alpha: frozenset, allow_objective: bool) -> None:
    unknown = alpha - framework.arguments
    if unknown:
        raise ArgumentationError(f"unknown argument: {', '.join(sorted(unknown))}")
    if not allow_objective and alpha & objective.extension:
        raise ArgumentationError(
            f"cannot remove objective arguments {', '.join(sorted(alpha & objective.extension))}"
        )


def value_of_observed(framework: Framework, objective: Objective, alpha: Iterable[str], *,
                      allow_objective: bool = False, evaluator: Optional[Evaluator] = None,
                      baseline=None) -> float:
    """Sum over the objective of d(U(e, F), U(e, F without alpha))."""
    evaluator = evaluator or Evaluator()
    alpha = frozenset(alpha)
    objective.check_against(framework)
    _check_alpha(framework, objective, alpha, allow_objective)
    if baseline is None:
        baseline = evaluator(framework, objective)
    reduced = _remove(framework, alpha)
    return _value(objective, framework, baseline, reduced, evaluator(reduced, objective))


def value_of_observation(framework: Framework, objective: Objective, bundle: ObservationBundle, *,
                         evaluator: Optional[Evaluator] = None, baseline=None) -> float:
    """Sum over the objective of d(U(e, F with bundle), U(e, F))."""
    evaluator = evaluator or Evaluator()
    objective.check_against(framework)
    extended = _extend(framework, bundle)
    if baseline is None:
        baseline = evaluator(framework, objective)
    return _value(objective, extended, evaluator(extended, objective), framework, baseline)


def _rank_key(item):
    key, value = item
    members = sorted(key) if not isinstance(key, str) else [key]
    return (-value, members)


def rank_observed(framework: Framework, objective: Objective, max_subset_size: int, *,
                  allow_objective: bool = False, evaluator: Optional[Evaluator] = None) -> list:
    """Value every non-empty removable subset of size at most ``max_subset_size``.

    Returns ``(subset, value)`` pairs sorted by value, highest first.
    """
    if max_subset_size < 1:
        raise ArgumentationError("max subset size must be at least 1")
    evaluator = evaluator or Evaluator()
    objective.check_against(framework)
    pool = sorted(framework.arguments if allow_objective else framework.arguments - objective.extension)
    baseline = evaluator(framework, objective)
    ranked = []
    for k in range(1, min(max_subset_size, len(pool)) + 1):
        for combo in combinations(pool, k):
            alpha = frozenset(combo)
            v = value_of_observed(framework, objective, alpha, allow_objective=allow_objective,
                                  evaluator=evaluator, baseline=baseline)
            ranked.append((alpha, v))
    ranked.sort(key=_rank_key)
    return ranked


def fresh_id(framework: Framework, stem: str = "b") -> str:
    if stem not in framework.arguments:
        return stem
    i = 1
    while f"{stem}_{i}" in framework.arguments:
        i += 1
    return f"{stem}_{i}"


def single_attack_bundle(framework: Framework, target: str, new_arg_prob: float = 1.0,
                         attack_prob: float = 1.0, new_id: Optional[str] = None) -> ObservationBundle:
    b = new_id or fresh_id(framework)
    if isinstance(framework, ProbabilisticFramework):
        return ObservationBundle({b: new_arg_prob}, {(b, target): attack_prob})
    return ObservationBundle([b], [(b, target)])


def rank_single_attacks(framework: Framework, objective: Objective, new_arg_prob: float = 1.0,
                        attack_prob: float = 1.0, *, evaluator: Optional[Evaluator] = None) -> list:
    """Value a fresh argument attacking each existing argument in turn."""
    evaluator = evaluator or Evaluator()
    if not framework.arguments:
        return []
    objective.check_against(framework)
    baseline = evaluator(framework, objective)
    ranked = []
    for t in sorted(framework.arguments):
        bundle = single_attack_bundle(framework, t, new_arg_prob, attack_prob)
        v = value_of_observation(framework, objective, bundle, evaluator=evaluator, baseline=baseline)
        ranked.append((t, v))
    ranked.sort(key=_rank_key)
    return ranked
