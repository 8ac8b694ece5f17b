"""Probabilistic argumentation frameworks: exact and Monte Carlo evaluation.

Arguments and attacks exist independently.  Exact evaluation walks every
inducible subgraph with non-zero weight; the Monte Carlo route samples
subgraphs with a counter-based generator so that sample ``i`` depends only on
``(seed, i)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Optional

import numpy as np

from .framework import (
    ArgumentationError,
    DungFramework,
    Inference,
    ObservationBundle,
    Semantics,
    accepted_arguments,
    check_id,
    extend_framework,
    extensions,
    remove_arguments,
)

DEFAULT_EXACT_LIMIT = 20


class ExactLimitExceeded(ArgumentationError):
    """Too many uncertain elements for exhaustive enumeration."""


def check_probability(p, what: str) -> float:
    if isinstance(p, bool) or not isinstance(p, (int, float)):
        raise ArgumentationError(f"{what}: probability must be a number, got {p!r}")
    p = float(p)
    if not (0.0 < p <= 1.0):
        raise ArgumentationError(f"{what}: probability {p!r} outside (0,1]")
    return p


@dataclass(frozen=True)
class ProbabilisticFramework:
    base: DungFramework
    arg_prob: Mapping = field(hash=False)
    att_prob: Mapping = field(hash=False)

    def __post_init__(self):
        if set(self.arg_prob) != set(self.base.arguments):
            raise ArgumentationError("argument probabilities must cover exactly the framework arguments")
        if set(self.att_prob) != set(self.base.attacks):
            raise ArgumentationError("attack probabilities must cover exactly the framework attacks")
        for a, p in self.arg_prob.items():
            check_probability(p, f"argument {a}")
        for (s, t), p in self.att_prob.items():
            check_probability(p, f"attack ({s},{t})")

    @property
    def arguments(self) -> frozenset:
        return self.base.arguments

    @property
    def attacks(self) -> frozenset:
        return self.base.attacks

    def uncertain_count(self) -> int:
        return sum(p < 1.0 for p in self.arg_prob.values()) + sum(p < 1.0 for p in self.att_prob.values())


def _items(spec) -> list:
    return list(spec.items()) if isinstance(spec, Mapping) else list(spec)


def make_praf(arguments, attacks) -> ProbabilisticFramework:
    """Build a PrAF from ``{id: p}`` / ``{(src, tgt): p}`` mappings or lists of pairs."""
    arg_prob, att_prob = {}, {}
    for a, p in _items(arguments):
        check_id(a)
        if a in arg_prob:
            raise ArgumentationError(f"duplicate argument {a}")
        arg_prob[a] = check_probability(p, f"argument {a}")
    for pair, p in _items(attacks):
        pair = tuple(pair)
        if pair in att_prob:
            raise ArgumentationError(f"duplicate attack ({pair[0]},{pair[1]})")
        att_prob[pair] = check_probability(p, f"attack ({pair[0]},{pair[1]})")
    base = DungFramework(frozenset(arg_prob), frozenset(att_prob))
    return ProbabilisticFramework(base, arg_prob, att_prob)


def from_dung(F: DungFramework) -> ProbabilisticFramework:
    """Certain PrAF over ``F``: every probability is 1."""
    return ProbabilisticFramework(F, {a: 1.0 for a in F.arguments}, {d: 1.0 for d in F.attacks})


@dataclass(frozen=True)
class InducedFramework:
    graph: DungFramework
    weight: float


@dataclass(frozen=True)
class AcceptanceProbabilities:
    per_argument: Mapping = field(hash=False)
    method: str = "exact"
    samples: Optional[int] = None
    seed: Optional[int] = None
    std_error: Optional[Mapping] = field(default=None, hash=False)


@dataclass(frozen=True)
class MonteCarloConfig:
    samples: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if isinstance(self.samples, bool) or not isinstance(self.samples, int) or self.samples < 1:
            raise ArgumentationError(f"samples must be a positive integer, got {self.samples!r}")
        if not (0 <= self.seed < 2**64):
            raise ArgumentationError(f"seed must be a 64-bit unsigned value, got {self.seed!r}")


def _check_inducible(PF: ProbabilisticFramework, G: DungFramework) -> None:
    if not G.arguments <= PF.arguments:
        raise ArgumentationError("induced graph has arguments outside the PrAF")
    if not G.attacks <= PF.attacks:
        raise ArgumentationError("induced graph has attacks outside the PrAF")
    for a, p in PF.arg_prob.items():
        if p == 1.0 and a not in G.arguments:
            raise ArgumentationError(f"certain argument {a} missing from induced graph")
    for (s, t), p in PF.att_prob.items():
        if p == 1.0 and PF.arg_prob[s] == 1.0 and PF.arg_prob[t] == 1.0 and (s, t) not in G.attacks:
            raise ArgumentationError(f"certain attack ({s},{t}) missing from induced graph")


def induced_probability(PF: ProbabilisticFramework, G: DungFramework) -> float:
    """Weight of the inducible graph ``G`` under the independence assumption."""
    _check_inducible(PF, G)
    factors = []
    for a, p in PF.arg_prob.items():
        factors.append(p if a in G.arguments else 1.0 - p)
    for (s, t), p in PF.att_prob.items():
        if (s, t) in G.attacks:
            factors.append(p)
        elif s in G.arguments and t in G.arguments:
            factors.append(1.0 - p)
    return math.prod(factors)


def enumerate_induced(PF: ProbabilisticFramework, limit: int = DEFAULT_EXACT_LIMIT) -> Iterator[InducedFramework]:
    """Yield every inducible graph of non-zero weight exactly once.

    Certain arguments are always present and certain attacks are always
    present whenever both endpoints are, so they never branch.
    """
    n_uncertain = PF.uncertain_count()
    if n_uncertain > limit:
        raise ExactLimitExceeded(
            f"{n_uncertain} uncertain elements exceed the exact limit of {limit}; use Monte Carlo"
        )
    certain_args = [a for a in PF.base.sorted_arguments() if PF.arg_prob[a] == 1.0]
    maybe_args = [a for a in PF.base.sorted_arguments() if PF.arg_prob[a] < 1.0]
    attacks = PF.base.sorted_attacks()

    for arg_bits in product((True, False), repeat=len(maybe_args)):
        present = set(certain_args)
        arg_w = 1.0
        for a, bit in zip(maybe_args, arg_bits):
            p = PF.arg_prob[a]
            if bit:
                present.add(a)
                arg_w *= p
            else:
                arg_w *= 1.0 - p
        live = [d for d in attacks if d[0] in present and d[1] in present]
        fixed = [d for d in live if PF.att_prob[d] == 1.0]
        maybe = [d for d in live if PF.att_prob[d] < 1.0]
        args = frozenset(present)
        for att_bits in product((True, False), repeat=len(maybe)):
            w = arg_w
            chosen = list(fixed)
            for d, bit in zip(maybe, att_bits):
                p = PF.att_prob[d]
                if bit:
                    chosen.append(d)
                    w *= p
                else:
                    w *= 1.0 - p
            yield InducedFramework(DungFramework(args, frozenset(chosen)), w)


def probabilistic_justification(PF: ProbabilisticFramework, sem: Semantics, S: Iterable[str],
                                limit: int = DEFAULT_EXACT_LIMIT) -> float:
    """Probability that ``S`` is an extension of the target framework under ``sem``."""
    S = frozenset(S)
    extra = S - PF.arguments
    if extra:
        raise ArgumentationError(f"extension members not in framework: {', '.join(sorted(extra))}")
    weights = [ind.weight for ind in enumerate_induced(PF, limit)
               if S <= ind.graph.arguments and S in extensions(ind.graph, sem)]
    return math.fsum(weights)


def acceptance_probabilities_exact(PF: ProbabilisticFramework, sem: Semantics, mode: Inference,
                                   limit: int = DEFAULT_EXACT_LIMIT) -> AcceptanceProbabilities:
    hits = {a: [] for a in PF.base.sorted_arguments()}
    for ind in enumerate_induced(PF, limit):
        for a in accepted_arguments(ind.graph, sem, mode):
            hits[a].append(ind.weight)
    # fsum is exactly rounded, so the result does not depend on accumulation order
    return AcceptanceProbabilities({a: min(1.0, math.fsum(ws)) for a, ws in hits.items()}, method="exact")


def _element_order(PF: ProbabilisticFramework):
    args = PF.base.sorted_arguments()
    attacks = PF.base.sorted_attacks()
    return args, attacks


def _row_width(PF: ProbabilisticFramework) -> int:
    m = len(PF.arguments) + len(PF.attacks)
    # Philox emits blocks of four 64-bit words; padding keeps each row aligned to a block
    return max(4, -(-m // 4) * 4)


def _uniforms(PF: ProbabilisticFramework, seed: int, start: int, count: int) -> np.ndarray:
    width = _row_width(PF)
    bitgen = np.random.Philox(key=seed)
    bitgen.advance(start * width // 4)
    return np.random.Generator(bitgen).random((count, width))


def _presence(PF: ProbabilisticFramework, u: np.ndarray) -> np.ndarray:
    args, attacks = _element_order(PF)
    idx = {a: i for i, a in enumerate(args)}
    n = len(args)
    probs = np.array([PF.arg_prob[a] for a in args] + [PF.att_prob[d] for d in attacks], dtype=float)
    mask = u[:, : n + len(attacks)] < probs
    for k, (s, t) in enumerate(attacks):
        mask[:, n + k] &= mask[:, idx[s]] & mask[:, idx[t]]
    return mask


def _graph_from_mask(PF: ProbabilisticFramework, row) -> DungFramework:
    args, attacks = _element_order(PF)
    n = len(args)
    return DungFramework(
        frozenset(a for a, bit in zip(args, row[:n]) if bit),
        frozenset(d for d, bit in zip(attacks, row[n:]) if bit),
    )


def sample_induced(PF: ProbabilisticFramework, seed: int, index: int = 0) -> DungFramework:
    """Draw sample number ``index`` of the stream identified by ``seed``."""
    mask = _presence(PF, _uniforms(PF, seed, index, 1))
    return _graph_from_mask(PF, mask[0])


def acceptance_probabilities_mc(PF: ProbabilisticFramework, sem: Semantics, mode: Inference,
                                cfg: MonteCarloConfig, chunk: int = 50_000) -> AcceptanceProbabilities:
    """Plain frequency estimate with binomial standard errors."""
    args, _ = _element_order(PF)
    counts = dict.fromkeys(args, 0)
    cache: dict = {}
    start = 0
    while start < cfg.samples:
        n = min(chunk, cfg.samples - start)
        mask = _presence(PF, _uniforms(PF, cfg.seed, start, n))
        rows, freq = np.unique(mask, axis=0, return_counts=True)
        for row, c in zip(rows, freq):
            key = row.tobytes()
            if key not in cache:
                cache[key] = accepted_arguments(_graph_from_mask(PF, row), sem, mode)
            for a in cache[key]:
                counts[a] += int(c)
        start += n
    n = cfg.samples
    est = {a: counts[a] / n for a in args}
    err = {a: math.sqrt(p * (1.0 - p) / n) for a, p in est.items()}
    return AcceptanceProbabilities(est, method="monte-carlo", samples=n, seed=cfg.seed, std_error=err)


def praf_remove_arguments(PF: ProbabilisticFramework, alpha: Iterable[str]) -> ProbabilisticFramework:
    base = remove_arguments(PF.base, alpha)
    return ProbabilisticFramework(
        base,
        {a: PF.arg_prob[a] for a in base.arguments},
        {d: PF.att_prob[d] for d in base.attacks},
    )


def praf_extend(PF: ProbabilisticFramework, B: ObservationBundle) -> ProbabilisticFramework:
    base = extend_framework(PF.base, B)
    arg_prob = dict(PF.arg_prob)
    att_prob = dict(PF.att_prob)
    for a, p in B.arguments.items():
        if p is None:
            raise ArgumentationError(f"bundle argument {a} has no probability")
        arg_prob[a] = check_probability(p, f"bundle argument {a}")
    for (s, t), p in B.attacks.items():
        if p is None:
            raise ArgumentationError(f"bundle attack ({s},{t}) has no probability")
        att_prob[(s, t)] = check_probability(p, f"bundle attack ({s},{t})")
    return ProbabilisticFramework(base, arg_prob, att_prob)
