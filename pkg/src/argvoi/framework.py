"""Dung argumentation frameworks and their five classical semantics."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Optional, Tuple

Attack = Tuple[str, str]
Extension = frozenset

_ID_RE = re.compile(r"[A-Za-z0-9_]+\Z")


class ArgumentationError(ValueError):
    """Raised for malformed frameworks, bundles and objectives."""


class Semantics(str, enum.Enum):
    CONFLICT_FREE = "conflict-free"
    ADMISSIBLE = "admissible"
    COMPLETE = "complete"
    GROUNDED = "grounded"
    PREFERRED = "preferred"


class Inference(str, enum.Enum):
    CREDULOUS = "credulous"
    SCEPTICAL = "sceptical"


def check_id(name: str) -> str:
    if not isinstance(name, str) or not _ID_RE.match(name):
        raise ArgumentationError(f"invalid argument id {name!r}")
    return name


@dataclass(frozen=True)
class DungFramework:
    arguments: frozenset
    attacks: frozenset

    def __post_init__(self):
        for a in self.arguments:
            check_id(a)
        for src, tgt in self.attacks:
            for end in (src, tgt):
                if end not in self.arguments:
                    raise ArgumentationError(f"attack ({src},{tgt}): unknown endpoint {end}")

    def sorted_arguments(self) -> list:
        return sorted(self.arguments)

    def sorted_attacks(self) -> list:
        return sorted(self.attacks)

    def __len__(self) -> int:
        return len(self.arguments)


def make_framework(arguments: Iterable[str], attacks: Iterable[Attack]) -> DungFramework:
    """Build a validated framework; duplicate argument ids are rejected."""
    args = list(arguments)
    seen = set()
    for a in args:
        if a in seen:
            raise ArgumentationError(f"duplicate argument {a}")
        seen.add(a)
    return DungFramework(frozenset(args), frozenset((s, t) for s, t in attacks))


@dataclass(frozen=True)
class ObservationBundle:
    """New arguments and attacks to add to a framework.

    Values are existence probabilities; ``None`` means "not given", which is
    fine for a Dung framework and an error for a probabilistic one.  Plain
    iterables are accepted and mapped to ``None``.
    """

    arguments: Mapping = field(default_factory=dict)
    attacks: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "arguments", _as_prob_map(self.arguments))
        object.__setattr__(self, "attacks", _as_prob_map(self.attacks, pairs=True))
        for a in self.arguments:
            check_id(a)

    __hash__ = None

    def is_empty(self) -> bool:
        return not self.arguments and not self.attacks


def _as_prob_map(items, pairs=False) -> dict:
    if isinstance(items, Mapping):
        out = dict(items)
    else:
        out = {}
        for item in items:
            if item in out:
                raise ArgumentationError(f"duplicate bundle element {item}")
            out[item] = None
    if pairs:
        out = {tuple(k): v for k, v in out.items()}
    return out


def _require_member(F: DungFramework, a: str) -> None:
    if a not in F.arguments:
        raise ArgumentationError(f"unknown argument {a}")


def _require_subset(F: DungFramework, S: Iterable[str]) -> frozenset:
    S = frozenset(S)
    extra = S - F.arguments
    if extra:
        raise ArgumentationError(f"extension members not in framework: {', '.join(sorted(extra))}")
    return S


def attackers(F: DungFramework, a: str) -> frozenset:
    _require_member(F, a)
    return frozenset(b for b, t in F.attacks if t == a)


def _attacker_map(F: DungFramework) -> dict:
    amap = {a: set() for a in F.arguments}
    for b, t in F.attacks:
        amap[t].add(b)
    return amap


def is_conflict_free(F: DungFramework, S: Iterable[str]) -> bool:
    S = _require_subset(F, S)
    return not any(s in S and t in S for s, t in F.attacks)


def is_acceptable(F: DungFramework, S: Iterable[str], a: str) -> bool:
    """True iff every attacker of ``a`` is itself attacked by ``S``."""
    S = _require_subset(F, S)
    _require_member(F, a)
    return _acceptable(F.attacks, _attacker_map(F), S, a)


def _acceptable(attacks, amap, S, a) -> bool:
    return all(any((c, b) in attacks for c in S) for b in amap[a])


def is_admissible(F: DungFramework, S: Iterable[str]) -> bool:
    S = _require_subset(F, S)
    if not is_conflict_free(F, S):
        return False
    amap = _attacker_map(F)
    return all(_acceptable(F.attacks, amap, S, a) for a in S)


def is_complete(F: DungFramework, S: Iterable[str]) -> bool:
    S = _require_subset(F, S)
    if not is_admissible(F, S):
        return False
    amap = _attacker_map(F)
    return all(a in S for a in F.arguments if _acceptable(F.attacks, amap, S, a))


def grounded_extension(F: DungFramework) -> frozenset:
    """Least fixpoint of the characteristic function, iterated from the empty set."""
    amap = _attacker_map(F)
    S: frozenset = frozenset()
    while True:
        # defeated = everything attacked by S; an argument is acceptable iff all its attackers are defeated
        defeated = {t for s, t in F.attacks if s in S}
        nxt = frozenset(a for a in F.arguments if amap[a] <= defeated)
        if nxt == S:
            return S
        S = nxt


def _canonical(exts: Iterable[frozenset]) -> list:
    return sorted(set(exts), key=lambda e: (sorted(e), len(e)))


def _all_subsets(F: DungFramework) -> Iterator[frozenset]:
    args = F.sorted_arguments()
    for k in range(len(args) + 1):
        for combo in combinations(args, k):
            yield frozenset(combo)


def extensions_bruteforce(F: DungFramework, sem: Semantics) -> list:
    """Reference enumeration: test every subset of arguments against the definition."""
    sem = Semantics(sem)
    if sem is Semantics.GROUNDED:
        complete = [S for S in _all_subsets(F) if is_complete(F, S)]
        return [min(complete, key=len)]
    test = {
        Semantics.CONFLICT_FREE: is_conflict_free,
        Semantics.ADMISSIBLE: is_admissible,
        Semantics.COMPLETE: is_complete,
        Semantics.PREFERRED: is_complete,
    }[sem]
    found = [S for S in _all_subsets(F) if test(F, S)]
    if sem is Semantics.PREFERRED:
        found = _maximal(found)
    return _canonical(found)


def _maximal(sets: list) -> list:
    return [S for S in sets if not any(S < T for T in sets)]


def _complete_extensions(F: DungFramework) -> list:
    # Every complete extension contains the grounded one and avoids whatever
    # it attacks, so search only conflict-free supersets over the remainder.
    grounded = grounded_extension(F)
    out_args = {t for s, t in F.attacks if s in grounded}
    out_args |= {s for s, t in F.attacks if t in grounded}
    free = [a for a in F.sorted_arguments()
            if a not in grounded and a not in out_args and (a, a) not in F.attacks]
    conflicts = {a: set() for a in free}
    for s, t in F.attacks:
        if s in conflicts and t in conflicts:
            conflicts[s].add(t)
            conflicts[t].add(s)

    found = []

    def grow(i, chosen, blocked):
        if i == len(free):
            S = grounded | frozenset(chosen)
            if is_complete(F, S):
                found.append(S)
            return
        a = free[i]
        grow(i + 1, chosen, blocked)
        if a not in blocked:
            chosen.append(a)
            grow(i + 1, chosen, blocked | conflicts[a])
            chosen.pop()

    grow(0, [], frozenset())
    return found


def extensions(F: DungFramework, sem: Semantics) -> list:
    """All extensions of ``F`` under ``sem``, in canonical order."""
    sem = Semantics(sem)
    if sem is Semantics.GROUNDED:
        return [grounded_extension(F)]
    if sem is Semantics.COMPLETE:
        return _canonical(_complete_extensions(F))
    if sem is Semantics.PREFERRED:
        return _canonical(_maximal(_complete_extensions(F)))
    return extensions_bruteforce(F, sem)


def accepted_arguments(F: DungFramework, sem: Semantics, mode: Inference) -> frozenset:
    mode = Inference(mode)
    if Semantics(sem) is Semantics.GROUNDED:
        return grounded_extension(F)
    exts = extensions(F, sem)
    if not exts:
        return frozenset()
    if mode is Inference.CREDULOUS:
        return frozenset().union(*exts)
    return frozenset.intersection(*exts)


def remove_arguments(F: DungFramework, alpha: Iterable[str]) -> DungFramework:
    alpha = frozenset(alpha)
    for a in sorted(alpha):
        _require_member(F, a)
    return DungFramework(
        F.arguments - alpha,
        frozenset((s, t) for s, t in F.attacks if s not in alpha and t not in alpha),
    )


def extend_framework(F: DungFramework, B: ObservationBundle) -> DungFramework:
    new_args = frozenset(B.arguments)
    clash = new_args & F.arguments
    if clash:
        raise ArgumentationError(f"bundle argument already in framework: {', '.join(sorted(clash))}")
    known = F.arguments | new_args
    for s, t in B.attacks:
        for end in (s, t):
            if end not in known:
                raise ArgumentationError(f"bundle attack ({s},{t}): unknown endpoint {end}")
        if s not in new_args and t not in new_args:
            raise ArgumentationError(f"bundle attack ({s},{t}) must involve a new argument")
    return DungFramework(known, F.attacks | frozenset(B.attacks))
