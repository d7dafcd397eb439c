"""Control by adding an unlimited number of voters, and deciding ``Pr[win] > 0``.

Whether a candidate can win with positive probability only depends on which
voters are certain (``p = 1``), impossible (``p = 0``) or uncertain: certain
voters are registered, uncertain ones are the pool we may add from. For rules
whose scores are all 0 or 1 the best sublist to add is simply every pool voter
that gives the target a point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from turnout._enumerate import members, subset_chunks
from turnout.core import (
    CO_WINNER,
    CandidateSet,
    ProbabilisticProfile,
    Profile,
    Rule,
    WinnerSemantics,
    score_vector_for,
    voter_contributions,
    win_mask,
    winners,
)
from turnout.errors import RefusalError, UnsupportedRuleError, ValidationError

CCAUV_LIMIT = 20


@dataclass(frozen=True)
class CcauvInstance:
    """Registered voters, a pool of unregistered voters and the preferred candidate.

    ``meta`` carries free-form annotations (generators record the rule and the
    combinatorial quantity the instance counts).
    """

    registered: Profile
    unregistered: Profile
    target: int
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.registered.candidates != self.unregistered.candidates:
            raise ValidationError("registered and unregistered voters use different candidates")
        if not 0 <= self.target < self.registered.m:
            raise ValidationError(f"target {self.target} out of range")

    @property
    def candidates(self) -> CandidateSet:
        return self.registered.candidates


class Decision(NamedTuple):
    found: bool
    witness: Optional[tuple[int, ...]]


def split_ccauv(pp: ProbabilisticProfile, target: int) -> CcauvInstance:
    """Certain voters become registered, uncertain ones the pool; absent ones vanish."""
    sure = [i for i, p in enumerate(pp.probs) if p == 1.0]
    maybe = [i for i, p in enumerate(pp.probs) if 0.0 < p < 1.0]
    return CcauvInstance(
        pp.profile.subprofile(sure),
        pp.profile.subprofile(maybe),
        target,
        {"registered_voters": tuple(sure), "unregistered_voters": tuple(maybe)},
    )


def ccauv_to_probabilistic(instance: CcauvInstance) -> ProbabilisticProfile:
    """Registered voters attend surely, pool voters with probability one half."""
    profile = instance.registered.concat(instance.unregistered)
    probs = (1.0,) * instance.registered.n + (0.5,) * instance.unregistered.n
    return ProbabilisticProfile(profile, probs)


def _require_binary(rule: Rule, m: int) -> tuple[int, ...]:
    if not rule.is_positional:
        raise UnsupportedRuleError(f"{rule} is not a binary positional rule")
    vec = score_vector_for(rule, m)
    if not vec.is_binary:
        raise UnsupportedRuleError(f"{rule} has non-binary scores {vec.scores}")
    return vec.scores


def ccauv_binary(
    instance: CcauvInstance, rule: Rule, semantics: WinnerSemantics = CO_WINNER
) -> Decision:
    """Polynomial CCAUV for rules with 0/1 scores.

    Adding a pool voter who gives the target a point never hurts it (every
    other candidate gains at most one point too), and dropping one who gives
    it nothing never hurts either. So the target can be made a winner iff it
    wins once exactly those point-giving voters are added.
    """
    c = instance.target
    if instance.registered.m == 1:
        return Decision(True, ())
    scores = _require_binary(rule, instance.registered.m)
    helpful = tuple(i for i, r in enumerate(instance.unregistered.rankings) if scores[r.index(c)] == 1)
    realized = instance.registered.concat(instance.unregistered.subprofile(helpful))
    if c in winners(rule, realized, semantics):
        return Decision(True, helpful)
    return Decision(False, None)


def _winning_codes(
    instance: CcauvInstance, rule: Rule, semantics: WinnerSemantics, limit: int
) -> list[np.ndarray]:
    pool = instance.unregistered
    if pool.n > limit:
        raise RefusalError(f"brute force refused: {pool.n} pool voters exceeds the limit of {limit}")
    m = instance.registered.m
    if m == 1:
        return [np.arange(1 << pool.n, dtype=np.int64)]
    base = voter_contributions(rule, instance.registered).sum(axis=0)
    contrib = voter_contributions(rule, pool)
    found = []
    for ids, masks in subset_chunks(pool.n):
        totals = base + masks.astype(np.int64) @ contrib
        found.append(ids[win_mask(rule, totals, m, instance.target, semantics)])
    return found


def _lex_least(codes: np.ndarray) -> tuple[int, ...]:
    """Lexicographically least sorted member tuple among non-empty ``codes``."""
    prefix = 0
    while not np.any(codes == prefix):
        rest = codes & ~prefix
        lowest = int((rest & -rest).min())
        prefix |= lowest
        codes = codes[(codes & lowest) != 0]
    return members(prefix)


def ccauv_brute(
    instance: CcauvInstance,
    rule: Rule,
    semantics: WinnerSemantics = CO_WINNER,
    limit: int = CCAUV_LIMIT,
) -> Decision:
    """Try every sublist of the pool; return the lexicographically least witness."""
    codes = np.concatenate(_winning_codes(instance, rule, semantics, limit))
    if codes.size == 0:
        return Decision(False, None)
    return Decision(True, _lex_least(codes))


def ccauv_count_brute(
    instance: CcauvInstance,
    rule: Rule,
    semantics: WinnerSemantics = CO_WINNER,
    limit: int = CCAUV_LIMIT,
) -> int:
    """Number of pool sublists (of any size) that make the target a winner."""
    return int(sum(len(c) for c in _winning_codes(instance, rule, semantics, limit)))


def is_binary_rule(rule: Rule, m: int) -> bool:
    return rule.is_positional and m >= 2 and score_vector_for(rule, m).is_binary


def win_positive(
    pp: ProbabilisticProfile,
    rule: Rule,
    target: int,
    semantics: WinnerSemantics = CO_WINNER,
    limit: int = CCAUV_LIMIT,
) -> bool:
    """Whether ``target`` wins with positive probability; probabilities in (0, 1) are irrelevant."""
    instance = split_ccauv(pp, target)
    if is_binary_rule(rule, pp.m):
        return ccauv_binary(instance, rule, semantics).found
    return ccauv_brute(instance, rule, semantics, limit).found
