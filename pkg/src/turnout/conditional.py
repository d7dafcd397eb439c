"""Probabilities of pairwise losing events given a partial attendance pattern.

A target ``c`` fails to win as soon as one rival ``d`` *beats* it: under a
positional rule that means ``s(d) > s(c)``, under Condorcet it means
``N(d, c) >= N(c, d)``. Both reduce to a tail probability of a sum of
independent integer-weighted Bernoulli terms, which a DP over the shifted sum
evaluates exactly. The same tables drive the posterior sampler in
:mod:`turnout.fpras`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from turnout.core import (
    ProbabilisticProfile,
    Profile,
    Rule,
    pairwise_count,
    score_vector_for,
    total_score,
)
from turnout.errors import UnsupportedRuleError, ValidationError, RefusalError

TABLE_BUDGET = 10**8


class EventKind(enum.Enum):
    POSITIONAL_STRICT = "positional-strict"
    CONDORCET_TIE_OR_BEAT = "condorcet-tie-or-beat"


@dataclass(frozen=True)
class LoseEvent:
    """``rival`` outscores (positional) or ties-or-beats (Condorcet) ``target``."""

    target: int
    rival: int
    kind: EventKind

    def __post_init__(self):
        if self.target == self.rival:
            raise ValidationError("a lose event needs a rival distinct from the target")


def lose_event(rule: Rule, target: int, rival: int) -> LoseEvent:
    if rule.is_positional:
        return LoseEvent(target, rival, EventKind.POSITIONAL_STRICT)
    if rule.kind == "condorcet":
        return LoseEvent(target, rival, EventKind.CONDORCET_TIE_OR_BEAT)
    raise UnsupportedRuleError(f"no pairwise lose events for {rule}")


def lose_events(rule: Rule, target: int, m: int) -> list[LoseEvent]:
    """One event per rival, in rival index order."""
    return [lose_event(rule, target, d) for d in range(m) if d != target]


@dataclass(frozen=True)
class PartialAssignment:
    """Voters in ``decided`` have known attendance; exactly those in ``present`` attend."""

    decided: frozenset[int] = frozenset()
    present: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "decided", frozenset(self.decided))
        object.__setattr__(self, "present", frozenset(self.present))
        if not self.present <= self.decided:
            raise ValidationError("present voters must be a subset of decided voters")

    def check(self, n: int) -> None:
        if any(not 0 <= i < n for i in self.decided):
            raise ValidationError(f"decided voters out of range for n={n}")


NOTHING_DECIDED = PartialAssignment()


def pairwise_margin_values(rule: Rule, profile: Profile, a: int, b: int) -> list[int]:
    """Per-voter score difference ``s(a) - s(b)`` under a positional rule."""
    if a == b:
        raise ValidationError("margin values need two distinct candidates")
    vec = score_vector_for(rule, profile.m)
    pos = profile.positions
    return [vec[pos[i, a]] - vec[pos[i, b]] for i in range(profile.n)]


def event_weights(rule: Rule, profile: Profile, event: LoseEvent) -> tuple[list[int], bool]:
    """Integer voter weights ``w`` and strictness such that the event is
    ``sum(w[i] for i in I) > 0`` (strict) or ``>= 0`` (weak)."""
    _check_kind(rule, event)
    if event.kind is EventKind.POSITIONAL_STRICT:
        return pairwise_margin_values(rule, profile, event.rival, event.target), True
    pos = profile.positions
    return [1 if pos[i, event.rival] < pos[i, event.target] else -1 for i in range(profile.n)], False


def _check_kind(rule: Rule, event: LoseEvent) -> None:
    expected = lose_event(rule, event.target, event.rival).kind
    if event.kind is not expected:
        raise ValidationError(f"event kind {event.kind.value} does not match rule {rule}")


class TailTable:
    """Tail probabilities of ``sum(w[i] for i in I ∩ voters)`` for nested voter sets.

    Rows are filled by the recurrence
    ``N(t, y) = p_t * N(t-1, y - w_t) + (1 - p_t) * N(t-1, y)`` over the margin
    window ``[lo, hi]``, where ``lo``/``hi`` sum the negative/positive weights.
    Outside the window the answer is known: 1 below ``lo``, 0 above ``hi``.
    ``N(t, y)`` is ``Pr[sum > y]`` when ``strict`` and ``Pr[sum >= y]`` otherwise.
    """

    def __init__(
        self,
        weights: Sequence[int],
        probs: Sequence[float],
        strict: bool,
        keep_rows: bool = False,
        budget: int = TABLE_BUDGET,
    ):
        self.lo = sum(w for w in weights if w < 0)
        self.hi = sum(w for w in weights if w > 0)
        self.strict = strict
        width = self.hi - self.lo + 1
        if width * max(1, len(weights)) > budget:
            raise RefusalError(
                f"DP table of {width} x {len(weights)} cells exceeds the budget of {budget}"
            )
        ys = np.arange(self.lo, self.hi + 1)
        row = (ys < 0 if strict else ys <= 0).astype(float)
        self.rows = [row] if keep_rows else None
        for w, p in zip(weights, probs):
            row = p * self._shift(row, w) + (1.0 - p) * row
            if keep_rows:
                self.rows.append(row)
        self.last = row

    def _shift(self, row: np.ndarray, w: int) -> np.ndarray:
        """``row`` re-indexed at ``y - w``, with the clamped values outside the window."""
        if w == 0:
            return row
        out = np.empty_like(row)
        if w > 0:
            out[:w] = 1.0
            out[w:] = row[:-w] if w < len(row) else out[w:]
        else:
            out[w:] = 0.0
            out[:w] = row[-w:] if -w < len(row) else out[:w]
        return out

    def query(self, y: int, row: np.ndarray | None = None) -> float:
        row = self.last if row is None else row
        if y < self.lo:
            return 1.0
        if y > self.hi:
            return 0.0
        return float(row[y - self.lo])


def _conditional(
    pp: ProbabilisticProfile,
    weights: list[int],
    strict: bool,
    assign: PartialAssignment,
    budget: int,
) -> float:
    assign.check(pp.n)
    offset = sum(weights[i] for i in assign.present)
    free = [i for i in range(pp.n) if i not in assign.decided]
    table = TailTable([weights[i] for i in free], [pp.probs[i] for i in free], strict, budget=budget)
    return min(1.0, max(0.0, table.query(-offset)))


def exceed_prob_positional(
    pp: ProbabilisticProfile,
    rule: Rule,
    event: LoseEvent,
    assign: PartialAssignment = NOTHING_DECIDED,
    budget: int = TABLE_BUDGET,
) -> float:
    """``Pr[s(rival) > s(target) | I ∩ decided = present]`` under a positional rule."""
    if event.kind is not EventKind.POSITIONAL_STRICT:
        raise ValidationError("exceed_prob_positional needs a positional-strict event")
    weights, strict = event_weights(rule, pp.profile, event)
    return _conditional(pp, weights, strict, assign, budget)


def tie_or_beat_prob_condorcet(
    pp: ProbabilisticProfile,
    event: LoseEvent,
    assign: PartialAssignment = NOTHING_DECIDED,
) -> float:
    """``Pr[N(rival, target) >= N(target, rival) | I ∩ decided = present]``."""
    if event.kind is not EventKind.CONDORCET_TIE_OR_BEAT:
        raise ValidationError("tie_or_beat_prob_condorcet needs a Condorcet event")
    weights, strict = event_weights(Rule.condorcet(), pp.profile, event)
    return _conditional(pp, weights, strict, assign, TABLE_BUDGET)


def conditional_event_prob(
    pp: ProbabilisticProfile,
    rule: Rule,
    event: LoseEvent,
    assign: PartialAssignment = NOTHING_DECIDED,
) -> float:
    _check_kind(rule, event)
    if event.kind is EventKind.POSITIONAL_STRICT:
        return exceed_prob_positional(pp, rule, event, assign)
    return tie_or_beat_prob_condorcet(pp, event, assign)


def event_prob(pp: ProbabilisticProfile, rule: Rule, event: LoseEvent) -> float:
    return conditional_event_prob(pp, rule, event, NOTHING_DECIDED)


def event_holds(rule: Rule, profile: Profile, event: LoseEvent, voters: Iterable[int]) -> bool:
    """Evaluate the event on the realized profile of ``voters``."""
    _check_kind(rule, event)
    realized = profile.subprofile(voters)
    c, d = event.target, event.rival
    if event.kind is EventKind.POSITIONAL_STRICT:
        return total_score(rule, realized, d) > total_score(rule, realized, c)
    return pairwise_count(realized, d, c) >= pairwise_count(realized, c, d)
