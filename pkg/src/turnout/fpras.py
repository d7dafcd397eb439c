"""Randomized estimators for winning and losing probabilities.

``klm_lose_prob`` is a multiplicative approximation of ``Pr[c loses]``: losing
is the union over rivals ``d`` of the pairwise events "``d`` beats ``c``", whose
individual probabilities and posterior distributions are exact (see
:mod:`turnout.conditional`), which is what the Karp-Luby-Madras union
estimator needs. ``mc_win_prob_additive`` is the plain sampling baseline with an
additive guarantee; it works for every rule, Maximin included.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from turnout.conditional import LoseEvent, TailTable, event_prob, event_weights, lose_events
from turnout.core import (
    CO_WINNER,
    ProbabilisticProfile,
    Rule,
    WinnerSemantics,
    voter_contributions,
    win_mask,
)
from turnout.errors import PreconditionError, UnsupportedRuleError, ValidationError

KLM = "klm"
MC_ADDITIVE = "mc-additive"
EXACT_SHORTCUT = "exact-shortcut"


@dataclass(frozen=True)
class EstimatorConfig:
    epsilon: float = 0.1
    delta: float = 0.05
    seed: int = 0
    trials_override: Optional[int] = None

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValidationError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not 0.0 < self.delta < 1.0:
            raise ValidationError(f"delta must lie in (0, 1), got {self.delta}")
        if not 0 <= self.seed < 2**64:
            raise ValidationError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.trials_override is not None and self.trials_override < 1:
            raise ValidationError("trials_override must be at least 1")


@dataclass(frozen=True)
class Estimate:
    value: float
    trials: int
    method: str
    config: EstimatorConfig


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent generator for one trial, derivable without running the others."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


class PosteriorSampler:
    """Draws attendance sets conditioned on a lose event, one voter at a time.

    The inclusion probability of voter ``i`` given the already-drawn prefix ``J``
    is ``Pr[E and I_i = J + {i}] / Pr[E and I_{i-1} = J]``. Both factor as a
    prefix probability times a conditional event probability; the prefix
    factors share everything but ``p_i`` so the ratio reduces to
    ``p_i * Pr[E | J + {i}] / Pr[E | J]``. The conditional probabilities for
    every suffix of voters come from one precomputed tail table.
    """

    def __init__(self, pp: ProbabilisticProfile, rule: Rule, event: LoseEvent):
        self.pp = pp
        self.event = event
        self.weights, strict = event_weights(rule, pp.profile, event)
        self._n = pp.n
        # rows[k] covers the last k voters, so reverse the voter order.
        self.table = TailTable(self.weights[::-1], pp.probs[::-1], strict, keep_rows=True)
        self.probability = self._given_prefix(0, 0)
        if self.probability <= 0.0:
            raise PreconditionError(
                f"event (rival {event.rival} beats {event.target}) has probability zero"
            )

    def _given_prefix(self, decided: int, offset: int) -> float:
        """``Pr[E | voters < decided fixed, their weights summing to offset]``."""
        row = self.table.rows[self.pp.n - decided]
        return self.table.query(-offset, row)

    def inclusion_probability(self, i: int, offset: int) -> float:
        denominator = self._given_prefix(i, offset)
        if denominator <= 0.0:
            return 0.0
        numerator = self.pp.probs[i] * self._given_prefix(i + 1, offset + self.weights[i])
        return min(1.0, max(0.0, numerator / denominator))

    def sample(self, rng: np.random.Generator) -> frozenset[int]:
        chosen = []
        offset = 0
        for i, u in enumerate(rng.random(self._n)):
            if u < self.inclusion_probability(i, offset):
                chosen.append(i)
                offset += self.weights[i]
        return frozenset(chosen)

    def path_probability(self, voters: Iterable[int]) -> float:
        """Probability that :meth:`sample` returns exactly ``voters``."""
        voters = set(voters)
        prob, offset = 1.0, 0
        for i in range(self._n):
            q = self.inclusion_probability(i, offset)
            if i in voters:
                prob *= q
                offset += self.weights[i]
            else:
                prob *= 1.0 - q
        return prob


def sample_posterior(
    pp: ProbabilisticProfile, rule: Rule, event: LoseEvent, rng: np.random.Generator
) -> frozenset[int]:
    return PosteriorSampler(pp, rule, event).sample(rng)


def posterior_path_probability(
    pp: ProbabilisticProfile, rule: Rule, event: LoseEvent, voters: Iterable[int]
) -> float:
    return PosteriorSampler(pp, rule, event).path_probability(voters)


def klm_trials(events: int, config: EstimatorConfig) -> int:
    if config.trials_override is not None:
        return config.trials_override
    return math.ceil(3 * events * math.log(2 / config.delta) / config.epsilon**2)


def _check_klm_rule(rule: Rule) -> None:
    if not (rule.is_positional or rule.kind == "condorcet"):
        raise UnsupportedRuleError(f"no FPRAS implemented for {rule} (open problem)")


def klm_lose_prob(
    pp: ProbabilisticProfile, rule: Rule, c: int, config: EstimatorConfig = EstimatorConfig()
) -> Estimate:
    """Multiplicative ``(epsilon, delta)`` estimate of ``Pr[c is not a co-winner]``.

    Each trial picks a rival ``d`` with probability proportional to
    ``Pr[d beats c]``, draws an attendance set from the posterior given that
    event, and scores a hit iff ``d`` is the lowest-index rival beating ``c`` in
    that set. The hit rate times the total event weight is unbiased.
    """
    _check_klm_rule(rule)
    weighted = [(e, event_prob(pp, rule, e)) for e in lose_events(rule, c, pp.m)]
    weighted = [(e, w) for e, w in weighted if w > 0.0]
    if not weighted:
        return Estimate(0.0, 0, EXACT_SHORTCUT, config)

    total_weight = sum(w for _, w in weighted)
    cumulative = np.cumsum([w for _, w in weighted]) / total_weight
    samplers = [PosteriorSampler(pp, rule, e) for e, _ in weighted]
    # Hit test: weights of every rival's event, in canonical (index) order.
    all_weights = [event_weights(rule, pp.profile, e) for e in lose_events(rule, c, pp.m)]
    order = {e.rival: k for k, e in enumerate(lose_events(rule, c, pp.m))}

    trials = klm_trials(len(weighted), config)
    hits = 0
    for t in range(trials):
        rng = trial_rng(config.seed, t)
        k = min(int(np.searchsorted(cumulative, rng.random(), side="right")), len(weighted) - 1)
        chosen = samplers[k].sample(rng)
        hits += _first_holding(all_weights, chosen) == order[weighted[k][0].rival]
    value = min(1.0, total_weight * hits / trials)
    return Estimate(value, trials, KLM, config)


def _first_holding(all_weights: list[tuple[list[int], bool]], chosen: frozenset[int]) -> int:
    """Position of the first event that holds on the attendance set ``chosen``, or -1."""
    for k, (weights, strict) in enumerate(all_weights):
        margin = sum(weights[i] for i in chosen)
        if margin > 0 or (not strict and margin == 0):
            return k
    return -1


def mc_trials(config: EstimatorConfig) -> int:
    """Hoeffding sample size for an additive ``epsilon`` error with confidence ``1 - delta``."""
    if config.trials_override is not None:
        return config.trials_override
    return math.ceil(math.log(2 / config.delta) / (2 * config.epsilon**2))


def mc_win_prob_additive(
    pp: ProbabilisticProfile,
    rule: Rule,
    c: int,
    semantics: WinnerSemantics = CO_WINNER,
    config: EstimatorConfig = EstimatorConfig(),
) -> Estimate:
    trials = mc_trials(config)
    rng = np.random.default_rng(np.random.SeedSequence(config.seed))
    contrib = voter_contributions(rule, pp.profile) if pp.m > 1 else np.zeros((pp.n, 1), np.int64)
    probs = np.asarray(pp.probs)
    wins = 0
    for start in range(0, trials, 4096):
        size = min(4096, trials - start)
        attend = rng.random((size, pp.n)) < probs
        wins += int(win_mask(rule, attend.astype(np.int64) @ contrib, pp.m, c, semantics).sum())
    return Estimate(wins / trials, trials, MC_ADDITIVE, config)
