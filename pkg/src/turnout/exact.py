"""Exact winning probabilities.

Plurality and veto admit a polynomial algorithm: every voter moves exactly one
candidate's count (its top choice, respectively its last choice), so the
per-candidate counts are independent and each follows a Poisson-binomial law
computed by a one-dimensional DP. Every other rule falls back to enumerating
all ``2**n`` attendance patterns.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from turnout._enumerate import subset_chunks
from turnout.core import (
    CO_WINNER,
    UNIQUE,
    ProbabilisticProfile,
    Rule,
    WinnerSemantics,
    voter_contributions,
    win_mask,
)
from turnout.errors import RefusalError, ValidationError

BRUTE_FORCE_LIMIT = 20


def subset_probability(pp: ProbabilisticProfile, voters: Iterable[int]) -> float:
    """Probability that exactly ``voters`` attend."""
    chosen = set(voters)
    if any(not 0 <= i < pp.n for i in chosen):
        raise ValidationError(f"voter index out of range in {sorted(chosen)}")
    prob = 1.0
    for i, p in enumerate(pp.probs):
        prob *= p if i in chosen else 1.0 - p
    return prob


def marginal_count_dist(pp: ProbabilisticProfile, marked: Iterable[int]) -> np.ndarray:
    """Distribution of the number of attending voters among ``marked``.

    Entry ``y`` of the returned length ``n + 1`` array is the probability that
    exactly ``y`` marked voters attend. Unmarked voters leave the count alone.
    """
    marked = set(marked)
    dist = np.zeros(pp.n + 1)
    dist[0] = 1.0
    for t, p in enumerate(pp.probs):
        if t not in marked:
            continue
        shifted = np.zeros_like(dist)
        shifted[1:] = dist[:-1]
        dist = p * shifted + (1.0 - p) * dist
    return dist


def _position_count_dists(pp: ProbabilisticProfile, position: int) -> list[np.ndarray]:
    """Count distributions of voters placing each candidate at ``position``."""
    return [
        marginal_count_dist(pp, [i for i, r in enumerate(pp.profile.rankings) if r[position] == c])
        for c in range(pp.m)
    ]


def win_prob_plurality(
    pp: ProbabilisticProfile, c: int, semantics: WinnerSemantics = CO_WINNER
) -> float:
    if pp.m == 1:
        return 1.0
    dists = _position_count_dists(pp, 0)
    # at_most[s] = Pr[count <= s]; the unique variant looks one step lower.
    shift = 1 if semantics is UNIQUE else 0
    total = dists[c].copy()
    for other in range(pp.m):
        if other == c:
            continue
        at_most = np.concatenate([np.zeros(shift), np.cumsum(dists[other])])[: pp.n + 1]
        total *= at_most
    return float(min(1.0, max(0.0, total.sum())))


def win_prob_veto(
    pp: ProbabilisticProfile, c: int, semantics: WinnerSemantics = CO_WINNER
) -> float:
    if pp.m == 1:
        return 1.0
    dists = _position_count_dists(pp, pp.m - 1)
    shift = 1 if semantics is UNIQUE else 0
    total = dists[c].copy()
    for other in range(pp.m):
        if other == c:
            continue
        # at_least[b] = Pr[count >= b], padded with zeros past n.
        tail = np.cumsum(dists[other][::-1])[::-1]
        at_least = np.concatenate([tail, np.zeros(shift)])[shift : shift + pp.n + 1]
        total *= at_least
    return float(min(1.0, max(0.0, total.sum())))


def _check_limit(n: int, limit: int) -> None:
    if n > limit:
        raise RefusalError(f"brute force refused: {n} voters exceeds the limit of {limit}")


def brute_force_win_prob(
    pp: ProbabilisticProfile,
    rule: Rule,
    c: int,
    semantics: WinnerSemantics = CO_WINNER,
    limit: int = BRUTE_FORCE_LIMIT,
) -> float:
    """Sum of ``Pr[I = U]`` over every voter subset ``U`` in which ``c`` wins."""
    _check_limit(pp.n, limit)
    contrib = voter_contributions(rule, pp.profile) if pp.m > 1 else np.zeros((pp.n, 1), np.int64)
    probs = np.asarray(pp.probs)
    total = 0.0
    for _, masks in subset_chunks(pp.n):
        weights = np.where(masks, probs, 1.0 - probs).prod(axis=1)
        wins = win_mask(rule, masks.astype(np.int64) @ contrib, pp.m, c, semantics)
        total += float(weights[wins].sum())
    return min(1.0, total)


def brute_force_lose_prob(
    pp: ProbabilisticProfile,
    rule: Rule,
    c: int,
    semantics: WinnerSemantics = CO_WINNER,
    limit: int = BRUTE_FORCE_LIMIT,
) -> float:
    return 1.0 - brute_force_win_prob(pp, rule, c, semantics, limit)
