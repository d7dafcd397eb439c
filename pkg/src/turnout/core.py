"""Candidates, rankings, profiles and deterministic winner determination.

Candidates and voters are referred to by 0-based indices everywhere; names are
only used when reading or writing files. Index order doubles as the canonical
tie-break order.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from turnout.errors import ValidationError

Ranking = tuple[int, ...]

_NAME_RE = re.compile(r"[A-Za-z0-9_-]+\Z")


class WinnerSemantics(enum.Enum):
    CO_WINNER = "co-winner"
    UNIQUE = "unique"


CO_WINNER = WinnerSemantics.CO_WINNER
UNIQUE = WinnerSemantics.UNIQUE


@dataclass(frozen=True)
class CandidateSet:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValidationError("a candidate set needs at least one candidate")
        for name in names:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ValidationError(f"invalid candidate name {name!r}")
        if len(set(names)) != len(names):
            raise ValidationError("candidate names must be distinct")

    @property
    def m(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValidationError(f"unknown candidate {name!r}") from None

    @classmethod
    def default(cls, m: int) -> CandidateSet:
        """Candidates named ``c0 .. c{m-1}``."""
        return cls(tuple(f"c{i}" for i in range(m)))


def _check_ranking(ranking: Sequence[int], m: int) -> Ranking:
    ranking = tuple(int(c) for c in ranking)
    if sorted(ranking) != list(range(m)):
        raise ValidationError(f"ranking {ranking} is not a permutation of 0..{m - 1}")
    return ranking


@dataclass(frozen=True)
class Profile:
    """An ordered list of rankings over a common candidate set."""

    candidates: CandidateSet
    rankings: tuple[Ranking, ...] = ()

    def __post_init__(self):
        m = self.candidates.m
        object.__setattr__(
            self, "rankings", tuple(_check_ranking(r, m) for r in self.rankings)
        )

    @classmethod
    def from_names(cls, names: Sequence[str], ballots: Iterable[Sequence[str]]) -> Profile:
        candidates = CandidateSet(tuple(names))
        return cls(candidates, tuple(tuple(candidates.index(x) for x in b) for b in ballots))

    @property
    def n(self) -> int:
        return len(self.rankings)

    @property
    def m(self) -> int:
        return self.candidates.m

    @cached_property
    def positions(self) -> np.ndarray:
        """``positions[i, c]`` is the 0-based position of ``c`` in voter ``i``'s ranking."""
        pos = np.empty((self.n, self.m), dtype=np.int64)
        for i, ranking in enumerate(self.rankings):
            pos[i, list(ranking)] = np.arange(self.m)
        return pos

    def subprofile(self, voters: Iterable[int]) -> Profile:
        return Profile(self.candidates, tuple(self.rankings[i] for i in sorted(voters)))

    def concat(self, other: Profile) -> Profile:
        if other.candidates != self.candidates:
            raise ValidationError("profiles are over different candidate sets")
        return Profile(self.candidates, self.rankings + other.rankings)


@dataclass(frozen=True)
class ProbabilisticProfile:
    """A profile whose voter ``i`` attends independently with probability ``probs[i]``."""

    profile: Profile
    probs: tuple[float, ...] = field(default=())

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        if len(probs) != self.profile.n:
            raise ValidationError(
                f"{len(probs)} probabilities given for {self.profile.n} voters"
            )
        for p in probs:
            if not 0.0 <= p <= 1.0:
                raise ValidationError(f"attendance probability {p} outside [0, 1]")

    @property
    def n(self) -> int:
        return self.profile.n

    @property
    def m(self) -> int:
        return self.profile.m

    @property
    def candidates(self) -> CandidateSet:
        return self.profile.candidates


@dataclass(frozen=True)
class ScoreVector:
    scores: tuple[int, ...]

    def __post_init__(self):
        scores = tuple(self.scores)
        object.__setattr__(self, "scores", scores)
        if len(scores) < 2:
            raise ValidationError("a score vector needs at least two positions")
        if any(not isinstance(s, (int, np.integer)) or s < 0 for s in scores):
            raise ValidationError(f"scores must be natural numbers: {scores}")
        if any(a < b for a, b in zip(scores, scores[1:])):
            raise ValidationError(f"scores must be non-increasing: {scores}")
        if scores[0] == scores[-1]:
            raise ValidationError(f"first score must exceed the last: {scores}")

    @property
    def m(self) -> int:
        return len(self.scores)

    @property
    def is_binary(self) -> bool:
        return set(self.scores) <= {0, 1}

    def __getitem__(self, position: int) -> int:
        return self.scores[position]


_POSITIONAL = ("plurality", "veto", "approval", "kveto", "borda", "rfl", "vector")


@dataclass(frozen=True)
class Rule:
    """A voting rule: a positional family, ``condorcet`` or ``maximin``.

    ``kind`` is one of ``plurality``, ``veto``, ``approval`` (k), ``kveto`` (k),
    ``borda``, ``rfl`` (f, l), ``vector`` (explicit scores), ``condorcet`` and
    ``maximin``; ``params`` holds the integers in parentheses.
    """

    kind: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(x) for x in self.params))
        arity = {"approval": 1, "kveto": 1, "rfl": 2}.get(self.kind, 0)
        if self.kind not in _POSITIONAL + ("condorcet", "maximin"):
            raise ValidationError(f"unknown rule {self.kind!r}")
        if self.kind == "vector":
            ScoreVector(self.params)
        elif len(self.params) != arity:
            raise ValidationError(f"rule {self.kind} takes {arity} parameter(s)")
        if any(x < 1 for x in self.params[:arity]):
            raise ValidationError(f"rule parameters must be >= 1: {self.params}")

    @classmethod
    def plurality(cls) -> Rule:
        return cls("plurality")

    @classmethod
    def veto(cls) -> Rule:
        return cls("veto")

    @classmethod
    def borda(cls) -> Rule:
        return cls("borda")

    @classmethod
    def condorcet(cls) -> Rule:
        return cls("condorcet")

    @classmethod
    def maximin(cls) -> Rule:
        return cls("maximin")

    @classmethod
    def k_approval(cls, k: int) -> Rule:
        return cls("approval", (k,))

    @classmethod
    def k_veto(cls, k: int) -> Rule:
        return cls("kveto", (k,))

    @classmethod
    def rfl(cls, f: int, ell: int) -> Rule:
        return cls("rfl", (f, ell))

    @classmethod
    def vector(cls, scores: Sequence[int]) -> Rule:
        return cls("vector", tuple(scores))

    @classmethod
    def parse(cls, text: str) -> Rule:
        """Parse the command-line spelling, e.g. ``approval:2`` or ``rfl:1,1``."""
        kind, _, rest = text.strip().partition(":")
        try:
            params = tuple(int(x) for x in rest.split(",")) if rest else ()
        except ValueError:
            raise ValidationError(f"cannot parse rule {text!r}") from None
        return cls(kind, params)

    def __str__(self) -> str:
        if not self.params:
            return self.kind
        return f"{self.kind}:{','.join(map(str, self.params))}"

    @property
    def is_positional(self) -> bool:
        return self.kind in _POSITIONAL


def score_vector_for(rule: Rule, m: int) -> ScoreVector:
    """Materialize the score vector of a positional rule for ``m`` candidates."""
    kind, params = rule.kind, rule.params
    if not rule.is_positional:
        raise ValidationError(f"{rule} is not a positional scoring rule")
    if m < 2:
        raise ValidationError("positional rules need at least two candidates")
    if kind == "plurality":
        scores = [1] + [0] * (m - 1)
    elif kind == "veto":
        scores = [1] * (m - 1) + [0]
    elif kind in ("approval", "kveto"):
        k = params[0]
        if not 1 <= k < m:
            raise ValidationError(f"{kind} needs 1 <= k < m (k={k}, m={m})")
        scores = [1] * k + [0] * (m - k) if kind == "approval" else [1] * (m - k) + [0] * k
    elif kind == "borda":
        scores = list(range(m - 1, -1, -1))
    elif kind == "rfl":
        f, ell = params
        if f + ell > m:
            raise ValidationError(f"rfl needs f + l <= m (f={f}, l={ell}, m={m})")
        scores = [2] * f + [1] * (m - f - ell) + [0] * ell
    else:
        scores = list(params)
        if len(scores) != m:
            raise ValidationError(f"score vector has {len(scores)} entries for {m} candidates")
    return ScoreVector(tuple(scores))


def position_score(rule: Rule, ranking: Sequence[int], c: int) -> int:
    vec = score_vector_for(rule, len(ranking))
    return vec[list(ranking).index(c)]


def total_score(rule: Rule, profile: Profile, c: int) -> int:
    if not rule.is_positional:
        raise ValidationError(f"{rule} is not a positional scoring rule")
    if profile.n == 0:
        return 0
    vec = score_vector_for(rule, profile.m)
    return sum(vec[r.index(c)] for r in profile.rankings)


def pairwise_count(profile: Profile, a: int, b: int) -> int:
    """Number of voters preferring ``a`` to ``b``."""
    if a == b:
        raise ValidationError("pairwise_count needs two distinct candidates")
    return sum(1 for r in profile.rankings if r.index(a) < r.index(b))


def _argmax_set(values: Sequence[int], semantics: WinnerSemantics) -> frozenset[int]:
    best = max(values)
    top = frozenset(i for i, v in enumerate(values) if v == best)
    if semantics is UNIQUE and len(top) > 1:
        return frozenset()
    return top


def winners(
    rule: Rule, profile: Profile, semantics: WinnerSemantics = CO_WINNER
) -> frozenset[int]:
    """Winner set of ``profile`` under ``rule``.

    Co-winner semantics returns every candidate with a maximal score; unique
    semantics returns that set only when it is a singleton. A Condorcet winner
    is the same under both semantics and may not exist.
    """
    m = profile.m
    if m == 1:
        return frozenset({0})
    if rule.is_positional:
        return _argmax_set([total_score(rule, profile, c) for c in range(m)], semantics)
    counts = [[pairwise_count(profile, a, b) if a != b else 0 for b in range(m)] for a in range(m)]
    if rule.kind == "condorcet":
        return frozenset(
            a for a in range(m) if all(counts[a][b] > counts[b][a] for b in range(m) if b != a)
        )
    maximin = [min(counts[a][b] for b in range(m) if b != a) for a in range(m)]
    return _argmax_set(maximin, semantics)


# Vectorized evaluation over many voter subsets at once. Used by the
# enumeration oracles and the Monte-Carlo samplers.


def score_matrix(rule: Rule, profile: Profile) -> np.ndarray:
    """``(n, m)`` integer matrix of the score each voter gives each candidate."""
    vec = np.asarray(score_vector_for(rule, profile.m).scores, dtype=np.int64)
    return vec[profile.positions]


def preference_tensor(profile: Profile) -> np.ndarray:
    """``(n, m, m)`` 0/1 tensor; entry ``[i, a, b]`` is 1 iff voter ``i`` prefers ``a`` to ``b``."""
    pos = profile.positions
    return (pos[:, :, None] < pos[:, None, :]).astype(np.int64)


def voter_contributions(rule: Rule, profile: Profile) -> np.ndarray:
    """Per-voter additive contributions: scores for positional rules, else pairwise counts."""
    if rule.is_positional:
        return score_matrix(rule, profile)
    return preference_tensor(profile).reshape(profile.n, profile.m * profile.m)


def win_mask(
    rule: Rule, totals: np.ndarray, m: int, c: int, semantics: WinnerSemantics = CO_WINNER
) -> np.ndarray:
    """Boolean mask over rows of ``totals`` telling whether ``c`` wins.

    ``totals`` has shape ``(K, m)`` (positional scores) or ``(K, m*m)``
    (flattened pairwise counts), i.e. sums of :func:`voter_contributions` rows.
    """
    totals = np.asarray(totals)
    if m == 1:
        return np.ones(totals.shape[0], dtype=bool)
    others = [x for x in range(m) if x != c]
    if rule.is_positional:
        own, rest = totals[:, c : c + 1], totals[:, others]
    else:
        n_ab = totals.reshape(-1, m, m)
        if rule.kind == "condorcet":
            return np.all(n_ab[:, c, others] > n_ab[:, others, c], axis=1)
        big = np.iinfo(np.int64).max
        masked = np.where(np.eye(m, dtype=bool), big, n_ab)
        mm = masked.min(axis=2)
        own, rest = mm[:, c : c + 1], mm[:, others]
    if semantics is UNIQUE:
        return np.all(own > rest, axis=1)
    return np.all(own >= rest, axis=1)
