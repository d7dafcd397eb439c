"""Winning and losing probabilities in elections with uncertain voter attendance."""

from turnout.core import (
    CO_WINNER,
    UNIQUE,
    CandidateSet,
    ProbabilisticProfile,
    Profile,
    Rule,
    ScoreVector,
    WinnerSemantics,
    pairwise_count,
    position_score,
    score_vector_for,
    total_score,
    winners,
)
from turnout.errors import (
    ParseError,
    PreconditionError,
    RefusalError,
    TurnoutError,
    UnsupportedRuleError,
    ValidationError,
)

__all__ = [
    "CO_WINNER",
    "UNIQUE",
    "CandidateSet",
    "ProbabilisticProfile",
    "Profile",
    "Rule",
    "ScoreVector",
    "WinnerSemantics",
    "pairwise_count",
    "position_score",
    "score_vector_for",
    "total_score",
    "winners",
    "ParseError",
    "PreconditionError",
    "RefusalError",
    "TurnoutError",
    "UnsupportedRuleError",
    "ValidationError",
]
