import random

import pytest

from turnout.conditional import (
    NOTHING_DECIDED,
    EventKind,
    LoseEvent,
    PartialAssignment,
    TailTable,
    conditional_event_prob,
    event_holds,
    event_prob,
    event_weights,
    exceed_prob_positional,
    lose_event,
    lose_events,
    pairwise_margin_values,
    tie_or_beat_prob_condorcet,
)
from turnout.core import Rule
from turnout.errors import RefusalError, UnsupportedRuleError, ValidationError
from turnout.generators import random_instance

from conftest import all_subsets, pprofile, prob_of

TOL = 1e-9
RULES = [Rule.plurality(), Rule.veto(), Rule.borda(), Rule.k_approval(2), Rule.rfl(1, 1),
         Rule.condorcet()]


def enum_conditional(pp, rule, event, assign):
    free = [i for i in range(pp.n) if i not in assign.decided]
    return sum(
        prob_of(pp, U, free) for U in all_subsets(free)
        if event_holds(rule, pp.profile, event, set(assign.present) | set(U))
    )


def random_assignment(rng, n):
    decided = {i for i in range(n) if rng.random() < 0.4}
    present = {i for i in decided if rng.random() < 0.5}
    return PartialAssignment(frozenset(decided), frozenset(present))


class TestEvents:
    def test_kinds(self):
        assert lose_event(Rule.borda(), 0, 1).kind is EventKind.POSITIONAL_STRICT
        assert lose_event(Rule.condorcet(), 0, 1).kind is EventKind.CONDORCET_TIE_OR_BEAT

    def test_maximin_has_no_events(self):
        with pytest.raises(UnsupportedRuleError):
            lose_event(Rule.maximin(), 0, 1)

    def test_rival_must_differ(self):
        with pytest.raises(ValidationError):
            lose_event(Rule.borda(), 1, 1)

    def test_events_in_rival_order(self):
        assert [e.rival for e in lose_events(Rule.plurality(), 1, 4)] == [0, 2, 3]

    def test_margin_values(self):
        pp = pprofile("abc", ["abc", "cba"], (0.5, 0.5))
        assert pairwise_margin_values(Rule.borda(), pp.profile, 0, 2) == [2, -2]
        with pytest.raises(ValidationError):
            pairwise_margin_values(Rule.borda(), pp.profile, 1, 1)

    def test_mismatched_kind_rejected(self):
        pp = pprofile("ab", ["ab"], (0.5,))
        event = LoseEvent(0, 1, EventKind.CONDORCET_TIE_OR_BEAT)
        with pytest.raises(ValidationError):
            event_weights(Rule.plurality(), pp.profile, event)

    def test_assignment_checks(self):
        with pytest.raises(ValidationError):
            PartialAssignment(frozenset({0}), frozenset({1}))
        pp = pprofile("ab", ["ba"], (0.7,))
        event = lose_event(Rule.plurality(), 0, 1)
        with pytest.raises(ValidationError):
            conditional_event_prob(pp, Rule.plurality(), event, PartialAssignment({3}, set()))


class TestSmallCases:
    def test_forced_presence(self):
        pp = pprofile("ab", ["ba"], (0.7,))
        event = lose_event(Rule.plurality(), 0, 1)
        assert exceed_prob_positional(pp, Rule.plurality(), event) == pytest.approx(0.7)
        forced = PartialAssignment({0}, {0})
        assert exceed_prob_positional(pp, Rule.plurality(), event, forced) == 1.0
        assert event_prob(pp, Rule.plurality(), event) == pytest.approx(0.7)

    def test_condorcet_tie_counts(self):
        event = lose_event(Rule.condorcet(), 0, 1)
        assert tie_or_beat_prob_condorcet(pprofile("ab", ["ba"], (0.5,)), event) == 1.0
        assert tie_or_beat_prob_condorcet(pprofile("ab", ["ab"], (0.5,)), event) == pytest.approx(0.5)

    def test_everyone_absent(self):
        pp = random_instance(3, 6, 0.0, seed=1)
        assert event_prob(pp, Rule.borda(), lose_event(Rule.borda(), 0, 1)) == 0.0
        assert event_prob(pp, Rule.condorcet(), lose_event(Rule.condorcet(), 0, 1)) == 1.0

    def test_wrong_entry_point(self):
        pp = pprofile("ab", ["ab"], (0.5,))
        with pytest.raises(ValidationError):
            tie_or_beat_prob_condorcet(pp, lose_event(Rule.plurality(), 0, 1))
        with pytest.raises(ValidationError):
            exceed_prob_positional(pp, Rule.condorcet(), lose_event(Rule.condorcet(), 0, 1))

    def test_no_voters(self):
        pp = random_instance(3, 0, 0.5, seed=0)
        assert event_prob(pp, Rule.borda(), lose_event(Rule.borda(), 0, 1)) == 0.0
        assert event_prob(pp, Rule.condorcet(), lose_event(Rule.condorcet(), 0, 1)) == 1.0


class TestTailTable:
    def test_window_clamps(self):
        table = TailTable([2, -1], [0.5, 0.5], strict=True)
        assert (table.lo, table.hi) == (-1, 2)
        assert table.query(-5) == 1.0
        assert table.query(7) == 0.0

    def test_strict_vs_weak(self):
        # sum is 0 or 1 with probability 1/2 each
        assert TailTable([1], [0.5], strict=True).query(0) == pytest.approx(0.5)
        assert TailTable([1], [0.5], strict=False).query(0) == 1.0

    def test_keeps_every_row(self):
        table = TailTable([1, 1, -1], [0.2, 0.3, 0.4], strict=True, keep_rows=True)
        assert len(table.rows) == 4
        assert table.rows[-1] is table.last

    def test_large_weights(self):
        table = TailTable([5, -7, 3], [0.5, 0.5, 0.5], strict=True)
        outcomes = [a * 5 - b * 7 + c * 3 for a in (0, 1) for b in (0, 1) for c in (0, 1)]
        for y in range(-9, 10):
            assert table.query(y) == pytest.approx(sum(o > y for o in outcomes) / 8, abs=TOL)

    def test_budget(self):
        with pytest.raises(RefusalError):
            TailTable([50] * 10, [0.5] * 10, strict=True, budget=100)


@pytest.mark.parametrize("rule", RULES, ids=str)
@pytest.mark.parametrize("seed", range(6))
def test_matches_enumeration(rule, seed):
    rng = random.Random(seed)
    n = 10 if rule.kind == "condorcet" else 8
    pp = random_instance(3, n, ["uniform", "mixed"][seed % 2], seed)
    for event in lose_events(rule, seed % 3, 3):
        assign = random_assignment(rng, n)
        assert conditional_event_prob(pp, rule, event, assign) == pytest.approx(
            enum_conditional(pp, rule, event, assign), abs=TOL)
        assert event_prob(pp, rule, event) == pytest.approx(
            enum_conditional(pp, rule, event, NOTHING_DECIDED), abs=TOL)


@pytest.mark.parametrize("rule", RULES, ids=str)
def test_total_probability(rule):
    rng = random.Random(7)
    pp = random_instance(4, 9, "uniform", seed=3)
    for event in lose_events(rule, 1, 4):
        assign = random_assignment(rng, 9)
        free = [i for i in range(9) if i not in assign.decided]
        i = free[0]
        with_i = PartialAssignment(assign.decided | {i}, assign.present | {i})
        without_i = PartialAssignment(assign.decided | {i}, assign.present)
        combined = (pp.probs[i] * conditional_event_prob(pp, rule, event, with_i)
                    + (1 - pp.probs[i]) * conditional_event_prob(pp, rule, event, without_i))
        assert conditional_event_prob(pp, rule, event, assign) == pytest.approx(combined, abs=TOL)


def test_event_holds_matches_weights():
    pp = random_instance(4, 7, 0.5, seed=8)
    for rule in RULES:
        for event in lose_events(rule, 2, 4):
            weights, strict = event_weights(rule, pp.profile, event)
            for U in all_subsets(range(7)):
                margin = sum(weights[i] for i in U)
                assert event_holds(rule, pp.profile, event, U) == (margin > 0 or (not strict and margin == 0))
