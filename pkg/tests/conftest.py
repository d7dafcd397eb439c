import itertools

import pytest

from turnout.core import CO_WINNER, ProbabilisticProfile, Profile, winners


def all_subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def prob_of(pp: ProbabilisticProfile, chosen, voters=None):
    """Probability that, among ``voters`` (default: all), exactly ``chosen`` attend."""
    voters = range(pp.n) if voters is None else voters
    chosen = set(chosen)
    prob = 1.0
    for i in voters:
        prob *= pp.probs[i] if i in chosen else 1.0 - pp.probs[i]
    return prob


def enum_win_prob(pp, rule, c, semantics=CO_WINNER):
    """Scalar oracle: enumerate subsets and call the plain winner routine."""
    return sum(
        prob_of(pp, U) for U in all_subsets(range(pp.n))
        if c in winners(rule, pp.profile.subprofile(U), semantics)
    )


def profile(names, *ballots):
    return Profile.from_names(names, [list(b) for b in ballots])


def pprofile(names, ballots, probs):
    return ProbabilisticProfile(Profile.from_names(names, ballots), tuple(probs))


@pytest.fixture
def abc():
    return ("a", "b", "c")


ACCEPTANCE_LINES: list[str] = []


def report(label: str, ok: bool, detail: str) -> None:
    """Record and print one acceptance line; the terminal summary repeats them."""
    line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
