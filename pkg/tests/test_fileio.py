import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turnout.core import CandidateSet, ProbabilisticProfile, Profile
from turnout.errors import ParseError
from turnout.fileio import (
    format_graph,
    format_profile,
    format_record,
    format_set_system,
    parse_graph,
    parse_metadata,
    parse_profile,
    parse_set_system,
)
from turnout.generators import Graph, SetSystem

SAMPLE = """# rule: plurality
candidates a b c
voter 0.5 a b c

voter 1 c b a
voter 2.5e-1 b a c
"""


def test_parse_sample():
    pp = parse_profile(SAMPLE)
    assert pp.candidates.names == ("a", "b", "c")
    assert pp.profile.rankings == ((0, 1, 2), (2, 1, 0), (1, 0, 2))
    assert pp.probs == (0.5, 1.0, 0.25)
    assert parse_metadata(SAMPLE) == {"rule": "plurality"}


def test_no_voters():
    assert parse_profile("candidates x y\n").n == 0


@pytest.mark.parametrize("text", [
    "",
    "# only a comment\n",
    "voter 0.5 a b\n",
    "candidates a a\n",
    "candidates a b\nvoter 0.5 a\n",
    "candidates a b\nvoter x a b\n",
    "candidates a b\nvoter 1.5 a b\n",
    "candidates a b\nvoter -0.1 a b\n",
    "candidates a b\nvoter 0.5 a a\n",
    "candidates a b\nballot 0.5 a b\n",
])
def test_malformed_profiles(text):
    with pytest.raises(ParseError):
        parse_profile(text)


@st.composite
def prob_profiles(draw):
    m = draw(st.integers(1, 5))
    rankings = draw(st.lists(st.permutations(list(range(m))).map(tuple), max_size=6))
    probs = draw(st.lists(st.floats(0.0, 1.0), min_size=len(rankings), max_size=len(rankings)))
    return ProbabilisticProfile(Profile(CandidateSet.default(m), tuple(rankings)), tuple(probs))


@settings(max_examples=100, deadline=None)
@given(pp=prob_profiles())
def test_profile_round_trip(pp):
    assert parse_profile(format_profile(pp, {"note": "x"})) == pp


def test_graph_round_trip():
    graph = Graph(4, ((0, 1), (2, 3), (1, 3)))
    assert parse_graph(format_graph(graph)) == graph


def test_set_system_round_trip():
    system = SetSystem(6, ((0, 1, 2), (3, 4, 5)))
    assert parse_set_system(format_set_system(system)) == system


@pytest.mark.parametrize("text", ["", "graph x\n", "graph 3\nedge 0\n", "graph 3\nedge 0 0\n",
                                  "graph 2\nedge 0 5\n", "graf 2\n"])
def test_malformed_graphs(text):
    with pytest.raises(ParseError):
        parse_graph(text)


@pytest.mark.parametrize("text", ["x3c 4\n", "x3c 3\nset 0 1\n", "x3c 3\nset 0 1 2\nset 2 1 0\n"])
def test_malformed_set_systems(text):
    with pytest.raises(ParseError):
        parse_set_system(text)


class TestRecord:
    def test_key_order_and_omission(self):
        line = format_record(probability=0.5, command="win-prob", trials=None, seed=3)
        assert line == '{"command": "win-prob", "probability": 0.5, "seed": 3}'

    def test_probability_precision(self):
        value = 0.1 + 0.2
        line = format_record(command="x", probability=value)
        assert float(json.loads(line)["probability"]) == value
        assert "0.30000000000000004" in line

    def test_unknown_key(self):
        with pytest.raises(ValueError):
            format_record(command="x", colour="red")

    def test_lists_and_booleans(self):
        record = json.loads(format_record(command="ccauv", decision=True, witness=[0, 2]))
        assert record == {"command": "ccauv", "decision": True, "witness": [0, 2]}
