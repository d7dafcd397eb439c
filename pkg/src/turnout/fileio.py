"""Text formats for profiles, graphs and set systems, and the result record.

Profile files::

    # comment
    candidates a b c
    voter 0.5 a b c
    voter 1 c b a

Graph files start with ``graph <vertices>`` followed by ``edge <u> <v>`` lines;
set-system files start with ``x3c <universe size>`` followed by
``set <a> <b> <c>`` lines. Indices are 0-based.
"""

from __future__ import annotations

import json
from typing import Any, Iterator

from turnout.core import CandidateSet, ProbabilisticProfile, Profile
from turnout.errors import ParseError, ValidationError
from turnout.generators import Graph, SetSystem


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, stripped.split()


def parse_metadata(text: str) -> dict[str, str]:
    """``# key: value`` comment lines."""
    meta = {}
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("#") and ":" in stripped:
            key, _, value = stripped[1:].partition(":")
            meta[key.strip()] = value.strip()
    return meta


def parse_profile(text: str) -> ProbabilisticProfile:
    lines = _content_lines(text)
    try:
        lineno, tokens = next(lines)
    except StopIteration:
        raise ParseError("missing 'candidates' line") from None
    if tokens[0] != "candidates" or len(tokens) < 2:
        raise ParseError(f"line {lineno}: expected 'candidates <name>+'")
    try:
        candidates = CandidateSet(tuple(tokens[1:]))
    except ValidationError as exc:
        raise ParseError(f"line {lineno}: {exc}") from None

    rankings, probs = [], []
    for lineno, tokens in lines:
        if tokens[0] != "voter" or len(tokens) != candidates.m + 2:
            raise ParseError(f"line {lineno}: expected 'voter <prob>' and {candidates.m} names")
        try:
            p = float(tokens[1])
        except ValueError:
            raise ParseError(f"line {lineno}: bad probability {tokens[1]!r}") from None
        if not 0.0 <= p <= 1.0:
            raise ParseError(f"line {lineno}: probability {p} outside [0, 1]")
        names = tokens[2:]
        if sorted(names) != sorted(candidates.names):
            raise ParseError(f"line {lineno}: voter ranking is not a permutation of the candidates")
        rankings.append(tuple(candidates.index(x) for x in names))
        probs.append(p)
    return ProbabilisticProfile(Profile(candidates, tuple(rankings)), tuple(probs))


def format_profile(pp: ProbabilisticProfile, meta: dict[str, Any] | None = None) -> str:
    names = pp.candidates.names
    out = [f"# {key}: {value}" for key, value in (meta or {}).items()]
    out.append("candidates " + " ".join(names))
    for ranking, p in zip(pp.profile.rankings, pp.probs):
        out.append(f"voter {p!r} " + " ".join(names[c] for c in ranking))
    return "\n".join(out) + "\n"


def _header(text: str, keyword: str) -> tuple[int, Iterator[tuple[int, list[str]]]]:
    lines = _content_lines(text)
    try:
        lineno, tokens = next(lines)
    except StopIteration:
        raise ParseError(f"missing '{keyword}' line") from None
    if tokens[0] != keyword or len(tokens) != 2 or not tokens[1].isdigit():
        raise ParseError(f"line {lineno}: expected '{keyword} <n>'")
    return int(tokens[1]), lines


def _indices(lineno: int, tokens: list[str], keyword: str, arity: int) -> tuple[int, ...]:
    if tokens[0] != keyword or len(tokens) != arity + 1 or not all(t.isdigit() for t in tokens[1:]):
        raise ParseError(f"line {lineno}: expected '{keyword}' and {arity} indices")
    return tuple(int(t) for t in tokens[1:])


def parse_graph(text: str) -> Graph:
    vertices, lines = _header(text, "graph")
    edges = [_indices(lineno, tokens, "edge", 2) for lineno, tokens in lines]
    try:
        return Graph(vertices, tuple(edges))
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def parse_set_system(text: str) -> SetSystem:
    size, lines = _header(text, "x3c")
    sets = [_indices(lineno, tokens, "set", 3) for lineno, tokens in lines]
    try:
        return SetSystem(size, tuple(sets))
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def format_graph(graph: Graph) -> str:
    return "".join([f"graph {graph.vertex_count}\n"] + [f"edge {u} {v}\n" for u, v in graph.edges])


def format_set_system(system: SetSystem) -> str:
    lines = [f"x3c {system.universe_size}\n"] + [f"set {a} {b} {c}\n" for a, b, c in system.sets]
    return "".join(lines)


RECORD_KEYS = (
    "command", "rule", "candidate", "method", "probability", "trials", "seed",
    "decision", "witness", "winners", "count", "files",
)


def format_record(**fields: Any) -> str:
    """One-line JSON object; ``probability`` keeps 17 significant digits."""
    parts = []
    for key in RECORD_KEYS:
        if key not in fields or fields[key] is None:
            continue
        value = fields[key]
        if key == "probability":
            encoded = format(float(value), ".17g")
        else:
            encoded = json.dumps(value)
        parts.append(f"{json.dumps(key)}: {encoded}")
    unknown = set(fields) - set(RECORD_KEYS)
    if unknown:
        raise ValueError(f"unknown record keys {sorted(unknown)}")
    return "{" + ", ".join(parts) + "}"
