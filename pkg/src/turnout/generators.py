"""Reduction instances with known counts, counting oracles, and random profiles.

Each ``gen_*`` function turns a combinatorial object into a CCAUV instance
whose number of successful pool sublists equals a classical count (matchings,
edge covers, exact covers). ``meta["count"]`` names that count and
``meta["rule"]`` the rule the instance is meant for.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from turnout.core import CandidateSet, ProbabilisticProfile, Profile, Rule, Ranking
from turnout.errors import RefusalError, ValidationError
from turnout.zeroness import CcauvInstance

ORACLE_LIMIT = 20


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValidationError("vertex count must be non-negative")
        edges = tuple(tuple(sorted((int(u), int(v)))) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        for u, v in edges:
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if v >= self.vertex_count or u < 0:
                raise ValidationError(f"edge ({u}, {v}) out of range")
        if len(set(edges)) != len(edges):
            raise ValidationError("duplicate edge")

    @property
    def isolated(self) -> tuple[int, ...]:
        touched = {x for e in self.edges for x in e}
        return tuple(v for v in range(self.vertex_count) if v not in touched)


@dataclass(frozen=True)
class SetSystem:
    universe_size: int
    sets: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        if self.universe_size < 3 or self.universe_size % 3:
            raise ValidationError("universe size must be a positive multiple of 3")
        sets = tuple(tuple(sorted(int(x) for x in s)) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        for s in sets:
            if len(s) != 3 or len(set(s)) != 3:
                raise ValidationError(f"{s} is not a set of three distinct elements")
            if s[0] < 0 or s[-1] >= self.universe_size:
                raise ValidationError(f"{s} has elements outside the universe")
        if len(set(sets)) != len(sets):
            raise ValidationError("duplicate set")

    @property
    def q(self) -> int:
        return self.universe_size // 3


def block_order(blocks: Sequence[Sequence[int]]) -> Ranking:
    """Ranking with the blocks in the given order, each block ascending."""
    flat = [c for block in blocks for c in sorted(block)]
    if sorted(flat) != list(range(len(flat))):
        raise ValidationError("blocks do not partition the candidate set")
    return tuple(flat)


def _rest(m: int, *taken: Sequence[int]) -> list[int]:
    used = {x for block in taken for x in block}
    return [x for x in range(m) if x not in used]


def gen_kapproval_from_matching(graph: Graph, k: int) -> CcauvInstance:
    """k-approval instance whose successful sublists are the matchings of ``graph``.

    Candidates are ``c, d``, one per vertex, and ``|E| + 1`` filler blocks of
    ``k - 2`` candidates. The registered voter approves ``c``, ``d`` and filler
    block 0; the pool voter of edge ``i`` approves its endpoints and block ``i + 1``.
    """
    if k < 2:
        raise ValidationError("k-approval reduction needs k >= 2")
    nv, ne = graph.vertex_count, len(graph.edges)
    names = ["c", "d"] + [f"u{v}" for v in range(nv)]
    names += [f"f{i}_{j}" for i in range(ne + 1) for j in range(k - 2)]
    m = len(names)
    if k >= m:
        raise ValidationError(f"k={k} needs more than {m} candidates; the graph is too small")
    filler = [[2 + nv + i * (k - 2) + j for j in range(k - 2)] for i in range(ne + 1)]

    top = [0, 1] + filler[0]
    registered = [block_order([top, _rest(m, top)])]
    pool = []
    for i, (u, v) in enumerate(graph.edges):
        top = [2 + u, 2 + v] + filler[i + 1]
        pool.append(block_order([top, _rest(m, top)]))
    cands = CandidateSet(names)
    return CcauvInstance(
        Profile(cands, tuple(registered)),
        Profile(cands, tuple(pool)),
        0,
        {"rule": str(Rule.k_approval(k)), "count": "matchings"},
    )


def gen_kveto_from_edgecover(graph: Graph, k: int) -> CcauvInstance:
    """k-veto instance whose successful sublists are the edge covers of ``graph``.

    Candidates are ``c, d``, one per vertex and ``k - 2`` fillers. The registered
    voter vetoes ``c``, ``d`` and the fillers; the pool voter of an edge vetoes
    its endpoints and the fillers. Graphs with isolated vertices are allowed
    (nothing covers them, so the count is 0) and flagged in ``meta``.
    """
    if k < 2:
        raise ValidationError("k-veto reduction needs k >= 2")
    nv = graph.vertex_count
    names = ["c", "d"] + [f"u{v}" for v in range(nv)] + [f"f{j}" for j in range(k - 2)]
    m = len(names)
    if k >= m:
        raise ValidationError(f"k={k} needs more than {m} candidates; the graph is too small")
    fillers = list(range(2 + nv, m))

    bottom = [0, 1] + fillers
    registered = [block_order([_rest(m, bottom), bottom])]
    pool = []
    for u, v in graph.edges:
        bottom = [2 + u, 2 + v] + fillers
        pool.append(block_order([_rest(m, bottom), bottom]))
    cands = CandidateSet(names)
    return CcauvInstance(
        Profile(cands, tuple(registered)),
        Profile(cands, tuple(pool)),
        0,
        {
            "rule": str(Rule.k_veto(k)),
            "count": "edge-covers",
            "isolated_vertices": graph.isolated,
        },
    )


def _padded(system: SetSystem, min_q: int) -> tuple[SetSystem, int]:
    """Add fresh elements covered by single fresh triples until ``q >= min_q``.

    Each fresh triple is the only set touching its elements, so every exact
    cover of the padded system is an exact cover of the original plus all
    fresh triples: the count is unchanged.
    """
    extra = max(0, min_q - system.q)
    start = system.universe_size
    fresh = tuple((start + 3 * i, start + 3 * i + 1, start + 3 * i + 2) for i in range(extra))
    return SetSystem(system.universe_size + 3 * extra, system.sets + fresh), extra


def gen_condorcet_from_x3c(system: SetSystem) -> CcauvInstance:
    """Condorcet instance whose successful sublists are the exact covers.

    Registered: ``q - 1`` voters ``(U, c, d)`` and two voters ``(c, d, U)``;
    the pool voter of set ``e`` ranks ``e, d, c, U - e``. With ``q <= 2`` the
    empty sublist would also make ``c`` win, so small systems are first padded
    to ``q = 3`` with fresh disjoint triples (``meta["padding_sets"]``).
    """
    padded, extra = _padded(system, 3)
    q, size = padded.q, padded.universe_size
    names = ["c", "d"] + [f"u{x}" for x in range(size)]
    m = len(names)
    universe = list(range(2, m))

    registered = [block_order([universe, [0], [1]])] * (q - 1)
    registered += [block_order([[0], [1], universe])] * 2
    pool = []
    for e in padded.sets:
        members = [2 + x for x in e]
        pool.append(block_order([members, [1], [0], _rest(m, members, [0, 1])]))
    cands = CandidateSet(names)
    return CcauvInstance(
        Profile(cands, tuple(registered)),
        Profile(cands, tuple(pool)),
        0,
        {"rule": "condorcet", "count": "exact-covers", "padding_sets": extra},
    )


def gen_maximin_from_x3c(system: SetSystem) -> CcauvInstance:
    """Maximin instance whose successful sublists are the exact covers.

    Registered (``4q`` voters): ``q`` x ``(c, d, U, w)``, ``q - 1`` x
    ``(c, U, w, d)``, one ``(U, c, w, d)`` and ``2q`` x ``(d, w, U, c)``; the pool
    voter of set ``e`` ranks ``w, U - e, c, e, d``.
    """
    q, size = system.q, system.universe_size
    names = ["c", "d", "w"] + [f"u{x}" for x in range(size)]
    m = len(names)
    c, d, w = [0], [1], [2]
    universe = list(range(3, m))

    registered = [block_order([c, d, universe, w])] * q
    registered += [block_order([c, universe, w, d])] * (q - 1)
    registered += [block_order([universe, c, w, d])]
    registered += [block_order([d, w, universe, c])] * (2 * q)
    pool = []
    for e in system.sets:
        members = [3 + x for x in e]
        pool.append(block_order([w, _rest(m, members, c, d, w), c, members, d]))
    cands = CandidateSet(names)
    return CcauvInstance(
        Profile(cands, tuple(registered)),
        Profile(cands, tuple(pool)),
        0,
        {"rule": "maximin", "count": "exact-covers"},
    )


def _check_oracle_size(k: int) -> None:
    if k > ORACLE_LIMIT:
        raise RefusalError(f"counting oracle refused: {k} items exceeds the limit of {ORACLE_LIMIT}")


def _edge_subsets(graph: Graph):
    for r in range(len(graph.edges) + 1):
        yield from itertools.combinations(graph.edges, r)


def count_matchings_brute(graph: Graph) -> int:
    _check_oracle_size(len(graph.edges))
    count = 0
    for chosen in _edge_subsets(graph):
        ends = [x for e in chosen for x in e]
        count += len(ends) == len(set(ends))
    return count


def count_edge_covers_brute(graph: Graph) -> int:
    _check_oracle_size(len(graph.edges))
    count = 0
    for chosen in _edge_subsets(graph):
        count += len({x for e in chosen for x in e}) == graph.vertex_count
    return count


def count_exact_covers_brute(system: SetSystem) -> int:
    """Number of ``q``-element subcollections of pairwise disjoint sets covering the universe."""
    _check_oracle_size(len(system.sets))
    count = 0
    for r in range(len(system.sets) + 1):
        for chosen in itertools.combinations(system.sets, r):
            covered = [x for s in chosen for x in s]
            disjoint = len(covered) == len(set(covered))
            count += r == system.q and disjoint and len(set(covered)) == system.universe_size
    return count


ProbMode = Union[str, float]


def random_instance(m: int, n: int, prob_mode: ProbMode = "uniform", seed: int = 0) -> ProbabilisticProfile:
    """``n`` uniformly random rankings over ``c0 .. c{m-1}``.

    ``prob_mode`` is ``"uniform"`` (each ``p`` uniform in [0, 1)), ``"mixed"``
    (a third of the voters certain, the rest uniform) or a fixed probability.
    """
    if m < 1 or n < 0:
        raise ValidationError("random_instance needs m >= 1 and n >= 0")
    rng = np.random.default_rng(seed)
    rankings = tuple(tuple(int(x) for x in rng.permutation(m)) for _ in range(n))
    if prob_mode == "uniform":
        probs = rng.random(n)
    elif prob_mode == "mixed":
        probs = np.where(rng.random(n) < 1 / 3, 1.0, rng.random(n))
    else:
        try:
            fixed = float(prob_mode)
        except (TypeError, ValueError):
            raise ValidationError(f"unknown probability mode {prob_mode!r}") from None
        probs = np.full(n, fixed)
    return ProbabilisticProfile(Profile(CandidateSet.default(m), rankings), tuple(probs))
