import pytest

from turnout.core import Rule
from turnout.errors import RefusalError, ValidationError
from turnout.generators import (
    Graph,
    SetSystem,
    block_order,
    count_edge_covers_brute,
    count_exact_covers_brute,
    count_matchings_brute,
    gen_condorcet_from_x3c,
    gen_kapproval_from_matching,
    gen_kveto_from_edgecover,
    gen_maximin_from_x3c,
    random_instance,
)
from turnout.zeroness import ccauv_count_brute

TRIANGLE = Graph(3, ((0, 1), (1, 2), (0, 2)))
PATH = Graph(3, ((0, 1), (1, 2)))


def alpha(instance):
    return ccauv_count_brute(instance, Rule.parse(instance.meta["rule"]))


class TestStructures:
    @pytest.mark.parametrize("args", [(2, ((0, 0),)), (2, ((0, 2),)), (3, ((0, 1), (1, 0))), (-1, ())])
    def test_bad_graphs(self, args):
        with pytest.raises(ValidationError):
            Graph(*args)

    @pytest.mark.parametrize("args", [
        (4, ((0, 1, 2),)), (3, ((0, 1, 1),)), (3, ((0, 1, 3),)),
        (3, ((0, 1, 2), (0, 1, 2))), (3, ((0, 1, 2), (2, 1, 0))),
    ])
    def test_bad_set_systems(self, args):
        with pytest.raises(ValidationError):
            SetSystem(*args)

    def test_isolated(self):
        assert Graph(4, ((0, 1),)).isolated == (2, 3)

    def test_block_order(self):
        assert block_order([[0, 1, 2]]) == (0, 1, 2)
        assert block_order([[2], [1, 0]]) == (2, 0, 1)
        assert block_order([[2], [1, 0]]) == block_order([[2], [0, 1]])
        with pytest.raises(ValidationError):
            block_order([[0], [0, 1]])
        with pytest.raises(ValidationError):
            block_order([[0], [2]])


class TestOracles:
    def test_empty_graph(self):
        assert count_matchings_brute(Graph(0, ())) == 1
        assert count_edge_covers_brute(Graph(0, ())) == 1
        assert count_edge_covers_brute(Graph(2, ())) == 0

    def test_triangle(self):
        assert count_matchings_brute(TRIANGLE) == 4
        assert count_edge_covers_brute(TRIANGLE) == 4

    def test_exact_covers(self):
        assert count_exact_covers_brute(SetSystem(3, ((0, 1, 2),))) == 1
        assert count_exact_covers_brute(SetSystem(6, ((0, 1, 2), (3, 4, 5), (0, 3, 4)))) == 1
        assert count_exact_covers_brute(SetSystem(6, ((0, 1, 2), (0, 3, 4), (0, 4, 5)))) == 0

    def test_size_limit(self):
        big = Graph(8, tuple((u, v) for u in range(8) for v in range(u + 1, 8)))
        with pytest.raises(RefusalError):
            count_matchings_brute(big)


class TestMatchings:
    def test_triangle(self):
        inst = gen_kapproval_from_matching(TRIANGLE, 2)
        assert alpha(inst) == 4
        assert inst.meta == {"rule": "approval:2", "count": "matchings"}

    def test_single_edge(self):
        assert alpha(gen_kapproval_from_matching(Graph(2, ((0, 1),)), 2)) == 2

    def test_fillers(self):
        inst = gen_kapproval_from_matching(TRIANGLE, 3)
        assert inst.registered.m == 2 + 3 + 4
        assert alpha(inst) == 4

    def test_bad_k(self):
        with pytest.raises(ValidationError):
            gen_kapproval_from_matching(TRIANGLE, 1)


class TestEdgeCovers:
    def test_triangle(self):
        assert alpha(gen_kveto_from_edgecover(TRIANGLE, 2)) == 4

    def test_path(self):
        assert alpha(gen_kveto_from_edgecover(PATH, 2)) == 1

    def test_isolated_vertex(self):
        inst = gen_kveto_from_edgecover(Graph(3, ((0, 1),)), 2)
        assert inst.meta["isolated_vertices"] == (2,)
        assert alpha(inst) == 0

    def test_fillers(self):
        assert alpha(gen_kveto_from_edgecover(TRIANGLE, 4)) == 4

    def test_bad_k(self):
        with pytest.raises(ValidationError):
            gen_kveto_from_edgecover(TRIANGLE, 1)
        with pytest.raises(ValidationError):
            gen_kveto_from_edgecover(Graph(0, ()), 2)


class TestExactCovers:
    def test_single_triple(self):
        system = SetSystem(3, ((0, 1, 2),))
        assert alpha(gen_condorcet_from_x3c(system)) == 1
        assert alpha(gen_maximin_from_x3c(system)) == 1

    def test_padding_recorded(self):
        assert gen_condorcet_from_x3c(SetSystem(6, ((0, 1, 2),))).meta["padding_sets"] == 1
        big = SetSystem(9, ((0, 1, 2), (3, 4, 5), (6, 7, 8)))
        assert gen_condorcet_from_x3c(big).meta["padding_sets"] == 0

    def test_two_covers(self):
        system = SetSystem(6, ((0, 1, 2), (3, 4, 5), (0, 3, 4), (1, 2, 5)))
        expected = count_exact_covers_brute(system)
        assert expected == 2
        assert alpha(gen_condorcet_from_x3c(system)) == expected
        assert alpha(gen_maximin_from_x3c(system)) == expected

    def test_shared_element_means_no_cover(self):
        system = SetSystem(6, ((0, 1, 2), (0, 3, 4), (0, 4, 5)))
        assert alpha(gen_condorcet_from_x3c(system)) == 0
        assert alpha(gen_maximin_from_x3c(system)) == 0

    def test_three_disjoint_triples(self):
        system = SetSystem(9, ((0, 1, 2), (3, 4, 5), (6, 7, 8), (0, 3, 6)))
        assert alpha(gen_condorcet_from_x3c(system)) == 1
        assert alpha(gen_maximin_from_x3c(system)) == 1


class TestRandomInstance:
    def test_empty(self):
        assert random_instance(3, 0, seed=1).n == 0

    def test_fixed_probability(self):
        assert set(random_instance(3, 5, 1.0, seed=1).probs) == {1.0}

    def test_deterministic(self):
        assert random_instance(4, 7, "mixed", seed=5) == random_instance(4, 7, "mixed", seed=5)
        assert random_instance(4, 7, seed=5) != random_instance(4, 7, seed=6)

    def test_mixed_has_certain_voters(self):
        pp = random_instance(3, 60, "mixed", seed=2)
        assert 5 < sum(p == 1.0 for p in pp.probs) < 40

    def test_bad_arguments(self):
        with pytest.raises(ValidationError):
            random_instance(0, 3)
        with pytest.raises(ValidationError):
            random_instance(3, 3, "gaussian")
        with pytest.raises(ValidationError):
            random_instance(3, 3, 1.5)
