import json
from collections import defaultdict

import numpy as np
import pytest

from hatsim import (Cpdag, Dag, ValidationError, compare_graphs, dag_to_cpdag,
                    graph_from_json, graph_to_json, model_average)

from helpers import all_dags, consensus_cpdag_edges, mec_key


def random_dag(rng, n_nodes, p_edge=0.4, min_edges=1) -> Dag:
    nodes = [f"n{i}" for i in range(n_nodes)]
    while True:
        order = rng.permutation(n_nodes)
        edges = [(nodes[order[i]], nodes[order[j]])
                 for i in range(n_nodes) for j in range(i + 1, n_nodes)
                 if rng.random() < p_edge]
        if len(edges) >= min_edges:
            return Dag.of(nodes, edges)


class TestDagType:
    def test_rejects_cycle(self):
        with pytest.raises(ValidationError):
            Dag.of("ABC", [("A", "B"), ("B", "C"), ("C", "A")])

    def test_rejects_self_loop(self):
        with pytest.raises(ValidationError):
            Dag.of("AB", [("A", "A")])

    def test_rejects_two_cycle(self):
        with pytest.raises(ValidationError):
            Dag.of("AB", [("A", "B"), ("B", "A")])

    def test_rejects_unknown_node(self):
        with pytest.raises(ValidationError):
            Dag.of("AB", [("A", "Z")])


class TestDagToCpdag:
    def test_chain_fully_undirected(self):
        c = dag_to_cpdag(Dag.of("ABC", [("A", "B"), ("B", "C")]))
        assert c.directed == frozenset()
        assert c.undirected == frozenset({("A", "B"), ("B", "C")})

    def test_collider_stays_directed(self):
        c = dag_to_cpdag(Dag.of("ABC", [("A", "C"), ("B", "C")]))
        assert c.directed == frozenset({("A", "C"), ("B", "C")})
        assert c.undirected == frozenset()

    def test_empty(self):
        c = dag_to_cpdag(Dag.of("ABC", []))
        assert c.directed == frozenset() and c.undirected == frozenset()

    def test_meek_propagation(self):
        # Collider plus a tail: A->C<-B, C->D; C->D is compelled (else a new
        # v-structure at C would appear).
        c = dag_to_cpdag(Dag.of("ABCD", [("A", "C"), ("B", "C"), ("C", "D")]))
        assert ("C", "D") in c.directed

    @pytest.mark.parametrize("n_nodes", [3, 4])
    def test_equivalence_classes_map_to_one_cpdag(self, n_nodes):
        nodes = [chr(ord("A") + i) for i in range(n_nodes)]
        classes = defaultdict(list)
        for dag in all_dags(nodes):
            classes[mec_key(dag)].append(dag)
        for members in classes.values():
            results = {(d2.directed, d2.undirected)
                       for d2 in map(dag_to_cpdag, members)}
            assert len(results) == 1
            directed, undirected = consensus_cpdag_edges(members)
            got_directed, got_undirected = results.pop()
            assert got_directed == frozenset(directed)
            assert got_undirected == frozenset(undirected)

    def test_extendability_of_outputs(self, rng):
        for _ in range(25):
            dag = random_dag(rng, 6)
            assert dag_to_cpdag(dag).is_extendable()


class TestCompareGraphs:
    def test_self_comparison(self, rng):
        for _ in range(20):
            dag = random_dag(rng, int(rng.integers(3, 9)))
            cmp_ = compare_graphs(dag, dag)
            assert (cmp_.f1, cmp_.bsf, cmp_.shd) == (1.0, 1.0, 0.0)

    def test_empty_vs_truth_bsf_zero(self):
        truth = Dag.of("ABCD", [("A", "B"), ("C", "D"), ("B", "D")])
        empty = Dag.of("ABCD", [])
        cmp_ = compare_graphs(empty, truth)
        assert cmp_.bsf == 0.0
        assert cmp_.f1 == 0.0
        assert cmp_.tp == 0 and cmp_.fn == 3

    def test_single_reversal_costs_half(self):
        truth = Cpdag.of("ABC", [("A", "B"), ("B", "C")], [])
        learned = Cpdag.of("ABC", [("B", "A"), ("B", "C")], [])
        cmp_ = compare_graphs(learned, truth, as_cpdag=False)
        assert cmp_.shd == 0.5
        assert cmp_.tp == 1 and cmp_.fp == 1 and cmp_.fn == 1

    def test_tp_plus_fn_covers_truth(self, rng):
        truth = random_dag(rng, 6)
        learned = random_dag(rng, 6)
        cmp_ = compare_graphs(learned, truth)
        truth_edges = len(dag_to_cpdag(truth).skeleton())
        assert cmp_.tp + cmp_.fn == truth_edges

    def test_addition_and_deletion_cost_one(self):
        truth = Dag.of("ABC", [("A", "B")])
        learned = Dag.of("ABC", [("A", "B"), ("A", "C")])
        assert compare_graphs(learned, truth, as_cpdag=False).shd == 1.0

    def test_node_mismatch(self):
        with pytest.raises(ValidationError):
            compare_graphs(Dag.of("AB", []), Dag.of("AC", []))


class TestModelAverage:
    def test_identity(self):
        g = Dag.of("ABC", [("A", "B"), ("B", "C")])
        assert model_average([g, g]).edges == g.edges

    def test_count_order(self):
        g1 = Dag.of("AB", [("A", "B")])
        g2 = Dag.of("AB", [("A", "B")])
        g3 = Dag.of("AB", [("B", "A")])
        assert model_average([g1, g2, g3]).edges == frozenset({("A", "B")})

    def test_three_cycle_drops_lowest_lexicographic(self):
        g1 = Dag.of("ABC", [("A", "B"), ("B", "C")])
        g2 = Dag.of("ABC", [("C", "A")])
        merged = model_average([g1, g2])
        assert merged.edges == frozenset({("B", "C"), ("C", "A")})

    def test_cycle_reversal_when_reverse_observed(self):
        g1 = Dag.of("ABC", [("A", "B"), ("B", "C"), ("A", "C")])
        g2 = Dag.of("ABC", [("A", "B"), ("B", "C"), ("A", "C")])
        g3 = Dag.of("ABC", [("C", "A")])
        merged = model_average([g1, g2, g3])
        # C->A closes the cycle; its observed reverse A->C is already present
        assert merged.edges == frozenset({("A", "B"), ("B", "C"), ("A", "C")})

    def test_min_count_threshold(self):
        g1 = Dag.of("AB", [("A", "B")])
        g2 = Dag.of("AB", [])
        assert model_average([g1, g2], min_count=2).edges == frozenset()

    def test_empty_input(self):
        with pytest.raises(ValidationError):
            model_average([])


class TestGraphJson:
    def test_dag_round_trip(self, rng):
        dag = random_dag(rng, 5)
        doc = json.loads(graph_to_json(dag))
        back = graph_from_json(doc)
        assert isinstance(back, Dag)
        assert back.edges == dag.edges

    def test_cpdag_round_trip(self):
        c = Cpdag.of("ABC", [("A", "C")], [("A", "B")])
        back = graph_from_json(json.loads(graph_to_json(c)))
        assert isinstance(back, Cpdag)
        assert back.directed == c.directed
        assert back.undirected == c.undirected
