import itertools
import random

import numpy as np
import pytest

from setvote.core import MajorityRelation, Profile, enumerate_relations, margins
from setvote.mcgarvey import (
    ParityError,
    WeightedMajorityGraph,
    _cancelling_pair,
    realize,
    realize_relation,
)


def random_graph(rng, m, cap):
    parity = rng.choice((0, 1))
    target = np.zeros((m, m), dtype=np.int64)
    for x in range(m):
        for y in range(x + 1, m):
            magnitudes = [v for v in range(-cap, cap + 1) if abs(v) % 2 == parity]
            v = rng.choice(magnitudes)
            target[x, y], target[y, x] = v, -v
    return WeightedMajorityGraph(m, target)


class TestValidation:
    def test_mixed_parity_rejected(self):
        target = np.array([[0, 1, 2], [-1, 0, 0], [-2, 0, 0]])
        with pytest.raises(ParityError):
            WeightedMajorityGraph(3, target)

    def test_asymmetric_rejected(self):
        target = np.array([[0, 1], [1, 0]])
        with pytest.raises(ValueError):
            WeightedMajorityGraph(2, target)

    def test_diagonal_rejected(self):
        target = np.array([[1, 0], [0, 1]])
        with pytest.raises(ValueError):
            WeightedMajorityGraph(2, target)


class TestRealize:
    def test_all_zero_target_is_a_ballot_and_its_reverse(self):
        prof = realize(WeightedMajorityGraph(3, np.zeros((3, 3), dtype=int)))
        assert prof.n == 2
        assert prof.ballots[1] == prof.ballots[0][::-1]
        assert not margins(prof).any()

    def test_fig1_graph_roundtrip(self, fig1):
        target = margins(fig1)
        prof = realize(WeightedMajorityGraph(5, target))
        assert np.array_equal(margins(prof), target)

    def test_two_alternative_margin_three(self):
        graph = WeightedMajorityGraph(2, np.array([[0, 3], [-3, 0]]))
        prof = realize(graph)
        assert prof.n == 3
        assert np.array_equal(margins(prof), graph.target)

    def test_roundtrip_random_graphs(self):
        rng = random.Random(20240901)
        for _ in range(60):
            m = rng.randint(1, 6)
            graph = random_graph(rng, m, 6)
            prof = realize(graph)
            assert np.array_equal(margins(prof), graph.target)
            cap = max(1, int(np.abs(graph.target).max()))
            assert prof.n <= cap * m * m + 1

    def test_deterministic(self):
        graph = WeightedMajorityGraph(4, np.array([
            [0, 2, -2, 0],
            [-2, 0, 4, 2],
            [2, -4, 0, -2],
            [0, -2, 2, 0],
        ]))
        assert realize(graph) == realize(graph)


class TestCancellingPair:
    def test_each_pair_moves_exactly_one_margin(self):
        for m in (2, 3, 4, 5):
            for x, y in itertools.permutations(range(m), 2):
                first, second = _cancelling_pair(x, y, m)
                g = margins(Profile(m, (first, second)))
                expected = np.zeros((m, m), dtype=int)
                expected[x, y], expected[y, x] = 2, -2
                assert np.array_equal(g, expected)


class TestRealizeRelation:
    def test_three_cycle_weight_two(self):
        rel = next(
            r for r in enumerate_relations(3)
            if r.strictly_prefers(0, 1) and r.strictly_prefers(1, 2) and r.strictly_prefers(2, 0)
        )
        prof = realize_relation(rel, 2)
        assert prof.n <= 8 and prof.n % 2 == 0
        g = margins(prof)
        assert g[0, 1] == g[1, 2] == g[2, 0] == 2

    def test_all_ties_weight_two(self):
        rel = MajorityRelation(3, (0, 0, 0))
        assert not margins(realize_relation(rel, 2)).any()

    def test_index_order_weight_one_is_a_single_voter(self):
        rel = MajorityRelation.from_profile(Profile.from_rankings([(0, 1, 2, 3)]))
        prof = realize_relation(rel, 1)
        assert prof.ballots == ((0, 1, 2, 3),)

    def test_parity_conflict_rejected(self):
        rel = MajorityRelation(3, (0, 0, 0))
        with pytest.raises(ParityError):
            realize_relation(rel, 1)

    def test_every_relation_roundtrips(self):
        for m in (1, 2, 3, 4):
            for rel in enumerate_relations(m):
                prof = realize_relation(rel, 2)
                assert MajorityRelation.from_profile(prof) == rel
