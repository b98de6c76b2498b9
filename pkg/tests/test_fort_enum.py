from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_tree
from forts.fort_enum import (
    count_minimal_forts,
    count_minimal_forts_forest,
    decide_neighbors,
    enumerate_minimal_forts,
    minimal_forts_forest,
)
from forts.graph import NotAForest, NotATree, VertexSet, from_edge_list
from forts.oracle import brute_force_minimal_forts, is_minimal_fort
from forts.treegen import empty_graph, figure5_right, generate_free_trees, path, special_tree, star

V = VertexSet.of


def test_decide_start_leaf():
    # P_3 from leaf 0: {0} alone, or {0, 1}
    assert decide_neighbors(0, 0, None, [1], [], 0) == [0b001, 0b011]
    assert decide_neighbors(0, 0, None, [1], [], 0b010) == [0b001]


def test_decide_both_out_passes_through():
    assert decide_neighbors(0b1, 2, 1, [1, 3, 4], [4], 0) == [0b1]


def test_decide_both_in_with_leaf_child_dies():
    assert decide_neighbors(0b110, 2, 1, [1, 3], [3], 0) == []
    assert decide_neighbors(0b110, 2, 1, [1, 3], [], 0) == [0b110]


def test_decide_prev_in_curr_out_picks_one_child():
    got = decide_neighbors(0b10, 2, 1, [1, 3, 4], [], 0b10000)
    assert got == [0b1010]


def test_decide_curr_in_prev_out_leaf_rules():
    assert decide_neighbors(0b100, 2, 1, [1, 3, 4], [3, 4], 0) == []
    assert decide_neighbors(0b100, 2, 1, [1, 3], [3], 0) == [0b1100]
    assert decide_neighbors(0b100, 2, 1, [1, 3], [3], 0b1000) == []
    assert decide_neighbors(0b100, 2, 1, [1, 3, 4], [], 0) == [0b100, 0b1100, 0b10100]


def test_enumerate_examples():
    assert enumerate_minimal_forts(path(3)) == [V([0, 2])]
    assert enumerate_minimal_forts(star(4)) == [V([1, 2]), V([1, 3]), V([2, 3])]
    assert len(enumerate_minimal_forts(special_tree(19, 4, 4, 2))) == 162
    assert enumerate_minimal_forts(path(1)) == [V([0])]
    assert enumerate_minimal_forts(path(2)) == [V([0, 1])]
    assert enumerate_minimal_forts(empty_graph(0)) == []


def test_enumerate_rejects_non_trees():
    with pytest.raises(NotATree):
        enumerate_minimal_forts(figure5_right())
    with pytest.raises(NotATree):
        count_minimal_forts(empty_graph(3))


@pytest.mark.parametrize("n", range(1, 11))
def test_matches_oracle_on_all_small_trees(n):
    for t in generate_free_trees(n):
        expect = brute_force_minimal_forts(t)
        assert enumerate_minimal_forts(t) == expect
        assert count_minimal_forts(t) == len(expect)


def test_forbidden_means_avoided():
    rng = random.Random(5)
    for n in range(2, 9):
        for t in generate_free_trees(n):
            full = brute_force_minimal_forts(t)
            for _ in range(4):
                forb = VertexSet(rng.getrandbits(n) & rng.getrandbits(n))
                expect = [f for f in full if not f.bits & forb.bits]
                assert enumerate_minimal_forts(t, forb) == expect
                assert count_minimal_forts(t, forb) == len(expect)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 16), st.randoms(use_true_random=False))
def test_outputs_are_minimal_forts(n, r):
    t = random_tree(n, r)
    forts = enumerate_minimal_forts(t)
    assert forts == sorted(set(forts), key=VertexSet.to_list)
    assert all(is_minimal_fort(t, f) for f in forts)
    assert len(forts) == count_minimal_forts(t)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 60), st.randoms(use_true_random=False))
def test_count_matches_listing_on_larger_trees(n, r):
    t = random_tree(n, r)
    assert count_minimal_forts(t) == len(enumerate_minimal_forts(t))


def test_label_invariance():
    rng = random.Random(11)
    for _ in range(30):
        t = random_tree(rng.randint(3, 14), rng)
        perm = list(range(t.n))
        rng.shuffle(perm)
        u = from_edge_list([(perm[a], perm[b]) for a, b in t.edges()], t.n)
        assert count_minimal_forts(u) == count_minimal_forts(t)
        relabeled = sorted((V(perm[v] for v in f) for f in enumerate_minimal_forts(t)), key=VertexSet.to_list)
        assert relabeled == enumerate_minimal_forts(u)


def test_forest_counts():
    assert count_minimal_forts_forest(empty_graph(4)) == 4
    g = from_edge_list([(0, 1), (1, 2), (3, 4), (3, 5), (3, 6)], 7)
    assert count_minimal_forts_forest(g) == 1 + 3
    assert minimal_forts_forest(g) == brute_force_minimal_forts(g)
    assert count_minimal_forts_forest(star(6)) == count_minimal_forts(star(6))
    with pytest.raises(NotAForest):
        count_minimal_forts_forest(figure5_right())


def test_forest_union_matches_oracle():
    rng = random.Random(3)
    for _ in range(25):
        n = rng.randint(2, 12)
        edges = []
        for v in range(1, n):
            if rng.random() < 0.7:
                edges.append((rng.randrange(v), v))
        g = from_edge_list(edges, n)
        assert minimal_forts_forest(g) == brute_force_minimal_forts(g)
