from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import nx_to_graph, random_tree
from forts.graph import CapacityExceeded, from_edge_list, is_tree
from forts.treegen import (
    InvalidParameters,
    MalformedGraph6,
    TreeCode,
    canonical_levels,
    decode_graph6,
    describe_tree,
    empty_graph,
    encode_graph6,
    figure5_left,
    figure5_right,
    generate_free_level_sequences,
    generate_free_trees,
    is_isomorphic_tree,
    path,
    read_graph6_file,
    special_tree,
    star,
    tree_centers,
    tree_from_levels,
    write_graph6_file,
)

# unlabeled trees on n vertices, n = 1..20
FREE_TREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320, 48629, 123867,
                    317955, 823065]


def prufer_classes(n):
    seen = set()
    for seq in itertools.product(range(n), repeat=n - 2):
        seen.add(canonical_levels(nx_to_graph(nx.from_prufer_sequence(list(seq)))))
    return seen


def leaf_extension_classes(n_max):
    """Every tree on n vertices is a tree on n-1 vertices plus one leaf."""
    level = {canonical_levels(path(1))}
    out = {1: level}
    for n in range(2, n_max + 1):
        nxt = set()
        for code in level:
            t = tree_from_levels(code)
            for v in range(t.n):
                nxt.add(canonical_levels(from_edge_list(t.edges() + [(v, t.n)], t.n + 1)))
        out[n] = level = nxt
    return out


@pytest.mark.parametrize("n", range(1, 15))
def test_counts_small(n):
    assert sum(1 for _ in generate_free_level_sequences(n)) == FREE_TREE_COUNTS[n - 1]


@pytest.mark.parametrize("n", range(3, 8))
def test_matches_prufer_dedup(n):
    assert {canonical_levels(t) for t in generate_free_trees(n)} == prufer_classes(n)


def test_matches_leaf_extension_up_to_12():
    ref = leaf_extension_classes(12)
    for n in range(1, 13):
        got = [canonical_levels(t) for t in generate_free_trees(n)]
        assert len(got) == len(set(got))
        assert set(got) == ref[n]


@pytest.mark.parametrize("n", range(2, 12))
def test_matches_networkx_generator(n):
    ours = {canonical_levels(t) for t in generate_free_trees(n)}
    theirs = {canonical_levels(nx_to_graph(h)) for h in nx.nonisomorphic_trees(n)}
    assert ours == theirs


def test_generation_cap():
    with pytest.raises(CapacityExceeded):
        list(generate_free_level_sequences(25))
    with pytest.raises(CapacityExceeded):
        list(generate_free_level_sequences(0))


def test_generated_trees_are_trees():
    for n in range(1, 12):
        assert all(is_tree(t) and t.n == n for t in generate_free_trees(n))


def test_centers():
    assert tree_centers(path(5)) == [2]
    assert tree_centers(path(4)) == [1, 2]
    assert tree_centers(star(6)) == [0]


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 30), st.randoms(use_true_random=False))
def test_canonical_code_is_label_invariant(n, r):
    t = random_tree(n, r)
    perm = list(range(n))
    r.shuffle(perm)
    u = from_edge_list([(perm[a], perm[b]) for a, b in t.edges()], n)
    assert canonical_levels(t) == canonical_levels(u)
    assert TreeCode.of(t) == TreeCode.of(u)
    assert is_isomorphic_tree(TreeCode.of(t).tree(), t)


def test_canonical_code_agrees_with_networkx_isomorphism():
    rng = random.Random(8)
    for _ in range(150):
        n = rng.randint(5, 11)
        a, b = random_tree(n, rng), random_tree(n, rng)
        same = nx.is_isomorphic(nx.Graph(a.edges()), nx.Graph(b.edges()))
        assert is_isomorphic_tree(a, b) == same


def test_named_families():
    t = special_tree(19, 4, 4, 2)
    assert t.n == 19 and t.degree(0) == 4
    assert sorted(t.degree(v) for v in t.adj[0]) == [4, 4, 5, 5]
    assert special_tree(20, 4, 4, 1).n == 20
    assert star(5).degree(0) == 4
    assert empty_graph(4).edge_count == 0
    with pytest.raises(InvalidParameters):
        special_tree(19, 4, 4, 1)
    with pytest.raises(InvalidParameters):
        special_tree(10, 3, 2, 0)
    with pytest.raises(InvalidParameters):
        special_tree(9, 2, 4, 3)


def test_figure5_shapes():
    left, right = figure5_left(), figure5_right()
    assert (left.n, left.edge_count) == (12, 12)
    assert (right.n, right.edge_count) == (8, 9)


def test_graph6_known_strings():
    assert encode_graph6(path(2)) == "A_"
    assert decode_graph6("A?") == empty_graph(2)
    assert decode_graph6(">>graph6<<A_") == path(2)


def test_graph6_matches_networkx():
    rng = random.Random(2)
    for _ in range(60):
        g = nx_to_graph(nx.gnp_random_graph(rng.randint(1, 40), 0.3, seed=rng.randrange(1 << 30)))
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges())
        assert encode_graph6(g) == nx.to_graph6_bytes(h, header=False).decode().strip()


@pytest.mark.parametrize("n", range(1, 11))
def test_graph6_round_trip_trees(n):
    for t in generate_free_trees(n):
        assert decode_graph6(encode_graph6(t)) == t


@pytest.mark.parametrize("bad", ["", "A", "A__", "B\x7f", "~??", "A`"])
def test_graph6_malformed(bad):
    with pytest.raises(MalformedGraph6):
        decode_graph6(bad)


def test_graph6_file_round_trip(tmp_path):
    f = tmp_path / "t.g6"
    trees = list(generate_free_trees(7))
    assert write_graph6_file(f, trees) == 11
    assert list(read_graph6_file(f)) == trees


def test_describe_tree():
    assert describe_tree(star(7)) == "S_7"
    assert describe_tree(path(6)) == "P_6"
    assert describe_tree(special_tree(19, 4, 4, 2)) == "T(19,4,4,2)"
    spider = from_edge_list([(0, 1), (1, 2), (2, 3), (0, 4), (0, 5), (5, 6)], 7)
    assert describe_tree(spider) == encode_graph6(spider)
