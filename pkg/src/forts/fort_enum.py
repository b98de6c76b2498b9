"""Listing the minimal forts of a tree by leaf-rooted breadth-first expansion.

Vocabulary: a vertex is "in" a partial fort or not; forbidden vertices may
never join. Partial forts are ``int`` bitmasks.

Each round picks the lowest-indexed eligible leaf, grows every fort that
contains it one BFS vertex at a time, then deletes that leaf's path branch,
forbids the branch's attachment vertex and repeats on what is left. A fort
found in a later round never contains an earlier start leaf, so rounds are
disjoint.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from . import kernels
from .graph import Graph, NotAForest, NotATree, VertexSet, components, is_forest, is_tree, iter_bits
from .oracle import sort_forts


def decide_neighbors(
    fort: int,
    curr: int,
    prev: int | None,
    neighbors: Sequence[int],
    leaf_neighbors: Sequence[int],
    forbidden: int,
) -> list[int]:
    """Extensions of ``fort`` once the membership of ``curr``'s children is settled.

    ``neighbors`` is the full (ascending) adjacency of ``curr``;
    ``leaf_neighbors`` holds only its *unvisited* leaf neighbors. Returns an
    empty list for a dead branch.
    """
    if prev is None:
        out = [fort | (1 << curr)]
        if not (forbidden >> neighbors[0]) & 1:
            out.append(fort | (1 << curr) | (1 << neighbors[0]))
        return out

    eligible = [v for v in neighbors if v != prev and not (forbidden >> v) & 1]
    curr_in = (fort >> curr) & 1
    prev_in = (fort >> prev) & 1
    if not curr_in:
        if not prev_in:
            return [fort]
        # prev needs exactly one more fort neighbor: it must be a child of curr's
        return [fort | (1 << v) for v in eligible]
    if not prev_in:
        if len(leaf_neighbors) > 1:
            return []
        if len(leaf_neighbors) == 1:
            leaf = leaf_neighbors[0]
            if (forbidden >> leaf) & 1:
                return []
            return [fort | (1 << leaf)]
        return [fort] + [fort | (1 << v) for v in eligible]
    # curr and prev both in: no child may join, and an uncovered leaf child would be forced
    if leaf_neighbors:
        return []
    return [fort]


def _round(t: Graph, alive: int, forbidden: int, start: int) -> list[int]:
    """Every minimal fort of the alive subtree containing ``start`` and avoiding ``forbidden``."""
    adj = [[u for u in t.adj[v] if (alive >> u) & 1] for v in range(t.n)]
    visited = 1 << start
    q_v = deque([start])
    q_prev: deque[int | None] = deque([None])
    q_forts = [0]
    while q_v:
        curr = q_v.popleft()
        prev = q_prev.popleft()
        nbrs = adj[curr]
        leaf_nbrs = [u for u in nbrs if not (visited >> u) & 1 and len(adj[u]) == 1]
        grown = []
        for f in q_forts:
            grown.extend(decide_neighbors(f, curr, prev, nbrs, leaf_nbrs, forbidden))
        q_forts = grown
        for u in nbrs:
            if not (visited >> u) & 1:
                visited |= 1 << u
                q_v.append(u)
                q_prev.append(curr)
    assert len(set(q_forts)) == len(q_forts), "duplicate partial forts in one round"
    return q_forts


def _branch(adj_alive, start: int) -> tuple[int, int | None]:
    branch = 1 << start
    prev, cur = start, adj_alive[start][0]
    while True:
        if len(adj_alive[cur]) > 2:
            return branch, cur
        branch |= 1 << cur
        nxt = [u for u in adj_alive[cur] if u != prev]
        if not nxt:
            return branch, None
        prev, cur = cur, nxt[0]


def _enumerate_bits(t: Graph, alive: int, forbidden: int) -> list[int]:
    found: list[int] = []
    while alive:
        if alive & (alive - 1) == 0:
            if not alive & forbidden:
                found.append(alive)
            break
        adj = {v: [u for u in t.adj[v] if (alive >> u) & 1] for v in iter_bits(alive)}
        leaves = [v for v in adj if len(adj[v]) == 1]
        starts = [v for v in leaves if not (forbidden >> v) & 1]
        if not starts:
            break
        start = starts[0]
        batch = _round(t, alive, forbidden, start)
        assert not set(batch) & set(found), "rounds overlap"
        found.extend(batch)
        branch, attach = _branch(adj, start)
        alive &= ~branch
        if attach is None:
            break
        forbidden |= 1 << attach
        sub, labels = t.induced(iter_bits(alive))
        if not is_tree(sub):  # cannot happen for a pendant path; kept as a guard
            for comp, lab in components(sub):
                keep = sum(1 << labels[i] for i in lab)
                found.extend(_enumerate_bits(t, keep, forbidden))
            break
    return found


def enumerate_minimal_forts(t: Graph, forbidden: VertexSet = VertexSet()) -> list[VertexSet]:
    """All minimal forts of tree ``t`` that avoid ``forbidden``, canonically sorted."""
    if t.n == 0:
        return []
    if not is_tree(t):
        raise NotATree("enumerate_minimal_forts needs a tree")
    return sort_forts(VertexSet(b) for b in _enumerate_bits(t, t.all_vertices, forbidden.bits))


def count_minimal_forts(t: Graph, forbidden: VertexSet = VertexSet()) -> int:
    """Same count as ``len(enumerate_minimal_forts(t, forbidden))`` via the fast kernel."""
    if t.n == 0:
        return 0
    if not is_tree(t):
        raise NotATree("count_minimal_forts needs a tree")
    return int(kernels.count_tree_forts(list(t.masks), forbidden.bits))


def count_minimal_forts_forest(g: Graph) -> int:
    """Sum of per-component counts; an isolated vertex contributes one fort."""
    if not is_forest(g):
        raise NotAForest("graph has a cycle")
    return sum(count_minimal_forts(comp) for comp, _ in components(g))


def minimal_forts_forest(g: Graph) -> list[VertexSet]:
    """Minimal forts of a forest in the parent's labels (union over components)."""
    if not is_forest(g):
        raise NotAForest("graph has a cycle")
    out = []
    for comp, labels in components(g):
        for f in enumerate_minimal_forts(comp):
            out.append(VertexSet.of(labels[v] for v in f))
    return sort_forts(out)
