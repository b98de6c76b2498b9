"""Graph model for trees, forests and small general graphs.

Vertex sets are plain ``int`` bitmasks internally; :class:`VertexSet` wraps one
for the public API. Neighbor lists are sorted ascending so that every
downstream iteration order (and therefore every tie-break) is deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


class GraphError(ValueError):
    """Base class for malformed-graph errors."""


class SelfLoop(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class CapacityExceeded(GraphError):
    pass


class NotATree(GraphError):
    pass


class NotAForest(GraphError):
    pass


class NotALeaf(GraphError):
    pass


class ParseError(GraphError):
    pass


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True, order=True)
class VertexSet:
    """Immutable set of vertex ids backed by one bitmask."""

    bits: int = 0

    @classmethod
    def of(cls, vertices: Iterable[int]) -> VertexSet:
        return cls(mask_of(vertices))

    def __contains__(self, v: int) -> bool:
        return v >= 0 and (self.bits >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __or__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.bits | other.bits)

    def __and__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.bits & other.bits)

    def __sub__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.bits & ~other.bits)

    def issubset(self, other: VertexSet) -> bool:
        return self.bits & ~other.bits == 0

    def to_list(self) -> list[int]:
        return list(iter_bits(self.bits))

    def __repr__(self) -> str:
        return f"VertexSet({self.to_list()})"


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``adj[v]`` is the sorted tuple of neighbors of ``v`` and ``masks[v]`` the
    same neighborhood as a bitmask. Instances are immutable.
    """

    __slots__ = ("n", "adj", "masks")

    def __init__(self, n: int, adj: Sequence[Iterable[int]]):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        if n > MAX_VERTICES:
            raise CapacityExceeded(f"{n} vertices exceeds capacity {MAX_VERTICES}")
        if len(adj) != n:
            raise GraphError(f"adjacency has {len(adj)} rows for {n} vertices")
        rows = []
        for v, nbrs in enumerate(adj):
            row = tuple(sorted(set(nbrs)))
            if row and (row[0] < 0 or row[-1] >= n):
                raise VertexOutOfRange(f"neighbor of {v} outside 0..{n - 1}")
            if v in row:
                raise SelfLoop(f"self-loop at vertex {v}")
            rows.append(row)
        for v, row in enumerate(rows):
            for u in row:
                if v not in rows[u]:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(rows))
        object.__setattr__(self, "masks", tuple(mask_of(r) for r in rows))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __reduce__(self):
        return (Graph, (self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"

    @property
    def all_vertices(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(r) for r in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(r) for r in self.adj) // 2

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph relabelled densely; returns it with the map back to ``self``."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        adj = [[index[u] for u in self.adj[v] if u in index] for v in keep]
        return Graph(len(keep), adj), keep


def from_edge_list(edges: Iterable[tuple[int, int]], n: int) -> Graph:
    """Build a graph from an edge list; duplicate edges collapse."""
    if n > MAX_VERTICES:
        raise CapacityExceeded(f"{n} vertices exceeds capacity {MAX_VERTICES}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, adj)


def leaves(g: Graph) -> VertexSet:
    return VertexSet(mask_of(v for v in range(g.n) if len(g.adj[v]) == 1))


def _reach(g: Graph, start: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.masks[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def components(g: Graph) -> list[tuple[Graph, list[int]]]:
    """Connected components as ``(subgraph, labels)`` pairs, ordered by lowest vertex.

    ``labels[i]`` is the parent-graph id of the component's vertex ``i``.
    """
    out = []
    remaining = g.all_vertices
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        comp = _reach(g, start)
        remaining &= ~comp
        out.append(g.induced(iter_bits(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return g.n == 0 or _reach(g, 0) == g.all_vertices


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.edge_count == g.n - 1 and is_connected(g)


def is_forest(g: Graph) -> bool:
    # acyclic iff edges = n - (number of components)
    return g.edge_count == g.n - len(components(g))


@dataclass(frozen=True)
class PathBranch:
    vertices: VertexSet
    leaf: int
    neighbor: int | None


def path_branch_of(t: Graph, leaf: int) -> PathBranch:
    """Maximal run of degree-<=2 vertices hanging off ``leaf``, plus its attachment."""
    if not is_tree(t):
        raise NotATree("path branches are defined for trees")
    if not (0 <= leaf < t.n) or len(t.adj[leaf]) != 1:
        raise NotALeaf(f"vertex {leaf} is not a leaf")
    branch = 1 << leaf
    prev, cur = leaf, t.adj[leaf][0]
    while True:
        if len(t.adj[cur]) > 2:
            return PathBranch(VertexSet(branch), leaf, cur)
        branch |= 1 << cur
        nxt = [u for u in t.adj[cur] if u != prev]
        if not nxt:
            return PathBranch(VertexSet(branch), leaf, None)
        prev, cur = cur, nxt[0]


def bfs_order(g: Graph, root: int) -> tuple[list[int], list[int]]:
    """Breadth-first order from ``root`` with ascending-id expansion; parent of root is -1."""
    parent = [-1] * g.n
    order = [root]
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in g.adj[v]:
            if u not in seen:
                seen.add(u)
                parent[u] = v
                order.append(u)
                queue.append(u)
    return order, parent


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines format; ``#`` starts a comment."""
    tokens: list[int] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        try:
            tokens.extend(int(t) for t in line.split())
        except ValueError as exc:
            raise ParseError(f"non-integer token in line {line!r}") from exc
    if len(tokens) < 2:
        raise ParseError("missing 'n m' header")
    n, m = tokens[0], tokens[1]
    body = tokens[2:]
    if n < 0 or m < 0 or len(body) != 2 * m:
        raise ParseError(f"header promises {m} edges but {len(body) / 2:g} given")
    return from_edge_list(zip(body[0::2], body[1::2]), n)


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"
