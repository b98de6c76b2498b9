"""Free-tree generation, named families, canonical tree codes and graph6 I/O."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import kernels
from .graph import CapacityExceeded, Graph, GraphError, NotATree, from_edge_list, is_tree

GENERATION_MAX = 24


class InvalidParameters(ValueError):
    pass


class MalformedGraph6(ValueError):
    pass


def tree_from_levels(levels: Sequence[int]) -> Graph:
    """Tree whose vertex ``i`` sits at depth ``levels[i]`` under the nearest shallower predecessor."""
    edges = []
    stack: list[int] = []
    for i, lv in enumerate(levels):
        while stack and levels[stack[-1]] >= lv:
            stack.pop()
        if stack:
            edges.append((stack[-1], i))
        elif i:
            raise GraphError(f"level sequence {list(levels)} is not rooted at index 0")
        stack.append(i)
    return from_edge_list(edges, len(levels))


def generate_free_level_sequences(n: int) -> Iterator[list[int]]:
    if not 1 <= n <= GENERATION_MAX:
        raise CapacityExceeded(f"tree generation supports 1 <= n <= {GENERATION_MAX}")
    return kernels.free_tree_levels(n)


def generate_free_trees(n: int) -> Iterator[Graph]:
    """Each unlabeled tree on ``n`` vertices exactly once."""
    for levels in generate_free_level_sequences(n):
        yield tree_from_levels(levels)


# --- canonical codes --------------------------------------------------------------------


def tree_centers(t: Graph) -> list[int]:
    n = t.n
    if n <= 2:
        return list(range(n))
    deg = t.degrees()
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for u in t.adj[v]:
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt
    return sorted(layer)


def _rooted_levels(t: Graph, root: int) -> list[int]:
    """Largest level sequence of ``t`` rooted at ``root`` (children in decreasing code order)."""

    def code(v: int, parent: int, depth: int) -> list[int]:
        subs = sorted((code(u, v, depth + 1) for u in t.adj[v] if u != parent), reverse=True)
        out = [depth]
        for s in subs:
            out.extend(s)
        return out

    return code(root, -1, 0)


def canonical_levels(t: Graph) -> tuple[int, ...]:
    """Isomorphism-complete code: the largest center-rooted level sequence."""
    if not is_tree(t):
        raise NotATree("canonical codes are defined for trees")
    return tuple(max(_rooted_levels(t, c) for c in tree_centers(t)))


@dataclass(frozen=True)
class TreeCode:
    level_sequence: tuple[int, ...]
    graph6: str

    @classmethod
    def of(cls, t: Graph) -> TreeCode:
        levels = canonical_levels(t)
        return cls(levels, encode_graph6(tree_from_levels(levels)))

    def tree(self) -> Graph:
        return tree_from_levels(self.level_sequence)


def is_isomorphic_tree(a: Graph, b: Graph) -> bool:
    return a.n == b.n and canonical_levels(a) == canonical_levels(b)


# --- named families ---------------------------------------------------------------------


def path(n: int) -> Graph:
    return from_edge_list([(i, i + 1) for i in range(n - 1)], n)


def star(n: int) -> Graph:
    """Star on ``n`` vertices with center 0."""
    return from_edge_list([(0, i) for i in range(1, n)], n)


def empty_graph(n: int) -> Graph:
    return from_edge_list([], n)


def special_tree_order(k: int, m: int, p: int) -> int:
    return 1 + k + k * m - p


def special_tree(n: int, k: int, m: int, p: int) -> Graph:
    """Height-2 tree: root 0 with ``k`` children; the first ``k-p`` get ``m`` leaves, the rest ``m-1``."""
    if k < 2 or m < 3 or not 0 <= p <= k:
        raise InvalidParameters(f"need k >= 2, m >= 3, 0 <= p <= k; got k={k}, m={m}, p={p}")
    if n != special_tree_order(k, m, p):
        raise InvalidParameters(f"n={n} but 1 + k + km - p = {special_tree_order(k, m, p)}")
    edges = []
    nxt = k + 1
    for i in range(1, k + 1):
        edges.append((0, i))
        for _ in range(m if i <= k - p else m - 1):
            edges.append((i, nxt))
            nxt += 1
    t = from_edge_list(edges, nxt)
    assert t.n == n
    return t


def figure5_left() -> Graph:
    """10-cycle 0..9 with pendant leaves 10 (on vertex 0) and 11 (on the antipodal vertex 5)."""
    edges = [(i, (i + 1) % 10) for i in range(10)] + [(0, 10), (5, 11)]
    return from_edge_list(edges, 12)


def figure5_right() -> Graph:
    """8-cycle 0..7 with the chord 0-4."""
    edges = [(i, (i + 1) % 8) for i in range(8)] + [(0, 4)]
    return from_edge_list(edges, 8)


# --- graph6 -----------------------------------------------------------------------------


def encode_graph6(g: Graph) -> str:
    """Standard graph6 (short form, n <= 62): column-wise upper triangle, 6 bits per byte."""
    n = g.n
    if n > 62:
        raise CapacityExceeded("short-form graph6 supports n <= 62")
    bits = [1 if i in g.adj[j] else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(n + 63)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k : k + 6]:
            v = (v << 1) | b
        out.append(chr(v + 63))
    return "".join(out)


def decode_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise MalformedGraph6("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d <= 63 for d in data):
        raise MalformedGraph6(f"character outside graph6 range in {s!r}")
    n = data[0]
    if n == 63:
        raise MalformedGraph6("long-form graph6 (n > 62) is not supported")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - 1 != need:
        raise MalformedGraph6(f"expected {need} data bytes for n={n}, got {len(data) - 1}")
    bits = [(d >> (5 - k)) & 1 for d in data[1:] for k in range(6)]
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    if any(bits[idx:]):
        raise MalformedGraph6("nonzero padding bits")
    return from_edge_list(edges, n)


def read_graph6_file(path) -> Iterator[Graph]:
    with open(path, encoding="ascii") as fh:
        for line in fh:
            if line.strip():
                yield decode_graph6(line)


def write_graph6_file(path, graphs: Iterable[Graph]) -> int:
    count = 0
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for g in graphs:
            fh.write(encode_graph6(g) + "\n")
            count += 1
    return count


def describe_tree(t: Graph) -> str:
    """Family name when ``t`` is a path, star or special height-2 tree; graph6 otherwise."""
    n = t.n
    code = canonical_levels(t)
    if code == canonical_levels(star(n)) and n >= 3:
        return f"S_{n}"
    if code == canonical_levels(path(n)):
        return f"P_{n}"
    for k in range(2, n):
        for p in range(0, k + 1):
            rem = n - 1 - k + p
            if rem % k == 0 and rem // k >= 3:
                m = rem // k
                if code == canonical_levels(special_tree(n, k, m, p)):
                    return f"T({n},{k},{m},{p})"
    return encode_graph6(t)
