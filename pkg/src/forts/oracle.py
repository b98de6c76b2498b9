"""Ground-truth zero forcing and brute-force minimal fort enumeration.

Nothing here depends on the tree enumerator; these routines are the reference
it is validated against, and they work on arbitrary small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, VertexSet, bfs_order, is_tree, iter_bits

ORACLE_MAX_VERTICES = 24
_BLOCK = 1 << 20


class TooLargeForOracle(ValueError):
    pass


def _closure_bits(g: Graph, colored: int) -> int:
    full = g.all_vertices
    masks = g.masks
    while True:
        forced = 0
        for v in iter_bits(colored):
            unc = masks[v] & ~colored
            if unc and unc & (unc - 1) == 0:
                forced |= unc
        if not forced:
            return colored & full
        colored |= forced


def closure(g: Graph, initial: VertexSet) -> VertexSet:
    """Fixed point of the color-change rule started from ``initial``."""
    return VertexSet(_closure_bits(g, initial.bits))


def _is_fort_bits(g: Graph, f: int) -> bool:
    if f == 0:
        return False
    outside = g.all_vertices & ~f
    for v in iter_bits(outside):
        if (g.masks[v] & f).bit_count() == 1:
            return False
    return True


def is_fort(g: Graph, f: VertexSet) -> bool:
    return _is_fort_bits(g, f.bits)


def _is_minimal_fort_bits(g: Graph, f: int) -> bool:
    if not _is_fort_bits(g, f):
        return False
    full = g.all_vertices
    rest = full & ~f
    return all(_closure_bits(g, rest | (1 << v)) == full for v in iter_bits(f))


def is_minimal_fort(g: Graph, f: VertexSet) -> bool:
    """Fort test plus: coloring the complement and any one fort vertex forces everything."""
    return _is_minimal_fort_bits(g, f.bits)


def sort_forts(forts) -> list[VertexSet]:
    return sorted(forts, key=VertexSet.to_list)


def _fort_masks(g: Graph) -> np.ndarray:
    """All fort bitmasks of ``g`` by a vectorized scan of every nonempty subset."""
    n = g.n
    chunks = []
    for lo in range(1, 1 << n, _BLOCK):
        hi = min(lo + _BLOCK, 1 << n)
        s = np.arange(lo, hi, dtype=np.uint64)
        ok = np.ones(s.shape, dtype=bool)
        for v in range(n):
            outside = ((s >> np.uint64(v)) & np.uint64(1)) == 0
            sees_one = np.bitwise_count(s & np.uint64(g.masks[v])) == 1
            ok &= ~(outside & sees_one)
        chunks.append(s[ok])
    return np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.uint64)


def brute_force_minimal_forts(g: Graph) -> list[VertexSet]:
    """Every minimal fort of ``g`` by exhaustive subset search (n <= 24)."""
    if g.n > ORACLE_MAX_VERTICES:
        raise TooLargeForOracle(f"{g.n} vertices exceeds oracle cap {ORACLE_MAX_VERTICES}")
    if g.n == 0:
        return []
    forts = _fort_masks(g)
    sizes = np.bitwise_count(forts)
    order = np.lexsort((forts, sizes))
    forts, sizes = forts[order], sizes[order]
    # Every fort contains a minimal one, so scanning by size and striking
    # supersets of each newly found fort leaves exactly the minimal family.
    alive = np.ones(forts.shape, dtype=bool)
    found: list[int] = []
    for k in np.unique(sizes):
        lo, hi = np.searchsorted(sizes, [k, k + 1])
        level = forts[lo:hi][alive[lo:hi]]
        tail = forts[hi:]
        for m in level.tolist():
            found.append(m)
            mm = np.uint64(m)
            alive[hi:] &= (tail & mm) != mm
    for m in found:
        assert _is_minimal_fort_bits(g, m), f"scan produced a non-minimal fort {m:#x}"
    return sort_forts(VertexSet(m) for m in found)


# --- structural characterization on trees ---------------------------------------------


def _edge_condition(g: Graph, s: int, a: int, b: int) -> str | None:
    """Check one oriented edge a -> b against the four membership cases; None if fine."""
    in_a = (s >> a) & 1
    in_b = (s >> b) & 1
    nb = g.masks[b] & s
    others = (nb & ~(1 << a)).bit_count()
    if not in_a and not in_b:
        if nb:
            return "II.i"
    elif not in_a and in_b:
        if nb.bit_count() > 1:
            return "II.ii"
    elif in_a and not in_b:
        if others != 1:
            return "II.iii"
    elif others != 0:
        return "II.iv"
    return None


def characterization_violations(t: Graph, s: int) -> list[str]:
    """Conditions (I) and (II.i)-(II.iv) of the tree characterization, as violation strings."""
    out = []
    leaf_mask = sum(1 << v for v in range(t.n) if len(t.adj[v]) == 1)
    if not s & leaf_mask:
        out.append("I: no leaf in set")
    for leaf in iter_bits(s & leaf_mask):
        order, parent = bfs_order(t, leaf)
        for b in order[1:]:
            a = parent[b]
            bad = _edge_condition(t, s, a, b)
            if bad:
                out.append(f"{bad}: edge {a}->{b} from leaf {leaf}")
    return out


def satisfies_characterization(t: Graph, s: VertexSet) -> bool:
    return not characterization_violations(t, s.bits)


@dataclass
class LemmaReport:
    violations: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_structural_lemmas(t: Graph, f: VertexSet) -> LemmaReport:
    """Audit a (caller-asserted) minimal fort against the tree-only structural facts.

    Checks: (a) contains a leaf; (b) no closed neighborhood holds three fort
    vertices and no outside vertex sees exactly one; (c) no three fort
    vertices in a row; (d) the edge conditions from every fort leaf. On a
    graph that is not a tree, (a) and (d) are skipped, so (b) and (c) can be
    used to show where the tree results stop holding.
    """
    rep = LemmaReport()
    s = f.bits
    tree = is_tree(t)
    if tree:
        if not any(len(t.adj[v]) == 1 for v in f):
            rep.violations.append("(a) fort contains no leaf")
    else:
        rep.skipped += ["(a)", "(d)"]
    for u in range(t.n):
        closed = (t.masks[u] | (1 << u)) & s
        if closed.bit_count() > 2:
            rep.violations.append(f"(b) vertex {u} has {closed.bit_count()} fort vertices in N[u]")
        elif not (s >> u) & 1 and (t.masks[u] & s).bit_count() == 1:
            rep.violations.append(f"(b) outside vertex {u} sees exactly one fort vertex")
    for b in f:
        if (t.masks[b] & s).bit_count() >= 2:
            rep.violations.append(f"(c) three fort vertices in a row through {b}")
    if tree and t.n >= 3:
        rep.violations += [f"(d) {v}" for v in characterization_violations(t, s) if not v.startswith("I:")]
    return rep
