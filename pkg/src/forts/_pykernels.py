"""Pure-Python hot kernels: free-tree successor and minimal fort counting.

Mirrors ``_ckernels.pyx`` function for function; used when the compiled
extension is unavailable or ``FORTS_PURE_PYTHON`` is set.
"""

from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

BACKEND = "python"


# --- free trees as canonical level sequences (root depth 0) ----------------------------


def _next_rooted(L: list[int], p: int = -1) -> bool:
    """Beyer-Hedetniemi successor in place; False when ``L`` was the last rooted tree."""
    n = len(L)
    if p < 0:
        p = n - 1
        while L[p] == 1:
            p -= 1
    if p == 0:
        return False
    q = p - 1
    while L[q] != L[p] - 1:
        q -= 1
    for i in range(p, n):
        L[i] = L[i - p + q]
    return True


def _split_point(L: list[int]) -> int:
    """Index where the root's second subtree starts (``len(L)`` if there is none)."""
    for i in range(2, len(L)):
        if L[i] == 1:
            return i
    return len(L)


def _is_free_canonical(L: list[int]) -> bool:
    n = len(L)
    m = _split_point(L)
    left_h = max(L[1:m]) - 1
    rest_h = max(L[m:]) if m < n else 0
    if rest_h != left_h:
        return rest_h > left_h
    left_len, rest_len = m - 1, n - m + 1
    if left_len != rest_len:
        return left_len < rest_len
    left = [x - 1 for x in L[1:m]]
    rest = [0] + L[m:]
    return left <= rest


def _valid_or_jump(L: list[int]) -> bool:
    """Leave ``L`` as-is if it is a free-tree representative, else jump past the invalid block."""
    if _is_free_canonical(L):
        return True
    p = _split_point(L) - 1
    old = L[p]
    if not _next_rooted(L, p):
        return False
    if old > 2:
        m = _split_point(L)
        h = max(L[1:m]) - 1
        n = len(L)
        for j in range(h + 1):
            L[n - h - 1 + j] = 1 + j
    return True


def free_tree_levels(n: int) -> Iterator[list[int]]:
    """Each free tree on ``n`` vertices once, as a center-rooted level sequence."""
    if not 1 <= n <= 64:
        raise ValueError(f"n={n} outside 1..64")
    if n == 1:
        yield [0]
        return
    if n == 2:
        yield [0, 1]
        return
    L = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while _valid_or_jump(L):
        yield list(L)
        if not _next_rooted(L):
            return


def free_tree_chunks(n: int, chunk_size: int = 65536) -> Iterator[np.ndarray]:
    buf: list[list[int]] = []
    for L in free_tree_levels(n):
        buf.append(L)
        if len(buf) == chunk_size:
            yield np.asarray(buf, dtype=np.uint8)
            buf = []
    if buf:
        yield np.asarray(buf, dtype=np.uint8)


def levels_to_masks(L: Sequence[int]) -> list[int]:
    n = len(L)
    masks = [0] * n
    stack: list[int] = []
    for i, lv in enumerate(L):
        while stack and L[stack[-1]] >= lv:
            stack.pop()
        if stack:
            j = stack[-1]
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        stack.append(i)
    return masks


# --- minimal fort counting --------------------------------------------------------------


def _count_round(masks: Sequence[int], alive: int, forbidden: int, start: int, leaf_mask: int) -> int:
    # BFS from the start leaf fixes which endpoint of each edge is "closer".
    order = [start]
    parent = {start: -1}
    children: dict[int, int] = {}
    i = 0
    while i < len(order):
        u = order[i]
        ch = masks[u] & alive
        if parent[u] >= 0:
            ch &= ~(1 << parent[u])
        children[u] = ch
        while ch:
            low = ch & -ch
            c = low.bit_length() - 1
            parent[c] = u
            order.append(c)
            ch ^= low
        i += 1
    cnt = len(order)

    def rec(i: int, S: int) -> int:
        if i == cnt:
            return 1
        u = order[i]
        ch = children[u]
        if i == 0:
            total = rec(1, S)
            if not ch & forbidden:
                total += rec(1, S | ch)
            return total
        u_in = (S >> u) & 1
        p_in = (S >> parent[u]) & 1
        if not u_in:
            if not p_in:
                return rec(i + 1, S)
            total = 0
            free = ch & ~forbidden
            while free:
                low = free & -free
                total += rec(i + 1, S | low)
                free ^= low
            return total
        leafch = ch & leaf_mask
        if p_in:
            return 0 if leafch else rec(i + 1, S)
        if leafch:
            if leafch & (leafch - 1) or leafch & forbidden:
                return 0
            return rec(i + 1, S | leafch)
        total = rec(i + 1, S)
        free = ch & ~forbidden
        while free:
            low = free & -free
            total += rec(i + 1, S | low)
            free ^= low
        return total

    return rec(0, 1 << start)


def count_tree_forts(masks: Sequence[int], forbidden: int = 0) -> int:
    """Number of minimal forts of the tree given by neighbor bitmasks, avoiding ``forbidden``."""
    n = len(masks)
    alive = (1 << n) - 1
    total = 0
    while alive:
        if alive & (alive - 1) == 0:
            if not alive & forbidden:
                total += 1
            break
        leaf_mask = 0
        a = alive
        while a:
            low = a & -a
            v = low.bit_length() - 1
            nb = masks[v] & alive
            if nb and nb & (nb - 1) == 0:
                leaf_mask |= low
            a ^= low
        cand = leaf_mask & ~forbidden
        if not cand:
            break
        start = (cand & -cand).bit_length() - 1
        total += _count_round(masks, alive, forbidden, start, leaf_mask)
        # prune the start leaf's path branch; its attachment becomes forbidden
        branch = 1 << start
        prev, cur = start, (masks[start] & alive).bit_length() - 1
        while True:
            nb = masks[cur] & alive
            if nb.bit_count() > 2:
                forbidden |= 1 << cur
                break
            branch |= 1 << cur
            nxt = nb & ~(1 << prev)
            if not nxt:
                cur = -1
                break
            prev, cur = cur, (nxt & -nxt).bit_length() - 1
        alive &= ~branch
        if cur < 0:
            break
    return total


def count_forts_levels(levels: np.ndarray) -> np.ndarray:
    """Minimal fort count for every tree (row) of a 2-D array of level sequences."""
    out = np.empty(len(levels), dtype=np.int64)
    for k, row in enumerate(np.asarray(levels).tolist()):
        out[k] = count_tree_forts(levels_to_masks(row))
    return out
