# cython: language_level=3
"""Compiled hot kernels: free-tree successor and minimal fort counting.

Same contracts as ``_pykernels``; vertex sets are ``uint64_t`` masks, so
trees are limited to 64 vertices.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, uint8_t

cnp.import_array()

BACKEND = "cython"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil


cdef inline int lowbit(uint64_t x) noexcept nogil:
    return __builtin_ctzll(x)


cdef inline int highbit(uint64_t x) noexcept nogil:
    return 63 - __builtin_clzll(x)


# --- minimal fort counting --------------------------------------------------------------

cdef struct Round:
    int cnt
    int order[64]
    int parent[64]
    uint64_t children[64]
    uint64_t leaf_mask
    uint64_t forbidden


cdef int64_t _rec(Round* r, int i, uint64_t S) noexcept nogil:
    cdef int u, p
    cdef uint64_t ch, leafch, free, low
    cdef int64_t total
    if i == r.cnt:
        return 1
    u = r.order[i]
    ch = r.children[u]
    if i == 0:
        total = _rec(r, 1, S)
        if not (ch & r.forbidden):
            total += _rec(r, 1, S | ch)
        return total
    p = r.parent[u]
    if not ((S >> u) & 1):
        if not ((S >> p) & 1):
            return _rec(r, i + 1, S)
        total = 0
        free = ch & ~r.forbidden
        while free:
            low = free & (~free + 1)
            total += _rec(r, i + 1, S | low)
            free ^= low
        return total
    leafch = ch & r.leaf_mask
    if (S >> p) & 1:
        if leafch:
            return 0
        return _rec(r, i + 1, S)
    if leafch:
        if (leafch & (leafch - 1)) or (leafch & r.forbidden):
            return 0
        return _rec(r, i + 1, S | leafch)
    total = _rec(r, i + 1, S)
    free = ch & ~r.forbidden
    while free:
        low = free & (~free + 1)
        total += _rec(r, i + 1, S | low)
        free ^= low
    return total


cdef int64_t _count_masks(const uint64_t* masks, int n, uint64_t forbidden) noexcept nogil:
    cdef Round r
    cdef uint64_t alive, a, nb, cand, branch, nxt, one = 1
    cdef int v, start, head, u, c, prev, cur
    cdef int64_t total = 0
    if n == 0:
        return 0
    alive = (~<uint64_t>0) if n == 64 else ((one << n) - 1)
    while alive:
        if not (alive & (alive - 1)):
            if not (alive & forbidden):
                total += 1
            break
        r.leaf_mask = 0
        a = alive
        while a:
            v = lowbit(a)
            nb = masks[v] & alive
            if nb and not (nb & (nb - 1)):
                r.leaf_mask |= one << v
            a &= a - 1
        cand = r.leaf_mask & ~forbidden
        if not cand:
            break
        start = lowbit(cand)
        r.forbidden = forbidden
        r.order[0] = start
        r.parent[start] = -1
        r.cnt = 1
        head = 0
        while head < r.cnt:
            u = r.order[head]
            nb = masks[u] & alive
            if r.parent[u] >= 0:
                nb &= ~(one << r.parent[u])
            r.children[u] = nb
            while nb:
                c = lowbit(nb)
                r.parent[c] = u
                r.order[r.cnt] = c
                r.cnt += 1
                nb &= nb - 1
            head += 1
        total += _rec(&r, 0, one << start)
        branch = one << start
        prev = start
        cur = highbit(masks[start] & alive)
        while True:
            nb = masks[cur] & alive
            if __builtin_popcountll(nb) > 2:
                forbidden |= one << cur
                break
            branch |= one << cur
            nxt = nb & ~(one << prev)
            if not nxt:
                cur = -1
                break
            prev = cur
            cur = lowbit(nxt)
        alive &= ~branch
        if cur < 0:
            break
    return total


def count_tree_forts(masks, forbidden=0):
    """Number of minimal forts of the tree given by neighbor bitmasks, avoiding ``forbidden``."""
    cdef uint64_t buf[64]
    cdef int n = len(masks)
    cdef int i
    if n > 64:
        raise ValueError("at most 64 vertices")
    for i in range(n):
        buf[i] = masks[i]
    return _count_masks(buf, n, forbidden)


cdef void _levels_to_masks(const uint8_t[:] L, int n, uint64_t* masks) noexcept nogil:
    cdef int stack[64]
    cdef int top = 0, i, j
    cdef uint64_t one = 1
    for i in range(n):
        masks[i] = 0
    for i in range(n):
        while top > 0 and L[stack[top - 1]] >= L[i]:
            top -= 1
        if top > 0:
            j = stack[top - 1]
            masks[i] |= one << j
            masks[j] |= one << i
        stack[top] = i
        top += 1


def count_forts_levels(const uint8_t[:, :] levels):
    """Minimal fort count for every tree (row) of a 2-D array of level sequences."""
    cdef Py_ssize_t k, rows = levels.shape[0]
    cdef int n = levels.shape[1]
    cdef uint64_t masks[64]
    out = np.empty(rows, dtype=np.int64)
    cdef int64_t[:] o = out
    if n > 64:
        raise ValueError("at most 64 vertices")
    with nogil:
        for k in range(rows):
            _levels_to_masks(levels[k], n, masks)
            o[k] = _count_masks(masks, n, 0)
    return out


# --- free trees as canonical level sequences (root depth 0) ----------------------------

cdef bint _next_rooted(int* L, int n, int p) noexcept nogil:
    cdef int q, i
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


cdef int _split_point(int* L, int n) noexcept nogil:
    cdef int i
    for i in range(2, n):
        if L[i] == 1:
            return i
    return n


cdef int _max_range(int* L, int lo, int hi) noexcept nogil:
    cdef int i, m = 0
    for i in range(lo, hi):
        if L[i] > m:
            m = L[i]
    return m


cdef bint _is_free_canonical(int* L, int n) noexcept nogil:
    cdef int m = _split_point(L, n)
    cdef int left_h = _max_range(L, 1, m) - 1
    cdef int rest_h = _max_range(L, m, n)
    cdef int left_len = m - 1, rest_len = n - m + 1, i, a, b
    if rest_h != left_h:
        return rest_h > left_h
    if left_len != rest_len:
        return left_len < rest_len
    for i in range(left_len):
        a = L[1 + i] - 1
        b = 0 if i == 0 else L[m + i - 1]
        if a != b:
            return a < b
    return True


cdef bint _valid_or_jump(int* L, int n) noexcept nogil:
    cdef int p, old, m, h, j
    if _is_free_canonical(L, n):
        return True
    p = _split_point(L, n) - 1
    old = L[p]
    if not _next_rooted(L, n, p):
        return False
    if old > 2:
        m = _split_point(L, n)
        h = _max_range(L, 1, m) - 1
        for j in range(h + 1):
            L[n - h - 1 + j] = 1 + j
    return True


cdef class FreeTreeGenerator:
    """Stateful successor over free trees on ``n`` vertices."""

    cdef int n
    cdef int L[64]
    cdef bint started, done

    def __init__(self, int n):
        cdef int i, k = 0
        if n < 1 or n > 64:
            raise ValueError(f"n={n} outside 1..64")
        self.n = n
        self.started = False
        self.done = False
        if n <= 2:
            for i in range(n):
                self.L[i] = i
            return
        for i in range(n // 2 + 1):
            self.L[k] = i
            k += 1
        for i in range(1, (n + 1) // 2):
            self.L[k] = i
            k += 1

    cdef bint _advance(self) noexcept nogil:
        if self.done:
            return False
        if self.n <= 2:
            if self.started:
                self.done = True
                return False
            self.started = True
            return True
        if self.started and not _next_rooted(self.L, self.n, -1):
            self.done = True
            return False
        self.started = True
        if not _valid_or_jump(self.L, self.n):
            self.done = True
            return False
        return True

    def next_chunk(self, Py_ssize_t size):
        """Up to ``size`` further level sequences as a ``(k, n)`` uint8 array, or None when exhausted."""
        out = np.empty((size, self.n), dtype=np.uint8)
        cdef uint8_t[:, :] o = out
        cdef Py_ssize_t k = 0
        cdef int i
        with nogil:
            while k < size and self._advance():
                for i in range(self.n):
                    o[k, i] = <uint8_t>self.L[i]
                k += 1
        if k == 0:
            return None
        return out[:k]


def free_tree_chunks(int n, Py_ssize_t chunk_size=65536):
    gen = FreeTreeGenerator(n)
    while True:
        chunk = gen.next_chunk(chunk_size)
        if chunk is None:
            return
        yield chunk


def free_tree_levels(int n):
    """Each free tree on ``n`` vertices once, as a center-rooted level sequence."""
    for chunk in free_tree_chunks(n):
        for row in chunk.tolist():
            yield row


def levels_to_masks(L):
    cdef uint64_t masks[64]
    arr = np.asarray(L, dtype=np.uint8)
    cdef int n = arr.shape[0]
    if n > 64:
        raise ValueError("at most 64 vertices")
    _levels_to_masks(arr, n, masks)
    return [masks[i] for i in range(n)]
