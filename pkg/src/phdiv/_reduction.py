"""Numba kernels for the persistence computation.

Edge rows are positions in the (value, i, j)-sorted edge order. Triangles
are streamed in (value, lexicographic triple) order, each assigned to its
max-row edge, so nothing of cubic size is ever materialized. The working
column is a max-heap of rows with lazy parity cancellation; reduced pivot
columns are kept in a compact pool, ascending with the pivot row last.
Rows of merge (negative) edges are compressed away up front; they can never
be pivots and dropping them does not change the pairing.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=True)
def kruskal_merge_mask(n, eu, ev):
    """Boolean mask of edges that merge two components (Kruskal order)."""
    parent = np.arange(n, dtype=np.int64)
    size = np.ones(n, dtype=np.int64)
    mask = np.zeros(eu.size, dtype=np.bool_)
    merges = 0
    for e in range(eu.size):
        if merges == n - 1:
            break
        a = _find(parent, np.int64(eu[e]))
        b = _find(parent, np.int64(ev[e]))
        if a != b:
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
            mask[e] = True
            merges += 1
    return mask


@njit(cache=True)
def count_triangles(n, eu, ev, eid):
    """Number of triangles with all three edges present, counted once each."""
    total = 0
    for r in range(eu.size):
        i = eu[r]
        j = ev[r]
        for k in range(n):
            if k == i or k == j:
                continue
            r1 = eid[i, k]
            r2 = eid[j, k]
            if r1 >= 0 and r2 >= 0 and r1 < r and r2 < r:
                total += 1
    return total


@njit(cache=True)
def _grow(arr):
    new = np.empty(arr.size * 2, dtype=arr.dtype)
    new[: arr.size] = arr
    return new


@njit(cache=True)
def _heap_push(heap, size, val):
    i = size
    heap[i] = val
    size += 1
    while i > 0:
        p = (i - 1) >> 1
        if heap[p] < heap[i]:
            heap[p], heap[i] = heap[i], heap[p]
            i = p
        else:
            break
    return size


@njit(cache=True)
def _heap_pop(heap, size):
    top = heap[0]
    size -= 1
    heap[0] = heap[size]
    i = 0
    while True:
        l = 2 * i + 1
        r = l + 1
        m = i
        if l < size and heap[l] > heap[m]:
            m = l
        if r < size and heap[r] > heap[m]:
            m = r
        if m == i:
            break
        heap[i], heap[m] = heap[m], heap[i]
        i = m
    return top, size


@njit(cache=True)
def reduce_triangles(n, eu, ev, ew, eid, is_pos):
    """Column reduction of the triangle boundary matrix over Z/2.

    Returns (pair_rows, pair_deaths, pivot): for each pair, the birth edge
    row and the death value; `pivot[row] >= 0` marks edge rows that were
    paired with some triangle.
    """
    E = eu.size
    pivot = np.full(E, -1, dtype=np.int64)
    pool_ptr = np.zeros(E + 1, dtype=np.int64)
    pool_rows = np.empty(max(4 * E + 16, 1024), dtype=np.int64)
    npool = 0
    pair_row = np.empty(max(E, 1), dtype=np.int64)
    pair_death = np.empty(max(E, 1), dtype=np.float64)
    npairs = 0
    heap = np.empty(1024, dtype=np.int64)
    n2 = np.int64(n) * np.int64(n)

    s = 0
    while s < E:
        w = ew[s]
        t = s + 1
        while t < E and ew[t] == w:
            t += 1
        # enumerate triangles entering at value w (max-row edge in [s, t))
        cnt = 0
        for r in range(s, t):
            i = eu[r]
            j = ev[r]
            for k in range(n):
                if k == i or k == j:
                    continue
                r1 = eid[i, k]
                r2 = eid[j, k]
                if r1 >= 0 and r2 >= 0 and r1 < r and r2 < r:
                    cnt += 1
        if cnt == 0:
            s = t
            continue
        keys = np.empty(cnt, dtype=np.int64)
        c = 0
        for r in range(s, t):
            i = eu[r]
            j = ev[r]
            for k in range(n):
                if k == i or k == j:
                    continue
                r1 = eid[i, k]
                r2 = eid[j, k]
                if r1 >= 0 and r2 >= 0 and r1 < r and r2 < r:
                    if k < i:
                        a, b, cc = k, i, j
                    elif k < j:
                        a, b, cc = i, k, j
                    else:
                        a, b, cc = i, j, k
                    keys[c] = (np.int64(a) * n + b) * n + cc
                    c += 1
        order = np.argsort(keys)
        for oi in range(cnt):
            key = keys[order[oi]]
            a = key // n2
            rem = key - a * n2
            b = rem // n
            cc = rem - b * n
            r1 = eid[a, b]
            r2 = eid[a, cc]
            r3 = eid[b, cc]
            if heap.size < 4:
                heap = _grow(heap)
            hsize = 0
            if is_pos[r1]:
                hsize = _heap_push(heap, hsize, r1)
            if is_pos[r2]:
                hsize = _heap_push(heap, hsize, r2)
            if is_pos[r3]:
                hsize = _heap_push(heap, hsize, r3)
            while True:
                # pop the max row, cancelling pairs (Z/2 parity)
                low = np.int64(-1)
                while hsize > 0:
                    v, hsize = _heap_pop(heap, hsize)
                    odd = True
                    while hsize > 0 and heap[0] == v:
                        v, hsize = _heap_pop(heap, hsize)
                        odd = not odd
                    if odd:
                        low = v
                        break
                if low < 0:
                    break  # column vanished: no H1 pair
                pc = pivot[low]
                if pc < 0:
                    # fresh pivot: record the pair, store the reduced column
                    pivot[low] = npool
                    pair_row[npairs] = low
                    pair_death[npairs] = w
                    npairs += 1
                    rest = np.sort(heap[:hsize])
                    need = pool_ptr[npool] + hsize + 1
                    while pool_rows.size < need:
                        pool_rows = _grow(pool_rows)
                    p = pool_ptr[npool]
                    x = 0
                    while x < rest.size:
                        v = rest[x]
                        dup = 1
                        while x + dup < rest.size and rest[x + dup] == v:
                            dup += 1
                        if dup & 1:
                            pool_rows[p] = v
                            p += 1
                        x += dup
                    pool_rows[p] = low
                    p += 1
                    pool_ptr[npool + 1] = p
                    npool += 1
                    break
                # add the stored column; its pivot entry cancels the popped low
                lo = pool_ptr[pc]
                hi = pool_ptr[pc + 1] - 1
                while hsize + (hi - lo) > heap.size:
                    heap = _grow(heap)
                for x in range(lo, hi):
                    hsize = _heap_push(heap, hsize, pool_rows[x])
        s = t
    return pair_row[:npairs], pair_death[:npairs], pivot
