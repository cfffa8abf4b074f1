"""Compiled kernels for the n=5 census search.

Families live in uint64 words (n <= 6).  ``status[m]`` is 0 for an
undecided subset, 1 for a member, 2 for a non-member.  Masks are decided in
descending order; the empty set is always a member.
"""

import numba as nb
import numpy as np

UNDECIDED, IN, OUT = 0, 1, 2


@nb.njit(cache=True)
def _dead(status, x, y, u):
    # every repair x ^ {u, v} for v in x^y is already excluded
    s = x ^ y
    while s:
        v = s & -s
        s ^= v
        if status[x ^ (u | v)] != OUT:
            return False
    return True


@nb.njit(cache=True)
def _violated(status, top, m):
    """Did deciding mask ``m`` make some exchange requirement unsatisfiable?

    Only requirements touching ``m`` can change: as one of the pair when it
    joins, or as their last open repair when it is excluded.
    """
    if status[m] == IN:
        for y in range(top + 1):
            if status[y] != IN:
                continue
            s = m ^ y
            while s:
                u = s & -s
                s ^= u
                if _dead(status, m, y, u) or _dead(status, y, m, u):
                    return True
        return False
    for x in range(top + 1):
        if status[x] != IN:
            continue
        d0 = x ^ m
        if d0 == 0:
            continue
        lo = d0 & -d0
        hi = d0 ^ lo
        if hi & (hi - 1):
            continue  # m is more than two flips from x
        for y in range(top + 1):
            if status[y] != IN or ((x ^ y) & d0) != d0:
                continue
            if _dead(status, x, y, lo):
                return True
            if hi and _dead(status, x, y, hi):
                return True
    return False


@nb.njit(cache=True)
def _is_canonical(word, masks, k, perms):
    # word must not exceed any normal image under (twist by a member, permute)
    one = np.uint64(1)
    for i in range(k):
        f = masks[i]
        for p in range(perms.shape[0]):
            img = np.uint64(0)
            for j in range(k):
                img |= one << np.uint64(perms[p, masks[j] ^ f])
            if img < word:
                return False
    return True


@nb.njit(cache=True)
def _apply_prefix(status, top, prefix):
    for k in range(prefix.shape[0]):
        m = top - k
        status[m] = prefix[k]
        if _violated(status, top, m):
            return False
    return True


@nb.njit(cache=True)
def search(n, perms, prefix, canonical_only):
    """Depth-first search over normal delta-matroids extending ``prefix``.

    Returns (words found, number of delta-matroids visited).  With
    ``canonical_only`` only class-minimal words are kept.
    """
    top = (1 << n) - 1
    status = np.zeros(top + 1, np.int8)
    status[0] = IN
    found = []
    leaves = 0
    depth = prefix.shape[0]
    if not _apply_prefix(status, top, prefix):
        return found, leaves
    choice = np.zeros(top + 1, np.int8)
    masks = np.zeros(top + 1, np.int64)
    k = depth
    while k >= depth:
        if k == top:
            leaves += 1
            word = np.uint64(0)
            c = 0
            for m in range(top + 1):
                if status[m] == IN:
                    word |= np.uint64(1) << np.uint64(m)
                    masks[c] = m
                    c += 1
            if not canonical_only or _is_canonical(word, masks, c, perms):
                found.append(word)
            k -= 1
            continue
        m = top - k
        if choice[k] == 2:
            choice[k] = 0
            status[m] = UNDECIDED
            k -= 1
            continue
        choice[k] += 1
        status[m] = choice[k]
        if not _violated(status, top, m):
            k += 1
    return found, leaves


@nb.njit(cache=True)
def viable_prefixes(n, depth):
    """All decision prefixes of the given depth that survive pruning."""
    top = (1 << n) - 1
    status = np.zeros(top + 1, np.int8)
    status[0] = IN
    out = []
    choice = np.zeros(depth + 1, np.int8)
    k = 0
    while k >= 0:
        if k == depth:
            row = np.empty(depth, np.int8)
            for i in range(depth):
                row[i] = status[top - i]
            out.append(row)
            k -= 1
            continue
        m = top - k
        if choice[k] == 2:
            choice[k] = 0
            status[m] = UNDECIDED
            k -= 1
            continue
        choice[k] += 1
        status[m] = choice[k]
        if not _violated(status, top, m):
            k += 1
    return out


def perm_tables(n: int) -> np.ndarray:
    """Row p maps each mask to its image under the p-th permutation."""
    from itertools import permutations

    rows = []
    for p in permutations(range(n)):
        rows.append([sum(1 << p[i] for i in range(n) if m >> i & 1) for m in range(1 << n)])
    return np.array(rows, dtype=np.int64)
