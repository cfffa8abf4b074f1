"""Binary detection: matrix construct-and-verify and excluded minors.

Also holds the minor machinery (every minor is a twist followed by a
deletion) and a backtracking isomorphism test.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .core import (
    CapacityExceeded,
    DeltaMatroid,
    EmptyFamily,
    NotNormal,
    bits,
    format_set,
    is_normal,
    permute,
    popcount,
    restrict,
    twist,
)
from .gf2 import SymMatrixGF2, _submatrix_nonsingular

MAX_MINOR_N = 8


def candidate_matrix(d: DeltaMatroid) -> SymMatrixGF2:
    """The only symmetric matrix that can represent normal ``d``.

    A 1x1 principal submatrix is nonsingular iff its entry is 1, and a 2x2
    one iff a_ee*a_ff + a_ef = 1 over GF(2), which pins down every entry.
    """
    if not is_normal(d):
        raise NotNormal()
    diag = [int((1 << e) in d) for e in range(d.n)]
    rows = [diag[e] << e for e in range(d.n)]
    for e in range(d.n):
        for f in range(e + 1, d.n):
            if int(((1 << e) | (1 << f)) in d) ^ (diag[e] & diag[f]):
                rows[e] |= 1 << f
                rows[f] |= 1 << e
    return SymMatrixGF2(tuple(rows))


def first_mismatch(d: DeltaMatroid, a: SymMatrixGF2) -> int | None:
    """Smallest mask where nonsingularity of A[X] disagrees with feasibility."""
    if a.n != d.n:
        raise ValueError(f"matrix is {a.n}x{a.n}, ground set has {d.n} elements")
    word = d.word
    if not word & 1:
        return 0
    for x in range(1, 1 << d.n):
        if _submatrix_nonsingular(a.rows, x) != bool(word >> x & 1):
            return x
    return None


def verify_representation(d: DeltaMatroid, a: SymMatrixGF2) -> bool:
    return first_mismatch(d, a) is None


@dataclass(frozen=True)
class RepresentationWitness:
    twist_set: int
    matrix: SymMatrixGF2


def is_binary_matrix_method(d: DeltaMatroid) -> RepresentationWitness | None:
    """First feasible twist (by mask) that a symmetric matrix represents.

    Matrix delta-matroids are normal and ``d*a`` is normal iff ``a`` is
    feasible, so infeasible twists never need checking.
    """
    for f in d.masks:
        t = twist(d, f)
        a = candidate_matrix(t)
        if first_mismatch(t, a) is None:
            return RepresentationWitness(f, a)
    return None


def element_invariants(d: DeltaMatroid) -> list[tuple[int, ...]]:
    """Per element: how many feasible sets of each size contain it."""
    inv = [[0] * (d.n + 1) for _ in range(d.n)]
    for f in d.masks:
        k = popcount(f)
        for e in bits(f):
            inv[e][k] += 1
    return [tuple(v) for v in inv]


def _size_profile(d: DeltaMatroid) -> tuple[int, ...]:
    return tuple(sorted(popcount(f) for f in d.masks))


def is_isomorphic(d1: DeltaMatroid, d2: DeltaMatroid) -> tuple[int, ...] | None:
    """A bijection ``perm`` with element i of d1 sent to ``perm[i]`` in d2."""
    if d1.n != d2.n or len(d1) != len(d2) or _size_profile(d1) != _size_profile(d2):
        return None
    n = d1.n
    inv1 = element_invariants(d1)
    inv2 = element_invariants(d2)
    if sorted(inv1) != sorted(inv2):
        return None
    sized1 = [(f, popcount(f)) for f in d1.masks]
    sized2 = [(g, popcount(g)) for g in d2.masks]
    perm = [-1] * n
    used = [False] * n

    def consistent(k: int) -> bool:
        # compare families projected onto the first k assigned elements
        src = (1 << k) - 1
        dst = 0
        for i in range(k):
            dst |= 1 << perm[i]
        left = Counter()
        for f, s in sized1:
            g = 0
            for i in bits(f & src):
                g |= 1 << perm[i]
            left[g, s] += 1
        right = Counter((g & dst, s) for g, s in sized2)
        return left == right

    def extend(k: int) -> bool:
        if k == n:
            return True
        for j in range(n):
            if used[j] or inv2[j] != inv1[k]:
                continue
            perm[k] = j
            used[j] = True
            if consistent(k + 1) and extend(k + 1):
                return True
            used[j] = False
        perm[k] = -1
        return False

    return tuple(perm) if extend(0) else None


def _minor_pairs(d: DeltaMatroid, deleted_size: int | None = None, normal_only=False) -> Iterator[tuple[int, int, DeltaMatroid]]:
    # (twist set, deleted set, minor) in lexicographic (twist, deleted) order
    full = d.full
    twists = d.masks if normal_only else range(1 << d.n)
    for x in twists:
        t = twist(d, x)
        for a in range(1 << d.n):
            if deleted_size is not None and popcount(a) != deleted_size:
                continue
            try:
                m = restrict(t, full & ~a)
            except EmptyFamily:
                continue
            yield x, a, m


def enumerate_minors(d: DeltaMatroid) -> list[DeltaMatroid]:
    """All minors of ``d`` up to isomorphism, including ``d`` itself.

    Every minor equals some twist followed by a deletion, so the (twist,
    deletion) pairs cover everything.
    """
    if d.n > MAX_MINOR_N:
        raise CapacityExceeded(f"minor enumeration limited to n <= {MAX_MINOR_N}")
    exact = set()
    buckets: dict[tuple, list[DeltaMatroid]] = {}
    out = []
    for _, _, m in _minor_pairs(d):
        if m in exact:
            continue
        exact.add(m)
        key = (m.n, _size_profile(m), tuple(sorted(element_invariants(m))))
        bucket = buckets.setdefault(key, [])
        if any(is_isomorphic(m, other) is not None for other in bucket):
            continue
        bucket.append(m)
        out.append(m)
    return out


@dataclass(frozen=True)
class MinorWitness:
    """``restrict(twist(d, twist_set), ~deleted)`` relabelled by
    ``relabeling`` equals the target."""

    twist_set: int
    deleted: int
    relabeling: tuple[int, ...]

    def __str__(self):
        return (
            f"twist={format_set(self.twist_set)} delete={format_set(self.deleted)} "
            f"map={','.join(str(j + 1) for j in self.relabeling)}"
        )


def verify_minor_witness(d: DeltaMatroid, target: DeltaMatroid, w: MinorWitness) -> bool:
    try:
        m = restrict(twist(d, w.twist_set), d.full & ~w.deleted)
    except EmptyFamily:
        return False
    return m.n == target.n and permute(m, w.relabeling) == target


def has_minor(d: DeltaMatroid, target: DeltaMatroid) -> MinorWitness | None:
    """First witness in (twist, deleted) mask order, or None."""
    if target.n > d.n:
        return None
    # a normal minor can only come from a feasible twist
    pairs = _minor_pairs(d, d.n - target.n, normal_only=is_normal(target))
    for x, a, m in pairs:
        if len(m) != len(target):
            continue
        perm = is_isomorphic(m, target)
        if perm is not None:
            return MinorWitness(x, a, perm)
    return None


def _dm(n: int, *sets: tuple[int, ...]) -> DeltaMatroid:
    """Validated delta-matroid from 1-based label tuples."""
    word = 0
    for s in sets:
        word |= 1 << sum(1 << (i - 1) for i in s)
    return DeltaMatroid(n, word)


_D1 = _dm(2, (), (1,), (2,))
_D2 = _dm(3, (), (1, 2), (1, 3))
_EXCLUDED = (
    _dm(3, (), (1, 2), (1, 3), (2, 3), (1, 2, 3)),
    _dm(3, (), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3)),
    _dm(3, (), (2,), (3,), (1, 2), (1, 3), (1, 2, 3)),
    _dm(4, (), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)),
    _dm(4, (), (1, 2), (1, 4), (2, 3), (3, 4), (1, 2, 3, 4)),
)


def d1() -> DeltaMatroid:
    return _D1


def d2() -> DeltaMatroid:
    return _D2


def excluded_minors() -> tuple[DeltaMatroid, ...]:
    """The five excluded minors for binary delta-matroids, in the usual order."""
    return _EXCLUDED


def find_excluded_minor(d: DeltaMatroid) -> tuple[int, MinorWitness] | None:
    """(index into :func:`excluded_minors`, witness) for the first hit."""
    if d.n > MAX_MINOR_N:
        raise CapacityExceeded(f"minor search limited to n <= {MAX_MINOR_N}")
    targets = [(i, t, len(t)) for i, t in enumerate(_EXCLUDED) if t.n <= d.n]
    # all five targets are normal, so only feasible twists matter
    for x in d.masks:
        t = twist(d, x)
        for a in range(1 << d.n):
            k = d.n - popcount(a)
            if k not in (3, 4):
                continue
            try:
                m = restrict(t, d.full & ~a)
            except EmptyFamily:
                continue
            for i, target, size in targets:
                if target.n != k or len(m) != size:
                    continue
                perm = is_isomorphic(m, target)
                if perm is not None:
                    return i, MinorWitness(x, a, perm)
    return None


def is_binary_excluded_minor(d: DeltaMatroid) -> bool:
    return find_excluded_minor(d) is None
