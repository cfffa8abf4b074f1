"""Set systems, delta-matroids and their operation algebra.

A subset of the ground set {0, ..., n-1} is an int bitmask.  A family of
subsets is itself an int: bit ``m`` of ``word`` is set iff the subset with
mask ``m`` belongs to the family.  Symmetric difference is XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

MAX_N = 16


class DeltaMatroidError(ValueError):
    pass


class EmptyFamily(DeltaMatroidError):
    def __init__(self, msg="family has no feasible sets"):
        super().__init__(msg)


class CapacityExceeded(DeltaMatroidError):
    pass


class NotFeasible(DeltaMatroidError):
    pass


class NotNormal(DeltaMatroidError):
    def __init__(self, msg="the empty set is not feasible"):
        super().__init__(msg)


class ExchangeViolation(DeltaMatroidError):
    def __init__(self, witness: ExchangeWitness):
        self.witness = witness
        super().__init__(f"symmetric exchange fails: {witness}")


def popcount(x: int) -> int:
    return x.bit_count()


def bits(x: int) -> Iterator[int]:
    """Indices of the set bits of ``x``, ascending."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def compress(x: int, keep: int) -> int:
    """Pack the bits of ``x`` selected by ``keep`` into the low positions."""
    out = 0
    j = 0
    for i in bits(keep):
        if x >> i & 1:
            out |= 1 << j
        j += 1
    return out


def expand(x: int, keep: int) -> int:
    """Inverse of :func:`compress`: spread the low bits of ``x`` over ``keep``."""
    out = 0
    for j, i in enumerate(bits(keep)):
        if x >> j & 1:
            out |= 1 << i
    return out


def format_set(mask: int) -> str:
    """1-based rendering used in messages, e.g. ``{1,3}``."""
    return "{" + ",".join(str(i + 1) for i in bits(mask)) + "}"


def _check_capacity(n: int) -> None:
    if not 0 <= n <= MAX_N:
        raise CapacityExceeded(f"ground set size {n} outside [0, {MAX_N}]")


@dataclass(frozen=True, eq=False)
class SetSystem:
    """A ground set of size ``n`` with a family of subsets packed into ``word``."""

    n: int
    word: int

    def __post_init__(self):
        _check_capacity(self.n)
        if self.word < 0 or self.word >> (1 << self.n):
            raise DeltaMatroidError(f"family has a member outside 2^{self.n}")

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]):
        """Build from 0-based element collections."""
        word = 0
        for s in sets:
            word |= 1 << mask_of(s)
        return cls(n, word)

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]):
        word = 0
        for m in masks:
            word |= 1 << m
        return cls(n, word)

    @classmethod
    def _unchecked(cls, n: int, word: int):
        # skips validation; callers guarantee the closure properties
        self = object.__new__(cls)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "word", word)
        return self

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(bits(self.word))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __contains__(self, mask: int) -> bool:
        return mask >= 0 and bool(self.word >> mask & 1)

    def __len__(self) -> int:
        return popcount(self.word)

    def __iter__(self) -> Iterator[int]:
        return iter(self.masks)

    def __eq__(self, other):
        if not isinstance(other, SetSystem):
            return NotImplemented
        return self.n == other.n and self.word == other.word

    def __hash__(self):
        return hash((self.n, self.word))

    def __repr__(self):
        sets = ", ".join(format_set(m) for m in self.masks)
        return f"{type(self).__name__}(n={self.n}, [{sets}])"


@dataclass(frozen=True)
class ExchangeWitness:
    """Feasible ``x``, ``y`` and a pivot ``u`` in x^y that no ``v`` repairs."""

    x: int
    y: int
    u: int

    def __str__(self):
        return f"x={format_set(self.x)} y={format_set(self.y)} u={self.u + 1}"


def check_symmetric_exchange(s: SetSystem) -> ExchangeWitness | None:
    """Return None if ``s`` satisfies symmetric exchange, else the first witness.

    Witnesses are ordered by (x, y) mask and then pivot index.
    """
    if s.word == 0:
        raise EmptyFamily()
    word = s.word
    masks = s.masks
    for x in masks:
        for y in masks:
            d = x ^ y
            for u in bits(d):
                ub = 1 << u
                for v in bits(d):
                    if word >> (x ^ (ub | 1 << v)) & 1:
                        break
                else:
                    return ExchangeWitness(x, y, u)
    return None


class DeltaMatroid(SetSystem):
    """A set system with a nonempty family satisfying symmetric exchange.

    The constructor validates eagerly; operation results skip the check
    because twists, deletions and contractions preserve the axiom.
    """

    def __post_init__(self):
        super().__post_init__()
        w = check_symmetric_exchange(self)
        if w is not None:
            raise ExchangeViolation(w)


class Matroid(DeltaMatroid):
    """Delta-matroid whose feasible sets (bases) share one size."""

    def __post_init__(self):
        super().__post_init__()
        sizes = {popcount(m) for m in self.masks}
        if len(sizes) != 1:
            raise DeltaMatroidError(f"bases of mixed sizes {sorted(sizes)}")

    @property
    def rank_value(self) -> int:
        return popcount(self.masks[0])


def new_delta_matroid(s: SetSystem) -> DeltaMatroid:
    return DeltaMatroid(s.n, s.word)


def _nonempty(n: int, word: int) -> DeltaMatroid:
    if word == 0:
        raise EmptyFamily()
    return DeltaMatroid._unchecked(n, word)


def twist(d: DeltaMatroid, a: int) -> DeltaMatroid:
    if not 0 <= a <= d.full:
        raise DeltaMatroidError(f"twist set {a} outside ground set")
    word = 0
    for f in d.masks:
        word |= 1 << (f ^ a)
    return DeltaMatroid._unchecked(d.n, word)


def dual(d: DeltaMatroid) -> DeltaMatroid:
    return twist(d, d.full)


def _drop_bit(x: int, e: int) -> int:
    low = x & ((1 << e) - 1)
    return low | (x >> (e + 1)) << e


def delete(d: DeltaMatroid, e: int) -> DeltaMatroid:
    """``d \\ e``: members avoiding ``e``, higher labels shifted down."""
    if not 0 <= e < d.n:
        raise DeltaMatroidError(f"element {e} outside ground set")
    word = 0
    for f in d.masks:
        if not f >> e & 1:
            word |= 1 << _drop_bit(f, e)
    return _nonempty(d.n - 1, word)


def contract(d: DeltaMatroid, e: int) -> DeltaMatroid:
    """``d / e``: members containing ``e`` with ``e`` removed, relabelled."""
    if not 0 <= e < d.n:
        raise DeltaMatroidError(f"element {e} outside ground set")
    word = 0
    for f in d.masks:
        if f >> e & 1:
            word |= 1 << _drop_bit(f, e)
    return _nonempty(d.n - 1, word)


def delete_set(d: DeltaMatroid, a: int) -> DeltaMatroid:
    return restrict(d, d.full & ~a)


def contract_set(d: DeltaMatroid, a: int) -> DeltaMatroid:
    keep = d.full & ~a
    word = 0
    for f in d.masks:
        if f & a == a:
            word |= 1 << compress(f, keep)
    return _nonempty(popcount(keep), word)


def restrict(d: DeltaMatroid, a: int) -> DeltaMatroid:
    """``d|a``, i.e. delete everything outside ``a``; relabels to [0, |a|)."""
    if not 0 <= a <= d.full:
        raise DeltaMatroidError(f"restriction set {a} outside ground set")
    if a == d.full:
        return d
    word = 0
    outside = d.full & ~a
    for f in d.masks:
        if not f & outside:
            word |= 1 << compress(f, a)
    return _nonempty(popcount(a), word)


def direct_sum(d1: DeltaMatroid, d2: DeltaMatroid) -> DeltaMatroid:
    """Disjoint union of ground sets; ``d2``'s labels shift up by ``d1.n``."""
    n = d1.n + d2.n
    if n > MAX_N:
        raise CapacityExceeded(f"direct sum needs {n} > {MAX_N} elements")
    word = 0
    for f2 in d2.masks:
        hi = f2 << d1.n
        for f1 in d1.masks:
            word |= 1 << (f1 | hi)
    return DeltaMatroid._unchecked(n, word)


def sizes(d: SetSystem) -> list[int]:
    return [popcount(m) for m in d.masks]


def width(d: DeltaMatroid) -> int:
    s = sizes(d)
    return max(s) - min(s)


def is_normal(d: SetSystem) -> bool:
    return bool(d.word & 1)


def is_matroid(d: SetSystem) -> bool:
    return len(set(sizes(d))) == 1


def _layer_word(d: SetSystem, size: int) -> int:
    word = 0
    for m in d.masks:
        if popcount(m) == size:
            word |= 1 << m
    return word


def min_matroid(d: DeltaMatroid) -> Matroid:
    return Matroid._unchecked(d.n, _layer_word(d, min(sizes(d))))


def max_matroid(d: DeltaMatroid) -> Matroid:
    return Matroid._unchecked(d.n, _layer_word(d, max(sizes(d))))


def layer(d: DeltaMatroid, from_min: bool, i: int) -> SetSystem:
    """Members of size ``min + i`` (or ``max - i``).  May be empty."""
    if i < 0:
        raise DeltaMatroidError("layer offset must be nonnegative")
    size = min(sizes(d)) + i if from_min else max(sizes(d)) - i
    return SetSystem._unchecked(d.n, _layer_word(d, size))


def rank(m: Matroid, x: int) -> int:
    return max(popcount(x & f) for f in m.masks)


def envelope(d: DeltaMatroid, f0: int) -> tuple[int, int]:
    """Smallest-mask ``(f1, f2)`` with f1 in the min layer, f2 in the max
    layer and ``f1 <= f0 <= f2`` as sets."""
    if f0 not in d:
        raise NotFeasible(f"{format_set(f0)} is not feasible")
    lo = min_matroid(d)
    hi = max_matroid(d)
    f1 = next((f for f in lo.masks if f & f0 == f), None)
    f2 = next((f for f in hi.masks if f & f0 == f0), None)
    if f1 is None or f2 is None:
        # impossible for a genuine delta-matroid
        raise DeltaMatroidError(f"no envelope for {format_set(f0)}")
    return f1, f2


def permute(d: SetSystem, perm) -> SetSystem:
    """Relabel element ``i`` as ``perm[i]``."""
    word = 0
    for f in d.masks:
        g = 0
        for i in bits(f):
            g |= 1 << perm[i]
        word |= 1 << g
    return type(d)._unchecked(d.n, word)
