"""Twist polynomials, twist monomials and the families that have them."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .binary import candidate_matrix, first_mismatch
from .core import (
    MAX_N,
    CapacityExceeded,
    DeltaMatroid,
    DeltaMatroidError,
    NotNormal,
    bits,
    is_normal,
    popcount,
)
from .gf2 import Shape, classify_component, components


@dataclass(frozen=True)
class TwistPolynomial:
    """Width exponent -> number of twist sets, stored as sorted pairs."""

    coeffs: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> TwistPolynomial:
        return cls(tuple(sorted((int(e), int(c)) for e, c in coeffs.items() if c)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.coeffs)

    @property
    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def __mul__(self, other: TwistPolynomial) -> TwistPolynomial:
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return TwistPolynomial.from_dict(out)

    def __str__(self) -> str:
        terms = []
        for e, c in self.coeffs:
            if e == 0:
                terms.append(str(c))
            elif e == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{e}")
        return " + ".join(terms) if terms else "0"

    @classmethod
    def parse(cls, text: str) -> TwistPolynomial:
        out: dict[int, int] = {}
        for term in text.split("+"):
            m = _TERM.fullmatch(term.strip())
            if m is None:
                raise ValueError(f"bad polynomial term {term.strip()!r}")
            c = int(m["c"])
            e = 0 if m["z"] is None else int(m["e"] or 1)
            if e in out:
                raise ValueError(f"repeated exponent {e}")
            out[e] = c
        return cls.from_dict(out)


_TERM = re.compile(r"(?P<c>\d+)(?P<z>\*z(\^(?P<e>\d+))?)?")


def distance_to_family(n: int, masks) -> np.ndarray:
    """Hamming distance from every subset to the nearest member of ``masks``.

    One relaxation sweep per coordinate suffices because Hamming distance is
    a sum of per-coordinate terms.
    """
    size = 1 << n
    dist = np.full(size, n + 1, dtype=np.int16)
    dist[np.asarray(masks, dtype=np.int64)] = 0
    idx = np.arange(size)
    for i in range(n):
        np.minimum(dist, dist[idx ^ (1 << i)] + 1, out=dist)
    return dist


def twist_widths(d: DeltaMatroid) -> np.ndarray:
    """``widths[a] == width(twist(d, a))`` for every mask ``a``.

    The largest feasible set of d*a has size n - dist(complement of a).
    """
    dist = distance_to_family(d.n, d.masks)
    full = d.full
    comp = np.arange(1 << d.n) ^ full
    return d.n - dist[comp] - dist


def twist_polynomial(d: DeltaMatroid) -> TwistPolynomial:
    counts = np.bincount(twist_widths(d), minlength=d.n + 1)
    return TwistPolynomial.from_dict({w: int(c) for w, c in enumerate(counts) if c})


def is_twist_monomial(d: DeltaMatroid) -> bool:
    return twist_polynomial(d).is_monomial


@dataclass(frozen=True)
class MonomialPartition:
    """Ground set split into a free part and odd blocks.

    A set is feasible iff it meets every block in an even number of elements.
    """

    free_part: int
    odd_blocks: tuple[int, ...]

    def is_feasible(self, f: int) -> bool:
        return all(popcount(f & b) % 2 == 0 for b in self.odd_blocks)

    def family_word(self, n: int) -> int:
        word = 0
        for f in range(1 << n):
            if self.is_feasible(f):
                word |= 1 << f
        return word


def characterize_monomial(d: DeltaMatroid) -> MonomialPartition | None:
    """Partition witnessing a twist monomial for normal ``d``, or None.

    Only the identity twist is tried: such delta-matroids are fixed by their
    feasible twists, so if any twist is represented the identity one is.
    """
    if not is_normal(d):
        raise NotNormal()
    a = candidate_matrix(d)
    if first_mismatch(d, a) is not None:
        return None
    free = 0
    blocks = []
    for comp in components(a):
        shape = classify_component(a, comp)
        if shape.kind is Shape.LOOPED_VERTEX:
            free |= comp
        elif shape.kind is Shape.ODD_COMPLETE:
            blocks.append(comp)
        else:
            return None
    part = MonomialPartition(free, tuple(blocks))
    if part.family_word(d.n) != d.word:
        raise DeltaMatroidError("partition does not reproduce the family")
    return part


def make_odd_complete(k: int) -> DeltaMatroid:
    """Even-size subsets of a (2k+1)-element set."""
    n = 2 * k + 1
    if k < 0 or n > MAX_N:
        raise CapacityExceeded(f"odd complete family on {n} elements")
    word = 0
    for f in range(1 << n):
        if popcount(f) % 2 == 0:
            word |= 1 << f
    return DeltaMatroid._unchecked(n, word)


def make_free(n: int) -> DeltaMatroid:
    """Every subset feasible."""
    if not 0 <= n <= MAX_N:
        raise CapacityExceeded(f"free family on {n} elements")
    return DeltaMatroid._unchecked(n, (1 << (1 << n)) - 1)


def blocks_as_labels(part: MonomialPartition) -> tuple[list[int], list[list[int]]]:
    return [i + 1 for i in bits(part.free_part)], [[i + 1 for i in bits(b)] for b in part.odd_blocks]
