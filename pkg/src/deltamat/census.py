"""Canonical forms up to permutation and twisting, and the exhaustive census.

Every class has normal members, and the normal members of the class of
``d`` are exactly its twists by feasible sets (then permuted).  The
canonical word of a class is the smallest family word among them.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import IO, Iterable

import numpy as np

from .binary import is_binary_matrix_method
from .core import (
    CapacityExceeded,
    DeltaMatroid,
    DeltaMatroidError,
    check_symmetric_exchange,
    SetSystem,
    popcount,
    width,
)
from .twistpoly import TwistPolynomial, twist_polynomial

log = logging.getLogger(__name__)

MAX_CANON_N = 6
MAX_CENSUS_N = 5
SHARD_DEPTH = 8
HEADER = "dm-census v1 n={n}"


class MalformedLine(DeltaMatroidError):
    def __init__(self, lineno: int, reason: str):
        self.lineno = lineno
        self.reason = reason
        super().__init__(f"line {lineno}: {reason}")


def hex_digits(n: int) -> int:
    """Family words are printed as whole bytes."""
    return max(2, 2 * -(-(1 << n) // 8))


@dataclass(frozen=True, order=True)
class CanonicalCode:
    n: int
    word: int

    @property
    def code(self) -> str:
        return f"{self.n}:{self.word:0{hex_digits(self.n)}x}"

    def __str__(self):
        return self.code

    @classmethod
    def parse(cls, text: str) -> CanonicalCode:
        n, word = parse_compact(text)
        return cls(n, word)

    def decode(self) -> DeltaMatroid:
        return DeltaMatroid(self.n, self.word)


def parse_compact(text: str) -> tuple[int, int]:
    """``"n:hex"`` -> (n, family word).  Raises ValueError."""
    head, sep, tail = text.strip().partition(":")
    if not sep or not head.isdigit() or not tail:
        raise ValueError(f"expected 'n:hex', got {text.strip()!r}")
    n = int(head)
    try:
        word = int(tail, 16)
    except ValueError:
        raise ValueError(f"bad hex digits {tail!r}") from None
    if n > 16:
        raise ValueError(f"ground set size {n} too large")
    if word >> (1 << n):
        raise ValueError(f"family bit beyond 2^{n}")
    return n, word


@lru_cache(maxsize=None)
def _perm_images(n: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for p in permutations(range(n)):
        out.append(tuple(sum(1 << p[i] for i in range(n) if m >> i & 1) for m in range(1 << n)))
    return tuple(out)


def normal_orbit(d: SetSystem) -> set[int]:
    """Family words of all normal members of the class of ``d``."""
    out = set()
    masks = d.masks
    for img in _perm_images(d.n):
        for f in masks:
            word = 0
            for g in masks:
                word |= 1 << img[g ^ f]
            out.add(word)
    return out


def canonical_code(d: DeltaMatroid) -> CanonicalCode:
    if d.n > MAX_CANON_N:
        raise CapacityExceeded(f"canonical codes limited to n <= {MAX_CANON_N}")
    best = None
    masks = d.masks
    for img in _perm_images(d.n):
        for f in masks:
            word = 0
            for g in masks:
                word |= 1 << img[g ^ f]
            if best is None or word < best:
                best = word
    return CanonicalCode(d.n, best)


@lru_cache(maxsize=None)
def _perm_array(n: int) -> np.ndarray:
    return np.array(_perm_images(n), dtype=np.int64)


@dataclass(frozen=True)
class CensusRecord:
    code: CanonicalCode
    family_size: int
    width: int
    binary: bool
    twist_poly: TwistPolynomial
    monomial: bool

    @classmethod
    def from_code(cls, code: CanonicalCode) -> CensusRecord:
        d = DeltaMatroid._unchecked(code.n, code.word)
        poly = twist_polynomial(d)
        return cls(
            code=code,
            family_size=len(d),
            width=width(d),
            binary=is_binary_matrix_method(d) is not None,
            twist_poly=poly,
            monomial=poly.is_monomial,
        )

    def decode(self) -> DeltaMatroid:
        return self.code.decode()

    def to_line(self) -> str:
        return (
            f"{self.code} |F|={self.family_size} w={self.width} "
            f"binary={int(self.binary)} monomial={int(self.monomial)} poly={self.twist_poly}"
        )


def brute_force_words(n: int) -> list[int]:
    """Canonical words of every class, by testing all normal families.

    Each accepted family marks its whole normal orbit as seen, so canonical
    forms are computed once per class.
    """
    seen: set[int] = set()
    reps = []
    for w in range(1 << ((1 << n) - 1)):
        word = w << 1 | 1
        if word in seen:
            continue
        s = SetSystem._unchecked(n, word)
        if check_symmetric_exchange(s) is not None:
            continue
        orbit = normal_orbit(s)
        seen |= orbit
        reps.append(min(orbit))
    return sorted(reps)


def _search_shard(args) -> list[int]:
    from . import _kernels

    n, prefix = args
    found, _ = _kernels.search(n, _perm_array(n), prefix, True)
    return [int(w) for w in found]


def search_words(n: int, jobs: int = 1) -> list[int]:
    """Canonical words via pruned depth-first search, optionally sharded."""
    from . import _kernels

    if jobs <= 1:
        return sorted(_search_shard((n, np.zeros(0, np.int8))))
    depth = min(SHARD_DEPTH, (1 << n) - 1)
    shards = [(n, p) for p in _kernels.viable_prefixes(n, depth)]
    log.info("census n=%d: %d shards over %d workers", n, len(shards), jobs)
    words: set[int] = set()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_search_shard, shards, chunksize=4):
            words.update(part)
    return sorted(words)


def enumerate_classes(n: int, jobs: int = 1) -> list[CensusRecord]:
    """One record per class of delta-matroids on ``n`` elements, by code."""
    if not 1 <= n <= MAX_CENSUS_N:
        raise CapacityExceeded(f"census supports 1 <= n <= {MAX_CENSUS_N}")
    words = brute_force_words(n) if n <= 4 else search_words(n, jobs)
    return [CensusRecord.from_code(CanonicalCode(n, w)) for w in words]


def write_catalog(records: Iterable[CensusRecord], sink: IO[str], n: int) -> None:
    sink.write(HEADER.format(n=n) + "\n")
    for r in records:
        if r.code.n != n:
            raise ValueError(f"record {r.code} does not live on {n} elements")
        sink.write(r.to_line() + "\n")


def _flag(value: str, lineno: int, name: str) -> bool:
    if value not in ("0", "1"):
        raise MalformedLine(lineno, f"{name} must be 0 or 1")
    return value == "1"


def _parse_record(line: str, lineno: int, n: int) -> CensusRecord:
    head, sep, poly = line.partition(" poly=")
    if not sep:
        raise MalformedLine(lineno, "missing poly= field")
    toks = head.split()
    if len(toks) != 5:
        raise MalformedLine(lineno, "expected code |F|= w= binary= monomial=")
    try:
        code = CanonicalCode.parse(toks[0])
    except ValueError as e:
        raise MalformedLine(lineno, str(e)) from None
    if code.n != n:
        raise MalformedLine(lineno, f"code on {code.n} elements in an n={n} catalog")
    if not code.word & 1:
        raise MalformedLine(lineno, "canonical family must contain the empty set")
    fields = {}
    for tok, key in zip(toks[1:], ("|F|", "w", "binary", "monomial")):
        k, eq, v = tok.partition("=")
        if k != key or not eq:
            raise MalformedLine(lineno, f"expected field {key}=")
        fields[key] = v
    try:
        family_size = int(fields["|F|"])
        w = int(fields["w"])
        twist_poly = TwistPolynomial.parse(poly)
    except ValueError as e:
        raise MalformedLine(lineno, str(e)) from None
    if family_size != popcount(code.word):
        raise MalformedLine(lineno, "|F| disagrees with the family")
    return CensusRecord(
        code=code,
        family_size=family_size,
        width=w,
        binary=_flag(fields["binary"], lineno, "binary"),
        twist_poly=twist_poly,
        monomial=_flag(fields["monomial"], lineno, "monomial"),
    )


def read_catalog(source: IO[str]) -> list[CensusRecord]:
    lines = source.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MalformedLine(1, "missing header")
    header = lines[0].strip()
    prefix = HEADER.split("{")[0]
    if not header.startswith(prefix) or not header[len(prefix):].isdigit():
        raise MalformedLine(1, f"bad header {header!r}")
    n = int(header[len(prefix):])
    return [_parse_record(line.rstrip("\r"), i, n) for i, line in enumerate(lines[1:], 2)]
