"""Symmetric GF(2) matrices as looped simple graphs.

Row ``i`` of a matrix is an int whose bit ``j`` is the entry a_ij.  The
diagonal bit is a loop at vertex ``i``; off-diagonal bits are edges.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import MAX_N, CapacityExceeded, DeltaMatroid, bits, compress, popcount


@dataclass(frozen=True)
class SymMatrixGF2:
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        n = len(self.rows)
        for i, r in enumerate(self.rows):
            if r < 0 or r >> n:
                raise ValueError(f"row {i} has entries outside {n} columns")
            for j in bits(r):
                if not self.rows[j] >> i & 1:
                    raise ValueError(f"not symmetric at ({i}, {j})")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def zeros(cls, n: int) -> SymMatrixGF2:
        return cls((0,) * n)

    @classmethod
    def identity(cls, n: int) -> SymMatrixGF2:
        return cls(tuple(1 << i for i in range(n)))

    @classmethod
    def complete(cls, n: int) -> SymMatrixGF2:
        """Adjacency matrix of the loopless complete graph K_n."""
        full = (1 << n) - 1
        return cls(tuple(full ^ (1 << i) for i in range(n)))

    @classmethod
    def from_dense(cls, a: Sequence[Sequence[int]]) -> SymMatrixGF2:
        return cls(tuple(sum((v & 1) << j for j, v in enumerate(row)) for row in a))

    @classmethod
    def from_graph(cls, n: int, loops: Iterable[int], edges: Iterable[tuple[int, int]]):
        """0-based vertex labels."""
        rows = [0] * n
        for v in loops:
            rows[v] |= 1 << v
        for u, v in edges:
            if u == v:
                raise ValueError("use loops for diagonal entries")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(tuple(rows))

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def to_dense(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    @property
    def loops(self) -> list[int]:
        return [i for i in range(self.n) if self.entry(i, i)]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.rows[i] >> (i + 1) << (i + 1))]

    def direct_sum(self, other: SymMatrixGF2) -> SymMatrixGF2:
        return SymMatrixGF2(self.rows + tuple(r << self.n for r in other.rows))


def principal_submatrix(a: SymMatrixGF2, x: int) -> SymMatrixGF2:
    return SymMatrixGF2(tuple(compress(a.rows[i], x) for i in bits(x)))


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of a list of row bitmasks."""
    pivots: dict[int, int] = {}  # leading bit -> row
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                break
            r ^= p
    return len(pivots)


def is_nonsingular(a: SymMatrixGF2) -> bool:
    return gf2_rank(a.rows) == a.n


def _submatrix_nonsingular(rows: Sequence[int], x: int) -> bool:
    # masking columns to x gives the same rank as compressing them
    return gf2_rank(rows[i] & x for i in bits(x)) == popcount(x)


def dm_from_matrix(a: SymMatrixGF2) -> DeltaMatroid:
    """Delta-matroid of subsets whose principal submatrix is nonsingular."""
    if a.n > MAX_N:
        raise CapacityExceeded(f"matrix dimension {a.n} > {MAX_N}")
    word = 1  # A[empty] counts as nonsingular
    for x in range(1, 1 << a.n):
        if _submatrix_nonsingular(a.rows, x):
            word |= 1 << x
    return DeltaMatroid._unchecked(a.n, word)


def components(a: SymMatrixGF2) -> list[int]:
    """Connected components as masks, ordered by smallest vertex.  Loops are
    irrelevant to connectivity."""
    seen = 0
    out = []
    for start in range(a.n):
        if seen >> start & 1:
            continue
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= a.rows[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        out.append(comp)
    return out


class Shape(enum.Enum):
    ODD_COMPLETE = "odd-complete"
    LOOPED_VERTEX = "looped-vertex"
    OTHER = "other"


@dataclass(frozen=True)
class ComponentShape:
    kind: Shape
    vertices: int

    @property
    def order(self) -> int:
        return popcount(self.vertices)


def classify_component(a: SymMatrixGF2, comp: int) -> ComponentShape:
    """Shape of one connected component.

    A lone loopless vertex counts as odd-complete of order 1: it represents
    the delta-matroid with only the empty set feasible, whose twist
    polynomial 2 is a monomial.
    """
    verts = list(bits(comp))
    looped = [v for v in verts if a.entry(v, v)]
    if len(verts) == 1 and looped:
        return ComponentShape(Shape.LOOPED_VERTEX, comp)
    complete = all(a.rows[v] & comp == comp ^ (1 << v) for v in verts)
    if not looped and complete and len(verts) % 2 == 1:
        return ComponentShape(Shape.ODD_COMPLETE, comp)
    return ComponentShape(Shape.OTHER, comp)


def format_graph(a: SymMatrixGF2) -> str:
    """``loops: i j ...`` then one ``i j`` line per edge, 1-based."""
    lines = ["loops:" + "".join(f" {v + 1}" for v in a.loops)]
    lines += [f"{i + 1} {j + 1}" for i, j in a.edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str, n: int) -> SymMatrixGF2:
    loops: list[int] = []
    edges: list[tuple[int, int]] = []
    seen_loops = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("loops:"):
            if seen_loops:
                raise ValueError(f"line {lineno}: duplicate loops line")
            seen_loops = True
            loops = [_label(tok, n, lineno) for tok in line[6:].split()]
            continue
        toks = line.split()
        if len(toks) != 2:
            raise ValueError(f"line {lineno}: expected an edge 'i j'")
        u, v = (_label(t, n, lineno) for t in toks)
        if u == v:
            raise ValueError(f"line {lineno}: self-edge; list it under loops")
        edges.append((u, v))
    if not seen_loops:
        raise ValueError("missing 'loops:' line")
    return SymMatrixGF2.from_graph(n, loops, edges)


def _label(tok: str, n: int, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ValueError(f"line {lineno}: bad vertex label {tok!r}") from None
    if not 1 <= v <= n:
        raise ValueError(f"line {lineno}: vertex {v} outside 1..{n}")
    return v - 1
