"""Text formats for delta-matroids.

Block format, 1-based labels, ``-`` for the empty set::

    n 3
    F -
    F 1 2
    F 1 3

Compact format: ``<n>:<hex family word>``, e.g. ``3:29``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .census import hex_digits, parse_compact
from .core import DeltaMatroid, SetSystem, bits, mask_of


class DmSyntaxError(ValueError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


@dataclass
class DmDocument:
    n: int
    feasible_lines: list[list[int]]

    def to_set_system(self) -> SetSystem:
        return SetSystem.from_sets(self.n, ([i - 1 for i in s] for s in self.feasible_lines))


def parse_document(text: str) -> DmDocument:
    n = None
    sets: list[list[int]] = []
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "n":
            if n is not None:
                raise DmSyntaxError(lineno, "repeated 'n' line")
            if len(toks) != 2 or not toks[1].isdigit():
                raise DmSyntaxError(lineno, "expected 'n <size>'")
            n = int(toks[1])
            if n > 16:
                raise DmSyntaxError(lineno, f"ground set size {n} exceeds 16")
        elif toks[0] == "F":
            if n is None:
                raise DmSyntaxError(lineno, "'F' line before 'n'")
            labels = [] if toks[1:] == ["-"] else toks[1:]
            if not labels and toks[1:] != ["-"]:
                raise DmSyntaxError(lineno, "empty set must be written as 'F -'")
            elems = []
            for tok in labels:
                if not tok.isdigit() or not 1 <= int(tok) <= n:
                    raise DmSyntaxError(lineno, f"bad element label {tok!r}")
                elems.append(int(tok))
            if len(set(elems)) != len(elems):
                raise DmSyntaxError(lineno, "repeated element in a set")
            m = mask_of(e - 1 for e in elems)
            if m in seen:
                raise DmSyntaxError(lineno, "duplicate feasible set")
            seen.add(m)
            sets.append(sorted(elems))
        else:
            raise DmSyntaxError(lineno, f"unknown directive {toks[0]!r}")
    if n is None:
        raise DmSyntaxError(1, "missing 'n' line")
    return DmDocument(n, sets)


def parse_set_system(text: str) -> SetSystem:
    """Parse either format without checking the exchange axiom."""
    stripped = text.strip()
    if ":" in stripped and "\n" not in stripped:
        try:
            n, word = parse_compact(stripped)
        except ValueError as e:
            raise DmSyntaxError(1, str(e)) from None
        return SetSystem(n, word)
    return parse_document(text).to_set_system()


def parse_dm(text: str) -> DeltaMatroid:
    s = parse_set_system(text)
    return DeltaMatroid(s.n, s.word)


def format_dm(d: SetSystem, style: str = "block") -> str:
    if style == "compact":
        return f"{d.n}:{d.word:0{hex_digits(d.n)}x}\n"
    if style != "block":
        raise ValueError(f"unknown style {style!r}")
    lines = [f"n {d.n}"]
    for m in d.masks:
        lines.append("F " + (" ".join(str(i + 1) for i in bits(m)) if m else "-"))
    return "\n".join(lines) + "\n"


def parse_set_arg(text: str, n: int) -> int:
    """``"1,3"`` -> mask; ``"0"`` is the empty set."""
    text = text.strip()
    if text == "0":
        return 0
    mask = 0
    for tok in text.split(","):
        tok = tok.strip()
        if not tok.isdigit() or not 1 <= int(tok) <= n:
            raise ValueError(f"element {tok!r} outside 1..{n}")
        mask |= 1 << (int(tok) - 1)
    return mask


def format_set_arg(mask: int) -> str:
    return ",".join(str(i + 1) for i in bits(mask)) or "0"
