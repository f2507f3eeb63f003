"""Partitions, Young diagrams and rim hooks.

Partitions are tuples of positive integers; :class:`Partition` is a tuple
subclass so the hot loops of the solver can work on plain tuples while the
public API still gets validation and a readable text form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple


class UnequalSize(ValueError):
    pass


class Partition(tuple):
    """A weakly decreasing tuple of positive integers (zeros are dropped)."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be non-negative: {parts}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    def __repr__(self):
        return f"Partition({format_partition(self) or '()'})"

    def __str__(self):
        return format_partition(self)


class NodeCoord(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class RimHook:
    """A rim hook of a diagram, anchored at its corner node.

    The corner node ``anchor`` is the node of the (arm, leg) hook whose rim
    is the strip; ``leg`` is the number of rows spanned minus one.
    """

    anchor: NodeCoord
    length: int
    leg: int

    @property
    def arm(self) -> int:
        return self.length - self.leg - 1


# --- text format -----------------------------------------------------------

_TOKEN = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_partition(text: str) -> Partition:
    """Parse ``"8^2,4,1"`` style text; the empty string is the empty partition."""
    text = text.strip().strip("()")
    if not text:
        return Partition()
    parts = []
    for token in text.split(","):
        m = _TOKEN.match(token)
        if not m:
            raise ValueError(f"bad partition token {token!r} in {text!r}")
        value, mult = int(m.group(1)), int(m.group(2) or 1)
        parts.extend([value] * mult)
    return Partition(parts)


def format_partition(lam: Iterable[int]) -> str:
    """Inverse of :func:`parse_partition`; repeated parts use exponents."""
    out = []
    lam = tuple(lam)
    i = 0
    while i < len(lam):
        j = i
        while j < len(lam) and lam[j] == lam[i]:
            j += 1
        mult = j - i
        out.append(f"{lam[i]}^{mult}" if mult > 1 else str(lam[i]))
        i = j
    return ",".join(out)


# --- basic combinatorics ---------------------------------------------------

@lru_cache(maxsize=None)
def conjugate(lam: tuple) -> Partition:
    if not lam:
        return Partition()
    return Partition(sum(1 for x in lam if x >= j) for j in range(1, lam[0] + 1))


def dominates(mu: tuple, lam: tuple) -> bool:
    """True iff ``mu`` dominates ``lam`` (both partitions of the same n)."""
    if sum(mu) != sum(lam):
        raise UnequalSize(f"|{mu}| != |{lam}|")
    return _dominates(mu, lam)


def _dominates(mu: tuple, lam: tuple) -> bool:
    s = t = 0
    for i in range(max(len(mu), len(lam))):
        s += mu[i] if i < len(mu) else 0
        t += lam[i] if i < len(lam) else 0
        if s < t:
            return False
    return True


def is_p_regular(mu: tuple, p: int) -> bool:
    run = 1
    for a, b in zip(mu, mu[1:]):
        run = run + 1 if a == b else 1
        if run >= p:
            return False
    return p > 1 or not mu


def residue(x, p: int) -> int:
    row, col = x
    return (col - row) % p


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + rest)


def order_key(lam: tuple):
    """Sort key for a dominance-compatible total order, most dominant first.

    Lexicographic order refines dominance, so sorting by the negated parts
    puts a partition before everything it dominates.
    """
    return tuple(-x for x in lam)


def nodes(lam: tuple) -> Iterator[NodeCoord]:
    for i, part in enumerate(lam, start=1):
        for j in range(1, part + 1):
            yield NodeCoord(i, j)


def removable_nodes(lam: tuple) -> list[NodeCoord]:
    """Removable nodes, top to bottom."""
    out = []
    for i, part in enumerate(lam):
        below = lam[i + 1] if i + 1 < len(lam) else 0
        if part > below:
            out.append(NodeCoord(i + 1, part))
    return out


def addable_nodes(lam: tuple) -> list[NodeCoord]:
    """Addable nodes, top to bottom."""
    out = []
    for i in range(len(lam) + 1):
        here = lam[i] if i < len(lam) else 0
        above = lam[i - 1] if i > 0 else None
        if above is None or here < above:
            out.append(NodeCoord(i + 1, here + 1))
    return out


def remove_nodes(lam: tuple, xs: Iterable) -> Partition:
    parts = list(lam)
    for row, _ in xs:
        parts[row - 1] -= 1
    return Partition(parts)


def add_nodes(lam: tuple, xs: Iterable) -> Partition:
    parts = list(lam)
    for row, _ in sorted(xs):
        if row > len(parts):
            parts.append(0)
        parts[row - 1] += 1
    return Partition(parts)


def hook_length(lam: tuple, x) -> int:
    row, col = x
    arm = lam[row - 1] - col
    leg = sum(1 for part in lam[row:] if part >= col)
    return arm + leg + 1


# --- rim hooks -------------------------------------------------------------

def removable_rim_hooks(lam: tuple, h: int) -> list[RimHook]:
    """All rim hooks of length exactly ``h``; one per node of hook length h."""
    if h < 1:
        raise ValueError("hook length must be positive")
    lamc = conjugate(lam)
    out = []
    for i, part in enumerate(lam, start=1):
        for j in range(1, part + 1):
            arm = part - j
            leg = lamc[j - 1] - i
            if arm + leg + 1 == h:
                out.append(RimHook(NodeCoord(i, j), h, leg))
    return out


def _beta(lam: tuple, b: int) -> list[int]:
    return [(lam[i - 1] if i <= len(lam) else 0) + b - i for i in range(1, b + 1)]


def _from_beta(beads: Iterable[int]) -> Partition:
    new = sorted(beads, reverse=True)
    b = len(new)
    return Partition(pos - (b - i) for i, pos in enumerate(new, start=1))


def remove_rim_hook(lam: tuple, hook: RimHook) -> Partition:
    """Strip the rim hook whose corner node is ``hook.anchor``."""
    row = hook.anchor.row
    beads = _beta(lam, len(lam))
    beads[row - 1] -= hook.length
    return _from_beta(beads)


def addable_rim_hooks(lam: tuple, h: int) -> list[tuple[RimHook, Partition]]:
    """All ways of wrapping a rim hook of length ``h`` onto ``lam``.

    Returns (hook, result) pairs, the hook described as a rim hook of the
    result.  Wrapping an h-hook is a bead moving up h places into a gap.
    """
    if h < 1:
        raise ValueError("hook length must be positive")
    b = len(lam) + h
    occupied = set(_beta(lam, b))
    out = []
    for x in sorted(occupied, reverse=True):
        if x + h in occupied:
            continue
        leg = sum(1 for y in occupied if x < y < x + h)
        nu = _from_beta((occupied - {x}) | {x + h})
        row = sum(1 for y in occupied if y > x + h) + 1
        col = next(c for c in range(1, nu[row - 1] + 1)
                   if hook_length(nu, (row, c)) == h)
        out.append((RimHook(NodeCoord(row, col), h, leg), nu))
    out.sort(key=lambda pair: order_key(pair[1]))
    return out
