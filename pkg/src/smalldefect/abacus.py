"""The p-abacus: cores, weights, runner moves and runner insertion.

Bead positions are labelled 1, 2, 3, ... left to right then top to bottom,
so position m sits on runner ((m - 1) mod p) + 1 in row ceil(m / p).  A
partition with at most b parts is recorded by the b beads
``lam_i + b - i + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from .partitions import Partition, format_partition, order_key


class TooFewBeads(ValueError):
    pass


class BadRunner(ValueError):
    pass


class BadSlot(ValueError):
    pass


@dataclass(frozen=True)
class Abacus:
    p: int
    beads: tuple[int, ...]

    def __post_init__(self):
        beads = tuple(sorted(self.beads))
        if len(set(beads)) != len(beads) or (beads and beads[0] < 1):
            raise ValueError(f"bad bead positions {self.beads}")
        object.__setattr__(self, "beads", beads)

    @property
    def b(self) -> int:
        return len(self.beads)

    def runner(self, m: int) -> int:
        return (m - 1) % self.p + 1

    def row(self, m: int) -> int:
        return (m - 1) // self.p + 1

    def position(self, row: int, runner: int) -> int:
        return (row - 1) * self.p + runner

    def runner_beads(self, r: int) -> list[int]:
        return [m for m in self.beads if self.runner(m) == r]

    def bead_counts(self) -> tuple[int, ...]:
        counts = [0] * self.p
        for m in self.beads:
            counts[(m - 1) % self.p] += 1
        return tuple(counts)

    def render(self, rows: int | None = None) -> str:
        """One text row per abacus row: ``O`` for a bead, ``.`` for a gap."""
        occupied = set(self.beads)
        if rows is None:
            rows = self.row(max(self.beads)) if self.beads else 0
        lines = []
        for i in range(1, rows + 1):
            lines.append(" ".join("O" if self.position(i, r) in occupied else "."
                                  for r in range(1, self.p + 1)))
        return "\n".join(lines)


@dataclass(frozen=True)
class BlockId:
    p: int
    core: Partition
    weight: int

    @property
    def n(self) -> int:
        return sum(self.core) + self.p * self.weight

    def __str__(self):
        return f"p={self.p} core=({format_partition(self.core)}) w={self.weight}"

    def key(self) -> str:
        return f"p{self.p}_c{format_partition(self.core) or 'empty'}_w{self.weight}"


def canonical_beads(lam, p: int) -> int:
    """Smallest multiple of p that is at least the number of parts."""
    return -(-len(lam) // p) * p


def from_partition(lam, b: int, p: int) -> Abacus:
    if b < len(lam):
        raise TooFewBeads(f"{b} beads cannot hold {len(lam)} parts")
    return Abacus(p, tuple((lam[i - 1] if i <= len(lam) else 0) + b - i + 1
                           for i in range(1, b + 1)))


def to_partition(A: Abacus) -> Partition:
    desc = sorted(A.beads, reverse=True)
    b = len(desc)
    return Partition(m - (b - i + 1) for i, m in enumerate(desc, start=1))


def _packed(counts, p: int) -> Abacus:
    beads = []
    for r, c in enumerate(counts, start=1):
        beads.extend((k * p) + r for k in range(c))
    return Abacus(p, tuple(beads))


@lru_cache(maxsize=None)
def p_core(lam: tuple, p: int) -> Partition:
    A = from_partition(lam, canonical_beads(lam, p), p)
    return to_partition(_packed(A.bead_counts(), p))


def p_weight(lam: tuple, p: int) -> int:
    return (sum(lam) - sum(p_core(lam, p))) // p


@lru_cache(maxsize=None)
def block_id(lam: tuple, p: int) -> BlockId:
    return BlockId(p, p_core(lam, p), p_weight(lam, p))


def movable_beads(A: Abacus, r: int) -> tuple[list[int], list[int]]:
    """Beads on runner r that can move one place left, and beads on runner
    r - 1 that can move one place right.

    For r = 1 the left neighbour is runner p of the previous row, so these
    are plain position -/+ 1 moves.
    """
    if not 1 <= r <= A.p:
        raise BadRunner(r)
    occupied = set(A.beads)
    left = [m for m in A.beads if A.runner(m) == r and m > 1 and m - 1 not in occupied]
    prev = A.p if r == 1 else r - 1
    right = [m for m in A.beads if A.runner(m) == prev and m + 1 not in occupied]
    return left, right


def runner_swap(A: Abacus, r: int) -> Abacus:
    """Exchange the contents of runners r - 1 and r."""
    if not 2 <= r <= A.p:
        raise BadRunner(r)
    moved = []
    for m in A.beads:
        ru = A.runner(m)
        if ru == r:
            m -= 1
        elif ru == r - 1:
            m += 1
        moved.append(m)
    return Abacus(A.p, tuple(moved))


def insert_empty_runners(A: Abacus, count: int, slots=None) -> Abacus:
    """Insert ``count`` empty runners; ``slots`` lists, for each new runner,
    how many old runners stand to its left (default: all of them)."""
    if count < 0:
        raise BadSlot("count must be non-negative")
    if slots is None:
        slots = [A.p] * count
    slots = sorted(slots)
    if len(slots) != count or any(not 0 <= s <= A.p for s in slots):
        raise BadSlot(f"slots {slots} invalid for {count} runners on a {A.p}-abacus")
    q = A.p + count
    beads = []
    for m in A.beads:
        ru, row = A.runner(m), A.row(m)
        shift = sum(1 for s in slots if s < ru)
        beads.append((row - 1) * q + ru + shift)
    return Abacus(q, tuple(beads))


def plus(lam, p: int, q: int, b: int | None = None, slots=None) -> Partition:
    """The partition obtained by adding q - p empty runners to lam's abacus."""
    if b is None:
        b = len(lam)
    return to_partition(insert_empty_runners(from_partition(lam, b, p), q - p, slots))


def block_partitions(B: BlockId) -> list[Partition]:
    """Every partition in the block, most dominant first.

    Starting from the core's abacus, all multisets of ``weight`` one-row
    downward slides are enumerated; intermediate configurations are kept in
    a set so each partition appears once.
    """
    p, w = B.p, B.weight
    b = canonical_beads(B.core, p) + p * w
    start = from_partition(B.core, b, p)
    layer = {start.beads}
    for _ in range(w):
        nxt = set()
        for beads in layer:
            occupied = set(beads)
            for m in beads:
                if m + p not in occupied:
                    nxt.add(tuple(sorted((occupied - {m}) | {m + p})))
        layer = nxt
    out = {to_partition(Abacus(p, beads)) for beads in layer}
    return sorted(out, key=order_key)


def weight_multisets(p: int, w: int):
    return combinations_with_replacement(range(1, p + 1), w)
