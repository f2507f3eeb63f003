"""Structural equalities between decomposition numbers.

Row removal, column removal, Donkin's block-diagonal split and the
conjugation/Mullineux symmetry.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .branching import add_cogood, remove_good
from .partitions import Partition, conjugate, is_p_regular


class NotRegular(ValueError):
    pass


class SumMismatch(ValueError):
    pass


def row_removal(lam, mu):
    """Drop equal first rows: [S(lam):D(mu)] = [S(lam_2,...):D(mu_2,...)]."""
    lam, mu = tuple(lam), tuple(mu)
    if not lam or not mu or lam[0] != mu[0]:
        return None
    return Partition(lam[1:]), Partition(mu[1:])


def column_removal(lam, mu):
    """Drop equal first columns by subtracting 1 from every part."""
    lam, mu = tuple(lam), tuple(mu)
    if not lam or len(lam) != len(mu):
        return None
    return Partition(x - 1 for x in lam), Partition(x - 1 for x in mu)


def drop_first_column_abacus(lam) -> Partition:
    """Remove the first column by putting a bead in the first gap of an
    abacus with one spare bead."""
    from .abacus import Abacus, from_partition, to_partition

    b = len(lam) + 1
    A = from_partition(lam, b, 2)
    occupied = set(A.beads)
    gap = next(m for m in range(1, b + 2) if m not in occupied)
    return to_partition(Abacus(2, A.beads + (gap,)))


def donkin_split(lam, mu, s: int):
    """Split after row ``s``; the entry is the product of the two pieces."""
    lam, mu = tuple(lam), tuple(mu)
    if sum(lam[:s]) != sum(mu[:s]):
        raise SumMismatch(f"first {s} rows of {lam} and {mu} have different sizes")
    return ((Partition(lam[:s]), Partition(mu[:s])),
            (Partition(lam[s:]), Partition(mu[s:])))


def donkin_rows(lam, mu) -> list[int]:
    """Every s (1 <= s < max length) where the prefix sums agree."""
    lam, mu = tuple(lam), tuple(mu)
    out, a, b = [], 0, 0
    for s in range(1, max(len(lam), len(mu))):
        a += lam[s - 1] if s <= len(lam) else 0
        b += mu[s - 1] if s <= len(mu) else 0
        if a == b:
            out.append(s)
    return out


# --- Mullineux map -----------------------------------------------------------

def good_path(mu, p: int) -> list[int]:
    """Residues r_1, ..., r_n with mu = f_{r_n} ... f_{r_1} (empty), found by
    repeatedly removing the good node of least residue."""
    mu = tuple(mu)
    if not is_p_regular(mu, p):
        raise NotRegular(f"{mu} is not {p}-regular")
    path = []
    while mu:
        for r in range(p):
            nxt = remove_good(mu, r, p)
            if nxt is not None:
                path.append(r)
                mu = tuple(nxt)
                break
        else:  # pragma: no cover - every nonempty regular partition has a good node
            raise NotRegular(mu)
    return path[::-1]


@lru_cache(maxsize=1 << 16)
def _mullineux(mu: tuple, p: int) -> Partition:
    nu = Partition()
    for r in good_path(mu, p):
        nxt = add_cogood(nu, (-r) % p, p)
        if nxt is None:  # pragma: no cover
            raise NotRegular(mu)
        nu = nxt
    return nu


def mullineux(mu, p: int) -> Partition:
    """The Mullineux image: D(mu) tensored with the sign is D(mullineux(mu))."""
    if not is_p_regular(tuple(mu), p):
        raise NotRegular(f"{tuple(mu)} is not {p}-regular")
    return _mullineux(tuple(mu), p)


@dataclass(frozen=True)
class MullineuxSymbol:
    """Columns (a_i, r_i): size of the i-th p-rim and the number of rows
    before it is stripped."""

    rows: tuple[tuple[int, int], ...]

    def __str__(self):
        a = ",".join(str(x) for x, _ in self.rows)
        r = ",".join(str(y) for _, y in self.rows)
        return f"{a} / {r}"

    @classmethod
    def parse(cls, text: str) -> "MullineuxSymbol":
        top, _, bottom = text.partition("/")
        a = [int(x) for x in top.split(",") if x.strip()]
        r = [int(x) for x in bottom.split(",") if x.strip()]
        if len(a) != len(r):
            raise ValueError(f"ragged symbol {text!r}")
        return cls(tuple(zip(a, r)))

    def image(self, p: int) -> "MullineuxSymbol":
        return MullineuxSymbol(tuple((a, a - r + (0 if a % p == 0 else 1))
                                     for a, r in self.rows))


def rim(lam) -> list[tuple[int, int]]:
    """Rim nodes from the end of row 1 down to the foot of column 1."""
    lam = tuple(lam)
    if not lam:
        return []
    i, j = 1, lam[0]
    out = [(i, j)]
    while (i, j) != (len(lam), 1):
        if i < len(lam) and lam[i] >= j:
            i += 1
        else:
            j -= 1
        out.append((i, j))
    return out


def p_rim(lam, p: int) -> list[tuple[int, int]]:
    """Pieces of p consecutive rim nodes; each piece starts in the row below
    the end of the previous one, and the last piece may be short."""
    nodes = rim(lam)
    out = []
    pos = 0
    while pos < len(nodes):
        piece = nodes[pos:pos + p]
        out.extend(piece)
        last_row = piece[-1][0]
        pos += len(piece)
        while pos < len(nodes) and nodes[pos][0] == last_row:
            pos += 1
    return out


def mullineux_symbol(mu, p: int) -> MullineuxSymbol:
    mu = list(mu)
    cols = []
    while mu:
        strip = p_rim(mu, p)
        cols.append((len(strip), len(mu)))
        for i, _ in strip:
            mu[i - 1] -= 1
        mu = list(Partition(mu))
    return MullineuxSymbol(tuple(cols))


def rule7_transport(lam, mu, p: int) -> tuple[Partition, Partition]:
    """[S(lam):D(mu)] = [S(lam'):D(mullineux(mu))]."""
    return conjugate(tuple(lam)), mullineux(mu, p)
