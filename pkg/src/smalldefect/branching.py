"""Normal nodes, Kleshchev-type reductions and r-restriction of Specht classes."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .partitions import NodeCoord, Partition, is_p_regular


class PreconditionFailed(ValueError):
    pass


class NoNormalNodes(ValueError):
    pass


@dataclass(frozen=True)
class NodeSignature:
    r: int
    removable: tuple[NodeCoord, ...]
    addable: tuple[NodeCoord, ...]
    normal: tuple[NodeCoord, ...]

    @property
    def good(self) -> NodeCoord | None:
        return self.normal[-1] if self.normal else None


@lru_cache(maxsize=1 << 18)
def _signature(lam: tuple, r: int, p: int):
    """(removable, addable, normal, conormal) rows of residue-r nodes."""
    rem, add, word = [], [], []
    ell = len(lam)
    for i in range(ell + 1):
        here = lam[i] if i < ell else 0
        above = lam[i - 1] if i > 0 else None
        if above is None or here < above:
            if (here + 1 - (i + 1)) % p == r:
                add.append(i + 1)
                word.append((0, i + 1))
        if i < ell:
            below = lam[i + 1] if i + 1 < ell else 0
            if here > below and (here - (i + 1)) % p == r:
                rem.append(i + 1)
                word.append((1, i + 1))
    # Read top to bottom: an addable node cancels the next unmatched
    # removable node below it.
    word.sort(key=lambda t: (t[1], -t[0]))
    stack = []
    normal = []
    for kind, row in word:
        if kind == 0:
            stack.append(row)
        elif stack:
            stack.pop()
        else:
            normal.append(row)
    conormal = stack
    return tuple(rem), tuple(add), tuple(normal), tuple(conormal)


def node_signature(lam, r: int, p: int) -> NodeSignature:
    rem, add, normal, _ = _signature(tuple(lam), r, p)

    def coords(rows, delta):
        return tuple(NodeCoord(i, (lam[i - 1] if i <= len(lam) else 0) + delta)
                     for i in rows)

    return NodeSignature(r, coords(rem, 0), coords(add, 1), coords(normal, 0))


def normal_rows(lam: tuple, r: int, p: int) -> tuple[int, ...]:
    return _signature(lam, r, p)[2]


def removable_rows(lam: tuple, r: int, p: int) -> tuple[int, ...]:
    return _signature(lam, r, p)[0]


def addable_rows(lam: tuple, r: int, p: int) -> tuple[int, ...]:
    return _signature(lam, r, p)[1]


def _drop_rows(lam: tuple, rows) -> Partition:
    parts = list(lam)
    for i in rows:
        parts[i - 1] -= 1
    return Partition(parts)


def _add_rows(lam: tuple, rows) -> Partition:
    parts = list(lam)
    for i in sorted(rows):
        if i > len(parts):
            parts.append(0)
        parts[i - 1] += 1
    return Partition(parts)


def remove_lowest_normal(mu: tuple, r: int, p: int, k: int) -> Partition:
    normal = normal_rows(mu, r, p)
    if len(normal) < k:
        raise PreconditionFailed(f"{mu} has {len(normal)} normal {r}-nodes, need {k}")
    return _drop_rows(mu, normal[len(normal) - k:])


def remove_good(mu: tuple, r: int, p: int) -> Partition | None:
    normal = normal_rows(mu, r, p)
    return _drop_rows(mu, normal[-1:]) if normal else None


def add_cogood(mu: tuple, r: int, p: int) -> Partition | None:
    conormal = _signature(mu, r, p)[3]
    return _add_rows(mu, conormal[:1]) if conormal else None


# --- reductions ------------------------------------------------------------

@dataclass(frozen=True)
class Reduction:
    """Outcome of the normal-node reduction: ``kind`` is ``"zero"``,
    ``"equal"`` (entry equals the one for ``lam``/``mu``) or
    ``"not_applicable"``."""

    kind: str
    lam: Partition | None = None
    mu: Partition | None = None


ZERO = Reduction("zero")
NOT_APPLICABLE = Reduction("not_applicable")


def prop21_reduce(lam, mu, r: int, k: int, p: int) -> Reduction:
    lam, mu = tuple(lam), tuple(mu)
    if k < 1:
        raise PreconditionFailed("k must be positive")
    if not is_p_regular(mu, p):
        raise PreconditionFailed(f"{mu} is not {p}-regular")
    normal = normal_rows(mu, r, p)
    if len(normal) < k:
        raise PreconditionFailed(f"{mu} has fewer than {k} normal {r}-nodes")
    rem = removable_rows(lam, r, p)
    if len(rem) < k:
        return ZERO
    if len(rem) > k:
        return NOT_APPLICABLE
    return Reduction("equal", _drop_rows(lam, rem), _drop_rows(mu, normal[-k:]))


def rule3_upper(lam, mu, r: int, p: int) -> tuple[list[Partition], Partition]:
    """Remove all normal r-nodes of mu; Omega is every way of removing that
    many r-nodes from lam.  The entry is bounded by the sum over Omega."""
    lam, mu = tuple(lam), tuple(mu)
    normal = normal_rows(mu, r, p)
    if not normal:
        raise NoNormalNodes(f"{mu} has no normal {r}-nodes")
    k = len(normal)
    mubar = _drop_rows(mu, normal)
    rem = removable_rows(lam, r, p)
    omega = [_drop_rows(lam, rows) for rows in combinations(rem, k)]
    return omega, mubar


def restrict_specht(v, r: int, p: int):
    """r-restriction of a Specht-basis sum: S(nu) -> sum of S(nu - A) over
    removable r-nodes A.  Accepts a VirtualSum or a plain mapping."""
    from .schaper import VirtualSum

    terms = v.terms if isinstance(v, VirtualSum) else v
    out = Counter()
    for nu, c in terms.items():
        for row in removable_rows(tuple(nu), r, p):
            out[_drop_rows(nu, (row,))] += c
    return VirtualSum.specht(out)


# --- Kleshchev sequences -----------------------------------------------------

_SEQ_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_sequence(text: str) -> list[tuple[int, int]]:
    """``"4^2 3 0^3"`` -> [(4, 2), (3, 1), (0, 3)]."""
    out = []
    for token in text.split():
        m = _SEQ_TOKEN.match(token)
        if not m:
            raise ValueError(f"bad sequence token {token!r}")
        out.append((int(m.group(1)), int(m.group(2) or 1)))
    return out


def format_sequence(seq) -> str:
    return " ".join(f"{r}^{k}" if k > 1 else str(r) for r, k in seq)


def runner_residue(runner: int, b: int, p: int) -> int:
    """Residue of the node removed by sliding a bead left off ``runner`` on
    an abacus with ``b`` beads."""
    return (runner - 1 - b) % p


def kleshchev_sequence(mu, p: int) -> list[tuple[int, int]]:
    """Greedy sequence stripping every normal node of one residue at a time,
    always taking the residue with the most normal nodes."""
    mu = tuple(mu)
    seq = []
    while mu:
        best = max(range(p), key=lambda r: (len(normal_rows(mu, r, p)), -r))
        normal = normal_rows(mu, best, p)
        seq.append((best, len(normal)))
        mu = _drop_rows(mu, normal)
    return seq
