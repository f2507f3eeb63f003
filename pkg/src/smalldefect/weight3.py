"""Weight-3 cores: the four abacus shapes, bracket notation and exceptional partitions.

Every weight-3 block with p > 3 reduces to one whose core abacus has
exactly 3 beads on runner 1 and bead counts from {3, 4, 5}:

* Case 1: all runners hold 3 beads (empty core).
* Case 2: runners i..j-1 hold 4 beads.
* Case 3: runner i holds 4, runners i+1..j-1 hold 5, runners j..k-1 hold 4.
* Case 4: runners i..j-1 hold 5, runners j..k-1 hold 4.

Partitions in such a block are named by bracket expressions like
``<5^2,4>``: each listed runner has its last bead(s) moved down, three rows
in total.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .abacus import Abacus, BlockId, from_partition, canonical_beads, to_partition
from .partitions import Partition, _dominates, order_key


class NotMinimalCore(ValueError):
    pass


class BadSpec(ValueError):
    pass


class Case1NotApplicable(ValueError):
    pass


@dataclass(frozen=True)
class CaseDescriptor:
    case: int
    p: int
    i: int = 0
    j: int = 0
    k: int = 0

    def __post_init__(self):
        p, i, j, k = self.p, self.i, self.j, self.k
        ok = {
            1: True,
            2: 1 < i < j <= p + 1,
            3: 2 < i + 1 < j <= k <= p + 1,
            4: 1 < i < j <= k <= p + 1,
        }.get(self.case, False)
        if not ok:
            raise ValueError(f"invalid parameters for {self}")

    @property
    def params(self) -> tuple[int, ...]:
        return {1: (), 2: (self.i, self.j)}.get(self.case, (self.i, self.j, self.k))

    def counts(self) -> tuple[int, ...]:
        """Beads on runners 1..p of the normalized core abacus."""
        p, i, j, k = self.p, self.i, self.j, self.k
        out = []
        for r in range(1, p + 1):
            if self.case == 1 or r < i:
                c = 3
            elif self.case == 2:
                c = 4 if r < j else 3
            elif self.case == 3:
                c = 4 if r == i else 5 if r < j else 4 if r < k else 3
            else:
                c = 5 if r < j else 4 if r < k else 3
            out.append(c)
        return tuple(out)

    def abacus(self) -> Abacus:
        p = self.p
        beads = [(row - 1) * p + r for r, c in enumerate(self.counts(), start=1)
                 for row in range(1, c + 1)]
        return Abacus(p, tuple(beads))

    def core(self) -> Partition:
        return to_partition(self.abacus())

    def closed_form_core(self) -> Partition:
        p, i, j, k = self.p, self.i, self.j, self.k
        if self.case == 1:
            return Partition()
        if self.case == 2:
            return Partition([i - 1] * (j - i))
        if self.case == 3:
            return Partition([p - k + 2 * i] * (j - i - 1) + [i - 1] * (k - i))
        return Partition([p - k + 2 * i - 1] * (j - i) + [i - 1] * (k - i))

    def block(self) -> BlockId:
        return BlockId(self.p, self.core(), 3)

    def __str__(self):
        names = "ijk"
        inner = ",".join(f"{names[n]}={v}" for n, v in enumerate(self.params))
        return f"Case {self.case}" + (f" ({inner})" if inner else "")


def descriptors(p: int) -> list[CaseDescriptor]:
    """Every minimal weight-3 core shape for the prime p."""
    out = [CaseDescriptor(1, p)]
    out += [CaseDescriptor(2, p, i, j) for i, j in combinations(range(2, p + 2), 2)]
    out += [CaseDescriptor(3, p, i, j, k)
            for i in range(2, p + 2) for j in range(i + 2, p + 2)
            for k in range(j, p + 2)]
    out += [CaseDescriptor(4, p, i, j, k)
            for i in range(2, p + 2) for j in range(i + 1, p + 2)
            for k in range(j, p + 2)]
    return out


def census(p: int) -> dict[int, int]:
    out = {1: 0, 2: 0, 3: 0, 4: 0}
    for d in descriptors(p):
        out[d.case] += 1
    return out


@lru_cache(maxsize=None)
def _by_counts(p: int) -> dict:
    return {d.counts(): d for d in descriptors(p)}


def normalized_counts(core, p: int) -> tuple[int, ...] | None:
    """Runner bead counts of the abacus for ``core`` with 3 beads on runner 1
    and at least 3 on every runner, if such a bead count exists."""
    b0 = canonical_beads(core, p)
    for b in range(b0, b0 + 4 * p + 1):
        counts = from_partition(core, b, p).bead_counts()
        if counts[0] == 3 and min(counts) == 3:
            return counts
    return None


def classify_core(core, p: int) -> CaseDescriptor:
    counts = normalized_counts(tuple(core), p)
    d = _by_counts(p).get(counts)
    if d is None:
        raise NotMinimalCore(f"core ({','.join(map(str, core))}) is not a minimal weight-3 core at p={p}")
    return d


# --- bracket notation ------------------------------------------------------

# A spec is a tuple of (runner, multiplicity) pairs; every shape moves
# beads down 3 rows in total.  (r, 1) alone drops the last bead 3 rows;
# in (r, 1), (s, 1) the first runner's bead drops 2 rows.
_PATTERNS = {(1,): (3,), (2,): (2, 1), (3,): (1, 1, 1)}


def validate_spec(spec) -> tuple[tuple[int, int], ...]:
    spec = tuple((int(r), int(m)) for r, m in spec)
    mults = tuple(m for _, m in spec)
    runners = [r for r, _ in spec]
    if len(set(runners)) != len(runners):
        raise BadSpec(f"bad bracket spec {spec}")
    if mults not in {(1,), (2,), (3,), (1, 1), (2, 1), (1, 1, 1)}:
        raise BadSpec(f"unsupported bracket shape {spec}")
    return spec


def _drops(spec) -> list[tuple[int, int, int]]:
    """(runner, which bead from the bottom, rows down) moves for a spec."""
    mults = tuple(m for _, m in spec)
    if len(spec) == 1:
        r, m = spec[0]
        return [(r, n, d) for n, d in enumerate(_PATTERNS[(m,)])]
    if mults == (1, 1):
        (r, _), (s, _) = spec
        return [(r, 0, 2), (s, 0, 1)]
    if mults == (2, 1):
        (r, _), (s, _) = spec
        return [(r, 0, 1), (r, 1, 1), (s, 0, 1)]
    return [(r, 0, 1) for r, _ in spec]


def apply_spec(A: Abacus, spec) -> Abacus:
    spec = validate_spec(spec)
    p = A.p
    beads = set(A.beads)
    for r, n, d in _drops(spec):
        if not 1 <= r <= p:
            raise BadSpec(f"runner {r} out of range")
        on_runner = sorted(m for m in A.beads if A.runner(m) == r)
        if n >= len(on_runner):
            raise BadSpec(f"runner {r} has too few beads")
        m = on_runner[-1 - n]
        beads.discard(m)
        beads.add(m + d * p)
    if len(beads) != A.b:
        raise BadSpec(f"bead collision applying {spec}")
    return Abacus(p, tuple(beads))


def bracket_partition(B, spec) -> Partition:
    """The partition named by ``spec`` in the block (a BlockId or descriptor)."""
    d = B if isinstance(B, CaseDescriptor) else classify_core(B.core, B.p)
    return to_partition(apply_spec(d.abacus(), spec))


_BRACKET = re.compile(r"^\s*<([^>]*)>\s*$")


def parse_bracket(text: str) -> tuple[tuple[int, int], ...]:
    """``"<5^2,4>"`` -> ((5, 2), (4, 1))."""
    m = _BRACKET.match(text)
    if not m:
        raise BadSpec(f"not a bracket expression: {text!r}")
    out = []
    for token in m.group(1).split(","):
        base, _, exp = token.strip().partition("^")
        if not base.strip().isdigit() or (exp and not exp.strip().isdigit()):
            raise BadSpec(f"bad bracket token {token!r}")
        out.append((int(base), int(exp or 1)))
    return validate_spec(out)


def format_bracket(spec) -> str:
    return "<" + ",".join(f"{r}^{m}" if m > 1 else str(r) for r, m in spec) + ">"


def bracket_name(d: CaseDescriptor, lam) -> str | None:
    """The bracket expression naming ``lam`` in the block of ``d``, if any."""
    return _names(d).get(Partition(lam))


@lru_cache(maxsize=None)
def _names(d: CaseDescriptor) -> dict:
    p = d.p
    A = d.abacus()
    out = {}
    shapes = [((r, 1),) for r in range(1, p + 1)]
    shapes += [((r, 2),) for r in range(1, p + 1)]
    shapes += [((r, 3),) for r in range(1, p + 1)]
    shapes += [((r, 1), (s, 1)) for r in range(1, p + 1) for s in range(1, p + 1) if r != s]
    shapes += [((r, 2), (s, 1)) for r in range(1, p + 1) for s in range(1, p + 1) if r != s]
    shapes += [((r, 1), (s, 1), (t, 1)) for r, s, t in combinations(range(p, 0, -1), 3)]
    for spec in shapes:
        try:
            lam = to_partition(apply_spec(A, spec))
        except BadSpec:
            continue
        out.setdefault(lam, format_bracket(spec))
    return out


# --- exceptional partitions ------------------------------------------------

def exceptional_specs(d: CaseDescriptor) -> list[tuple[str, tuple]]:
    i = d.i
    if d.case == 1:
        raise Case1NotApplicable("the principal block needs no exceptional list")
    if d.case == 3:
        return [("alpha", ((i, 2), (i + 1, 1))), ("beta", ((i - 1, 1), (i, 1), (i + 1, 1))),
                ("gamma", ((i, 2),)), ("delta", ((i, 1), (i - 1, 1)))]
    if d.case == 4:
        return [("alpha", ((i, 3),)), ("beta", ((i, 2), (i - 1, 1))),
                ("gamma", ((i - 1, 1), (i, 1))), ("delta", ((i - 1, 1),))]
    out = [("alpha*", ((i, 2),)), ("beta*", ((i, 1), (i - 1, 1))), ("gamma*", ((i - 1, 1),)),
           ("alpha#", ((i, 3),)), ("beta#", ((i - 1, 2), (i, 1))), ("gamma#", ((i - 1, 2),))]
    others = [u for u in range(1, d.p + 1) if u not in (i - 1, i)]
    out += [(f"alpha({u})", ((i, 2), (u, 1))) for u in others]
    out += [(f"beta({u})", ((i - 1, 1), (i, 1), (u, 1))) for u in others]
    out += [(f"gamma({u})", ((i - 1, 1), (u, 1))) for u in others]
    return out


def exceptional_partitions(d: CaseDescriptor) -> list[tuple[str, Partition]]:
    """(name, partition) pairs, most dominant first."""
    pairs = [(name, bracket_partition(d, spec)) for name, spec in exceptional_specs(d)]
    return sorted(pairs, key=lambda t: order_key(t[1]))


# Exceptional-row submatrices for Cases 3 and 4 (rows and columns in the
# order alpha, beta, gamma, delta).
_CASE3 = ((1, 0, 0, 0), (1, 1, 0, 0), (1, 0, 1, 0), (1, 1, 1, 1))
_CASE4 = ((1, 0, 0, 0), (1, 1, 0, 0), (1, 1, 1, 0), (1, 1, 1, 1))


def expected_matrices(d: CaseDescriptor):
    """((names), matrix) for Cases 3 and 4; None for Case 2."""
    if d.case == 3:
        return ("alpha", "beta", "gamma", "delta"), _CASE3
    if d.case == 4:
        return ("alpha", "beta", "gamma", "delta"), _CASE4
    if d.case == 2:
        return None
    raise Case1NotApplicable("no exceptional rows in Case 1")


def dominance_chain_holds(parts) -> bool:
    return all(_dominates(a, b) for a, b in zip(parts, parts[1:]))
