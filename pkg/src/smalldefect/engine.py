"""Interval decomposition matrices and the rule-driven block solver.

A block is solved by filling an interval ``[lo, hi]`` for every entry
[S(lam):D(mu)] with mu a p-regular partition dominating lam, then
tightening the intervals with the rules until nothing changes:

* Rule 2 (Jantzen-Schaper) in dominance order, using whatever is known
  about the rows above;
* the normal-node reduction, row and column removal, Donkin's split and the
  Kleshchev upper bound, all of which point at smaller symmetric groups
  whose blocks are solved first (memoized by block);
* conjugation with the Mullineux map, which couples a block with its
  conjugate block;
* finally, case splitting on undetermined entries of a regular row, pruning
  any value for which some restriction of D(lam) would have a negative
  multiplicity (Rule 6).

Blocks where one runner carries at least ``w`` more beads than its left
neighbour are copied from the smaller block obtained by swapping those
runners.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import os
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .abacus import (Abacus, BlockId, block_id, block_partitions, canonical_beads,
                     from_partition, p_core, plus, to_partition)
from .branching import (_drop_rows, normal_rows, removable_rows, parse_sequence)
from .partitions import (Partition, _dominates, conjugate, format_partition,
                         is_p_regular, order_key, parse_partition)
from .reductions import donkin_rows, mullineux
from .schaper import schaper_sum

INF = math.inf


class WeightCapExceeded(ValueError):
    pass


class Inconsistent(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class AllCandidatesPruned(Inconsistent):
    pass


class NoProgress(RuntimeError):
    pass


# --- values ----------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int | None = None  # None means unbounded

    def __post_init__(self):
        if self.lo < 0 or (self.hi is not None and self.hi < self.lo):
            raise ValueError(f"bad interval [{self.lo}, {self.hi}]")

    @property
    def determined(self) -> bool:
        return self.hi == self.lo

    @property
    def value(self) -> int | None:
        return self.lo if self.determined else None

    def __contains__(self, x: int) -> bool:
        return self.lo <= x and (self.hi is None or x <= self.hi)

    def tighten(self, other: "Interval") -> "Interval":
        """Intersection; raises Inconsistent when empty."""
        lo = max(self.lo, other.lo)
        his = [h for h in (self.hi, other.hi) if h is not None]
        hi = min(his) if his else None
        if hi is not None and hi < lo:
            raise Inconsistent(f"{self} and {other} are disjoint")
        return Interval(lo, hi)

    def __str__(self):
        if self.determined:
            return "." if self.lo == 0 else str(self.lo)
        return f"{self.lo}..{'' if self.hi is None else self.hi}"

    @classmethod
    def parse(cls, text: str) -> "Interval":
        text = text.strip()
        if text == ".":
            return cls(0, 0)
        if ".." in text:
            lo, hi = text.split("..")
            return cls(int(lo), int(hi) if hi else None)
        return cls(int(text), int(text))


def _iv(cell) -> Interval:
    lo, hi = cell
    return Interval(int(lo), None if hi == INF else int(hi))


@dataclass(frozen=True)
class Assumption:
    p: int
    lam: Partition
    mu: Partition
    value: int

    def line(self) -> str:
        return f"{self.p}; {format_partition(self.lam)}; {format_partition(self.mu)}; {self.value}"

    @classmethod
    def parse(cls, line: str) -> "Assumption":
        parts = [x.strip() for x in line.split(";")]
        if len(parts) != 4:
            raise ValueError(f"expected 'p; lambda; mu; value', got {line!r}")
        return cls(int(parts[0]), parse_partition(parts[1]), parse_partition(parts[2]),
                   int(parts[3]))


def load_assumptions(path) -> list[Assumption]:
    out = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(Assumption.parse(line))
    return out


# The one entry the rules cannot settle for weight 3 in characteristic 5.
P5_WEIGHT3_ASSUMPTION = Assumption(5, Partition((8, 8, 4, 1)), Partition((12, 9)), 1)


class DecompMatrix:
    """Rows are the block's partitions, columns its p-regular ones; both
    listed most dominant first.  ``cells[lam][mu]`` holds ``[lo, hi]`` for
    mu strictly dominating lam; every other entry is 0 or (diagonal) 1."""

    def __init__(self, block: BlockId, rows: list[Partition]):
        self.block = block
        self.rows = rows
        self.cols = [x for x in rows if is_p_regular(x, block.p)]
        self.cells: dict[Partition, dict[Partition, list]] = {}
        for lam in rows:
            self.cells[lam] = {mu: [0, INF] for mu in self.cols
                               if mu != lam and _dominates(mu, lam)}
        self.provenance: dict[tuple, list] = {}

    # reading
    def interval(self, lam, mu) -> Interval:
        lam, mu = Partition(lam), Partition(mu)
        if lam == mu:
            return Interval(1, 1)
        cell = self.cells.get(lam, {}).get(mu)
        return Interval(0, 0) if cell is None else _iv(cell)

    def value(self, lam, mu) -> int | None:
        return self.interval(lam, mu).value

    def undetermined(self) -> list[tuple[Partition, Partition]]:
        return [(lam, mu) for lam in self.rows for mu, c in self.cells[lam].items()
                if c[0] != c[1]]

    @property
    def determined(self) -> bool:
        return not self.undetermined()

    def max_entry(self) -> float:
        return max([1] + [c[1] for row in self.cells.values() for c in row.values()])

    def row(self, lam) -> dict[Partition, Interval]:
        """Nonzero entries of a row (diagonal included)."""
        lam = Partition(lam)
        out = {mu: _iv(c) for mu, c in self.cells[lam].items() if c[1] > 0}
        if lam in self.cols:
            out[lam] = Interval(1, 1)
        return dict(sorted(out.items(), key=lambda kv: order_key(kv[0])))

    def submatrix(self, rows, cols) -> list[list[Interval]]:
        return [[self.interval(a, b) for b in cols] for a in rows]

    # output
    def to_tsv(self, labels=None) -> str:
        name = labels or (lambda x: format_partition(x) or "()")
        lines = ["\t".join(["lambda"] + [name(mu) for mu in self.cols])]
        for lam in self.rows:
            lines.append("\t".join([name(lam)] + [str(self.interval(lam, mu))
                                                  for mu in self.cols]))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        data = {
            "p": self.block.p,
            "core": format_partition(self.block.core),
            "weight": self.block.weight,
            "rows": [format_partition(x) for x in self.rows],
            "cols": [format_partition(x) for x in self.cols],
            "entries": [[format_partition(lam), format_partition(mu), str(_iv(c))]
                        for lam in self.rows for mu, c in self.cells[lam].items()
                        if c[1] > 0],
            "determined": self.determined,
        }
        return json.dumps(data, indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "DecompMatrix":
        data = json.loads(text)
        block = BlockId(data["p"], parse_partition(data["core"]), data["weight"])
        M = cls(block, [parse_partition(x) for x in data["rows"]])
        for lam in M.rows:
            for mu in M.cells[lam]:
                M.cells[lam][mu] = [0, 0]
        for lam, mu, text in data["entries"]:
            iv = Interval.parse(text)
            M.cells[parse_partition(lam)][parse_partition(mu)] = [
                iv.lo, INF if iv.hi is None else iv.hi]
        return M


# --- configuration -----------------------------------------------------------

@dataclass(frozen=True)
class SolverConfig:
    weight_cap: int = 4
    branch_depth: int = 1
    sequences: tuple[str, ...] | None = None  # None: default policy
    max_candidates: int = 512
    small_weight_bound: bool = True
    donkin: bool = True
    rule7: bool = True
    scopes: bool = True
    restriction_identity: bool = False
    exhaustive: bool = False
    max_blocks: int | None = None
    cache_dir: str | None = None

    def digest(self, assumptions) -> str:
        payload = asdict(self)
        payload.pop("cache_dir")
        payload["assumptions"] = sorted(a.line() for a in assumptions)
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:16]


def default_sequences(p: int, length: int = 2) -> list[list[int]]:
    """Every residue word of length at most ``length``, then for each
    starting residue c the sequence c, c, c-1, c-1, ..., c-p+1, c-p+1 (two
    nodes of each residue, going down through the runners)."""
    words = [list(w) for n in range(1, length + 1)
             for w in itertools.product(range(p), repeat=n)]
    doubles = [[(c - t) % p for t in range(p) for _ in range(2)] for c in range(p)]
    return words + doubles


def _expand(seq_text: str) -> list[int]:
    return [r for r, k in parse_sequence(seq_text) for _ in range(k)]


# --- Scopes reduction ----------------------------------------------------------

def scopes_partner(B: BlockId):
    """(smaller block, relabel map) when some runner has at least ``w`` more
    beads than the runner to its left, else None."""
    p, w = B.p, B.weight
    if w == 0:
        return None
    b0 = canonical_beads(B.core, p) + p * w
    for b in range(b0, b0 + p):
        counts = from_partition(B.core, b, p).bead_counts()
        for r in range(2, p + 1):
            if counts[r - 1] - counts[r - 2] >= w:
                def relabel(lam, b=b, r=r):
                    A = from_partition(lam, b, p)
                    beads = tuple(m - 1 if A.runner(m) == r else m + 1 if A.runner(m) == r - 1 else m
                                  for m in A.beads)
                    return to_partition(Abacus(p, beads))
                small = BlockId(p, relabel(B.core), w)
                return small, relabel
    return None


# --- the solver ----------------------------------------------------------------

class Solver:
    """Solves blocks for one prime; smaller blocks are memoized."""

    def __init__(self, p: int, config: SolverConfig | None = None, assumptions=()):
        self.p = p
        self.config = config or SolverConfig()
        self.assumptions = [a for a in assumptions if a.p == p]
        self.memo: dict[BlockId, DecompMatrix] = {}
        self.live: dict[BlockId, DecompMatrix] = {}
        self.blocks_solved = 0
        self._schaper: dict[Partition, dict] = {}
        self._dexpr: dict[tuple, Counter] = {}
        self._static_done: set = set()
        if self.config.sequences is None:
            self.sequences = default_sequences(p)
        else:
            self.sequences = [_expand(s) for s in self.config.sequences]

    # -- blocks
    def enumerate_block(self, B: BlockId) -> list[Partition]:
        if B.weight > self.config.weight_cap:
            raise WeightCapExceeded(f"{B} exceeds weight cap {self.config.weight_cap}")
        return block_partitions(B)

    def conjugate_block(self, B: BlockId) -> BlockId:
        return BlockId(B.p, conjugate(tuple(B.core)), B.weight)

    def solve_block(self, B: BlockId) -> DecompMatrix:
        if B.p != self.p:
            raise ValueError(f"solver is for p={self.p}, block has p={B.p}")
        if p_core(tuple(B.core), B.p) != B.core:
            raise ValueError(f"({format_partition(B.core)}) is not a {B.p}-core")
        if B in self.memo:
            return self.memo[B]
        if B in self.live:
            return self.live[B]
        rows = self.enumerate_block(B)
        cached = self._cache_load(B)
        if cached is not None:
            self.memo[B] = cached
            return cached
        if self.config.max_blocks is not None and self.blocks_solved >= self.config.max_blocks:
            raise BudgetExceeded(f"more than {self.config.max_blocks} blocks needed")
        self.blocks_solved += 1

        partner = scopes_partner(B) if self.config.scopes else None
        if partner is not None and not self._assumed_in(B):
            small, relabel = partner
            S = self.solve_block(small)
            M = DecompMatrix(B, rows)
            for lam in rows:
                lb = relabel(lam)
                for mu, cell in M.cells[lam].items():
                    cell[:] = S.cells[lb][relabel(mu)]
                    self.provenance(M, lam, mu, "scopes", cell)
            self.memo[B] = M
            self._cache_store(M)
            return M

        group = [DecompMatrix(B, rows)]
        Bc = self.conjugate_block(B)
        if (self.config.rule7 and Bc != B and Bc not in self.memo
                and not (self.config.scopes and scopes_partner(Bc))):
            group.append(DecompMatrix(Bc, self.enumerate_block(Bc)))
        for M in group:
            self.live[M.block] = M
        try:
            self._solve_group(group)
        finally:
            for M in group:
                self.live.pop(M.block, None)
        for M in group:
            self.memo[M.block] = M
            self._cache_store(M)
        return group[0]

    def _assumed_in(self, B: BlockId) -> bool:
        return any(block_id(a.lam, self.p) == B for a in self.assumptions)

    # -- global entry lookup
    def entry(self, lam, mu) -> tuple:
        """[lo, hi] for [S(lam):D(mu)] in any block (solving it if needed)."""
        lam, mu = Partition(lam), Partition(mu)
        if sum(lam) != sum(mu):
            return (0, 0)
        if lam == mu:
            return (1, 1)
        if not _dominates(mu, lam):
            return (0, 0)
        B = block_id(lam, self.p)
        if block_id(mu, self.p) != B:
            return (0, 0)
        if B.weight > self.config.weight_cap:
            return (0, INF)
        M = self.live.get(B) or self.solve_block(B)
        return tuple(M.cells[lam][mu])

    def interval(self, lam, mu) -> Interval:
        return _iv(self.entry(lam, mu))

    # -- bookkeeping
    @staticmethod
    def provenance(M: DecompMatrix, lam, mu, rule: str, cell):
        M.provenance.setdefault((lam, mu), []).append((rule, cell[0], cell[1]))

    def _tighten(self, M, lam, mu, lo, hi, rule) -> bool:
        cell = M.cells[lam][mu]
        nlo, nhi = max(cell[0], lo), min(cell[1], hi)
        if nlo > nhi:
            raise Inconsistent(
                f"[S({format_partition(lam)}):D({format_partition(mu)})] at p={self.p}: "
                f"{rule} gives [{lo}, {hi}] but the entry is [{cell[0]}, {cell[1]}]")
        if (nlo, nhi) == (cell[0], cell[1]):
            return False
        cell[0], cell[1] = nlo, nhi
        self.provenance(M, lam, mu, rule, cell)
        return True

    # -- the fixpoint
    def _solve_group(self, group):
        changed = self._apply_assumptions(group)
        if self.config.small_weight_bound:
            for M in group:
                self._small_weight(M)
        while True:
            changed = False
            for M in group:
                changed |= self._rule2_pass(M)
            changed |= self._rule7_pass(group)
            for M in group:
                changed |= self._static_pass(M)
            changed |= self._rule7_pass(group)
            if self.config.restriction_identity:
                for M in group:
                    changed |= self._restriction_identity_pass(M)
            if changed:
                continue
            if self.config.branch_depth >= 1:
                for M in group:
                    if self._branch_pass(M, group, self.config.branch_depth):
                        changed = True
                        break
            if not changed:
                break

    def _apply_assumptions(self, group) -> bool:
        changed = False
        for M in group:
            for a in self.assumptions:
                if block_id(a.lam, self.p) == M.block and a.mu in M.cells.get(a.lam, {}):
                    changed |= self._tighten(M, a.lam, a.mu, a.value, a.value, "assumption")
        return changed

    def _small_weight(self, M):
        w, p = M.block.weight, M.block.p
        if w <= 1 or (w == 2 and p > 2):
            for lam in M.rows:
                for mu in M.cells[lam]:
                    self._tighten(M, lam, mu, 0, 1, "small weight")

    # Rule 2
    def schaper(self, lam) -> dict:
        lam = Partition(lam)
        if lam not in self._schaper:
            self._schaper[lam] = schaper_sum(lam, self.p).terms
        return self._schaper[lam]

    def _rule2_pass(self, M) -> bool:
        changed = False
        for lam in M.rows:
            row = M.cells[lam]
            if all(c[0] == c[1] for c in row.values()):
                continue
            lo_acc, hi_acc = Counter(), Counter()
            for nu, a in self.schaper(lam).items():
                terms = list(M.cells[nu].items())
                if nu in M.cols:
                    terms.append((nu, (1, 1)))
                for mu, (lo, hi) in terms:
                    if hi == 0:
                        continue
                    if a > 0:
                        lo_acc[mu] += a * lo
                        hi_acc[mu] += a * hi
                    else:
                        lo_acc[mu] += a * hi
                        hi_acc[mu] += a * lo
            for mu, cell in row.items():
                if cell[0] == cell[1]:
                    continue
                mlo, mhi = lo_acc.get(mu, 0), hi_acc.get(mu, 0)
                if mhi < 0:
                    raise Inconsistent(f"negative Schaper coefficient for D({mu}) in S({lam})")
                changed |= self._tighten(M, lam, mu, 1 if mlo >= 1 else 0, mhi, "rule 2")
        return changed

    # Rule 7
    def _partner(self, lam, mu):
        return conjugate(tuple(lam)), mullineux(mu, self.p)

    def _rule7_pass(self, group) -> bool:
        if not self.config.rule7:
            return False
        changed = False
        for M in group:
            Bc = self.conjugate_block(M.block)
            other = next((N for N in group if N.block == Bc), None)
            for lam in M.rows:
                for mu, cell in M.cells[lam].items():
                    if cell[0] == cell[1] and other is None:
                        continue
                    lc, mc = self._partner(lam, mu)
                    if lc == mc:
                        oc = (1, 1)
                    elif other is not None:
                        oc = other.cells[lc].get(mc, (0, 0))
                    else:
                        oc = self.entry(lc, mc)
                    changed |= self._tighten(M, lam, mu, oc[0], oc[1], "rule 7")
        return changed

    # Normal-node reduction, Rules 3-5 and Donkin: all point at smaller n.
    def _static_pass(self, M) -> bool:
        changed = False
        for lam in M.rows:
            for mu, cell in M.cells[lam].items():
                key = (lam, mu)
                if key in self._static_done:
                    continue
                if cell[0] == cell[1] and not self.config.exhaustive:
                    continue
                self._static_done.add(key)
                for rule, lo, hi in self._static_bounds(lam, mu):
                    changed |= self._tighten(M, lam, mu, lo, hi, rule)
                    if cell[0] == cell[1] and not self.config.exhaustive:
                        break
        return changed

    def _static_bounds(self, lam, mu):
        p = self.p
        for r in range(p):
            K = len(normal_rows(mu, r, p))
            if not K:
                continue
            rem = removable_rows(lam, r, p)
            if len(rem) < K:
                yield "normal nodes", 0, 0
                return
            if len(rem) == K:
                lo, hi = self.entry(_drop_rows(lam, rem), _drop_rows(mu, normal_rows(mu, r, p)))
                yield f"normal nodes r={r}", lo, hi
        if lam[0] == mu[0]:
            lo, hi = self.entry(lam[1:], mu[1:])
            yield "rule 4", lo, hi
        if len(lam) == len(mu):
            lo, hi = self.entry(tuple(x - 1 for x in lam), tuple(x - 1 for x in mu))
            yield "rule 5", lo, hi
        if self.config.donkin:
            for s in donkin_rows(lam, mu):
                if s == 1:
                    continue
                a = self.entry(lam[:s], mu[:s])
                if a == (0, 0):
                    yield "donkin", 0, 0
                    return
                b = self.entry(lam[s:], mu[s:])
                if b == (0, 0):
                    yield "donkin", 0, 0
                    return
                yield "donkin", a[0] * b[0], a[1] * b[1]
        for r in range(p):
            normal = normal_rows(mu, r, p)
            if not normal:
                continue
            rem = removable_rows(lam, r, p)
            if len(rem) <= len(normal):
                continue
            mubar = _drop_rows(mu, normal)
            total = 0
            for rows in itertools.combinations(rem, len(normal)):
                total += self.entry(_drop_rows(lam, rows), mubar)[1]
                if total == INF:
                    break
            yield f"rule 3 r={r}", 0, total

    # Rule 6
    def dexpr(self, M, kappa) -> Counter | None:
        """D(kappa) in the Specht basis, when every needed row is known."""
        key = (M.block, kappa)
        if key in self._dexpr:
            return self._dexpr[key]
        out = Counter({kappa: 1})
        for mu, (lo, hi) in M.cells[kappa].items():
            if lo != hi:
                return None
            if lo == 0:
                continue
            sub = self.dexpr(M, mu)
            if sub is None:
                return None
            for nu, c in sub.items():
                out[nu] -= lo * c
        out = Counter({k: v for k, v in out.items() if v})
        self._dexpr[key] = out
        return out

    def is_module(self, vec: Counter, weight_limit: int) -> bool:
        """False when some simple multiplicity of ``vec`` (a Specht-basis
        combination) is provably negative."""
        by_block: dict[BlockId, list] = {}
        for nu, a in vec.items():
            if a:
                by_block.setdefault(block_id(nu, self.p), []).append((nu, a))
        for B, terms in sorted(by_block.items(), key=lambda kv: kv[0].key()):
            if B.weight > weight_limit:
                if not self._trivially_module(terms):
                    return False
                continue
            M = self.live.get(B) or self.solve_block(B)
            hi_acc = Counter()
            for nu, a in terms:
                row = list(M.cells[nu].items())
                if nu in M.cols:
                    row.append((nu, (1, 1)))
                for mu, (lo, hi) in row:
                    hi_acc[mu] += a * (hi if a > 0 else lo)
            if any(v < 0 for v in hi_acc.values()):
                return False
        return True

    def _trivially_module(self, terms) -> bool:
        """Check using only unitriangularity: a regular kappa whose
        coefficient is negative and which dominates no positive term has
        negative multiplicity."""
        pos = [nu for nu, a in terms if a > 0]
        for kappa, a in terms:
            if a < 0 and is_p_regular(kappa, self.p):
                if not any(_dominates(kappa, nu) for nu in pos):
                    return False
        return True

    def restriction_ok(self, vec: Counter, weight_limit: int) -> bool:
        seen: dict[tuple, Counter] = {(): vec}
        for seq in self.sequences:
            cur = vec
            for step in range(1, len(seq) + 1):
                key = tuple(seq[:step])
                if key in seen:
                    cur = seen[key]
                    continue
                nxt = Counter()
                r = seq[step - 1]
                for nu, c in cur.items():
                    for row in removable_rows(tuple(nu), r, self.p):
                        nxt[_drop_rows(nu, (row,))] += c
                cur = Counter({k: v for k, v in nxt.items() if v})
                seen[key] = cur
                if not self.is_module(cur, weight_limit):
                    return False
        return True

    def _branch_pass(self, M, group, depth) -> bool:
        w = M.block.weight
        for lam in M.cols:
            row = M.cells[lam]
            open_cells = [mu for mu, c in row.items() if c[0] != c[1]]
            if not open_cells or any(row[mu][1] == INF for mu in open_cells):
                continue
            above = [mu for mu, c in row.items()]
            bases = {}
            for mu in above:
                e = self.dexpr(M, mu)
                if e is None:
                    break
                bases[mu] = e
            else:
                ranges = [range(row[mu][0], row[mu][1] + 1) for mu in open_cells]
                if math.prod(len(x) for x in ranges) > self.config.max_candidates:
                    continue
                survivors = []
                for combo in itertools.product(*ranges):
                    assign = dict(zip(open_cells, combo))
                    vec = Counter({lam: 1})
                    for mu, (lo, _) in row.items():
                        d = assign.get(mu, lo)
                        if d:
                            for nu, c in bases[mu].items():
                                vec[nu] -= d * c
                    vec = Counter({k: v for k, v in vec.items() if v})
                    if not self.restriction_ok(vec, w):
                        continue
                    if depth >= 2 and not self._survives(M, group, lam, assign, depth - 1):
                        continue
                    survivors.append(combo)
                if not survivors:
                    raise AllCandidatesPruned(
                        f"every value for row {format_partition(lam)} of {M.block} is pruned")
                changed = False
                for n, mu in enumerate(open_cells):
                    vals = [c[n] for c in survivors]
                    changed |= self._tighten(M, lam, mu, min(vals), max(vals), "rule 6")
                if changed:
                    return True
        return False

    def _survives(self, M, group, lam, assign, depth) -> bool:
        saved = [(N, {k: {m: list(c) for m, c in v.items()} for k, v in N.cells.items()})
                 for N in group]
        saved_prov = [dict(N.provenance) for N in group]
        done = set(self._static_done)
        try:
            for mu, d in assign.items():
                self._tighten(M, lam, mu, d, d, "hypothesis")
            old = self.config
            self.config = SolverConfig(**{**asdict(old), "branch_depth": depth})
            try:
                self._solve_group(group)
            finally:
                self.config = old
            return True
        except Inconsistent:
            return False
        finally:
            for (N, cells), prov in zip(saved, saved_prov):
                N.cells = cells
                N.provenance = prov
            self._static_done = done
            self._dexpr = {k: v for k, v in self._dexpr.items()
                           if k[0] not in {N.block for N in group}}

    # Optional: restricting both sides of [S(lam)] = sum d [D(mu)].
    def _restriction_identity_pass(self, M) -> bool:
        changed = False
        w = M.block.weight
        for lam in M.rows:
            row = M.cells[lam]
            open_cells = [mu for mu, c in row.items() if c[0] != c[1]]
            if not open_cells:
                continue
            cands = [mu for mu, c in row.items() if c[1] > 0]
            if lam in M.cols:
                cands.append(lam)
            exprs = {mu: self.dexpr(M, mu) for mu in cands}
            if any(e is None for e in exprs.values()):
                continue
            for r in range(self.p):
                lhs = self._restricted_simple(Counter({lam: 1}), r, w)
                xs = {mu: self._restricted_simple(e, r, w) for mu, e in exprs.items()}
                if lhs is None or any(x is None for x in xs.values()):
                    continue
                cell_of = lambda mu: (1, 1) if mu == lam else row[mu]
                kappas = set(lhs)
                for x in xs.values():
                    kappas |= set(x)
                for kappa in sorted(kappas, key=order_key):
                    y = lhs.get(kappa, 0)
                    coeffs = {mu: xs[mu].get(kappa, 0) for mu in cands}
                    for mu in open_cells:
                        x = coeffs[mu]
                        if x <= 0:
                            continue
                        rest_hi = sum(c * cell_of(m)[1] for m, c in coeffs.items() if m != mu and c)
                        rest_lo = sum(c * cell_of(m)[0] for m, c in coeffs.items() if m != mu and c)
                        lo = math.ceil((y - rest_hi) / x) if rest_hi != INF else 0
                        hi = math.floor((y - rest_lo) / x)
                        changed |= self._tighten(M, lam, mu, max(lo, 0), hi,
                                                 "restriction identity")
        return changed

    def _restricted_simple(self, vec: Counter, r: int, weight_limit: int):
        nxt = Counter()
        for nu, c in vec.items():
            for row in removable_rows(tuple(nu), r, self.p):
                nxt[_drop_rows(nu, (row,))] += c
        out = Counter()
        for nu, a in nxt.items():
            if not a:
                continue
            B = block_id(nu, self.p)
            if B.weight > weight_limit:
                return None
            N = self.live.get(B) or self.solve_block(B)
            row = list(N.cells[nu].items())
            if nu in N.cols:
                row.append((nu, (1, 1)))
            for mu, (lo, hi) in row:
                if lo != hi:
                    return None
                if lo:
                    out[mu] += a * lo
        return {k: v for k, v in out.items() if v}

    # -- disk cache
    def _cache_path(self, B: BlockId):
        root = self.config.cache_dir or os.environ.get("SPECHT_CACHE_DIR")
        if not root:
            return None
        return Path(root) / f"{B.key()}-{self.config.digest(self.assumptions)}.json"

    def _cache_load(self, B):
        path = self._cache_path(B)
        if path is None or not path.exists():
            return None
        return DecompMatrix.from_json(path.read_text())

    def _cache_store(self, M):
        path = self._cache_path(M.block)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(M.to_json())
        tmp.replace(path)


# --- public helpers ---------------------------------------------------------------

def solve_block(B: BlockId, assumptions=(), config: SolverConfig | None = None) -> DecompMatrix:
    return Solver(B.p, config, assumptions).solve_block(B)


def propagate(M: DecompMatrix, solver: Solver | None = None) -> DecompMatrix:
    """Run the rules (without case splitting) on ``M`` in place."""
    solver = solver or Solver(M.block.p)
    old = solver.config
    solver.config = SolverConfig(**{**asdict(old), "branch_depth": 0})
    solver.live[M.block] = M
    try:
        solver._solve_group([M])
    finally:
        solver.live.pop(M.block, None)
        solver.config = old
    return M


def branch_and_prune(M: DecompMatrix, entry, candidates, solver: Solver | None = None) -> DecompMatrix:
    """Try each candidate value for one entry of a regular row; keep the
    ones whose D(lam) restricts to a genuine module."""
    solver = solver or Solver(M.block.p)
    lam, mu = Partition(entry[0]), Partition(entry[1])
    candidates = sorted(set(candidates))
    if len(candidates) == 1:
        solver._tighten(M, lam, mu, candidates[0], candidates[0], "rule 6")
        return M
    row = M.cells[lam]
    others = [m for m, c in row.items() if m != mu and c[0] != c[1]]
    if others:
        raise ValueError("other entries of the row must be determined")
    bases = {m: solver.dexpr(M, m) for m in row}
    if any(b is None for b in bases.values()):
        raise ValueError("rows above must be determined")
    solver.live[M.block] = M
    try:
        survivors = []
        for d in candidates:
            vec = Counter({lam: 1})
            for m, (lo, _) in row.items():
                val = d if m == mu else lo
                for nu, c in bases[m].items():
                    vec[nu] -= val * c
            vec = Counter({k: v for k, v in vec.items() if v})
            if solver.restriction_ok(vec, M.block.weight):
                survivors.append(d)
    finally:
        solver.live.pop(M.block, None)
    if not survivors:
        raise AllCandidatesPruned(f"no value survives for {entry}")
    if survivors == candidates:
        raise NoProgress(f"every candidate survives for {entry}")
    solver._tighten(M, lam, mu, min(survivors), max(survivors), "rule 6")
    return M


@dataclass
class CrossPrimeRow:
    lam: Partition
    mu: Partition
    value: Interval
    lam_plus: Partition
    mu_plus: Partition
    value_plus: Interval

    @property
    def status(self) -> str:
        if not (self.value.determined and self.value_plus.determined):
            return "unverifiable"
        return "equal" if self.value == self.value_plus else "unequal"


@dataclass
class CrossPrimeReport:
    block: BlockId
    p2: int
    rows: list[CrossPrimeRow] = field(default_factory=list)

    @property
    def small_defect(self) -> bool:
        return self.block.p > self.block.weight

    def counts(self) -> Counter:
        return Counter(r.status for r in self.rows)

    def mismatches(self) -> list[CrossPrimeRow]:
        return [r for r in self.rows if r.status == "unequal"]

    def render(self) -> str:
        c = self.counts()
        head = (f"{self.block} -> p'={self.p2}: {c['equal']} equal, {c['unequal']} unequal, "
                f"{c['unverifiable']} unverifiable"
                + ("" if self.small_defect else "  [p <= w: conjecture does not apply]"))
        lines = [head]
        for r in self.rows:
            if r.status != "equal":
                lines.append(f"  {r.status}: [S({r.lam}):D({r.mu})]={r.value}  "
                             f"[S({r.lam_plus}):D({r.mu_plus})]={r.value_plus}")
        return "\n".join(lines)


def cross_prime_check(B: BlockId, p2: int, slots=None, solver: Solver | None = None,
                      solver2: Solver | None = None) -> CrossPrimeReport:
    """Compare every nonzero-candidate entry of B with the entry for the
    images under inserting p2 - p empty runners.  Each pair uses an abacus
    with as many beads as lam has parts.  Report only; nothing is fed back."""
    p = B.p
    cfg = SolverConfig(donkin=False, restriction_identity=True)
    solver = solver or Solver(p, cfg)
    solver2 = solver2 or (solver if p2 == p else Solver(p2, cfg))
    M = solver.solve_block(B)
    report = CrossPrimeReport(B, p2)
    for lam in M.rows:
        for mu in [*M.cells[lam], *([lam] if lam in M.cols else [])]:
            b = max(len(lam), len(mu))
            lp, mp = plus(lam, p, p2, b, slots), plus(mu, p, p2, b, slots)
            report.rows.append(CrossPrimeRow(lam, mu, M.interval(lam, mu), lp, mp,
                                             solver2.interval(lp, mp)))
    return report


_WORKER_SOLVERS: dict = {}


def _solve_one(args):
    B, assumptions, config = args
    key = (B.p, config, assumptions)
    solver = _WORKER_SOLVERS.get(key)
    if solver is None:
        solver = _WORKER_SOLVERS[key] = Solver(B.p, config, assumptions)
    return solver.solve_block(B).to_json()


def solve_blocks(blocks, assumptions=(), config: SolverConfig | None = None, jobs: int = 1):
    """Solve several blocks; with jobs > 1 each runs in its own process.
    Results come back in input order."""
    blocks = list(blocks)
    if jobs <= 1:
        solvers: dict[int, Solver] = {}
        out = []
        for B in blocks:
            s = solvers.setdefault(B.p, Solver(B.p, config, assumptions))
            out.append(s.solve_block(B))
        return out
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        texts = list(pool.map(_solve_one, [(B, tuple(assumptions), config) for B in blocks]))
    return [DecompMatrix.from_json(t) for t in texts]
