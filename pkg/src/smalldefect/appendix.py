"""Reference tables of exceptional rows for weight-3 blocks at p = 5.

The fixture lists, for every Case 2-4 core, the nonzero entries in the
rows indexed by exceptional partitions.  Labels are bracket expressions
with p = 5 already substituted.  The file carries a sha256 checksum, and
loading refuses a file that does not match it.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources

from .partitions import Partition, format_partition
from .weight3 import CaseDescriptor, bracket_partition, parse_bracket

FIXTURE = "appendix_p5.json"


class ChecksumMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Table:
    descriptor: CaseDescriptor
    cols: tuple[str, ...]
    rows: tuple[tuple[str, str], ...]  # (label, "1..1." entries)

    def expected(self) -> dict[Partition, set[Partition]]:
        """Row partition -> set of columns with entry 1."""
        d = self.descriptor
        cols = [bracket_partition(d, parse_bracket(c)) for c in self.cols]
        out = {}
        for label, entries in self.rows:
            lam = bracket_partition(d, parse_bracket(label))
            out[lam] = {mu for mu, e in zip(cols, entries) if e == "1"}
        return out


def _read(name: str) -> bytes:
    return resources.files("smalldefect.data").joinpath(name).read_bytes()


def load_tables(name: str = FIXTURE, check: bool = True) -> list[Table]:
    raw = _read(name)
    if check:
        want = _read(name + ".sha256").decode().split()[0]
        got = hashlib.sha256(raw).hexdigest()
        if got != want:
            raise ChecksumMismatch(f"{name}: sha256 {got} does not match {want}")
    data = json.loads(raw)
    p = data["p"]
    out = []
    for t in data["tables"]:
        d = CaseDescriptor(t["case"], p, *t["params"])
        out.append(Table(d, tuple(t["cols"]),
                         tuple((r["label"], r["entries"]) for r in t["rows"])))
    return out


@dataclass
class TableDiff:
    table: Table
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def diff_table(table: Table, M) -> TableDiff:
    """Compare the exceptional rows of a solved matrix with a table: every
    listed entry must be exactly 1 and every other entry exactly 0."""
    out = TableDiff(table)
    for lam, cols in table.expected().items():
        row = M.row(lam)
        for mu in sorted(set(row) | cols, key=lambda x: tuple(-v for v in x)):
            want = 1 if mu in cols else 0
            got = row.get(mu)
            text = "." if got is None else str(got)
            if got is None and want == 0:
                continue
            if got is None or not got.determined or got.lo != want:
                out.problems.append(f"[S({format_partition(lam)}):D({format_partition(mu)})] "
                                    f"is {text}, table says {want or '.'}")
    return out
