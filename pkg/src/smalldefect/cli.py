"""Command line entry point: ``smalldefect <command> ...``.

Exit codes: 0 for success (and fully determined matrices), 1 for errors or
fixture mismatches, 2 when a solved matrix still has undetermined entries.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field

from .abacus import BlockId, block_id, canonical_beads, from_partition, p_core, p_weight
from .appendix import diff_table, load_tables
from .branching import node_signature
from .engine import (P5_WEIGHT3_ASSUMPTION, SolverConfig, Solver, cross_prime_check,
                     load_assumptions, solve_blocks)
from .partitions import Partition, format_partition, is_p_regular, parse_partition
from .reductions import mullineux, mullineux_symbol
from .schaper import schaper_sum
from .weight3 import (Case1NotApplicable, NotMinimalCore, bracket_name, census,
                      classify_core, descriptors, exceptional_partitions, expected_matrices)

log = logging.getLogger("smalldefect")

EXIT_OK, EXIT_FAIL, EXIT_OPEN = 0, 1, 2


@dataclass
class RunConfig:
    p: int
    command: str
    core: Partition = field(default_factory=Partition)
    weight: int = 0
    weight_cap: int = 4
    assume: str | None = None
    fmt: str = "tsv"
    branch_depth: int = 1
    sequences: tuple[str, ...] | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p ** 0.5) + 1)):
            raise ValueError(f"p={self.p} is not prime")

    def solver_config(self, **extra) -> SolverConfig:
        return SolverConfig(weight_cap=self.weight_cap, branch_depth=self.branch_depth,
                            sequences=self.sequences, **extra)

    def assumptions(self):
        return load_assumptions(self.assume) if self.assume else []


def _run_config(args) -> RunConfig:
    seqs = tuple(args.sequences) if getattr(args, "sequences", None) else None
    return RunConfig(p=args.p, command=args.command,
                     core=parse_partition(getattr(args, "core", "") or ""),
                     weight=getattr(args, "weight", 0) or 0,
                     weight_cap=getattr(args, "weight_cap", 4),
                     assume=getattr(args, "assume", None),
                     fmt=getattr(args, "format", "tsv"),
                     branch_depth=getattr(args, "branch_depth", 1),
                     sequences=seqs, jobs=getattr(args, "jobs", 1))


def _write(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# --- commands ---------------------------------------------------------------

def cmd_inspect(args) -> int:
    p = args.p
    lam = parse_partition(args.partition)
    b = args.beads if args.beads is not None else canonical_beads(lam, p)
    B = block_id(lam, p)
    lines = [f"partition: ({format_partition(lam)})  n={sum(lam)}",
             f"core: ({format_partition(p_core(lam, p))})",
             f"weight: {p_weight(lam, p)}",
             f"block: {B}",
             f"abacus ({b} beads):",
             from_partition(lam, b, p).render(args.rows)]
    for r in range(p):
        sig = node_signature(lam, r, p)
        fmt = lambda xs: " ".join(f"({x.row},{x.col})" for x in xs) or "-"
        lines.append(f"residue {r}: removable {fmt(sig.removable)}; addable {fmt(sig.addable)}; "
                     f"normal {fmt(sig.normal)}")
    if is_p_regular(lam, p):
        lines.append(f"mullineux: ({format_partition(mullineux(lam, p))})")
    else:
        lines.append("mullineux: not p-regular")
    _write("\n".join(lines))
    return EXIT_OK


def _labeler(B: BlockId):
    if B.weight != 3 or B.p <= 3:
        return None
    try:
        d = classify_core(B.core, B.p)
    except NotMinimalCore:
        return None
    return lambda lam: bracket_name(d, lam) or format_partition(lam)


def cmd_solve(args) -> int:
    rc = _run_config(args)
    B = BlockId(rc.p, rc.core, rc.weight)
    M = Solver(rc.p, rc.solver_config(), rc.assumptions()).solve_block(B)
    if rc.fmt == "json":
        _write(M.to_json())
    elif rc.fmt == "abacus-art":
        b = canonical_beads(B.core, B.p) + B.p * B.weight
        for lam in M.rows:
            _write(f"({format_partition(lam)})\n{from_partition(lam, b, B.p).render()}\n")
    else:
        labels = _labeler(B) if args.brackets else None
        _write(M.to_tsv(labels))
    open_cells = M.undetermined()
    if open_cells:
        log.warning("%d entries undetermined", len(open_cells))
        return EXIT_OPEN
    return EXIT_OK


def cmd_schaper(args) -> int:
    lam = parse_partition(args.partition)
    _write(str(schaper_sum(lam, args.p)))
    return EXIT_OK


def cmd_mullineux(args) -> int:
    mu = parse_partition(args.partition)
    if not is_p_regular(mu, args.p):
        log.error("(%s) is not %d-regular", format_partition(mu), args.p)
        return EXIT_FAIL
    img = mullineux(mu, args.p)
    _write(f"({format_partition(img)})")
    if args.symbol:
        _write(f"symbol: {mullineux_symbol(mu, args.p)}")
    return EXIT_OK


def cmd_verify_appendix(args) -> int:
    tables = load_tables()
    if not tables:
        log.warning("no fixtures found; nothing to check")
        return EXIT_OK
    assumptions = load_assumptions(args.assume) if args.assume else [P5_WEIGHT3_ASSUMPTION]
    cfg = SolverConfig(branch_depth=args.branch_depth)
    mats = solve_blocks([t.descriptor.block() for t in tables], assumptions, cfg, args.jobs)
    status = EXIT_OK
    for t, M in zip(tables, mats):
        diff = diff_table(t, M)
        open_cells = len(M.undetermined())
        tag = "ok" if diff.ok else "MISMATCH"
        _write(f"{t.descriptor} core ({format_partition(t.descriptor.core())}): {tag}, "
               f"{len(t.rows)} rows, {open_cells} undetermined")
        for line in diff.problems:
            _write("  " + line)
        if not diff.ok:
            status = EXIT_FAIL
        elif open_cells and status == EXIT_OK:
            status = EXIT_OPEN
    return status


def cmd_verify_weight3(args) -> int:
    p = args.p
    c = census(p)
    expect = 2 * (p + 1) * p * (p - 1) // 6 + 1
    _write(f"census p={p}: {c} total {sum(c.values())} (expected {expect})")
    status = EXIT_OK if sum(c.values()) == expect else EXIT_FAIL
    solver = Solver(p, SolverConfig(branch_depth=args.branch_depth))
    chosen = [d for d in descriptors(p) if d.case in (3, 4)]
    if args.limit:
        chosen = chosen[:args.limit]
    for d in chosen:
        names, want = expected_matrices(d)
        parts = dict(exceptional_partitions(d))
        M = solver.solve_block(d.block())
        bad = []
        for x, a in enumerate(names):
            for y, b in enumerate(names):
                if is_p_regular(parts[b], p) and M.value(parts[a], parts[b]) != want[x][y]:
                    bad.append(f"{a},{b}")
        _write(f"{d}: {'ok' if not bad else 'MISMATCH ' + ' '.join(bad)}")
        if bad:
            status = EXIT_FAIL
    return status


def cmd_cross_prime(args) -> int:
    rc = _run_config(args)
    B = BlockId(rc.p, rc.core, rc.weight)
    report = cross_prime_check(B, args.p2)
    _write(report.render())
    return EXIT_FAIL if report.mismatches() and report.small_defect else EXIT_OK


# --- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="smalldefect",
                                 description="Decomposition numbers of symmetric groups "
                                             "for blocks of small weight.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def block_args(sp):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--core", default="", help='e.g. "8,4" or "5^2"; empty for ()')
        sp.add_argument("--weight", type=int, required=True)

    def solver_args(sp):
        sp.add_argument("--branch-depth", type=int, default=1)
        sp.add_argument("--sequences", nargs="+", metavar="SEQ",
                        help='restriction words such as "4^2 3^2 2"')
        sp.add_argument("--weight-cap", type=int, default=4)
        sp.add_argument("--assume", metavar="FILE", help='lines "p; lambda; mu; value"')

    sp = sub.add_parser("inspect", help="core, weight, abacus and normal nodes")
    sp.add_argument("partition")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--beads", type=int)
    sp.add_argument("--rows", type=int, help="abacus rows to draw (default: down to the last bead)")
    sp.set_defaults(func=cmd_inspect)

    sp = sub.add_parser("solve", help="solve one block")
    block_args(sp)
    solver_args(sp)
    sp.add_argument("--format", choices=["tsv", "json", "abacus-art"], default="tsv")
    sp.add_argument("--brackets", action="store_true", help="label weight-3 rows by brackets")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("schaper", help="Jantzen-Schaper sum of S(lambda)")
    sp.add_argument("partition")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_schaper)

    sp = sub.add_parser("mullineux", help="Mullineux image of a p-regular partition")
    sp.add_argument("partition")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--symbol", action="store_true")
    sp.set_defaults(func=cmd_mullineux)

    sp = sub.add_parser("verify-appendix", help="check the p=5 weight-3 reference tables")
    sp.add_argument("--assume", metavar="FILE")
    sp.add_argument("--branch-depth", type=int, default=1)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_verify_appendix, p=5)

    sp = sub.add_parser("verify-weight3", help="census and Case 3/4 exceptional submatrices")
    sp.add_argument("--p", type=int, default=5)
    sp.add_argument("--limit", type=int, default=0)
    sp.add_argument("--branch-depth", type=int, default=1)
    sp.set_defaults(func=cmd_verify_weight3)

    sp = sub.add_parser("cross-prime", help="compare a block with its image at a larger prime")
    block_args(sp)
    sp.add_argument("--p2", type=int, required=True)
    sp.set_defaults(func=cmd_cross_prime)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (ValueError, RuntimeError, Case1NotApplicable) as exc:
        log.error("%s", exc)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
