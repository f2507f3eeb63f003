"""Solve the 40 listed p=5 weight-3 blocks and compare them with the stored tables."""
import argparse
import time

from smalldefect.appendix import diff_table, load_tables
from smalldefect.engine import P5_WEIGHT3_ASSUMPTION, SolverConfig, solve_blocks


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--bare", action="store_true", help="drop the standing assumption")
    args = ap.parse_args()
    tables = load_tables()
    assumptions = [] if args.bare else [P5_WEIGHT3_ASSUMPTION]
    start = time.perf_counter()
    mats = solve_blocks([t.descriptor.block() for t in tables], assumptions, SolverConfig(),
                        args.jobs)
    bad = 0
    for t, M in zip(tables, mats):
        diff = diff_table(t, M)
        open_cells = M.undetermined()
        bad += (not diff.ok) or bool(open_cells)
        print(f"{t.descriptor}: {'ok' if diff.ok else 'MISMATCH'}, max {M.max_entry()}, "
              f"{len(open_cells)} undetermined")
        for lam, mu in open_cells:
            print(f"    [S{lam}:D{mu}] = {M.interval(lam, mu)}")
    print(f"{len(tables)} blocks, {bad} with problems, {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
