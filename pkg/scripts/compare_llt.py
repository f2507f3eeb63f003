"""Check solver intervals against the LLT canonical-basis computation.

The LLT values are the q=1 specialisation, which equals the decomposition
numbers in characteristic p whenever the weight is below p.
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from smalldefect.engine import P5_WEIGHT3_ASSUMPTION, Solver, SolverConfig  # noqa: E402
from smalldefect.weight3 import descriptors  # noqa: E402
from tests.oracles.llt import decomposition_number  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--bare", action="store_true", help="drop the standing assumption")
    args = ap.parse_args()
    assumptions = [] if args.bare or args.p != 5 else [P5_WEIGHT3_ASSUMPTION]
    solver = Solver(args.p, SolverConfig(), assumptions)
    bad = 0
    for d in descriptors(args.p):
        M = solver.solve_block(d.block())
        wrong = open_cells = 0
        for lam in M.rows:
            for mu in M.cols:
                want = decomposition_number(lam, mu, args.p)
                iv = M.interval(lam, mu)
                wrong += want not in iv or (iv.determined and iv.lo != want)
                open_cells += not iv.determined
        bad += bool(wrong)
        print(f"{d}: {len(M.rows)} rows, {wrong} disagreements, {open_cells} open")
    print(f"{len(descriptors(args.p))} blocks, {bad} with disagreements")


if __name__ == "__main__":
    main()
