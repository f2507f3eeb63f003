"""Compare decomposition numbers of small-weight blocks across two primes."""
import argparse

from smalldefect.abacus import BlockId, p_core
from smalldefect.engine import Solver, SolverConfig, cross_prime_check
from smalldefect.partitions import partitions_of


def blocks(p, max_w, max_n):
    seen = set()
    for n in range(max_n + 1):
        for lam in partitions_of(n):
            core = p_core(lam, p)
            w = (n - sum(core)) // p
            if 1 <= w <= max_w and (core, w) not in seen:
                seen.add((core, w))
                yield BlockId(p, core, w)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--p2", type=int, default=7)
    ap.add_argument("--max-weight", type=int, default=2)
    ap.add_argument("--max-n", type=int, default=20)
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()
    cfg = SolverConfig(donkin=False, restriction_identity=True)
    s1, s2 = Solver(args.p, cfg), Solver(args.p2, cfg)
    totals = {"equal": 0, "unequal": 0, "unverifiable": 0}
    count = 0
    for B in blocks(args.p, args.max_weight, args.max_n):
        report = cross_prime_check(B, args.p2, solver=s1, solver2=s2)
        count += 1
        for k, v in report.counts().items():
            totals[k] += v
        if args.verbose or report.mismatches():
            print(report.render())
    print(f"{count} blocks: {totals['equal']} equal, {totals['unequal']} unequal, "
          f"{totals['unverifiable']} unverifiable")


if __name__ == "__main__":
    main()
