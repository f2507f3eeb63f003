"""End-to-end acceptance checks, one test per criterion.

Each test records PASS or FAIL in RESULTS; conftest prints the table at the
end of the session.  Timings that are soft targets are reported as notes
rather than failures.
"""
import functools
import time
from math import comb

import pytest

from smalldefect import cli
from smalldefect.abacus import BlockId, from_partition, p_core, p_weight, plus, to_partition
from smalldefect.appendix import diff_table, load_tables
from smalldefect.engine import (P5_WEIGHT3_ASSUMPTION, Solver, SolverConfig,
                                cross_prime_check, solve_blocks)
from smalldefect.partitions import Partition, conjugate, is_p_regular, partitions_of
from smalldefect.reductions import mullineux
from smalldefect.schaper import schaper_sum
from smalldefect.weight3 import CaseDescriptor, census, descriptors

from .test_abacus import LAM, core_by_hooks
from .test_engine import ORDER, P, PRINTED, WORKED, weight_one_blocks
from .test_schaper import named, worked_block
from .test_weight3 import P7_CHEAP, check_exceptional_submatrix

RESULTS: dict[int, tuple[str, str]] = {}


def criterion(n, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                note = fn(*args, **kwargs)
            except BaseException as exc:
                RESULTS[n] = ("FAIL", f"{title}: {type(exc).__name__}")
                raise
            secs = time.perf_counter() - start
            RESULTS[n] = ("PASS", f"{title} ({secs:.1f}s{'; ' + note if note else ''})")
        return run
    return wrap


@criterion(1, "abacus round trip and figures")
def test_c01_abacus():
    start = time.perf_counter()
    assert from_partition(LAM, 10, 5).beads == (1, 2, 3, 6, 7, 10, 11, 14, 22, 25)
    assert from_partition(LAM, 11, 5).beads == (1, 2, 3, 4, 7, 8, 11, 12, 15, 23, 26)
    for p in (2, 3, 5, 7):
        for n in range(26):
            for lam in partitions_of(n):
                assert to_partition(from_partition(lam, len(lam) + p, p)) == lam
    assert time.perf_counter() - start < 5


@criterion(2, "core and weight fixtures")
def test_c02_core_weight():
    assert p_core((6, 4, 1, 1), 3) == () and p_weight((6, 4, 1, 1), 3) == 4
    assert p_core((3, 1, 1), 2) == (1,) and p_weight((3, 1, 1), 2) == 2


@criterion(3, "runner-insertion operator")
def test_c03_plus():
    assert plus((3, 1, 1), 2, 3) == (5, 2, 1)
    assert plus((5,), 2, 3, b=3) == (8,)


@criterion(4, "Jantzen-Schaper sums at p=5 and p=7")
def test_c04_schaper():
    for p in (5, 7):
        Q = worked_block(p)
        for name in ("alpha", "beta", "gamma", "delta"):
            start = time.perf_counter()
            schaper_sum(Q[name], p)
            assert time.perf_counter() - start < 1
        assert not schaper_sum(Q["alpha"], p)
        assert schaper_sum(Q["beta"], p) == named(Q, {"<p^2>": 1, "alpha": 1})
        assert schaper_sum(Q["gamma"], p) == named(
            Q, {"<p>": -1, "<p,p-1>": 1, "alpha": 1, "beta": 1})
        assert schaper_sum(Q["delta"], p) == named(
            Q, {"<p>": 1, "<p^2>": -1, "<p,p-1>": -1, "alpha": 1, "beta": 1, "gamma": 1})


@criterion(5, "worked Case 4 block with no assumption")
def test_c05_worked_block():
    start = time.perf_counter()
    M = Solver(5, SolverConfig()).solve_block(WORKED)
    assert time.perf_counter() - start < 10
    assert M.determined
    assert ["".join(str(M.interval(P[a], P[b])) for b in ORDER) for a in ORDER] == PRINTED


@criterion(6, "exceptional tables for Cases 3 and 4")
def test_c06_exceptional_tables():
    s5 = Solver(5, SolverConfig(), [P5_WEIGHT3_ASSUMPTION])
    five = [d for d in descriptors(5) if d.case in (3, 4)]
    for d in five:
        check_exceptional_submatrix(s5, d)
    s7 = Solver(7, SolverConfig())
    for d in P7_CHEAP:
        check_exceptional_submatrix(s7, d)
    assert len(P7_CHEAP) >= 5
    return f"{len(five)} at p=5, {len(P7_CHEAP)} at p=7"


@criterion(7, "40 weight-3 blocks at p=5 under the standing assumption")
def test_c07_appendix_sweep():
    tables = load_tables()
    assert len(tables) == 40
    start = time.perf_counter()
    solver = Solver(5, SolverConfig(), [P5_WEIGHT3_ASSUMPTION])
    for t in tables:
        M = solver.solve_block(t.descriptor.block())
        assert diff_table(t, M).ok, str(t.descriptor)
        assert M.determined and M.max_entry() <= 1, str(t.descriptor)
    secs = time.perf_counter() - start
    return "within 60s target" if secs < 60 else f"soft overrun: {secs:.0f}s > 60s"


@criterion(8, "weight-1 Brauer tree pattern")
def test_c08_weight_one():
    count = 0
    for p in (3, 5, 7):
        solver = Solver(p)
        for B, n in weight_one_blocks(p):
            members = sorted((lam for lam in partitions_of(n)
                              if core_by_hooks(lam, p)[0] == B.core), reverse=True)
            M = solver.solve_block(B)
            assert M.rows == members and M.cols == members[:-1]
            for a, lam in enumerate(members):
                for c, mu in enumerate(members[:-1]):
                    assert M.value(lam, mu) == (1 if c in (a, a - 1) else 0)
            count += 1
    return f"{count} blocks"


@criterion(9, "Mullineux involution and invariants")
def test_c09_mullineux():
    start = time.perf_counter()
    assert mullineux((2, 1), 3) == (3,)
    for p in (2, 3, 5, 7):
        for n in range(21):
            for mu in partitions_of(n):
                if not is_p_regular(mu, p):
                    continue
                m = mullineux(mu, p)
                assert mullineux(m, p) == mu and sum(m) == n
                assert p_core(m, p) == conjugate(p_core(mu, p))
                assert p_weight(m, p) == p_weight(mu, p)
                if n <= 15 and p_core(mu, p) == mu:
                    assert m == conjugate(mu)
    assert time.perf_counter() - start < 30


def small_blocks(p, max_w, max_n):
    seen = set()
    for n in range(max_n + 1):
        for lam in partitions_of(n):
            core = p_core(lam, p)
            w = (n - sum(core)) // p
            if 1 <= w <= max_w and (core, w) not in seen:
                seen.add((core, w))
                yield BlockId(p, core, w)


@criterion(10, "cross-prime comparison")
def test_c10_cross_prime():
    report = cross_prime_check(BlockId(2, Partition((1,)), 2), 3)
    [row] = [r for r in report.rows if (r.lam, r.mu) == ((3, 1, 1), (5,))]
    assert (row.lam_plus, row.mu_plus) == ((5, 2, 1), (8,))
    assert (row.value.lo, row.value_plus.lo) == (2, 1) and row.status == "unequal"

    cfg = SolverConfig(donkin=False, restriction_identity=True)
    s5, s7 = Solver(5, cfg), Solver(7, cfg)
    blocks = list(small_blocks(5, 2, 20))
    equal = 0
    for B in blocks:
        r = cross_prime_check(B, 7, solver=s5, solver2=s7)
        assert not r.mismatches(), r.render()
        equal += r.counts()["equal"]

    s7 = Solver(7, SolverConfig())
    for (i, j), lam, mu in [((6, 8), (12, 12, 6, 1), (18, 13)),
                            ((5, 8), (10, 10, 6, 5, 1, 1), (11, 11, 11))]:
        assert CaseDescriptor(2, 7, i, j).block().core == p_core(lam, 7)
        iv = s7.interval(lam, mu)
        assert 1 in iv and 2 in iv
    return f"{len(blocks)} blocks 5->7, {equal} equal entries"


@criterion(11, "weight-3 core census")
def test_c11_census():
    for p, total in [(5, 41), (7, 113)]:
        assert sum(census(p).values()) == total == 2 * comb(p + 1, 3) + 1
        assert len(descriptors(p)) == total


@criterion(12, "determinism across parallelism settings")
def test_c12_determinism(capsys):
    one = solve_blocks([WORKED], (), SolverConfig(), jobs=1)[0].to_json()
    two = solve_blocks([WORKED], (), SolverConfig(), jobs=2)[0].to_json()
    assert one == two
    outputs = []
    for jobs in ("1", "2"):
        assert cli.main(["verify-appendix", "--jobs", jobs]) == cli.EXIT_OK
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1] and outputs[0].count(": ok,") == 40


@pytest.fixture(scope="module", autouse=True)
def _all_criteria_present():
    yield
    missing = set(range(1, 13)) - set(RESULTS)
    for n in missing:
        RESULTS[n] = ("FAIL", "not run")
