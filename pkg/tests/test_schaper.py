import pytest
from hypothesis import given, strategies as st

from smalldefect.abacus import block_id, block_partitions, plus
from smalldefect.partitions import _dominates, hook_length, nodes
from smalldefect.schaper import (EPSILON, MissingRow, SIMPLE, VirtualSum, rule2_bounds,
                                 schaper_sum, schaper_sum_diagram, to_simple_basis)
from smalldefect.weight3 import CaseDescriptor, bracket_partition, descriptors, parse_bracket

from .test_partitions import partitions


def worked_block(p):
    """Names of the seven rows of the Case 4 block with i = p, j = k = p + 1."""
    d = CaseDescriptor(4, p, p, p + 1, p + 1)
    q = p - 1
    names = {"<p>": f"<{p}>", "<p^2>": f"<{p}^2>", "<p,p-1>": f"<{p},{q}>",
             "alpha": f"<{p}^3>", "beta": f"<{p}^2,{q}>", "gamma": f"<{q},{p}>",
             "delta": f"<{q}>"}
    return {k: bracket_partition(d, parse_bracket(v)) for k, v in names.items()}


# The printed matrix of the worked block, used as exact rows.
ROWS = {
    "<p>": {"<p>": 1},
    "<p^2>": {"<p^2>": 1},
    "<p,p-1>": {"<p>": 1, "<p^2>": 1, "<p,p-1>": 1},
    "alpha": {"alpha": 1},
    "beta": {"<p^2>": 1, "alpha": 1, "beta": 1},
    "gamma": {"<p^2>": 1, "<p,p-1>": 1, "alpha": 1, "beta": 1, "gamma": 1},
    "delta": {"alpha": 1, "beta": 1, "gamma": 1, "delta": 1},
}


def named(P, coeffs, basis="S"):
    return VirtualSum({P[k]: c for k, c in coeffs.items()}, basis)


@pytest.mark.parametrize("p", [5, 7])
def test_worked_block_sums(p):
    P = worked_block(p)
    assert not schaper_sum(P["alpha"], p)
    assert schaper_sum(P["beta"], p) == named(P, {"<p^2>": 1, "alpha": 1})
    assert schaper_sum(P["gamma"], p) == named(
        P, {"<p>": -1, "<p,p-1>": 1, "alpha": 1, "beta": 1})
    assert schaper_sum(P["delta"], p) == named(
        P, {"<p>": 1, "<p^2>": -1, "<p,p-1>": -1, "alpha": 1, "beta": 1, "gamma": 1})


def test_sign_constant_is_frozen():
    assert EPSILON == -1


def test_worked_block_partitions():
    P = worked_block(5)
    assert P["<p>"] == (23, 4) and P["<p^2>"] == (18, 9)
    assert P["<p,p-1>"] == (18, 4, 4, 1)
    assert (P["alpha"], P["beta"], P["gamma"], P["delta"]) == (
        (13, 9, 5), (13, 9, 4, 1), (13, 8, 5, 1), (12, 9, 5, 1))


def test_simple_basis_rewrites():
    P = worked_block(5)
    rows = {P[a]: {P[b]: c for b, c in row.items()} for a, row in ROWS.items()}
    g = to_simple_basis(schaper_sum(P["gamma"], 5), rows)
    assert g == named(P, {"<p^2>": 2, "<p,p-1>": 1, "alpha": 2, "beta": 1}, SIMPLE)
    d = to_simple_basis(schaper_sum(P["delta"], 5), rows)
    assert d == named(P, {"alpha": 3, "beta": 2, "gamma": 1}, SIMPLE)
    assert not to_simple_basis(VirtualSum.specht({}), {})
    with pytest.raises(MissingRow):
        to_simple_basis(schaper_sum(P["delta"], 5), {})

    assert rule2_bounds(P["gamma"], P["<p,p-1>"], g).exact
    assert rule2_bounds(P["gamma"], P["beta"], g).lo == 1
    b = rule2_bounds(P["gamma"], P["<p^2>"], g)
    assert (b.lo, b.hi) == (1, 2)
    assert (rule2_bounds(P["gamma"], P["<p>"], g).hi) == 0


@pytest.mark.parametrize("p,n", [(2, 9), (3, 11), (5, 14)])
def test_abacus_form_matches_diagram_form(p, n):
    from smalldefect.partitions import partitions_of
    for m in range(n + 1):
        for lam in partitions_of(m):
            assert schaper_sum(lam, p) == schaper_sum_diagram(lam, p), lam


@given(partitions(max_n=22), st.sampled_from([3, 5, 7]))
def test_terms_dominate_and_share_block(lam, p):
    for nu in schaper_sum(lam, p).terms:
        assert nu != lam and _dominates(nu, lam)
        assert block_id(nu, p) == block_id(lam, p)


@pytest.mark.parametrize("p", [5, 7])
def test_no_hook_divisible_by_p_squared_in_weight3(p):
    for d in descriptors(p)[:: 6 if p == 7 else 2]:
        for lam in block_partitions(d.block()):
            assert all(hook_length(lam, x) % (p * p) for x in nodes(lam))


def test_runner_insertion_equivariance():
    for d in [CaseDescriptor(4, 5, 5, 6, 6), CaseDescriptor(3, 5, 2, 4, 5),
              CaseDescriptor(2, 5, 3, 5)]:
        for lam in block_partitions(d.block())[:40]:
            b = len(lam)
            image = VirtualSum.specht({plus(nu, 5, 7, b): c
                                       for nu, c in schaper_sum(lam, 5).terms.items()})
            assert schaper_sum(plus(lam, 5, 7, b), 7) == image


def test_text_round_trip():
    v = VirtualSum.parse("+S(5,2,1) -2 S(4,4)")
    assert v.terms == {(5, 2, 1): 1, (4, 4): -2}
    assert str(v) == "+S(5,2,1) -2 S(4^2)"
    assert VirtualSum.parse(str(v)) == v
    assert str(VirtualSum.specht({})) == "0" and not VirtualSum.parse("0")
    with pytest.raises(ValueError):
        VirtualSum.parse("+S(2) +D(1,1)")
    with pytest.raises(ValueError):
        VirtualSum.simple({(1, 1): 1}, p=2)


@given(st.dictionaries(partitions(max_n=8), st.integers(-4, 4), max_size=5))
def test_text_round_trip_property(terms):
    v = VirtualSum.specht(terms)
    assert VirtualSum.parse(str(v)) == v
