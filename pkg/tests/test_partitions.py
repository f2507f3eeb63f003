from itertools import product

import pytest
from hypothesis import given, strategies as st

from smalldefect.abacus import from_partition
from smalldefect.partitions import (NodeCoord, Partition, UnequalSize, addable_nodes,
                                    addable_rim_hooks, conjugate, dominates, format_partition,
                                    hook_length, is_p_regular, nodes, parse_partition,
                                    partitions_of, removable_nodes, removable_rim_hooks,
                                    remove_rim_hook, residue)


@st.composite
def partitions(draw, max_n=25):
    n = draw(st.integers(0, max_n))
    parts = []
    while n:
        x = draw(st.integers(1, n))
        parts.append(x)
        n -= x
    return Partition(sorted(parts, reverse=True))


def test_partition_normalises_trailing_zeros():
    assert Partition((3, 1, 0, 0)) == (3, 1)
    assert Partition().n == 0
    with pytest.raises(ValueError):
        Partition((1, 2))


@pytest.mark.parametrize("text,parts", [
    ("8^2,4,1", (8, 8, 4, 1)),
    ("", ()),
    ("()", ()),
    ("(5, 2, 1)", (5, 2, 1)),
    ("1^4", (1, 1, 1, 1)),
])
def test_parse(text, parts):
    assert parse_partition(text) == parts


@given(partitions())
def test_text_round_trip(lam):
    assert parse_partition(format_partition(lam)) == lam


@pytest.mark.parametrize("lam,conj", [
    ((3, 1), (2, 1, 1)),
    ((), ()),
    ((4, 4, 1), (3, 2, 2, 2)),
])
def test_conjugate_examples(lam, conj):
    assert conjugate(lam) == conj


def test_conjugate_matches_transposed_diagram():
    for n in range(9):
        for lam in partitions_of(n):
            cells = {(j, i) for i, j in nodes(lam)}
            rows = [sum(1 for (i, _) in cells if i == r) for r in range(1, n + 2)]
            assert conjugate(lam) == Partition(rows)


@given(partitions())
def test_conjugate_involution(lam):
    assert conjugate(conjugate(lam)) == lam


def test_dominance_examples():
    assert dominates((4,), (2, 2))
    assert dominates((3, 1), (3, 1))
    assert not dominates((3, 3), (4, 1, 1))
    with pytest.raises(UnequalSize):
        dominates((3,), (2, 2))


@pytest.mark.parametrize("n", [6, 9, 12])
def test_dominance_is_partial_order_reversed_by_conjugation(n):
    parts = list(partitions_of(n))
    dom = {(a, b): dominates(a, b) for a, b in product(parts, repeat=2)}
    for a in parts:
        assert dom[a, a]
    for a, b in product(parts, repeat=2):
        if a != b and dom[a, b]:
            assert not dom[b, a]
            assert dominates(conjugate(b), conjugate(a))
    if n <= 9:
        for a, b, c in product(parts, repeat=3):
            if dom[a, b] and dom[b, c]:
                assert dom[a, c]


def test_regularity_examples():
    assert not is_p_regular((2, 2, 2), 3)
    assert is_p_regular((2, 2, 2), 5)
    assert not is_p_regular((1, 1), 2)
    assert is_p_regular((), 2)


def test_residue_examples():
    assert residue((1, 1), 5) == 0
    assert residue((2, 1), 3) == 2
    assert residue((1, 4), 3) == 0


def test_removable_addable_nodes():
    assert removable_nodes((3, 1)) == [NodeCoord(1, 3), NodeCoord(2, 1)]
    assert addable_nodes((3, 1)) == [NodeCoord(1, 4), NodeCoord(2, 2), NodeCoord(3, 1)]
    assert addable_nodes(()) == [NodeCoord(1, 1)]


def test_rim_hook_examples():
    [whole] = removable_rim_hooks((3, 1), 4)
    assert (whole.anchor, whole.leg) == (NodeCoord(1, 1), 1)
    assert removable_rim_hooks((1,), 2) == []
    got = {(h.anchor, h.leg) for h in removable_rim_hooks((2, 2), 2)}
    assert got == {(NodeCoord(2, 1), 0), (NodeCoord(1, 2), 1)}
    with pytest.raises(ValueError):
        removable_rim_hooks((1,), 0)


def test_addable_rim_hook_examples():
    got = {(nu, h.leg) for h, nu in addable_rim_hooks((), 3)}
    assert got == {((3,), 0), ((2, 1), 1), ((1, 1, 1), 2)}
    assert {nu for _, nu in addable_rim_hooks((1,), 1)} == {(2,), (1, 1)}


def test_one_hooks_are_removable_nodes():
    for n in range(10):
        for lam in partitions_of(n):
            hooks = removable_rim_hooks(lam, 1)
            assert [h.anchor for h in hooks] == removable_nodes(lam)


@given(partitions(max_n=20), st.integers(1, 10))
def test_rim_hooks_match_bead_moves(lam, h):
    """Removing an h-hook moves one bead h places back into a gap."""
    b = len(lam) + h
    beads = set(from_partition(lam, b, 1).beads)
    movable = {m for m in beads if m - h >= 1 and m - h not in beads}
    hooks = removable_rim_hooks(lam, h)
    assert len(hooks) == len(movable)
    for hook in hooks:
        assert hook_length(lam, hook.anchor) == h
        rest = remove_rim_hook(lam, hook)
        assert sum(rest) == sum(lam) - h
        # the hook's leg counts the beads jumped
        new = set(from_partition(rest, b, 1).beads)
        [m] = beads - new
        assert hook.leg == sum(1 for y in beads if m - h < y < m)


@given(partitions(max_n=15), st.integers(1, 6))
def test_addable_hooks_invert_removal(lam, h):
    for hook, nu in addable_rim_hooks(lam, h):
        assert sum(nu) == sum(lam) + h
        assert hook_length(nu, hook.anchor) == h
        matching = [R for R in removable_rim_hooks(nu, h) if remove_rim_hook(nu, R) == lam]
        assert [R.leg for R in matching] == [hook.leg]
