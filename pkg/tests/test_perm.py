import pytest

from tsscpp_asm.perm import (
    all_perms, avoids, block_decomposition, connected_components, contains_pattern, dominant_region,
    essential_boxes, format_perm, from_lehmer_code, identity, inverse, inversions, is_grassmannian,
    is_inverse_grassmannian, lehmer_code, parse_perm, rothe_diagram,
)


def test_parse_and_format():
    assert parse_perm("14253") == (1, 4, 2, 5, 3)
    assert parse_perm("1,4,2,5,3") == (1, 4, 2, 5, 3)
    pi = (7, 10, 12, 6, 5, 1, 4, 2, 8, 9, 3, 11)
    assert format_perm(pi) == "7,10,12,6,5,1,4,2,8,9,3,11"
    assert parse_perm(format_perm(pi)) == pi
    with pytest.raises(ValueError):
        parse_perm("1224")
    with pytest.raises(ValueError):
        parse_perm("12a")


@pytest.mark.parametrize("pi, pattern, expected", [
    ((1, 4, 2, 5, 3), (1, 4, 3, 2), False),
    ((1, 4, 2, 5, 3), (2, 1, 4, 3), False),
    ((1, 3, 5, 2, 6, 4), (1, 4, 3, 2), False),
    ((1, 4, 3, 2), (1, 4, 3, 2), True),
    ((2, 1, 4, 3), (2, 1, 4, 3), True),
    ((3, 1, 4, 2), (3, 1, 2), True),
])
def test_contains_pattern_examples(pi, pattern, expected):
    assert contains_pattern(pi, pattern) is expected


def test_identity_avoids_patterns_with_a_descent():
    for n in range(1, 7):
        for k in range(2, 5):
            for pattern in all_perms(k):
                if pattern != identity(k):
                    assert not contains_pattern(identity(n), pattern)


def test_lehmer_code():
    assert lehmer_code((1, 4, 3, 2)) == (0, 2, 1, 0)
    assert lehmer_code(identity(5)) == (0,) * 5
    assert lehmer_code((5, 4, 3, 2, 1)) == (4, 3, 2, 1, 0)
    for n in range(1, 6):
        for pi in all_perms(n):
            assert from_lehmer_code(lehmer_code(pi)) == pi


def test_grassmannian_examples():
    assert is_inverse_grassmannian((1, 4, 2, 5, 3))
    assert is_grassmannian((1, 4, 6, 2, 3, 5))
    assert is_inverse_grassmannian((1, 4, 2, 5, 6, 3))
    assert is_grassmannian(identity(4))
    for pi in all_perms(5):
        assert is_grassmannian(pi) == is_inverse_grassmannian(inverse(pi))


def test_rothe_diagram_examples():
    assert rothe_diagram(identity(4)).blanks == frozenset()
    assert rothe_diagram((2, 1)).blanks == {(1, 1)}
    assert rothe_diagram((1, 4, 3, 2)).blanks == {(2, 2), (2, 3), (3, 2)}


def test_rothe_size_is_inversions():
    for n in range(1, 7):
        for pi in all_perms(n):
            assert len(rothe_diagram(pi)) == inversions(pi) == sum(lehmer_code(pi))


def test_blank_regions_are_partition_shaped():
    for n in range(1, 7):
        for pi in all_perms(n):
            for comp in connected_components(rothe_diagram(pi).blanks):
                top, left = min(i for i, _ in comp), min(j for _, j in comp)
                for i, j in comp:
                    assert all((i2, j2) in comp for i2 in range(top, i + 1) for j2 in range(left, j + 1))


def test_essential_boxes_and_dominant_region():
    assert essential_boxes(identity(3)) == frozenset() == dominant_region(identity(3))
    assert essential_boxes((1, 4, 3, 2)) == {(3, 2), (2, 3)}
    assert dominant_region((1, 4, 3, 2)) == frozenset()
    # D(321) is {(1,1),(1,2),(2,1)}; its two SE corners are the essential boxes
    assert rothe_diagram((3, 2, 1)).blanks == {(1, 1), (1, 2), (2, 1)}
    assert essential_boxes((3, 2, 1)) == {(1, 2), (2, 1)}
    assert dominant_region((3, 2, 1)) == {(1, 1), (1, 2), (2, 1)}


def test_block_decomposition_trivial_cases():
    dec = block_decomposition(identity(5))
    assert dec.dominant == () and dec.blocks == ()
    dec = block_decomposition((3, 2, 1))
    assert dec.dominant == (2, 1) and dec.blocks == ()
    with pytest.raises(ValueError):
        block_decomposition((1, 4, 3, 2))
    with pytest.raises(ValueError):
        block_decomposition((2, 1, 4, 3))


def test_block_decomposition_large_example():
    dec = block_decomposition((7, 10, 12, 6, 5, 1, 4, 2, 8, 9, 3, 11))
    assert dec.dominant == (6, 6, 6, 5, 4)
    assert [b.perm for b in dec.grassmannian_blocks] == [(1, 4, 6, 2, 3, 5)]
    assert [b.perm for b in dec.inverse_grassmannian_blocks] == [(1, 4, 2, 5, 6, 3)]
    (g,), (h,) = dec.grassmannian_blocks, dec.inverse_grassmannian_blocks
    assert g.rows == (1, 2, 3) and g.cols == tuple(range(7, 13))
    assert h.rows == tuple(range(6, 12)) and h.cols == (1, 2, 3)


@pytest.mark.parametrize("n", range(1, 8))
def test_block_decomposition_invariants(n):
    for pi in all_perms(n):
        if not avoids(pi, (1, 4, 3, 2), (2, 1, 4, 3)):
            continue
        dec = block_decomposition(pi)
        assert list(dec.dominant) == sorted(dec.dominant, reverse=True)
        assert all(is_grassmannian(b.perm) for b in dec.grassmannian_blocks)
        assert all(is_inverse_grassmannian(b.perm) for b in dec.inverse_grassmannian_blocks)
        blanks = rothe_diagram(pi).blanks - dominant_region(pi)
        owners = {c: 0 for c in blanks}
        for b in dec.blocks:
            for c, _ in b.cells():
                if c in owners:
                    owners[c] += 1
        assert all(v == 1 for v in owners.values())


def _span(block):
    return {(i, j) for i in range(min(block.rows), max(block.rows) + 1)
            for j in range(min(block.cols), max(block.cols) + 1)}


@pytest.mark.parametrize("n", range(1, 7))
def test_block_spans_are_disjoint(n):
    for pi in all_perms(n):
        if not avoids(pi, (1, 4, 3, 2), (2, 1, 4, 3)):
            continue
        dec = block_decomposition(pi)
        spans = [_span(b) for b in dec.blocks]
        dominant = dominant_region(pi)
        assert all(not s & dominant for s in spans)
        assert all(not spans[a] & spans[b] for a in range(len(spans)) for b in range(a))


def test_block_spans_can_touch_at_n7():
    # a single-box group whose rows reach past the other block's top row
    dec = block_decomposition((5, 7, 1, 3, 6, 2, 4))
    assert dec.dominant == (4, 4)
    (h,), (g,) = dec.inverse_grassmannian_blocks, dec.grassmannian_blocks
    assert h.rows == (1, 2, 5) and g.rows == (3, 4, 5)
    assert _span(h) & _span(g)
