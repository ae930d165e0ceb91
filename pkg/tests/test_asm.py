import pytest

from tsscpp_asm.asm import (
    AsmError, asm_to_bpd, bpd_to_asm, count_asm, enumerate_asm, from_json, from_text, inversion_number,
    nw_zeros, permutation_matrix, to_json, to_text, validate, weight,
)
from tsscpp_asm.perm import all_perms, inversions

ASM_COUNTS = [1, 2, 7, 42, 429, 7436, 218348]


@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_matches_dp(n):
    listed = list(enumerate_asm(n))
    assert len(listed) == count_asm(n) == ASM_COUNTS[n - 1]
    assert listed == sorted(listed) and len(set(listed)) == len(listed)


def test_count_n7_and_n8():
    assert count_asm(7) == 218348
    assert count_asm(8) == 10850216


def test_validate_rejects():
    with pytest.raises(AsmError, match="not square"):
        validate([[1, 0], [0]])
    with pytest.raises(AsmError, match="alternate"):
        validate([[0, 1, 0], [1, 0, 0], [-1, 0, 1]])
    with pytest.raises(AsmError, match="sums to 0"):
        validate([[0, 0], [1, 0]])
    with pytest.raises(AsmError):
        validate([[2]])
    with pytest.raises(AsmError):
        count_asm(0)


def test_middle_asm_of_order_three():
    A = validate([[0, 1, 0], [1, -1, 1], [0, 1, 0]])
    assert nw_zeros(A) == {(1, 1)}
    assert str(weight(A)) == "x1"
    assert inversion_number(A) == 2


def test_permutation_matrices():
    for pi in all_perms(5):
        A = permutation_matrix(pi)
        assert inversion_number(A) == inversions(pi) == len(nw_zeros(A))


def test_inversion_number_identity():
    # the inversion number exceeds the NW-zero count by the number of -1 entries
    for n in range(1, 6):
        for A in enumerate_asm(n):
            minus = sum(row.count(-1) for row in A.rows)
            assert inversion_number(A) == len(nw_zeros(A)) + minus


def test_serialization_round_trips():
    for A in enumerate_asm(4):
        assert from_json(to_json(A)) == A
        assert from_text(to_text(A)) == A
    assert from_json('{"rows": [[1]]}').n == 1
    with pytest.raises(AsmError):
        from_json('{"n": 3, "rows": [[1]]}')
    with pytest.raises(AsmError):
        from_text("1 x\n0 1")


@pytest.mark.parametrize("n", range(1, 6))
def test_bpd_round_trip(n):
    for A in enumerate_asm(n):
        assert bpd_to_asm(asm_to_bpd(A)) == A
