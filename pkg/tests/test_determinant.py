import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from algdet import guards
from algdet.algebra import (AlgMatrix, diagonal, direct_sum, field_algebra, matrix_algebra,
                            quotient, scalar_matrix, strictly_upper, upper_triangular)
from algdet.determinant import (det_auto, det_cayley_bruteforce, det_cayley_expansion,
                                det_commutative, det_general, det_upper_triangular,
                                enumerate_sf_pairs, nondecreasing_sequences, per_bruteforce,
                                per_ryser, permutation_sign, sf_pair_count)
from algdet.errors import PreconditionError, SizeGuardError
from algdet.exactfield import GF, QQ
from algdet.reduction.gadgets import xor_constants
from algdet.structure import wm_decompose

from strategies import seeds

F7 = GF(7)
M2_7 = matrix_algebra(F7, 2)
U2_7 = upper_triangular(F7, 2)
U3_7 = upper_triangular(F7, 3)
D2_7 = diagonal(F7, 2)
SUM_5 = direct_sum(diagonal(GF(5), 2), upper_triangular(GF(5), 2))
W_SUM_5 = wm_decompose(SUM_5)
W_U2_7 = wm_decompose(U2_7)


def rand(A, n, seed):
    return AlgMatrix.random(A, n, random.Random(seed))


# -- fixed examples ----------------------------------------------------------

def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((1, 2, 0)) == 1


def test_one_by_one_and_identity():
    x = M2_7.element((1, 2, 3, 4))
    M = AlgMatrix.from_elements(M2_7, [[x]])
    assert det_cayley_bruteforce(M) == x
    assert det_cayley_expansion(M) == x
    for n in (1, 3, 5):
        assert det_cayley_bruteforce(AlgMatrix.identity(M2_7, n)) == M2_7.one
    assert det_cayley_expansion(AlgMatrix.identity(M2_7, 20)) == M2_7.one


def test_row_ordered_two_by_two():
    C = xor_constants(F7)
    X, Y, I = (M2_7.element(v) for v in (C.X, C.Y, C.I2))
    assert X * Y == M2_7.element(C.Z)
    M = AlgMatrix.from_elements(M2_7, [[X, Y], [I, I]])
    assert det_cayley_bruteforce(M) == X - Y
    assert det_cayley_expansion(M) == X - Y


def test_row_swap_changes_more_than_sign():
    A = M2_7
    a, b = A["E12"], A["E21"]
    M = AlgMatrix.from_elements(A, [[a, A.zero], [A.zero, b]])
    swapped = M.swap_rows(0, 1)
    d, ds = det_cayley_bruteforce(M), det_cayley_bruteforce(swapped)
    assert d == a * b
    assert ds != d and ds != -d   # row-swapped determinant is -(b a), not -(a b)


def test_scalar_gf7_two_by_two():
    M = scalar_matrix(F7, [[1, 2], [3, 4]])
    assert det_commutative(M).coords == (5,)
    assert det_cayley_bruteforce(M).coords == (5,)


def test_identity_over_diagonal():
    D = diagonal(GF(5), 3)
    assert det_commutative(AlgMatrix.identity(D, 4)) == D.one


def test_per_ryser_small_examples():
    assert per_ryser(scalar_matrix(QQ, [[1 if i == j else 0 for j in range(5)] for i in range(5)])).value == 1
    assert per_ryser(scalar_matrix(QQ, [[1] * 3] * 3)).value == 6
    assert per_ryser(scalar_matrix(GF(101), [[1] * 3] * 3)).value == 6


def test_per_ryser_rejects_non_scalar():
    with pytest.raises(PreconditionError):
        per_ryser(AlgMatrix.identity(M2_7, 2))


def test_per_ryser_all_ones_large():
    # per(J_n) = n!, through the split-halves kernel above the Gray-code cut-off
    for n in (15, 16):
        assert per_ryser(scalar_matrix(QQ, [[1] * n] * n)).value == math.factorial(n)
        assert per_ryser(scalar_matrix(GF(101), [[1] * n] * n)).value == math.factorial(n) % 101


def test_per_ryser_rational_entries():
    M = scalar_matrix(QQ, [["1/2", "1/3"], ["1/5", "1/7"]])
    from fractions import Fraction
    assert per_ryser(M).value == Fraction(1, 14) + Fraction(1, 15)


def test_block_diagonal_expansion():
    rng = random.Random(5)
    A = M2_7
    P, Q = AlgMatrix.random(A, 3, rng), AlgMatrix.random(A, 3, rng)
    z = A.zero_coords
    rows = [P.entries[i] + (z,) * 3 for i in range(3)] + [(z,) * 3 + Q.entries[i] for i in range(3)]
    M = AlgMatrix(A, tuple(rows))
    assert det_cayley_expansion(M) == det_cayley_bruteforce(P) * det_cayley_bruteforce(Q)


def test_det_commutative_rejects_noncommutative():
    with pytest.raises(PreconditionError) as info:
        det_commutative(AlgMatrix.identity(M2_7, 2))
    assert info.value.witness is not None


def test_det_upper_triangular_requires_provenance():
    with pytest.raises(PreconditionError):
        det_upper_triangular(AlgMatrix.identity(D2_7, 2))


def test_det_general_rejects_noncommutative_complement():
    A = direct_sum(matrix_algebra(F7, 2), upper_triangular(F7, 2))
    with pytest.raises(PreconditionError):
        det_general(AlgMatrix.identity(A, 2))


def test_nondecreasing_sequences_lexicographic():
    assert list(nondecreasing_sequences(2, 0, 2)) == [
        (0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
    assert list(nondecreasing_sequences(0, 1, 3)) == [()]
    for length in range(5):
        assert sum(1 for _ in nondecreasing_sequences(length, 0, 2)) == math.comb(length + 2, 2)


@pytest.mark.parametrize("n, d", [(1, 1), (3, 2), (4, 3), (5, 2), (5, 4)])
def test_sf_pair_count(n, d):
    want = sum(math.comb(n, t) * math.perm(n, t) for t in range(d))
    pairs = list(enumerate_sf_pairs(n, d))
    assert len(pairs) == want == sf_pair_count(n, d)
    assert len(set(pairs)) == want
    assert all(list(p.S) == sorted(p.S) and len(set(p.f)) == p.t for p in pairs)


def test_guard_messages_and_env_override(monkeypatch):
    M = AlgMatrix.identity(M2_7, 9)
    with pytest.raises(SizeGuardError) as info:
        det_cayley_bruteforce(M)
    assert "bruteforce=9" in str(info.value)
    monkeypatch.setenv(guards.ENV_VAR, "bruteforce=9")
    assert det_cayley_bruteforce(M) == M2_7.one
    monkeypatch.delenv(guards.ENV_VAR)
    with guards.override(expansion=3):
        with pytest.raises(SizeGuardError):
            det_cayley_expansion(AlgMatrix.identity(M2_7, 4))


def test_det_auto_dispatch():
    assert det_auto(rand(D2_7, 3, 1)).algorithm == "commutative"
    M = rand(U2_7, 4, 2)
    res = det_auto(M)
    assert res.algorithm == "upper-triangular"
    assert res.value == det_cayley_bruteforce(M)
    assert det_auto(rand(SUM_5, 3, 3)).algorithm == "general"


def test_det_auto_hard_without_and_with_oracle():
    M = rand(M2_7, 3, 4)
    res = det_auto(M)
    assert res.value is None and res.report.verdict == "hard"
    forced = det_auto(M, force_oracle=True)
    assert forced.value == det_cayley_bruteforce(M)


# -- property tests against the permutation-sum oracle -----------------------

@settings(max_examples=30)
@given(st.integers(1, 6), seeds)
def test_expansion_matches_bruteforce_m2(n, seed):
    M = rand(M2_7, n, seed)
    assert det_cayley_expansion(M) == det_cayley_bruteforce(M)


@settings(max_examples=40)
@given(st.integers(1, 5), seeds)
def test_commutative_matches_bruteforce(n, seed):
    Q = quotient(U3_7, strictly_upper(U3_7))
    for A in (D2_7, Q):
        M = rand(A, n, seed)
        assert det_commutative(M) == det_cayley_bruteforce(M)


@settings(max_examples=40)
@given(st.sampled_from([(U2_7, 5), (U3_7, 4), (upper_triangular(GF(5), 2), 5)]), seeds)
def test_upper_triangular_matches_bruteforce(case, seed):
    A, n = case
    M = rand(A, n, seed)
    assert det_upper_triangular(M) == det_cayley_bruteforce(M)


@settings(max_examples=30)
@given(st.integers(1, 4), seeds)
def test_general_matches_bruteforce(n, seed):
    M = rand(SUM_5, n, seed)
    assert det_general(M, W_SUM_5) == det_cayley_bruteforce(M)
    N = rand(U2_7, n, seed)
    assert det_general(N, W_U2_7) == det_upper_triangular(N)


@settings(max_examples=20)
@given(seeds)
def test_multiplicative_over_diagonal(seed):
    rng = random.Random(seed)
    M, N = AlgMatrix.random(D2_7, 4, rng), AlgMatrix.random(D2_7, 4, rng)
    assert det_commutative(M.matmul(N)) == det_commutative(M) * det_commutative(N)


@settings(max_examples=30)
@given(st.integers(1, 6), seeds)
def test_ryser_matches_bruteforce_gf101(n, seed):
    F = field_algebra(GF(101))
    M = rand(F, n, seed)
    assert per_ryser(M).value == per_bruteforce(M).coords[0]


@settings(max_examples=20)
@given(st.integers(1, 6), seeds)
def test_per_equals_det_in_characteristic_two(n, seed):
    M = rand(field_algebra(GF(2)), n, seed)
    assert per_bruteforce(M) == det_cayley_bruteforce(M)


def test_general_with_zero_radical_is_commutative_det():
    A = diagonal(F7, 3)
    M = rand(A, 4, 9)
    assert det_general(M, wm_decompose(A)) == det_commutative(M)
