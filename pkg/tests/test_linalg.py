import math
import random

import pytest
from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from essdim.linalg import (
    IntMatrix,
    LatticeMembershipError,
    hnf,
    in_lattice,
    kernel_basis,
    lattice_index,
    rank,
    same_lattice,
    snf,
    solve_in_lattice,
)


def matrices(max_rows=6, max_cols=6, lo=-5, hi=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ).map(IntMatrix)


def random_unimodular(n, rng, steps=12):
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            for row in U:
                row[i] = -row[i]
            continue
        q = rng.randint(-3, 3)
        for row in U:
            row[i] += q * row[j]
    return IntMatrix(U)


def sympy_factors(M: IntMatrix):
    if M.nrows == 0 or M.ncols == 0:
        return ()
    return tuple(abs(int(d)) for d in invariant_factors(Matrix(M.tolist()), domain=ZZ) if d != 0)


# -- examples -----------------------------------------------------------------

def test_hnf_of_identity_is_identity():
    assert hnf(IntMatrix.identity(3)).H == IntMatrix.identity(3)


def test_hnf_even_sum_lattice_of_z2():
    H = hnf(IntMatrix.from_columns([(1, 1), (0, 2)])).H
    assert H.tolist() == [[1, 0], [1, 2]]


def test_hnf_invariant_under_column_permutation():
    M = IntMatrix([[3, 1, 4], [1, 5, 9], [2, 6, 5]])
    P = M.select_columns([2, 0, 1])
    assert hnf(M).H == hnf(P).H


def test_hnf_transform_certificate():
    M = IntMatrix([[4, 6, 2], [2, 8, 0]])
    res = hnf(M)
    assert M @ res.U == res.H
    assert res.U.is_unimodular()
    assert res.rank == 2


@pytest.mark.parametrize(
    "rows, factors",
    [
        ([[2, 0], [0, 3]], (1, 6)),
        ([[2, 4], [6, 8]], (2, 4)),
        ([[0, 0], [0, 0]], ()),
    ],
)
def test_snf_examples(rows, factors):
    M = IntMatrix(rows)
    res = snf(M)
    assert res.factors == factors
    assert res.factors == sympy_factors(M)


def test_snf_factors_via_determinantal_divisors():
    # d1 = gcd of entries, d1*d2 = |det|
    M = IntMatrix([[2, 4], [6, 8]])
    d1 = math.gcd(*M.entries)
    assert snf(M).factors == (d1, abs(M.det()) // d1)


def test_kernel_of_augmentation_row():
    K = kernel_basis(IntMatrix([[1, 1, 1]]))
    assert K.ncols == 2
    assert in_lattice(K, (1, -1, 0)) and in_lattice(K, (0, 1, -1))
    assert same_lattice(K, IntMatrix.from_columns([(1, -1, 0), (0, 1, -1)]))


def test_kernel_of_invertible_matrix_is_empty():
    assert kernel_basis(IntMatrix([[2, 1], [1, 1]])).ncols == 0


def test_solve_in_lattice_examples():
    assert solve_in_lattice(IntMatrix.identity(3), (4, -2, 7)) == (4, -2, 7)
    assert solve_in_lattice(IntMatrix([[1, 0], [1, 2]]), (1, 3)) == (1, 1)
    assert solve_in_lattice(IntMatrix([[2, 0], [0, 2]]), (1, 0)) is None


def test_solve_in_lattice_length_mismatch():
    with pytest.raises(ValueError):
        solve_in_lattice(IntMatrix.identity(2), (1, 2, 3))


def test_lattice_index_examples():
    Z2 = IntMatrix.identity(2)
    even = IntMatrix.from_columns([(1, 1), (0, 2)])
    assert lattice_index(Z2, even) == 2
    assert lattice_index(even, even) == 1
    assert lattice_index(Z2, IntMatrix.from_columns([(1, 0)])) == math.inf


def test_lattice_index_rejects_non_sublattice():
    with pytest.raises(LatticeMembershipError) as info:
        lattice_index(IntMatrix.from_columns([(2, 0), (0, 2)]), IntMatrix.from_columns([(2, 0), (1, 0)]))
    assert info.value.column == 1


def test_det_matches_sympy():
    M = IntMatrix([[3, -1, 4, 1], [5, 9, -2, 6], [5, 3, 5, 8], [9, -7, 9, 3]])
    assert M.det() == int(Matrix(M.tolist()).det())


# -- properties -----------------------------------------------------------------

@given(matrices())
def test_snf_certificate(M):
    res = snf(M)
    assert res.U.is_unimodular() and res.V.is_unimodular()
    assert res.U @ M @ res.V == res.S
    fs = res.factors
    assert all(b % a == 0 for a, b in zip(fs, fs[1:]))
    assert all(f > 0 for f in fs)
    assert fs == sympy_factors(M)


@given(matrices())
def test_hnf_same_span(M):
    H = hnf(M).H
    assert all(in_lattice(H, c) for c in M.columns())
    assert all(in_lattice(M, c) for c in H.columns())


@given(matrices(max_rows=5, max_cols=5), st.randoms(use_true_random=False))
def test_hnf_canonical_under_unimodular(M, rng):
    W = random_unimodular(M.ncols, rng)
    assert hnf(M @ W).H == hnf(M).H


@given(matrices(max_rows=8, max_cols=8))
def test_rank_nullity(M):
    K = kernel_basis(M)
    assert K.ncols + rank(M) == M.ncols
    assert rank(M) == Matrix(M.tolist()).rank()
    if K.ncols:
        assert all(v == 0 for v in (M @ K).entries)
        # a saturated kernel has trivial torsion in Z^n / K
        assert snf(K).factors == (1,) * K.ncols


@given(matrices())
def test_determinism(M):
    assert hnf(M) == hnf(IntMatrix(M.tolist()))
    assert snf(M) == snf(IntMatrix(M.tolist()))


def test_rank_nullity_200_random():
    rng = random.Random(5)
    for _ in range(200):
        r, c = rng.randint(1, 12), rng.randint(1, 12)
        M = IntMatrix([[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)])
        assert rank(kernel_basis(M)) + rank(M) == c
