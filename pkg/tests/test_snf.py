import random

import pytest

from wkbcalc.snf import determinant, matmul, smith_normal_form


def check(A, cols=None):
    r = smith_normal_form(A, cols)
    m, n = r.rows, r.cols
    assert matmul(matmul(r.U, A), r.V) == r.D if m and n else True
    eye = [[int(i == j) for j in range(n)] for i in range(n)]
    assert matmul(r.V, r.V_inv) == eye
    assert abs(determinant(r.U)) == 1
    assert abs(determinant(r.V)) == 1
    for i in range(m):
        for j in range(n):
            if i != j:
                assert r.D[i][j] == 0
    diag = r.invariant_factors
    assert all(d > 0 for d in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    return r


def test_small():
    assert check([[2, 0], [0, 3]]).diagonal == [1, 6]
    assert check([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).diagonal == [2, 6, 12]
    assert check([[0, 0], [0, 0]]).rank == 0


def test_empty():
    r = smith_normal_form([], cols=3)
    assert r.rows == 0 and r.cols == 3 and r.diagonal == []


@pytest.mark.parametrize("seed", range(60))
def test_against_sympy(seed):
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import invariant_factors

    rng = random.Random(seed)
    m, n = rng.randint(1, 6), rng.randint(1, 6)
    A = [[rng.choice([0, 0, 1, -1, 2, 3, -4, 6]) for _ in range(n)] for _ in range(m)]
    r = check(A)
    expected = [abs(int(x)) for x in invariant_factors(sympy.Matrix(A), domain=sympy.ZZ) if x != 0]
    assert r.invariant_factors == expected


def test_determinant():
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[0, 1, 0], [1, 0, 0], [0, 0, 5]]) == -5
    assert determinant([]) == 1
