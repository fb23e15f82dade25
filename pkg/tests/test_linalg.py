"""Exact linear algebra helpers against sympy."""

import random

import pytest
import sympy

from persalg.linalg import independent_extension, nullspace, rank, smith_diagonal, solve


def random_matrix(rng, r, c, lo=-3, hi=3):
    return [[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)]


@pytest.mark.parametrize("seed", range(20))
def test_rank_and_nullspace(seed):
    rng = random.Random(seed)
    m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), -1, 1)
    assert rank(m) == sympy.Matrix(m).rank()
    ns = nullspace(m, len(m[0]))
    assert len(ns) == len(m[0]) - rank(m)
    for v in ns:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


def test_rank_mod_p_sees_torsion():
    m = [[2, 0], [0, 2]]
    assert rank(m) == 2 and rank(m, 2) == 0 and rank(m, 101) == 2


@pytest.mark.parametrize("seed", range(20))
def test_smith_diagonal_matches_sympy(seed):
    rng = random.Random(seed)
    m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), -6, 6)
    from sympy.matrices.normalforms import smith_normal_form
    snf = smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ)
    expected = [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert smith_diagonal(m) == expected


def test_solve_and_extension():
    cols = [[1, 0, 1], [0, 1, 1]]
    assert solve(cols, [2, 3, 5]) == [2, 3]
    assert solve(cols, [0, 0, 1]) is None
    assert independent_extension([[1, 0, 0]], [[2, 0, 0], [0, 1, 0], [1, 1, 0]]) == [1]
