"""Tableaux, shuffle relations, straightening, Pluecker relations and Schur dimensions."""

import itertools
import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from persalg.polyring import RingCtx
from persalg.tableaux import (Bitableau, FormalSum, TableauError, all_shuffle_relations, bitableau_to_pluecker,
                              cauchy_check, evaluate_bitableau, evaluate_sum, evaluate_tableau, is_standard,
                              partitions, pluecker_relations, pluecker_to_bitableau, random_bitableau,
                              schur_dimension, shuffle_relation, standard_bitableaux, straighten)

PRINTED_STAR = [[1, 2, 3], [1, 2, 5], [1, 2, 7], [2, 3, 8], [5, 6, 7], [5, 6, 8]]
COORDINATE_LIST = ((1, 2, 3), (1, 2, 5), (1, 2, 7), (2, 3, 6), (5, 6, 7), (5, 6, 8))
PRINTED_DOUBLE = Bitableau([[1, 2, 3], [1, 2, 3], [1, 3], [1, 2], [1], [2]],
                           [[1, 2, 3], [1, 2, 5], [1, 2], [2, 3], [5], [5]])


def random_matrix(rng, r, c):
    return [[rng.randint(-4, 4) for _ in range(c)] for _ in range(r)]


def brute_force_standard_count(shape, n):
    """Count fillings with strictly increasing rows and nondecreasing columns by exhaustion."""
    cells = [(i, j) for i, length in enumerate(shape) for j in range(length)]
    count = 0
    for values in itertools.product(range(1, n + 1), repeat=len(cells)):
        t = {}
        for cell, v in zip(cells, values):
            t[cell] = v
        ok = all(t[(i, j)] < t[(i, j + 1)] for (i, j) in cells if (i, j + 1) in t) and \
            all(t[(i, j)] <= t[(i + 1, j)] for (i, j) in cells if (i + 1, j) in t)
        count += ok
    return count


def test_is_standard_examples():
    assert not is_standard(PRINTED_STAR)
    assert not is_standard(COORDINATE_LIST)
    assert is_standard([[1, 2, 3]])
    assert is_standard([[1, 2], [2]])
    assert not is_standard([[2, 1]])
    assert not is_standard([[2], [1]])
    assert is_standard([[1], [1]])


def test_shuffle_relation_two_by_one():
    rel = shuffle_relation([[1], [2]], 1, 0, 0)
    # x and y swap across the rows: (1/2) + (2/1) with signs
    assert len(rel) == 2
    rng = random.Random(0)
    for _ in range(10):
        y = random_matrix(rng, 2, 2)
        assert evaluate_sum(rel, lambda t: evaluate_tableau(t, y)) == 0


def test_shuffle_relation_bounds():
    with pytest.raises(TableauError):
        shuffle_relation([[1, 2], [3, 4]], 1, 1, 1)
    with pytest.raises(TableauError):
        shuffle_relation([[1, 2, 3]], 1, 0, 0)
    assert list(all_shuffle_relations([[1, 2, 3]])) == []


@pytest.mark.parametrize("seed", range(15))
def test_shuffle_relations_vanish(seed):
    rng = random.Random(seed)
    n = 5
    shape = rng.choice([(2, 2), (3, 2), (3, 3), (2, 1), (3, 1), (2, 2, 1)])
    t = [sorted(rng.sample(range(1, n + 1), k)) for k in shape]
    for y in (random_matrix(rng, max(shape), n) for _ in range(3)):
        for rel in all_shuffle_relations(t):
            assert evaluate_sum(rel, lambda s: evaluate_tableau(s, y)) == 0


def test_printed_double_tableau_matches_coordinate_list():
    sign, plu = bitableau_to_pluecker(PRINTED_DOUBLE, 3, 5)
    assert plu == COORDINATE_LIST and sign in (1, -1)
    assert pluecker_to_bitableau(plu, 3, 5)[1] is not None
    assert not PRINTED_DOUBLE.is_standard()


def check_straightening(x: FormalSum, rng, nrows, ncols, trials=20):
    out = straighten(x, nrows, ncols)
    assert all(b.is_standard() for b, _ in out.items())
    for _ in range(trials):
        mat = random_matrix(rng, nrows, ncols)
        assert evaluate_sum(out, lambda b: evaluate_bitableau(b, mat)) == \
            evaluate_sum(x, lambda b: evaluate_bitableau(b, mat))
    assert straighten(out, nrows, ncols) == out
    return out


def test_straighten_printed_example(rng):
    out = check_straightening(FormalSum({PRINTED_DOUBLE: 1}), rng, 3, 5)
    assert len(out) > 1


def test_straighten_two_by_two_exchange(rng):
    out = check_straightening(FormalSum({Bitableau([[1], [2]], [[2], [1]]): 1}), rng, 2, 2)
    assert out == FormalSum({Bitableau([[1], [2]], [[1], [2]]): 1, Bitableau([[1, 2]], [[1, 2]]): -1})


def test_straighten_fixed_point():
    b = Bitableau([[1, 2], [2]], [[1, 3], [3]])
    assert b.is_standard()
    assert straighten(FormalSum({b: 1})) == FormalSum({b: 1})


@pytest.mark.parametrize("seed", range(10))
def test_straighten_random(seed):
    rng = random.Random(seed)
    b = random_bitableau(rng, 3, 5)
    check_straightening(FormalSum({b: 1, random_bitableau(rng, 3, 5): -2}), rng, 3, 5, trials=5)


def test_pluecker_grassmannian_2_4():
    ring, rels = pluecker_relations(2, 4)
    assert len(rels) == 1
    assert rels[0].format("m2") == "x_14x_23-x_13x_24+x_12x_34"


def test_pluecker_projective_space_has_none():
    assert pluecker_relations(1, 4)[1] == []


@pytest.mark.parametrize("r,k", [(2, 4), (2, 5), (3, 6)])
def test_pluecker_relations_vanish(r, k, rng):
    from persalg.tableaux import _det
    ring, rels = pluecker_relations(r, k)
    subsets = list(itertools.combinations(range(1, k + 1), r))
    for _ in range(20):
        m = random_matrix(rng, r, k)
        point = [_det([[m[i][c - 1] for c in s] for i in range(r)]) for s in subsets]
        assert all(rel.evaluate(point) == 0 for rel in rels)


def test_schur_dimension_examples():
    assert schur_dimension((1,), 2) == 2
    assert schur_dimension((1, 1), 2) == 3
    assert schur_dimension((2,), 2) == 1
    assert schur_dimension((3,), 2) == 0
    assert sum(schur_dimension(lam, 2) ** 2 for lam in partitions(2)) == 10


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_schur_dimension_matches_brute_force(n):
    for m in range(1, 5):
        for lam in partitions(m):
            assert schur_dimension(lam, n) == brute_force_standard_count(lam, n)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 4))
def test_cauchy_identity(a, b, n):
    assert cauchy_check(a, b, n)


@pytest.mark.parametrize("m,n", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 3)])
def test_standard_bitableaux_count_polynomial_ring(m, n):
    for d in range(4):
        assert sum(1 for _ in standard_bitableaux(m, n, d)) == comb(m * n + d - 1, d)


def test_standard_bitableaux_are_linearly_independent():
    """Distinct standard bitableaux of degree 2 on a 2 x 2 matrix give independent polynomials."""
    from persalg.linalg import rank
    from persalg.polymatrix import generic_matrix
    from persalg.tableaux import bitableau_polynomial
    x = generic_matrix(RingCtx(4), 0, 2, 2)
    polys = [bitableau_polynomial(b, x) for b in standard_bitableaux(2, 2, 2)]
    monos = sorted({e for p in polys for e in p.terms})
    assert rank([[p.terms.get(e, 0) for e in monos] for p in polys]) == len(polys)
