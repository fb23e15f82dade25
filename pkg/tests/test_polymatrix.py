"""Polynomial matrices: printing, minors, exterior powers, rank and golden outputs."""

import json
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from persalg.polymatrix import (PolyMatrix, ShapeError, colex_subsets, determinant, exterior_power,
                                generic_matrix, matmul, minor, minors, rank)
from persalg.polyring import RingCtx
from persalg.selftest import GOLDEN_PRODUCERS, golden_dir, normalize_golden, run_selftest

INT_RING = RingCtx(["t"])


def int_matrix(rows):
    return PolyMatrix.from_ints(INT_RING, rows)


def as_ints(m):
    return [[e.constant_value() for e in row] for row in m.entries]


@pytest.mark.parametrize("name", sorted(GOLDEN_PRODUCERS))
def test_golden_session_outputs(name):
    expected = normalize_golden((golden_dir() / f"{name}.txt").read_text())
    assert normalize_golden(GOLDEN_PRODUCERS[name]().format("m2")) == expected


def test_corrupted_golden_is_reported(tmp_path):
    for f in golden_dir().iterdir():
        (tmp_path / f.name).write_text(f.read_text())
    path = tmp_path / "generic_matrix_2x4.txt"
    path.write_text(path.read_text().replace("x_8", "x_9"))
    results = {r.name: r for r in run_selftest("golden", tmp_path)}
    assert not results["generic_matrix_2x4"].passed
    assert "first difference" in results["generic_matrix_2x4"].detail
    assert results["product_AB"].passed


def test_generic_matrix_text():
    m = generic_matrix(RingCtx(8), 0, 2, 4)
    assert m.format() == "| x_1 x_3 x_5 x_7 |\n| x_2 x_4 x_6 x_8 |"


def test_colex_order():
    assert colex_subsets(4, 2) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    assert colex_subsets(3, 0) == [()]


def test_minors_edge_cases():
    m = generic_matrix(RingCtx(8), 0, 2, 4)
    assert minors(0, m) == [m.ring.one()]
    assert minors(3, m) == []
    assert len(minors(2, m)) == 6
    assert len(minors(1, m)) == 8


@pytest.mark.parametrize("seed", range(10))
def test_determinant_matches_sympy(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
    assert determinant(int_matrix(rows)).constant_value() == sympy.Matrix(rows).det()


def test_symbolic_minor_matches_sympy():
    ring = RingCtx(9)
    m = generic_matrix(ring, 0, 3, 3)
    syms = sympy.symbols("x_1:10")
    sm = sympy.Matrix(3, 3, lambda i, j: syms[i + 3 * j])
    expected = sympy.expand(sm.det())
    ours = sum((c * sympy.Mul(*[s ** k for s, k in zip(syms, e)]) for e, c in determinant(m).terms.items()),
               sympy.Integer(0))
    assert sympy.expand(ours - expected) == 0


small = st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3)


@settings(max_examples=40, deadline=None)
@given(small, small, st.integers(1, 3))
def test_exterior_power_is_multiplicative(a, b, k):
    """Cauchy-Binet: wedge^k(AB) = wedge^k(A) wedge^k(B)."""
    ma, mb = int_matrix(a), int_matrix(b)
    assert exterior_power(k, matmul(ma, mb)) == matmul(exterior_power(k, ma), exterior_power(k, mb))


@settings(max_examples=40, deadline=None)
@given(small, st.integers(0, 3))
def test_exterior_power_transpose(a, k):
    m = int_matrix(a)
    assert exterior_power(k, m.transpose()) == exterior_power(k, m).transpose()


def test_minors_are_row_major_flatten_of_exterior_power():
    m = generic_matrix(RingCtx(12), 0, 3, 4)
    assert minors(2, m) == exterior_power(2, m).flatten()


@pytest.mark.parametrize("seed", range(10))
def test_rank_matches_sympy(seed):
    rng = random.Random(seed)
    r, c = rng.randint(1, 5), rng.randint(1, 5)
    k = rng.randint(1, min(r, c))
    left = [[rng.randint(-2, 2) for _ in range(k)] for _ in range(r)]
    right = [[rng.randint(-2, 2) for _ in range(c)] for _ in range(k)]
    prod = sympy.Matrix(left) * sympy.Matrix(right)
    assert rank(int_matrix(prod.tolist())) == prod.rank()


def test_symbolic_rank():
    ring = RingCtx(["x", "y"])
    x, y = ring.gens()
    m = PolyMatrix(ring, [[x, y], [x * x, x * y]])
    assert rank(m) == 1
    assert rank(generic_matrix(RingCtx(6), 0, 2, 3)) == 2


def test_shape_errors():
    a = generic_matrix(RingCtx(6), 0, 2, 3)
    with pytest.raises(ShapeError):
        matmul(a, a)
    with pytest.raises(ShapeError):
        PolyMatrix(a.ring, [[a.ring.one()], []])


def test_json_roundtrip():
    ring = RingCtx(["x", "y"])
    x, y = ring.gens()
    m = PolyMatrix(ring, [[x ** 2, ring.zero()], [3 * x * y - 1, y]], row_shifts=[(0, 0), (1, 0)])
    back = PolyMatrix.from_json(ring, json.loads(m.dumps()))
    assert back == m and back.row_shifts == [(0, 0), (1, 0)]


def test_minor_zero_based_indices():
    m = generic_matrix(RingCtx(8), 0, 2, 4)
    assert minor(m, [0, 1], [0, 1]).format("m2") == "-x_2x_3+x_1x_4"
