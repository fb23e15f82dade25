"""Small worked examples: complexes, presentations and bifiltrations used in checks."""

from __future__ import annotations

from .complexes import FreeComplex
from .polymatrix import PolyMatrix, generic_matrix, minor
from .polyring import RingCtx


def bigraded_ring(modulus: int = 0) -> RingCtx:
    return RingCtx(["x", "y"], modulus)


def two_generator_complex(modulus: int = 0) -> FreeComplex:
    """Resolution S(-2,-3) -> S(-3,-1)+S(-2,-2)+S(-1,-3) -> S(-1,-1)+S(-1,-2)."""
    ring = bigraded_ring(modulus)
    x, y = ring.gens()
    z = ring.zero()
    d1 = PolyMatrix(ring, [[x ** 2, z, z], [z, x, y]], row_shifts=[(1, 1), (1, 2)],
                    col_shifts=[(3, 1), (2, 2), (1, 3)])
    d2 = PolyMatrix(ring, [[z], [-y], [x]], row_shifts=[(3, 1), (2, 2), (1, 3)], col_shifts=[(2, 3)])
    return FreeComplex([d1, d2])


def two_generator_grades():
    """Generator and relation grades of the cokernel of the first differential above."""
    return [(1, 1), (1, 2)], [(3, 1), (2, 2), (1, 3)]


def diagonal_presentation(modulus: int = 0) -> PolyMatrix:
    """diag(xy, x^2, y^2) : R(-1,-1)+R(-2,0)+R(0,-2) -> R^3."""
    ring = bigraded_ring(modulus)
    x, y = ring.gens()
    z = ring.zero()
    return PolyMatrix(ring, [[x * y, z, z], [z, x ** 2, z], [z, z, y ** 2]])


def indecomposable_xy_representation():
    """Action matrices X, Y on K^6 of an indecomposable module over K[x, y]/(xy)."""
    ring = RingCtx(["t"])
    x = [[0] * 6 for _ in range(6)]
    y = [[0] * 6 for _ in range(6)]
    for i, j in ((0, 1), (3, 4)):
        x[i][j] = 1
    for i, j in ((2, 1), (3, 2), (5, 4)):
        y[i][j] = 1
    return PolyMatrix.from_ints(ring, x), PolyMatrix.from_ints(ring, y)


def hilbert_burch_complex() -> FreeComplex:
    """0 -> R^2 -> R^5 -> R^3 built from a generic 5 x 2 matrix B.

    The rows of the 3 x 5 matrix are the vectors annihilating both columns of B
    supported on {1,2,3}, {1,2,4} and {1,2,5}, with entries 2 x 2 minors of B.
    """
    ring = RingCtx.from_blocks([("y", 10)])
    b = generic_matrix(ring, 0, 5, 2)
    rows = []
    for third in (3, 4, 5):
        idx = (1, 2, third)
        row = [ring.zero()] * 5
        for pos, i in enumerate(idx):
            others = [j - 1 for j in idx if j != i]
            val = minor(b, others, [0, 1])
            row[i - 1] = val if pos % 2 == 0 else -val
        rows.append(row)
    a = PolyMatrix(ring, rows, 5)
    return FreeComplex([a, b])


RESOLUTION_TEXT = {
    "d1": [["-x_2x_3+x_1x_4", "-x_2x_5+x_1x_6", "-x_4x_5+x_3x_6", "-x_2x_7+x_1x_8",
            "-x_4x_7+x_3x_8", "-x_6x_7+x_5x_8"]],
    "d2": [["x_6", "x_5", "x_8", "x_7", "0", "0", "0", "0"],
           ["-x_4", "-x_3", "0", "0", "0", "0", "x_8", "x_7"],
           ["x_2", "x_1", "0", "0", "x_8", "x_7", "0", "0"],
           ["0", "0", "-x_4", "-x_3", "0", "0", "-x_6", "-x_5"],
           ["0", "0", "x_2", "x_1", "-x_6", "-x_5", "0", "0"],
           ["0", "0", "0", "0", "x_4", "x_3", "x_2", "x_1"]],
    "d3": [["-x_8", "-x_7", "0", "-x_2x_7+x_1x_8"],
           ["0", "-x_8", "-x_7", "-x_2x_8"],
           ["x_6", "x_5", "0", "x_2x_5-x_1x_6"],
           ["0", "x_6", "x_5", "x_2x_6"],
           ["x_2", "x_1", "0", "0"],
           ["0", "x_2", "x_1", "x_2^2"],
           ["-x_4", "-x_3", "0", "-x_2x_3+x_1x_4"],
           ["0", "-x_4", "-x_3", "-x_2x_4"]],
    "d4": [["x_1"], ["-x_2"], ["0"], ["1"]],
}


def minors_resolution() -> FreeComplex:
    """Free resolution of the 2 x 2 minors of a generic 2 x 4 matrix, format (1,6,8,4,1)."""
    ring = RingCtx(8)
    mats = []
    for key in ("d1", "d2", "d3", "d4"):
        rows = RESOLUTION_TEXT[key]
        mats.append(PolyMatrix(ring, [[ring.parse(e) for e in r] for r in rows], len(rows[0])))
    return FreeComplex(mats)
