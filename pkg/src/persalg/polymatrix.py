"""Dense matrices of polynomials: generic matrices, products, exterior powers and minors.

Row and column subsets are enumerated in colex order ({1,2}, {1,3}, {2,3},
{1,4}, ...), matching the layout of Macaulay2's exteriorPower.
"""

from __future__ import annotations

import json
import random
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .polyring import Polynomial, RingCtx, RingError

Subset = Tuple[int, ...]


class ShapeError(ValueError):
    """Raised when matrix dimensions do not fit an operation."""


def colex_subsets(n: int, k: int) -> List[Subset]:
    """k-subsets of {0..n-1} in colex order."""
    subs = list(combinations(range(n), k))
    subs.sort(key=lambda s: tuple(reversed(s)))
    return subs


def _shift_list(shifts):
    if shifts is None:
        return None
    return [tuple(x) if isinstance(x, (list, tuple)) else x for x in shifts]


class PolyMatrix:
    """Matrix of polynomials in a common ring, with optional degree shifts."""

    def __init__(self, ring: RingCtx, entries: Sequence[Sequence[Polynomial]], ncols: Optional[int] = None,
                 row_shifts: Optional[Sequence] = None, col_shifts: Optional[Sequence] = None):
        rows = [list(r) for r in entries]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ShapeError("ragged matrix")
            for x in r:
                if x.ring != ring:
                    raise RingError("matrix entry from a different ring")
        self.ring = ring
        self.entries = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self.row_shifts = _shift_list(row_shifts)
        self.col_shifts = _shift_list(col_shifts)

    @classmethod
    def zeros(cls, ring: RingCtx, nrows: int, ncols: int) -> "PolyMatrix":
        return cls(ring, [[ring.zero() for _ in range(ncols)] for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, ring: RingCtx, n: int) -> "PolyMatrix":
        return cls(ring, [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_ints(cls, ring: RingCtx, rows: Sequence[Sequence[int]]) -> "PolyMatrix":
        ncols = len(rows[0]) if rows else 0
        return cls(ring, [[ring.const(x) for x in r] for r in rows], ncols)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.ring == other.ring
                and self.shape == other.shape and self.entries == other.entries)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.entries for x in r)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[self.entries[i][j] for i in range(self.nrows)]
                                      for j in range(self.ncols)], self.nrows,
                          row_shifts=self.col_shifts, col_shifts=self.row_shifts)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return matmul(self, other)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ShapeError("shape mismatch in addition")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)]
                                      for r, s in zip(self.entries, other.entries)], self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[self.entries[i][j] for j in cols] for i in rows], len(cols))

    def flatten(self) -> List[Polynomial]:
        """Entries in row-major order."""
        return [x for r in self.entries for x in r]

    def evaluate(self, point: Sequence) -> List[List]:
        return [[x.evaluate(point) for x in r] for r in self.entries]

    def substitute(self, images: Sequence[Polynomial]) -> "PolyMatrix":
        target = images[0].ring if images else self.ring
        return PolyMatrix(target, [[x.substitute(images) for x in r] for r in self.entries], self.ncols)

    def map_entries(self, f) -> "PolyMatrix":
        rows = [[f(x) for x in r] for r in self.entries]
        ring = rows[0][0].ring if rows and rows[0] else self.ring
        return PolyMatrix(ring, rows, self.ncols, self.row_shifts, self.col_shifts)

    def format(self, style: str = "m2") -> str:
        """Macaulay2-like text, one bracketed row per line, single spaces."""
        if self.nrows == 0 or self.ncols == 0:
            return f"0 ({self.nrows}x{self.ncols})"
        return "\n".join("| " + " ".join(x.format(style) for x in r) + " |" for r in self.entries)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols})"

    # -- JSON --------------------------------------------------------------

    def to_json(self, style: str = "star") -> dict:
        data = {"rows": self.nrows, "cols": self.ncols,
                "entries": [[x.format(style) for x in r] for r in self.entries]}
        if self.row_shifts is not None or self.col_shifts is not None:
            data["shifts"] = {"rows": self.row_shifts, "cols": self.col_shifts}
        return data

    @classmethod
    def from_json(cls, ring: RingCtx, data: dict) -> "PolyMatrix":
        try:
            nrows, ncols = int(data["rows"]), int(data["cols"])
            raw = data["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ShapeError(f"malformed matrix JSON: {exc}") from None
        if len(raw) != nrows or any(len(r) != ncols for r in raw):
            raise ShapeError("matrix JSON entries do not match rows/cols")
        entries = [[ring.parse(str(x)) for x in r] for r in raw]
        shifts = data.get("shifts") or {}
        return cls(ring, entries, ncols, shifts.get("rows"), shifts.get("cols"))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def generic_matrix(ring: RingCtx, start: int | str, nrows: int, ncols: int) -> PolyMatrix:
    """Matrix filled column by column with consecutive variables from start."""
    if isinstance(start, str):
        start = ring.index(start)
    if start < 0 or start + nrows * ncols > ring.nvars:
        raise ShapeError("not enough variables for the generic matrix")
    rows = [[ring.var(start + j * nrows + i) for j in range(ncols)] for i in range(nrows)]
    return PolyMatrix(ring, rows, ncols)


def matmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.ncols != b.nrows:
        raise ShapeError(f"cannot multiply {a.nrows}x{a.ncols} by {b.nrows}x{b.ncols}")
    if a.ring != b.ring:
        raise RingError("matrices live in different rings")
    ring = a.ring
    rows = []
    for i in range(a.nrows):
        row = []
        for j in range(b.ncols):
            acc = {}
            for k in range(a.ncols):
                x, y = a.entries[i][k], b.entries[k][j]
                if x.terms and y.terms:
                    for e1, c1 in x.terms.items():
                        for e2, c2 in y.terms.items():
                            e = tuple(p + q for p, q in zip(e1, e2))
                            acc[e] = acc.get(e, 0) + c1 * c2
            row.append(Polynomial(ring, acc))
        rows.append(row)
    return PolyMatrix(ring, rows, b.ncols, a.row_shifts, b.col_shifts)


class _MinorCache:
    """Memoised Laplace expansion of minors along the last chosen row."""

    def __init__(self, m: PolyMatrix):
        self.m = m
        self.cache: Dict[Tuple[Subset, Subset], Polynomial] = {}

    def minor(self, rows: Subset, cols: Subset) -> Polynomial:
        k = len(rows)
        if k == 0:
            return self.m.ring.one()
        key = (rows, cols)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        if k == 1:
            val = self.m.entries[rows[0]][cols[0]]
        else:
            last = rows[-1]
            val = self.m.ring.zero()
            for pos, c in enumerate(cols):
                a = self.m.entries[last][c]
                if a.is_zero():
                    continue
                sub = self.minor(rows[:-1], cols[:pos] + cols[pos + 1:])
                if sub.is_zero():
                    continue
                term = a * sub
                val = val + term if (k - 1 + pos) % 2 == 0 else val - term
        self.cache[key] = val
        return val


def minor(m: PolyMatrix, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
    """Determinant of the submatrix on the given (0-based) rows and columns."""
    if len(rows) != len(cols):
        raise ShapeError("minor needs as many rows as columns")
    return _MinorCache(m).minor(tuple(rows), tuple(cols))


def determinant(m: PolyMatrix) -> Polynomial:
    if m.nrows != m.ncols:
        raise ShapeError("determinant of a non-square matrix")
    return minor(m, range(m.nrows), range(m.ncols))


def exterior_power(k: int, m: PolyMatrix) -> PolyMatrix:
    """k-th exterior power: entry (I, J) is the minor on rows I and columns J, colex order."""
    if k < 0:
        raise ShapeError("negative exterior power")
    row_sets = colex_subsets(m.nrows, k)
    col_sets = colex_subsets(m.ncols, k)
    cache = _MinorCache(m)
    rows = [[cache.minor(r, c) for c in col_sets] for r in row_sets]
    return PolyMatrix(m.ring, rows, len(col_sets))


def minors(k: int, m: PolyMatrix) -> List[Polynomial]:
    """All k x k minors, row subsets outer and column subsets inner, zeros kept.

    k = 0 gives the unit ideal; k beyond the matrix size gives the empty list (zero ideal).
    """
    if k == 0:
        return [m.ring.one()]
    if k > min(m.nrows, m.ncols):
        return []
    return exterior_power(k, m).flatten()


def rank(m: PolyMatrix, seed: int = 0) -> int:
    """Rank over the fraction field: the largest k with a nonzero k x k minor.

    A random integer evaluation gives a lower bound; minors then certify it.
    """
    rng = random.Random(seed)
    point = [rng.randint(-10**6, 10**6) for _ in range(m.ring.nvars)]
    p = m.ring.modulus
    if p:
        point = [x % p for x in point]
    values = m.evaluate(point)
    k = linalg.rank(values, p) if values and values[0] else 0
    while k < min(m.nrows, m.ncols) and any(not x.is_zero() for x in minors(k + 1, m)):
        k += 1
    return k


def block_diagonal(*blocks: PolyMatrix) -> PolyMatrix:
    ring = blocks[0].ring
    nrows = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    out = PolyMatrix.zeros(ring, nrows, ncols)
    r = c = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                out.entries[r + i][c + j] = b.entries[i][j]
        r += b.nrows
        c += b.ncols
    return out


def hstack(*blocks: PolyMatrix) -> PolyMatrix:
    rows = [sum((b.entries[i] for b in blocks), []) for i in range(blocks[0].nrows)]
    return PolyMatrix(blocks[0].ring, rows, sum(b.ncols for b in blocks))
