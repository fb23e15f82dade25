"""Young tableaux, bitableaux, shuffle relations and straightening.

Conventions: a tableau is a tuple of rows with nonincreasing lengths.  It is
standard when rows strictly increase and columns weakly increase.  A row of a
tableau evaluates to a minor: for a single tableau with entries in [1, n],
row (i_1..i_k) is the minor of a k x n block on rows 1..k and columns
i_1..i_k (in the written order); for a bitableau (rows | cols) row a is the
minor of X on rows given by the left tableau and columns given by the right
one.  Straightening of bitableaux passes through Pluecker coordinates of the
matrix (X | J) with J the anti-diagonal identity.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .polyring import Polynomial, RingCtx

Row = Tuple[int, ...]
Tableau = Tuple[Row, ...]


class TableauError(ValueError):
    """Raised for malformed shapes, tableaux or relation parameters."""


# -- shapes and basic predicates ---------------------------------------

def check_partition(shape: Sequence[int]) -> Tuple[int, ...]:
    shape = tuple(int(x) for x in shape)
    if any(x <= 0 for x in shape) or any(a < b for a, b in zip(shape, shape[1:])):
        raise TableauError(f"{shape} is not a partition")
    return shape


def shape_of(t: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    return tuple(len(r) for r in t)


def make_tableau(rows: Iterable[Iterable[int]]) -> Tableau:
    t = tuple(tuple(int(x) for x in r) for r in rows)
    check_partition(shape_of(t))
    return t


def is_standard(t: Sequence[Sequence[int]]) -> bool:
    """Rows strictly increasing, columns weakly increasing, valid shape."""
    shape = shape_of(t)
    if any(a < b for a, b in zip(shape, shape[1:])) or any(x == 0 for x in shape):
        return False
    for r in t:
        if any(a >= b for a, b in zip(r, r[1:])):
            return False
    for upper, lower in zip(t, t[1:]):
        if any(a > b for a, b in zip(upper, lower)):
            return False
    return True


def first_violation(t: Sequence[Sequence[int]]) -> Optional[Tuple[int, int]]:
    """(row, column) of the topmost-leftmost column violation, 0-based, or None."""
    for a, (upper, lower) in enumerate(zip(t, t[1:])):
        for j, (x, y) in enumerate(zip(upper, lower)):
            if x > y:
                return a, j
    return None


def _sort_sign(seq: Sequence[int]) -> Tuple[int, Row]:
    """Sign of the sorting permutation and the sorted tuple; sign 0 on repeats."""
    s = list(seq)
    if len(set(s)) != len(s):
        return 0, tuple(sorted(s))
    sign = 1
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign, tuple(sorted(s))


def concat_sign(*parts: Sequence[int]) -> int:
    """Sign of the permutation sorting the concatenation of disjoint sequences."""
    seq = [x for p in parts for x in p]
    return _sort_sign(seq)[0]


# -- formal sums ---------------------------------------------------------

class FormalSum:
    """Finite Z-linear combination of hashable basis objects (tableaux or bitableaux)."""

    def __init__(self, terms: Optional[Dict] = None):
        self.terms: Dict = {}
        for k, c in (terms or {}).items():
            if c:
                self.terms[k] = self.terms.get(k, 0) + c
        self.terms = {k: c for k, c in self.terms.items() if c}

    def add(self, key, coeff) -> None:
        v = self.terms.get(key, 0) + coeff
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = FormalSum(self.terms)
        for k, c in other.terms.items():
            out.add(k, c)
        return out

    def scale(self, c) -> "FormalSum":
        return FormalSum({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def __repr__(self):
        return f"FormalSum({dict(self.items())})"


def normalize_rows(t: Sequence[Sequence[int]]) -> Tuple[int, Optional[Tableau]]:
    """Sort each row (alternating), returning the sign; (0, None) when a row repeats."""
    sign = 1
    rows = []
    for r in t:
        s, srt = _sort_sign(r)
        if s == 0:
            return 0, None
        sign *= s
        rows.append(srt)
    return sign, tuple(rows)


# -- shuffle relations ----------------------------------------------------

def shuffle_relation(t: Sequence[Sequence[int]], a: int, u: int, v: int) -> FormalSum:
    """The shuffle relation for rows a, a+1 (1-based) of the filled shape t.

    Row a keeps its first u entries, row a+1 keeps its last v entries, and the
    remaining entries of the two rows are shuffled across in every way with the
    shuffle sign.  Requires u + v < len(row a+1).  Each tableau in the result
    has its rows sorted; the sum evaluates to zero on minors.
    """
    t = tuple(tuple(r) for r in t)
    shape = check_partition(shape_of(t))
    if not 1 <= a < len(shape):
        raise TableauError("row index a must satisfy 1 <= a < number of rows")
    la, lb = shape[a - 1], shape[a]
    if u < 0 or v < 0 or u + v >= lb:
        raise TableauError("shuffle parameters need u, v >= 0 and u + v < length of row a+1")
    top, bottom = t[a - 1], t[a]
    xs, zs = top[:u], bottom[lb - v:]
    ys = top[u:] + bottom[:lb - v]
    top_len = la - u
    out = FormalSum()
    for pos in combinations(range(len(ys)), top_len):
        chosen = [ys[i] for i in pos]
        rest = [ys[i] for i in range(len(ys)) if i not in pos]
        sgn = _sort_sign(list(pos) + [i for i in range(len(ys)) if i not in pos])[0]
        new = list(t)
        new[a - 1] = tuple(xs) + tuple(chosen)
        new[a] = tuple(rest) + tuple(zs)
        s, norm = normalize_rows(new)
        if s:
            out.add(norm, sgn * s)
    return out


def all_shuffle_relations(t: Sequence[Sequence[int]]) -> Iterator[FormalSum]:
    """Every shuffle relation of the filled shape t (none for a single row)."""
    shape = shape_of(t)
    for a in range(1, len(shape)):
        lb = shape[a]
        for u in range(lb):
            for v in range(lb - u):
                yield shuffle_relation(t, a, u, v)


# -- evaluation --------------------------------------------------------------

def _det(m: List[List]) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in r] for r in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def evaluate_tableau(t: Sequence[Sequence[int]], y: Sequence[Sequence[int]]) -> Fraction:
    """Product over rows of the minor of y on rows 1..k and the row's columns (1-based)."""
    val = Fraction(1)
    for r in t:
        k = len(r)
        val *= _det([[y[i][c - 1] for c in r] for i in range(k)])
    return val


def evaluate_sum(s: FormalSum, evaluator) -> Fraction:
    return sum((c * evaluator(k) for k, c in s.terms.items()), Fraction(0))


# -- bitableaux ------------------------------------------------------------

class Bitableau(tuple):
    """Pair (rows, cols) of tableaux of equal shape; row a is the minor X[rows_a, cols_a]."""

    def __new__(cls, rows: Sequence[Sequence[int]], cols: Sequence[Sequence[int]]):
        r = tuple(tuple(int(x) for x in row) for row in rows)
        c = tuple(tuple(int(x) for x in row) for row in cols)
        if shape_of(r) != shape_of(c):
            raise TableauError("the two tableaux of a bitableau must have the same shape")
        return super().__new__(cls, (r, c))

    @property
    def rows(self) -> Tableau:
        return self[0]

    @property
    def cols(self) -> Tableau:
        return self[1]

    @property
    def shape(self) -> Tuple[int, ...]:
        return shape_of(self[0])

    def is_standard(self) -> bool:
        return is_standard(self.rows) and is_standard(self.cols)

    def __repr__(self):
        fmt = lambda t: "/".join("".join(map(str, r)) if max(r, default=0) < 10
                                 else ",".join(map(str, r)) for r in t)
        return f"({fmt(self.rows)}|{fmt(self.cols)})"


def evaluate_bitableau(b: Bitableau, x: Sequence[Sequence[int]]) -> Fraction:
    """Product of the minors X[rows_a, cols_a] (1-based indices, written order)."""
    val = Fraction(1)
    for r, c in zip(b.rows, b.cols):
        val *= _det([[x[i - 1][j - 1] for j in c] for i in r])
    return val


def bitableau_polynomial(b: Bitableau, xmat) -> Polynomial:
    """The product of minors as a polynomial; xmat is a PolyMatrix."""
    from .polymatrix import minor
    val = xmat.ring.one()
    for r, c in zip(b.rows, b.cols):
        val = val * minor(xmat, [i - 1 for i in r], [j - 1 for j in c])
    return val


def canonical_bitableau(rows: Sequence[Sequence[int]], cols: Sequence[Sequence[int]]) -> Tuple[int, Optional[Bitableau]]:
    """Sort entries within every row and order the row pairs by decreasing length.

    Returns the sign picked up and the canonical bitableau (None when zero).
    """
    sign = 1
    pairs = []
    for r, c in zip(rows, cols):
        if len(r) != len(c):
            raise TableauError("row pair of unequal lengths")
        if not r:
            continue
        s1, rr = _sort_sign(r)
        s2, cc = _sort_sign(c)
        if s1 == 0 or s2 == 0:
            return 0, None
        sign *= s1 * s2
        pairs.append((rr, cc))
    pairs.sort(key=lambda p: (-len(p[0]), p[0], p[1]))
    return sign, Bitableau([p[0] for p in pairs], [p[1] for p in pairs])


# -- Pluecker embedding of bitableaux ---------------------------------------

def _to_pluecker(b: Bitableau, nrows: int, ncols: int) -> Tuple[int, Tuple[Row, ...]]:
    """Map a bitableau of minors of an nrows x ncols matrix to maximal minors of (X | J).

    Column ncols + c of (X | J) is the unit vector on matrix row nrows + 1 - c.
    """
    sign = 1
    out = []
    for r, c in zip(b.rows, b.cols):
        missing = [i for i in range(1, nrows + 1) if i not in r]
        units = sorted(nrows + 1 - i for i in missing)
        rows_hit = [nrows + 1 - u for u in units]
        sign *= _sort_sign(list(r) + rows_hit)[0]
        out.append(tuple(c) + tuple(ncols + u for u in units))
    return sign, tuple(sorted(out))


def _from_pluecker(rows: Sequence[Row], nrows: int, ncols: int) -> Tuple[int, Bitableau]:
    sign = 1
    left, right = [], []
    for row in rows:
        c = tuple(x for x in row if x <= ncols)
        units = [x - ncols for x in row if x > ncols]
        rows_hit = [nrows + 1 - u for u in units]
        r = tuple(i for i in range(1, nrows + 1) if i not in rows_hit)
        if not c:
            # full identity block: the determinant is the sign alone
            sign *= _sort_sign(rows_hit)[0]
            continue
        sign *= _sort_sign(list(r) + rows_hit)[0]
        left.append(r)
        right.append(c)
    return sign, Bitableau(left, right)


def straighten_pluecker(x: FormalSum) -> FormalSum:
    """Rewrite a combination of rectangular tableaux (rows of equal length) in standard ones.

    Rows commute (products of maximal minors), so tableaux are kept with rows in
    lexicographic order; each rewrite replaces a tableau by lexicographically
    smaller ones, so the loop terminates.
    """
    work: Dict[Tableau, int] = {}
    for t, c in x.terms.items():
        s, norm = normalize_rows(t)
        if s:
            norm = tuple(sorted(norm))
            work[norm] = work.get(norm, 0) + s * c
    work = {k: v for k, v in work.items() if v}
    done = FormalSum()
    while work:
        t = max(work)
        c = work.pop(t)
        viol = first_violation(t)
        if viol is None:
            done.add(t, c)
            continue
        a, j = viol
        n = len(t[a])
        rel = shuffle_relation(t, a + 1, j, n - j - 1)
        # rel = sum of signed tableaux equal to zero; t itself appears with +1
        for other, s in rel.terms.items():
            key = tuple(sorted(other))
            if key == t:
                continue
            v = work.get(key, 0) - c * s
            if v:
                work[key] = v
            else:
                work.pop(key, None)
    return done


def straighten(x: FormalSum, nrows: Optional[int] = None, ncols: Optional[int] = None) -> FormalSum:
    """Express a combination of bitableaux as a combination of standard bitableaux.

    The result does not depend on the matrix size as long as it contains every
    index; by default the smallest such size is used.
    """
    if nrows is None:
        nrows = max((max(r) for b in x.terms for r in b.rows if r), default=1)
    if ncols is None:
        ncols = max((max(c) for b in x.terms for c in b.cols if c), default=1)
    plu = FormalSum()
    for b, coeff in x.terms.items():
        s, canon = canonical_bitableau(b.rows, b.cols)
        if not s:
            continue
        s2, t = _to_pluecker(canon, nrows, ncols)
        plu.add(t, coeff * s * s2)
    out = FormalSum()
    for t, coeff in straighten_pluecker(plu).terms.items():
        s, b = _from_pluecker(t, nrows, ncols)
        out.add(b, coeff * s)
    return out


def bitableau_to_pluecker(b: Bitableau, nrows: int, ncols: int) -> Tuple[int, Tableau]:
    """Public form of the embedding: sign and rectangular tableau of (X | J) columns."""
    s, canon = canonical_bitableau(b.rows, b.cols)
    if not s:
        raise TableauError("bitableau with a repeated index is zero")
    s2, t = _to_pluecker(canon, nrows, ncols)
    return s * s2, t


def pluecker_to_bitableau(t: Sequence[Row], nrows: int, ncols: int) -> Tuple[int, Bitableau]:
    return _from_pluecker(t, nrows, ncols)


# -- Pluecker relations ------------------------------------------------------

def pluecker_variable_name(subset: Sequence[int]) -> str:
    if max(subset, default=0) < 10:
        return "x_" + "".join(map(str, subset))
    return "x_{" + ",".join(map(str, subset)) + "}"


def pluecker_ring(r: int, k: int, modulus: int = 0) -> Tuple[RingCtx, List[Row]]:
    subsets = list(combinations(range(1, k + 1), r))
    return RingCtx([pluecker_variable_name(s) for s in subsets], modulus), subsets


def pluecker_relations(r: int, k: int, modulus: int = 0) -> Tuple[RingCtx, List[Polynomial]]:
    """Quadrics generating the Pluecker ideal of the Grassmannian of r-planes in k-space.

    One straightening relation per non-standard pair of coordinates.
    """
    if not 0 < r <= k:
        raise TableauError("need 0 < r <= k")
    ring, subsets = pluecker_ring(r, k, modulus)
    index = {s: i for i, s in enumerate(subsets)}
    rels = []
    for i, first in enumerate(subsets):
        for second in subsets[i + 1:]:
            t = (first, second)
            viol = first_violation(t)
            if viol is None:
                continue
            _, j = viol
            rel = shuffle_relation(t, 1, j, r - j - 1)
            poly = ring.zero()
            for (p, q), c in rel.terms.items():
                e = [0] * ring.nvars
                e[index[p]] += 1
                e[index[q]] += 1
                poly = poly + ring.monomial(e, c)
            if poly:
                rels.append(poly)
    return ring, rels


# -- counting -----------------------------------------------------------

def standard_tableaux(shape: Sequence[int], n: int) -> Iterator[Tableau]:
    """All standard tableaux of the given shape with entries in [1, n]."""
    shape = check_partition(shape) if shape else ()
    rows: List[Row] = []

    def rec(a: int):
        if a == len(shape):
            yield tuple(rows)
            return
        upper = rows[a - 1] if a else None
        for cand in combinations(range(1, n + 1), shape[a]):
            if upper is not None and any(x > y for x, y in zip(upper, cand)):
                continue
            rows.append(cand)
            yield from rec(a + 1)
            rows.pop()

    yield from rec(0)


def schur_dimension(shape: Sequence[int], n: int) -> int:
    """Number of standard tableaux of the shape with entries in [1, n].

    Uses the hook-content formula for the conjugate shape: the product over
    boxes (i, j) of (n - j + i) / hook(i, j).
    """
    shape = check_partition(shape) if shape else ()
    conj = [sum(1 for x in shape if x > j) for j in range(shape[0] if shape else 0)]
    val = Fraction(1)
    for i, length in enumerate(shape):
        for j in range(length):
            hook = (length - j) + (conj[j] - i) - 1
            val *= Fraction(n - j + i, hook)
    return int(val)


def partitions(n: int, max_part: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def cauchy_check(a: int, b: int, n: int) -> bool:
    """sum over |lambda| = n of dim(lambda, a) dim(lambda, b) equals C(ab + n - 1, n)."""
    total = sum(schur_dimension(lam, a) * schur_dimension(lam, b) for lam in partitions(n))
    return total == comb(a * b + n - 1, n)


def standard_bitableaux(nrows: int, ncols: int, degree: int, max_width: Optional[int] = None) -> Iterator[Bitableau]:
    """Standard bitableaux with `degree` boxes and rows of length at most max_width."""
    width = min(nrows, ncols) if max_width is None else max_width
    for lam in partitions(degree, width):
        lefts = list(standard_tableaux(lam, nrows))
        rights = list(standard_tableaux(lam, ncols))
        for left in lefts:
            for right in rights:
                yield Bitableau(left, right)


def random_bitableau(rng: random.Random, nrows: int, ncols: int, max_boxes: int = 6) -> Bitableau:
    """A random bitableau within the given matrix bounds (rows sorted, shape valid)."""
    while True:
        total = rng.randint(2, max_boxes)
        lam = []
        left = total
        while left:
            part = rng.randint(1, min(left, nrows, ncols, lam[-1] if lam else left))
            lam.append(part)
            left -= part
        rows = [tuple(sorted(rng.sample(range(1, nrows + 1), k))) for k in lam]
        cols = [tuple(sorted(rng.sample(range(1, ncols + 1), k))) for k in lam]
        return Bitableau(rows, cols)
