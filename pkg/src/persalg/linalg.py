"""Exact dense linear algebra over Q (Fractions) and Z/p, plus integer Smith forms."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

Matrix = List[List]


def _conv(x, p):
    if p:
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p
    return Fraction(x)


def rref(rows: Sequence[Sequence], p: int = 0) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns over Q (p = 0) or Z/p."""
    m = [[_conv(x, p) for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p) if p else 1 / m[r][c]
        m[r] = [(x * inv) % p if p else x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [((a - f * b) % p) if p else a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], p: int = 0) -> int:
    return len(rref(rows, p)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, p: int = 0) -> Matrix:
    """Basis of {v : A v = 0}; A is given by rows and has ncols columns."""
    if not rows:
        return [[_conv(int(i == j), p) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [_conv(0, p)] * ncols
        v[f] = _conv(1, p)
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % p if p else -row[f]
        basis.append(v)
    return basis


def transpose(rows: Sequence[Sequence], ncols: int) -> Matrix:
    return [[r[j] for r in rows] for j in range(ncols)]


def column_rank(cols: Sequence[Sequence], p: int = 0) -> int:
    """Rank of the span of the given vectors."""
    return rank(cols, p)


def smith_diagonal(rows: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero invariant factors of an integer matrix (Smith normal form diagonal)."""
    m = [list(map(int, r)) for r in rows]
    if not m or not m[0]:
        return []
    nr, nc = len(m), len(m[0])
    diag = []
    t = 0
    while t < min(nr, nc):
        entries = [(abs(m[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if m[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        while True:
            piv = m[t][t]
            changed = False
            for i in range(t + 1, nr):
                q = m[i][t] // piv
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                if m[i][t]:
                    m[t], m[i] = m[i], m[t]
                    changed = True
                    break
            if changed:
                continue
            for j in range(t + 1, nc):
                q = m[t][j] // piv
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                if m[t][j]:
                    for row in m:
                        row[t], row[j] = row[j], row[t]
                    changed = True
                    break
            if changed:
                continue
            # divisibility condition for the remaining block
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if m[i][j] % piv), None)
            if bad is None:
                break
            m[t] = [a + b for a, b in zip(m[t], m[bad[0]])]
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def solve(cols: Sequence[Sequence], target: Sequence, p: int = 0):
    """Coefficients c with sum c_j cols[j] = target, or None when target is not in the span."""
    n = len(cols)
    if n == 0:
        return [] if all(not _conv(x, p) for x in target) else None
    dim = len(target)
    aug = [[cols[j][i] for j in range(n)] + [target[i]] for i in range(dim)]
    red, pivots = rref(aug, p)
    if n in pivots:
        return None
    coeffs = [_conv(0, p)] * n
    for row, pc in zip(red, pivots):
        coeffs[pc] = row[n]
    return coeffs


def independent_extension(base: Sequence[Sequence], candidates: Sequence[Sequence], p: int = 0):
    """Indices of candidates that greedily extend the span of base."""
    chosen = []
    current = [list(v) for v in base]
    r = rank(current, p) if current else 0
    for idx, v in enumerate(candidates):
        trial = current + [list(v)]
        r2 = rank(trial, p)
        if r2 > r:
            current = trial
            r = r2
            chosen.append(idx)
    return chosen
