"""Finite free complexes: rank conditions, Buchsbaum-Eisenbud multipliers,
Pluecker-type identities among multipliers, and generic complex rings.

Complexes are 0 -> F_n -> ... -> F_1 -> F_0 with d_k : F_k -> F_{k-1} stored as
a b_{k-1} x b_k matrix.  Index sets are 1-based sorted tuples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .polymatrix import PolyMatrix, ShapeError, generic_matrix, matmul, minor
from .polyring import Polynomial, RingCtx, RingError
from .tableaux import concat_sign

Subset = Tuple[int, ...]


class NegativeRankError(ValueError):
    """Raised when a Betti vector has a negative alternating tail sum."""

    def __init__(self, k: int, value: int):
        super().__init__(f"rank condition r_{k} = {value} is negative")
        self.k = k
        self.value = value


class MultiplierError(ArithmeticError):
    """Raised when multipliers cannot be extracted by exact division."""


def rank_conditions(betti: Sequence[int]) -> List[int]:
    """r_k = sum_{j >= k} (-1)^(j-k) b_j for k = 0..n; every r_k must be >= 0."""
    betti = [int(b) for b in betti]
    if any(b < 0 for b in betti):
        raise ValueError("Betti numbers must be nonnegative")
    n = len(betti) - 1
    r = [0] * (n + 1)
    acc = 0
    for k in range(n, -1, -1):
        acc = betti[k] - acc
        r[k] = acc
    for k, v in enumerate(r):
        if v < 0:
            raise NegativeRankError(k, v)
    return r


def _subsets(n: int, k: int) -> List[Subset]:
    return [tuple(x + 1 for x in s) for s in combinations(range(n), k)]


def _complement(s: Sequence[int], n: int) -> Subset:
    chosen = set(s)
    return tuple(i for i in range(1, n + 1) if i not in chosen)


class FreeComplex:
    """Differentials d_1..d_n with d_k of shape b_{k-1} x b_k."""

    def __init__(self, differentials: Sequence[PolyMatrix]):
        if not differentials:
            raise ShapeError("a complex needs at least one differential")
        self.d = list(differentials)
        self.ring = self.d[0].ring
        for k in range(len(self.d) - 1):
            if self.d[k].ncols != self.d[k + 1].nrows:
                raise ShapeError(f"d_{k + 1} and d_{k + 2} do not compose")
        self.betti = [self.d[0].nrows] + [m.ncols for m in self.d]

    @property
    def length(self) -> int:
        return len(self.d)

    def differential(self, k: int) -> PolyMatrix:
        return self.d[k - 1]

    def is_complex(self) -> bool:
        return all(matmul(self.d[k], self.d[k + 1]).is_zero() for k in range(self.length - 1))

    def expected_ranks(self) -> List[int]:
        """Ranks r_1..r_n forced by the Betti numbers of an exact complex."""
        return rank_conditions(self.betti)[1:]

    def minor(self, k: int, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
        """<rows|cols>_k: minor of d_k with 1-based row and column sets."""
        return minor(self.d[k - 1], [i - 1 for i in rows], [j - 1 for j in cols])

    def to_json(self) -> dict:
        return {"betti": self.betti, "matrices": [m.to_json() for m in self.d]}

    @classmethod
    def from_json(cls, ring: RingCtx, data: dict) -> "FreeComplex":
        c = cls([PolyMatrix.from_json(ring, m) for m in data["matrices"]])
        if "betti" in data and list(data["betti"]) != c.betti:
            raise ShapeError("betti field does not match the matrices")
        return c


@dataclass
class MultiplierTable:
    """Multipliers <A>_k for k = 1..n+1 (level n+1 holds the empty set with value 1)."""

    ranks: List[int]
    values: Dict[int, Dict[Subset, Polynomial]] = field(default_factory=dict)

    def __getitem__(self, key: Tuple[int, Sequence[int]]) -> Polynomial:
        k, a = key
        return self.values[k][tuple(a)]


def be_multipliers(c: FreeComplex, ranks: Optional[Sequence[int]] = None) -> MultiplierTable:
    """Buchsbaum-Eisenbud multipliers, computed from the last level upwards.

    The defining relation is <A|E>_k = sgn(E^c, E) <A>_k <E^c>_{k+1} for
    |A| = |E| = r_k.  At the last level <A>_n is the maximal minor on rows A.
    Higher levels are obtained by exact division and then checked on every E.
    """
    n = c.length
    ranks = list(ranks) if ranks is not None else c.expected_ranks()
    if len(ranks) != n:
        raise ShapeError("need one rank per differential")
    betti = c.betti
    for k in range(1, n + 1):
        if ranks[k - 1] + (ranks[k] if k < n else 0) != betti[k]:
            raise MultiplierError(f"ranks do not split b_{k} = r_{k} + r_{k + 1}")
    ring = c.ring
    table = MultiplierTable(ranks)
    table.values[n + 1] = {(): ring.one()}
    for k in range(n, 0, -1):
        rk = ranks[k - 1]
        bk, bprev = betti[k], betti[k - 1]
        level: Dict[Subset, Polynomial] = {}
        if rk == 0:
            table.values[k] = {(): ring.one()}
            continue
        nxt = table.values[k + 1]
        # pick a column set whose complementary multiplier is nonzero
        pivot = None
        for e in _subsets(bk, rk):
            ec = _complement(e, bk)
            if not nxt[ec].is_zero():
                pivot = (e, ec)
                break
        if pivot is None:
            raise MultiplierError(f"all multipliers at level {k + 1} vanish")
        e, ec = pivot
        denom = nxt[ec].scale(concat_sign(ec, e))
        for a in _subsets(bprev, rk):
            num = c.minor(k, a, e)
            try:
                level[a] = num.divide_exact(denom)
            except RingError:
                raise MultiplierError(f"minor <{a}|{e}>_{k} is not divisible by the next multiplier") from None
        table.values[k] = level
    return table


def be_diagram_check(c: FreeComplex, table: MultiplierTable) -> bool:
    """Every defining relation <A|E>_k = sgn(E^c,E) <A>_k <E^c>_{k+1} holds exactly."""
    n = c.length
    for k in range(1, n + 1):
        rk = table.ranks[k - 1]
        if rk == 0:
            continue
        bk = c.betti[k]
        for a in _subsets(c.betti[k - 1], rk):
            for e in _subsets(bk, rk):
                ec = _complement(e, bk)
                lhs = c.minor(k, a, e)
                rhs = table[k, a] * table[k + 1, ec]
                if concat_sign(ec, e) < 0:
                    rhs = -rhs
                if lhs != rhs:
                    return False
    return True


# -- identities among multipliers -------------------------------------------

def _check_subset(s: Sequence[int], n: int, name: str) -> Subset:
    s = tuple(s)
    if list(s) != sorted(set(s)) or any(not 1 <= x <= n for x in s):
        raise ValueError(f"index set {name} must be a sorted subset of [1, {n}]")
    return s


def multiplier_identity(variant: int, c: FreeComplex, table: MultiplierTable, k: int,
                      lambda_in_gamma: bool = False, **sets) -> Polynomial:
    """Evaluate one of the three quadratic identities at level k; the result should be 0.

    variant 1: sets A, C, D in [1, b_{k-1}]
        sum over (C n A) <= G <= C - D, |G| = q of
        sgn(A, C-G) sgn(C-G, G) sgn(G, D) <A u (C-G)>_k <G u D>_k
    variant 2: sets A, C, E in [1, b_{k-1}] and F in [1, b_k]; same shape with the
        second factor the minor <G u E | F>_k of d_k.
    variant 3: G in [1, b_{k-1}], H, K, L in [1, b_k] and an integer t:
        sum over Gam <= [1, b_k] - (L u H u K), |Gam| = t of
        sgn(H, Gam) sgn(Gam, K) <G | H u Gam>_k <Gam u K>_{k+1}.
        With lambda_in_gamma=True the sum runs over L <= Gam <= [1, b_k] - (H u K)
        instead; that sum vanishes as well.
    """
    n = c.length
    if not 1 <= k <= n:
        raise ValueError("level out of range")
    rk = table.ranks[k - 1]
    rnext = table.ranks[k] if k < n else 0
    bprev, bk = c.betti[k - 1], c.betti[k]
    ring = c.ring
    total = ring.zero()

    if variant in (1, 2):
        a = _check_subset(sets["A"], bprev, "A")
        cc = _check_subset(sets["C"], bprev, "C")
        p = rk - len(a)
        if variant == 1:
            d = _check_subset(sets["D"], bprev, "D")
            q = rk - len(d)
            other = d
        else:
            e = _check_subset(sets["E"], bprev, "E")
            f = _check_subset(sets["F"], bk, "F")
            s = len(f)
            if s > rk:
                raise ValueError("|F| must not exceed r_k")
            q = s - len(e)
            other = e
        if p < 0 or q < 0 or len(cc) != p + q or p + q < rk + 1:
            raise ValueError("index sets violate the cardinality constraints")
        forced = set(cc) & set(a)
        allowed = [x for x in cc if x not in set(other)]
        for gam in combinations(allowed, q):
            if not forced <= set(gam):
                continue
            rest = tuple(x for x in cc if x not in gam)
            sign = concat_sign(a, rest) * concat_sign(rest, gam) * concat_sign(gam, other)
            if sign == 0:
                continue
            first = table[k, tuple(sorted(a + rest))]
            if variant == 1:
                second = table[k, tuple(sorted(gam + other))]
            else:
                second = c.minor(k, sorted(gam + other), f)
            term = first * second
            total = total + term if sign > 0 else total - term
        return total

    if variant == 3:
        g = _check_subset(sets["G"], bprev, "G")
        h = _check_subset(sets["H"], bk, "H")
        kk = _check_subset(sets["K"], bk, "K")
        lam = _check_subset(sets.get("L", ()), bk, "L")
        t = int(sets["t"])
        m = len(g)
        if not (m <= rk and len(h) == m - t and len(kk) == rnext - t
                and len(lam) < t <= min(m, rnext)):
            raise ValueError("index sets violate the cardinality constraints")
        blocked = set(h) | set(kk)
        if not lambda_in_gamma:
            pool = [x for x in range(1, bk + 1) if x not in blocked | set(lam)]
            choices = (gam for gam in combinations(pool, t))
        else:
            if blocked & set(lam):
                return total
            pool = [x for x in range(1, bk + 1) if x not in blocked | set(lam)]
            choices = (tuple(sorted(lam + rest)) for rest in combinations(pool, t - len(lam)))
        for gam in choices:
            sign = concat_sign(h, gam) * concat_sign(gam, kk)
            if sign == 0:
                continue
            term = c.minor(k, g, sorted(h + gam)) * table[k + 1, tuple(sorted(gam + kk))]
            total = total + term if sign > 0 else total - term
        return total

    raise ValueError("variant must be 1, 2 or 3")


def admissible_index_sets(variant: int, c: FreeComplex, table: MultiplierTable, k: int,
                          rng: random.Random, count: int) -> Iterator[dict]:
    """Random admissible index-set choices for the given variant and level (may yield fewer)."""
    n = c.length
    rk = table.ranks[k - 1]
    rnext = table.ranks[k] if k < n else 0
    bprev, bk = c.betti[k - 1], c.betti[k]

    def pick(pool_size: int, size: int) -> Subset:
        return tuple(sorted(rng.sample(range(1, pool_size + 1), size)))

    def between(lo: int, hi: int) -> Optional[int]:
        return rng.randint(lo, hi) if lo <= hi else None

    made = 0
    for _ in range(count * 20):
        if made >= count:
            return
        if variant in (1, 2):
            size_c = between(rk + 1, bprev)
            if size_c is None:
                return
            if variant == 1:
                p = between(max(0, size_c - rk), min(rk, size_c))
                if p is None:
                    continue
                q = size_c - p
                yield {"A": pick(bprev, rk - p), "C": pick(bprev, size_c), "D": pick(bprev, rk - q)}
            else:
                s = between(0, min(rk, bk))
                if s is None:
                    continue
                p = between(max(0, size_c - s), min(rk, size_c))
                if p is None:
                    continue
                q = size_c - p
                if s - q > bprev:
                    continue
                yield {"A": pick(bprev, rk - p), "C": pick(bprev, size_c),
                       "E": pick(bprev, s - q), "F": pick(bk, s)}
            made += 1
        else:
            m = between(1, min(rk, bprev))
            if m is None or rnext < 1:
                return
            t = rng.randint(1, min(m, rnext))
            lam_size = rng.randint(0, t - 1)
            if (m - t) + (rnext - t) + lam_size > bk:
                continue
            pool = rng.sample(range(1, bk + 1), (m - t) + (rnext - t) + lam_size)
            h = tuple(sorted(pool[:m - t]))
            kk = tuple(sorted(pool[m - t:m - t + rnext - t]))
            lam = tuple(sorted(pool[m - t + rnext - t:]))
            yield {"G": pick(bprev, m), "H": h, "K": kk, "L": lam, "t": t}
            made += 1


# -- random complexes ------------------------------------------------------

def _elementary_pair(ring: RingCtx, n: int, rng: random.Random, steps: int, poly: bool):
    """A product of elementary matrices and its inverse."""
    q = PolyMatrix.identity(ring, n)
    qinv = PolyMatrix.identity(ring, n)
    if n < 2:
        return q, qinv
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = ring.const(rng.choice([-3, -2, -1, 1, 2, 3]))
        if poly and ring.nvars and rng.random() < 0.4:
            c = c * ring.var(rng.randrange(ring.nvars))
        e = PolyMatrix.identity(ring, n)
        e.entries[i][j] = c
        einv = PolyMatrix.identity(ring, n)
        einv.entries[i][j] = -c
        q = matmul(q, e)
        qinv = matmul(einv, qinv)
    return q, qinv


def random_rank_conforming_complex(ring: RingCtx, betti: Sequence[int], rng: random.Random,
                                   poly: bool = False, steps: int = 3) -> FreeComplex:
    """Complex with the given Betti numbers whose d_k has rank r_k.

    A block-standard complex with integer multipliers is conjugated by products
    of elementary matrices with entries in [-3, 3] (times a variable when poly).
    """
    r = rank_conditions(betti)
    n = len(betti) - 1
    mult = []
    for _ in range(n + 2):
        a = ring.const(rng.choice([-3, -2, -1, 1, 2, 3]))
        if poly and ring.nvars and rng.random() < 0.5:
            a = a * ring.var(rng.randrange(ring.nvars)) + ring.const(rng.randint(-2, 2))
        mult.append(a)
    mult[n + 1] = ring.one()
    pairs = [_elementary_pair(ring, b, rng, steps, poly) for b in betti]
    ds = []
    for k in range(1, n + 1):
        rk = r[k]
        d0 = PolyMatrix.zeros(ring, betti[k - 1], betti[k])
        offset = r[k - 1]
        for i in range(rk):
            d0.entries[offset + i][i] = mult[k] * mult[k + 1] if i == 0 else ring.one()
        d = matmul(matmul(pairs[k - 1][0], d0), pairs[k][1])
        ds.append(d)
    return FreeComplex(ds)


# -- generic complexes and exactification ----------------------------------

@dataclass
class GenericComplex:
    """Ring of a generic complex: D_k generic b_{k-1} x b_k, consecutive variables."""

    betti: List[int]
    ring: RingCtx
    matrices: List[PolyMatrix]

    def products(self) -> List[PolyMatrix]:
        """The blocks D_k * D_{k+1} whose entries generate the defining ideal."""
        return [matmul(self.matrices[k], self.matrices[k + 1]) for k in range(len(self.matrices) - 1)]

    def ideal(self) -> List[Polynomial]:
        return [x for m in self.products() for x in m.flatten()]

    def variable_blocks(self) -> List[Tuple[int, int]]:
        """Half-open variable ranges used by each D_k."""
        out, start = [], 0
        for k in range(1, len(self.betti)):
            size = self.betti[k - 1] * self.betti[k]
            out.append((start, start + size))
            start += size
        return out


def generic_complex_ring(betti: Sequence[int], prefix: str = "y", modulus: int = 0) -> GenericComplex:
    betti = [int(b) for b in betti]
    if len(betti) < 2 or any(b <= 0 for b in betti):
        raise ShapeError("need at least two positive Betti numbers")
    total = sum(betti[k - 1] * betti[k] for k in range(1, len(betti)))
    ring = RingCtx.from_blocks([(prefix, total)], modulus)
    mats, start = [], 0
    for k in range(1, len(betti)):
        mats.append(generic_matrix(ring, start, betti[k - 1], betti[k]))
        start += betti[k - 1] * betti[k]
    return GenericComplex(betti, ring, mats)


@dataclass
class ExactificationStep:
    ring: RingCtx
    new_variables: List[str]
    generators: List[Polynomial]


def exactification_step(gc: GenericComplex, cycles: Sequence[Tuple[int, Sequence[Polynomial]]],
                        prefix: str = "z") -> ExactificationStep:
    """Adjoin variables lifting each cycle to a boundary.

    A cycle (k, y) with y in F_k, k < n, gets new variables Z^{k,l}, l = 1..b_{k+1},
    and generators y_p - sum_l Z^{k,l} D_{k+1}[p, l] for p = 1..b_k.  A cycle in the
    top module F_n contributes its coordinates as generators.
    """
    n = len(gc.betti) - 1
    names = list(gc.ring.names)
    new_names: List[str] = []
    plan = []
    for u, (k, y) in enumerate(cycles, start=1):
        if not 1 <= k <= n or len(y) != gc.betti[k]:
            raise ShapeError(f"cycle {u} does not live in F_{k}")
        if k < n:
            block = [f"{prefix}_{k}_{u}_{l}" for l in range(1, gc.betti[k + 1] + 1)]
            new_names.extend(block)
            plan.append((k, y, block))
        else:
            plan.append((k, y, None))
    ring = RingCtx(names + new_names, gc.ring.modulus, gc.ring.order)
    gens: List[Polynomial] = []
    for k, y, block in plan:
        ys = [v.change_ring(ring) for v in y]
        if block is None:
            gens.extend(v for v in ys if v)
            continue
        d_next = gc.matrices[k]
        zs = [ring.var(name) for name in block]
        for p in range(gc.betti[k]):
            g = ys[p]
            for l, z in enumerate(zs):
                g = g - z * d_next.entries[p][l].change_ring(ring)
            gens.append(g)
    return ExactificationStep(ring, new_names, gens)
