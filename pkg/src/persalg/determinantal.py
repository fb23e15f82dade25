"""Determinantal ideals, rank loci and Fitting ideals of presentations."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .polymatrix import PolyMatrix, generic_matrix, matmul, minors
from .polyring import Polynomial, RingCtx, hilbert_function, ideal_equal


@dataclass(frozen=True)
class RankLocus:
    """Matrices of size nrows x ncols and rank at most max_rank."""

    nrows: int
    ncols: int
    max_rank: int

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0 or self.max_rank < 0:
            raise ValueError("sizes and rank must be nonnegative")

    def ring(self, modulus: int = 0) -> RingCtx:
        return RingCtx(self.nrows * self.ncols, modulus)

    def generic(self, modulus: int = 0) -> PolyMatrix:
        return generic_matrix(self.ring(modulus), 0, self.nrows, self.ncols)

    def ideal(self, modulus: int = 0) -> List[Polynomial]:
        """The (max_rank + 1)-minors of the generic matrix; empty when the bound is vacuous."""
        m = self.generic(modulus)
        if self.max_rank >= min(self.nrows, self.ncols):
            return []
        return minors(self.max_rank + 1, m)

    def hilbert_function(self, degrees: Sequence[int], modulus: int = 0) -> List[int]:
        return hilbert_function(self.ideal(modulus), degrees, ring=self.ring(modulus), modulus=modulus)


def determinantal_ideal(m: PolyMatrix, k: int) -> List[Polynomial]:
    """I_k(m): the k x k minors, with I_0 the unit ideal and I_k = 0 beyond the size."""
    return minors(k, m)


class Presentation:
    """A finite presentation F -> G -> M -> 0 given by a matrix with rank(G) rows."""

    def __init__(self, matrix: PolyMatrix):
        self.matrix = matrix

    @property
    def ring(self) -> RingCtx:
        return self.matrix.ring

    @property
    def num_generators(self) -> int:
        return self.matrix.nrows


def fitting_ideal(p: Presentation, j: int) -> List[Polynomial]:
    """Fitt_j(M) = I_{r-j}(phi) with r the number of generators."""
    if j < 0:
        raise ValueError("Fitting index must be nonnegative")
    k = p.num_generators - j
    if k <= 0:
        return [p.ring.one()]
    return determinantal_ideal(p.matrix, k)


def _random_unimodular(ring: RingCtx, n: int, rng: random.Random, steps: int = 3) -> PolyMatrix:
    """Product of elementary matrices with small polynomial multipliers."""
    m = PolyMatrix.identity(ring, n)
    if n < 2:
        return m
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        mult = ring.const(rng.choice([-2, -1, 1, 2]))
        if ring.nvars and rng.random() < 0.5:
            mult = mult * ring.var(rng.randrange(ring.nvars))
        e = PolyMatrix.identity(ring, n)
        e.entries[i][j] = mult
        m = matmul(m, e)
    return m


def alternative_presentations(p: Presentation, rng: random.Random) -> List[Presentation]:
    """Presentations of the same module built from p by standard moves."""
    ring = p.ring
    phi = p.matrix
    out = []
    # change of bases in source and target
    out.append(Presentation(matmul(matmul(_random_unimodular(ring, phi.nrows, rng), phi),
                                   _random_unimodular(ring, phi.ncols, rng))))
    # add a redundant generator killed by a relation: phi (+) (1)
    grown = PolyMatrix.zeros(ring, phi.nrows + 1, phi.ncols + 1)
    for i in range(phi.nrows):
        for j in range(phi.ncols):
            grown.entries[i][j] = phi.entries[i][j]
    grown.entries[phi.nrows][phi.ncols] = ring.one()
    out.append(Presentation(grown))
    # append a relation that is a combination of existing ones, and a zero relation
    combo = [ring.zero() for _ in range(phi.nrows)]
    for j in range(phi.ncols):
        c = ring.const(rng.randint(-2, 2))
        for i in range(phi.nrows):
            combo[i] = combo[i] + c * phi.entries[i][j]
    extra = PolyMatrix(ring, [phi.entries[i] + [combo[i], ring.zero()] for i in range(phi.nrows)],
                       phi.ncols + 2)
    out.append(Presentation(extra))
    return out


def fitting_invariance_check(p: Presentation, trials: int = 1, seed: Optional[int] = None,
                             rng: Optional[random.Random] = None) -> bool:
    """Fitting ideals agree (as ideals over Q) across randomly altered presentations."""
    rng = rng or random.Random(seed)
    top = p.num_generators + 2
    for _ in range(trials):
        for alt in alternative_presentations(p, rng):
            for j in range(top):
                if not ideal_equal(fitting_ideal(p, j) or [p.ring.zero()],
                                   fitting_ideal(alt, j) or [p.ring.zero()], modulus=0):
                    return False
    return True


def base_change_check(p: Presentation, images: Sequence[Polynomial]) -> bool:
    """Fitting ideals commute with the ring map x_i -> images[i], generator by generator."""
    phi2 = p.matrix.substitute(images)
    q = Presentation(phi2)
    for j in range(p.num_generators + 2):
        before = [f.substitute(images) for f in fitting_ideal(p, j)]
        after = fitting_ideal(q, j)
        if before != after:
            return False
    return True
