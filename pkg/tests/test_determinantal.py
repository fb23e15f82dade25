"""Determinantal ideals, rank loci and Fitting ideals."""

import random

import pytest

from persalg import catalog
from persalg.determinantal import (Presentation, RankLocus, base_change_check, determinantal_ideal,
                                   fitting_ideal, fitting_invariance_check)
from persalg.polymatrix import PolyMatrix, matmul, minors, rank
from persalg.polyring import RingCtx, ideal_contains, ideal_equal
from persalg.tableaux import standard_bitableaux


def two_generator_presentation():
    return Presentation(catalog.two_generator_complex().differential(1))


def test_rank_locus_ideals():
    assert len(RankLocus(2, 4, 1).ideal()) == 6
    assert RankLocus(3, 3, 3).ideal() == []
    locus = RankLocus(2, 2, 0)
    assert sorted(locus.ideal(), key=str) == sorted(locus.ring().gens(), key=str)
    with pytest.raises(ValueError):
        RankLocus(2, -1, 0)


def test_fitting_ideals_of_two_generator_module():
    p = two_generator_presentation()
    x, y = p.ring.gens()
    fitt0 = fitting_ideal(p, 0)
    assert [f for f in fitt0 if not f.is_zero()] == [x ** 3, x ** 2 * y]
    assert ideal_equal(fitt0, [x ** 3, x ** 2 * y])
    assert ideal_equal(fitting_ideal(p, 1), [x, y])
    assert fitting_ideal(p, 2) == [p.ring.one()]
    assert fitting_ideal(p, 5) == [p.ring.one()]


def test_fitting_chain_is_increasing():
    p = two_generator_presentation()
    for j in range(3):
        small, big = fitting_ideal(p, j), fitting_ideal(p, j + 1)
        assert all(ideal_contains(big, f) for f in small if not f.is_zero())


def test_fitting_invariance_specific_moves():
    p = two_generator_presentation()
    ring = p.ring
    x = ring.var(0)
    phi = p.matrix
    swapped = PolyMatrix(ring, [[r[1], r[0], r[2]] for r in phi.entries], 3)
    added = PolyMatrix(ring, [[r[0], r[1] + x * r[0], r[2]] for r in phi.entries], 3)
    for other in (Presentation(swapped), Presentation(added)):
        for j in range(4):
            assert ideal_equal(fitting_ideal(p, j) or [ring.zero()], fitting_ideal(other, j) or [ring.zero()])


@pytest.mark.parametrize("seed", range(5))
def test_fitting_invariance_random(seed):
    assert fitting_invariance_check(two_generator_presentation(), trials=1, seed=seed)
    assert fitting_invariance_check(Presentation(catalog.diagonal_presentation()), trials=1, seed=seed)


def test_invariance_check_detects_a_different_module():
    """Sanity check on the oracle: a genuinely different module changes Fitt_0."""
    p = two_generator_presentation()
    x, y = p.ring.gens()
    other = Presentation(PolyMatrix(p.ring, [[x, p.ring.zero()], [p.ring.zero(), y]], 2))
    assert not ideal_equal(fitting_ideal(p, 0), fitting_ideal(other, 0))


def test_base_change_examples():
    p = two_generator_presentation()
    x, y = p.ring.gens()
    assert base_change_check(p, [x, p.ring.zero()])
    assert base_change_check(p, [x, y])
    t_ring = RingCtx(["t"])
    t = t_ring.var(0)
    assert base_change_check(p, [t ** 2, t ** 3])
    pushed = [f.substitute([x, p.ring.zero()]) for f in fitting_ideal(p, 1)]
    z = p.ring.zero()
    assert pushed == [x ** 2, z, z, z, x, z]


def test_determinantal_nesting():
    m = RankLocus(3, 3, 0).generic()
    for r in range(3):
        for smaller in range(r + 1):
            big = determinantal_ideal(m, smaller + 1)
            assert all(ideal_contains(big, f) for f in determinantal_ideal(m, r + 1))


def test_hilbert_function_characteristic_free():
    locus = RankLocus(2, 2, 1)
    over_q = locus.hilbert_function(range(5), modulus=0)
    over_p = locus.hilbert_function(range(5), modulus=101)
    by_tableaux = [sum(1 for _ in standard_bitableaux(2, 2, d, max_width=1)) for d in range(5)]
    assert over_q == over_p == by_tableaux == [1, 4, 9, 16, 25]


@pytest.mark.parametrize("seed", range(3))
def test_minors_ideal_is_invariant_under_base_change(seed):
    rng = random.Random(seed)
    locus = RankLocus(2, 3, 1)
    m = locus.generic()
    ring = m.ring
    g = PolyMatrix.from_ints(ring, [[1, rng.randint(-2, 2)], [0, 1]])
    assert ideal_equal(minors(2, m), minors(2, matmul(g, m)))


def test_indecomposable_representation_fixture():
    x, y = catalog.indecomposable_xy_representation()
    assert matmul(x, y).is_zero() and matmul(y, x).is_zero()
    assert rank(x) == 2 and rank(y) == 3
