"""Acceptance criteria, one test per criterion.

Each criterion prints a single PASS/FAIL line with its runtime; the lines are
repeated in the pytest terminal summary.  Run `python tests/test_acceptance.py`
to get the same report without pytest.
"""

import itertools
import math
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from homology_oracle import oracle_rank, random_bifiltration  # noqa: E402
from persalg import catalog  # noqa: E402
from persalg.complexes import (NegativeRankError, admissible_index_sets, be_diagram_check,  # noqa: E402
                               be_multipliers, random_rank_conforming_complex, rank_conditions,
                               multiplier_identity)
from persalg.determinantal import Presentation, base_change_check, fitting_ideal, fitting_invariance_check  # noqa: E402
from persalg.persistence import grade_le, grid_points, integral_homology, rank_invariant_table  # noqa: E402
from persalg.polymatrix import minor  # noqa: E402
from persalg.polyring import RingCtx, ideal_equal  # noqa: E402
from persalg.selftest import GOLDEN_PRODUCERS, _golden_case, golden_dir  # noqa: E402
from persalg.tableaux import (FormalSum, evaluate_bitableau, partitions, random_bitableau,  # noqa: E402
                              schur_dimension, straighten)
from persalg.varieties import (RankedFormat, admissible_rank_sequences, count_standard,  # noqa: E402
                               hilbert_function_oracle, is_standard_monomial, is_standard_multi, symbol)

REPORT = []


def _record(label, fn):
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure of the criterion
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    line = f"{label}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f} s) {detail}".rstrip()
    REPORT.append(line)
    print(line)
    return ok, line


# 1 -------------------------------------------------------------------------------

def golden_reproduction():
    slow, failed = [], []
    for name in GOLDEN_PRODUCERS:
        res = _golden_case(name, golden_dir())
        if not res.passed:
            failed.append(f"{name}: {res.detail}")
        if res.seconds >= 1.0:
            slow.append(f"{name} took {res.seconds:.2f} s")
    return not failed and not slow, "; ".join([f"{len(GOLDEN_PRODUCERS)} golden files"] + failed + slow)


# 2 -------------------------------------------------------------------------------

def multiplier_example():
    c = catalog.two_generator_complex()
    table = be_multipliers(c)
    x = c.ring.var(0)
    a = table[1, (1, 2)]
    d1 = c.differential(1)
    ok = a == x ** 2 and be_diagram_check(c, table)
    # maximal minors of d_1 on column sets, computed directly, against a * <complement>_2
    for cols, other in (((1, 2), 3), ((1, 3), 2), ((2, 3), 1)):
        lhs = minor(d1, [0, 1], [i - 1 for i in cols])
        rhs = a * table[2, (other,)]
        ok = ok and (lhs == rhs or lhs == -rhs)
    return ok, f"a = {a.format('m2')}"


# 3 -------------------------------------------------------------------------------

RANDOM_FORMATS = [(2, 3, 1), (1, 3, 2), (2, 4, 3, 1), (1, 4, 4, 1), (3, 5, 3, 1), (1, 3, 3, 1)]


def _identities_vanish(c, rng, count):
    table = be_multipliers(c)
    per_variant = {1: 0, 2: 0, 3: 0}
    for k in range(1, c.length + 1):
        for variant in (1, 2, 3):
            for sets in admissible_index_sets(variant, c, table, k, rng, count):
                if not multiplier_identity(variant, c, table, k, **sets).is_zero():
                    raise AssertionError(f"variant {variant} at level {k} with {sets} is nonzero")
                per_variant[variant] += 1
    return per_variant


def multiplier_identities():
    rng = random.Random(2024)
    totals = {1: 0, 2: 0, 3: 0}
    complexes = [catalog.two_generator_complex(), catalog.hilbert_burch_complex()]
    ring = RingCtx(["x", "y"])
    for idx in range(25):
        complexes.append(random_rank_conforming_complex(ring, RANDOM_FORMATS[idx % len(RANDOM_FORMATS)], rng))
    for idx in range(6):
        complexes.append(random_rank_conforming_complex(ring, RANDOM_FORMATS[idx], rng, poly=True))
    for c in complexes:
        assert c.is_complex()
        for v, n in _identities_vanish(c, rng, 6).items():
            totals[v] += n
    ok = all(n > 0 for n in totals.values())
    return ok, f"{len(complexes)} complexes; evaluations per variant {totals}"


# 4 -------------------------------------------------------------------------------

def standard_monomial_classification():
    fmt = RankedFormat((2, 5, 3), (2, 3))
    first = (symbol(1, "12", "14"), symbol(1, "2", "3"), symbol(2, "13", "23"))
    second = (symbol(1, "12", "14"), symbol(1, "2", "3"), symbol(2, "23", "23"))
    third = (symbol(1, "2", "3"), symbol(2, "23", "23"))
    got = [not is_standard_monomial(first, fmt, exclude_vmax=False),
           is_standard_monomial(second, fmt, exclude_vmax=False) and not is_standard_monomial(second, fmt),
           is_standard_monomial(third, fmt)]
    fmts = [RankedFormat((2, 4, 5, 3), (2, 2, 3))] * 2 + [RankedFormat((2, 4, 5, 3), (1, 3, 2))]
    coloured = [[symbol(1, "3", "2"), symbol(1, "2", "2"), symbol(2, "3", "4"), symbol(3, "23", "24")],
                [symbol(2, "2", "2"), symbol(3, "12", "12")],
                [symbol(2, "23", "23"), symbol(3, "12", "23")]]
    got.append(not is_standard_multi(coloured, fmts, strict=False))
    return all(got), f"classifications {got}"


# 5 -------------------------------------------------------------------------------

def basis_count():
    formats = mismatches = literal_mismatches = 0
    for levels in (1, 2):
        for dims in itertools.product((1, 2), repeat=levels + 1):
            for ranks in admissible_rank_sequences(dims):
                fmt = RankedFormat(dims, ranks)
                formats += 1
                oracle = hilbert_function_oracle(fmt, range(4))
                counts = [count_standard(fmt, d, exclude_vmax=False) for d in range(4)]
                literal = [count_standard(fmt, d, exclude_vmax=True) for d in range(4)]
                mismatches += counts != oracle
                literal_mismatches += literal != oracle
    return mismatches == 0, (f"{formats} formats, degrees 0..3; counts without the maximal-symbol "
                             f"exclusion mismatch on {mismatches}, with it on {literal_mismatches}")


# 6 -------------------------------------------------------------------------------

def straightening_soundness():
    rng = random.Random(99)
    tested = 0
    while tested < 50:
        b = random_bitableau(rng, 3, 5)
        if b.is_standard():
            continue
        out = straighten(FormalSum({b: 1}), 3, 5)
        if not all(t.is_standard() for t, _ in out.items()):
            return False, f"nonstandard term in straightening of {b!r}"
        for _ in range(20):
            x = [[rng.randint(-5, 5) for _ in range(5)] for _ in range(3)]
            if evaluate_bitableau(b, x) != sum(c * evaluate_bitableau(t, x) for t, c in out.items()):
                return False, f"evaluation mismatch for {b!r}"
        if straighten(out, 3, 5) != out:
            return False, f"not idempotent on {b!r}"
        tested += 1
    return True, f"{tested} nonstandard bitableaux, 20 evaluations each"


# 7 -------------------------------------------------------------------------------

def cauchy_formula():
    bad = []
    for a, b, n in itertools.product(range(1, 4), range(1, 4), range(5)):
        lhs = sum(schur_dimension(lam, a) * schur_dimension(lam, b) for lam in partitions(n))
        if lhs != math.comb(a * b + n - 1, n):
            bad.append((a, b, n))
    return not bad, f"36 cases; failures {bad}" if bad else "36 cases"


# 8 -------------------------------------------------------------------------------

def fitting_suite():
    c = catalog.two_generator_complex()
    x, y = c.ring.gens()
    p = Presentation(c.differential(1))
    checks = [ideal_equal(fitting_ideal(p, 0), [x ** 3, x ** 2 * y], modulus=0),
              ideal_equal(fitting_ideal(p, 1), [x, y], modulus=0),
              ideal_equal(fitting_ideal(p, 2), [c.ring.one()], modulus=0),
              fitting_invariance_check(p, trials=20, seed=8)]
    rng = random.Random(8)
    for _ in range(10):
        images = [c.ring.const(rng.randint(-3, 3)) + rng.randint(-2, 2) * x + rng.randint(-2, 2) * y ** rng.randint(1, 2)
                  for _ in range(2)]
        checks.append(base_change_check(p, images))
    return all(checks), f"{sum(checks)}/{len(checks)} checks"


# 9 -------------------------------------------------------------------------------

def rank_invariant_suite():
    rng = random.Random(31)
    torsion_flags = compared = 0
    for _ in range(30):
        b = random_bifiltration(rng, max_vertices=8, grid=(4, 4), edge_prob=0.55)
        table = rank_invariant_table(b)
        for (i, u, v), value in table.items():
            if value != oracle_rank(b.grades, i, u, v):
                return False, f"oracle disagrees at {(i, u, v)}"
            if value > min(table[i, u, u], table[i, v, v]):
                return False, f"contraction fails at {(i, u, v)}"
            compared += 1
        pts = grid_points(b.grid)
        for (i, u, v), value in table.items():
            for w in pts:
                if grade_le(v, w) and table[i, u, w] > min(value, table[i, v, w]):
                    return False, f"composition bound fails at {(i, u, v, w)}"
        if table != rank_invariant_table(b, p=101):
            torsion = [t for i in range(b.max_dim + 1) for u in pts for t in integral_homology(b, i, u)[1]]
            if not any(t % 101 == 0 for t in torsion):
                return False, "Q and Z/101 disagree without 101-torsion"
            torsion_flags += 1
    return True, f"{compared} values compared with the oracle; {torsion_flags} torsion flags"


# 10 ------------------------------------------------------------------------------

def rank_condition_scan():
    scanned = 0
    for length in range(1, 6):
        for betti in itertools.product(range(5), repeat=length):
            scanned += 1
            sums = [sum((-1) ** (j - k) * betti[j] for j in range(k, length)) for k in range(length)]
            try:
                got = rank_conditions(betti)
                rejected = False
            except NegativeRankError:
                rejected = True
            if rejected != any(s < 0 for s in sums) or (not rejected and got != sums):
                return False, f"disagreement at {betti}"
    return True, f"{scanned} Betti vectors"


CRITERIA = [
    ("ACC1 golden session reproduction", golden_reproduction),
    ("ACC2 multiplier example", multiplier_example),
    ("ACC3 quadratic multiplier identities", multiplier_identities),
    ("ACC4 standard-monomial classification", standard_monomial_classification),
    ("ACC5 standard-monomial basis count", basis_count),
    ("ACC6 straightening soundness", straightening_soundness),
    ("ACC7 Cauchy formula", cauchy_formula),
    ("ACC8 Fitting ideals", fitting_suite),
    ("ACC9 rank invariants", rank_invariant_suite),
    ("ACC10 rank conditions", rank_condition_scan),
]
TIME_LIMITS = {"ACC5 standard-monomial basis count": 60.0, "ACC9 rank invariants": 120.0}


@pytest.mark.parametrize("label,fn", CRITERIA, ids=[label.split()[0] for label, _ in CRITERIA])
def test_criterion(label, fn):
    start = time.perf_counter()
    ok, line = _record(label, fn)
    assert ok, line
    limit = TIME_LIMITS.get(label)
    assert limit is None or time.perf_counter() - start < limit, f"{label} exceeded {limit} s"


if __name__ == "__main__":
    results = [_record(label, fn)[0] for label, fn in CRITERIA]
    sys.exit(0 if all(results) else 1)
