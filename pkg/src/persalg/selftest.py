"""Golden-file and property self-checks, shared by the CLI and the test suite."""

from __future__ import annotations

import random
import re
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, List, Optional

from . import catalog
from .complexes import be_diagram_check, be_multipliers, generic_complex_ring, rank_conditions
from .determinantal import Presentation, fitting_ideal, fitting_invariance_check
from .polymatrix import PolyMatrix, exterior_power, generic_matrix, matmul, minors
from .polyring import RingCtx, ideal_equal
from .tableaux import cauchy_check, evaluate_bitableau, random_bitableau, straighten, FormalSum
from .varieties import RankedFormat, count_standard, hilbert_function_oracle


def normalize_golden(text: str) -> str:
    """Strip output labels, degree labels, wrap separators and all whitespace."""
    lines = []
    for line in text.splitlines():
        line = re.sub(r"^\s*o\d+\s*=", "", line)
        line = re.sub(r"\{-?\d+\}", "", line)
        if re.fullmatch(r"\s*-+\s*", line):
            continue
        lines.append(line)
    return re.sub(r"\s+", "", "".join(lines))


def _ring_ab() -> RingCtx:
    return RingCtx.from_blocks([("x", 15), ("y", 10)])


def _matrix_a() -> PolyMatrix:
    return generic_matrix(_ring_ab(), 0, 3, 5)


def _matrix_b() -> PolyMatrix:
    return generic_matrix(_ring_ab(), 15, 5, 2)


def _row(polys) -> PolyMatrix:
    polys = list(polys)
    return PolyMatrix(polys[0].ring, [polys], len(polys))


def _block(index: int) -> PolyMatrix:
    return generic_complex_ring((1, 6, 8, 4, 1)).products()[index]


GOLDEN_PRODUCERS = {
    "generic_matrix_2x4": lambda: generic_matrix(RingCtx(8), 0, 2, 4),
    "minors2_generic_2x4": lambda: _row(minors(2, generic_matrix(RingCtx(8), 0, 2, 4))),
    "generic_matrix_A": _matrix_a,
    "generic_matrix_B": _matrix_b,
    "product_AB": lambda: matmul(_matrix_a(), _matrix_b()),
    "exterior3_A": lambda: exterior_power(3, _matrix_a()),
    "exterior2_A_transpose": lambda: exterior_power(2, _matrix_a().transpose()),
    "exterior2_B": lambda: exterior_power(2, _matrix_b()),
    "block_Y1Y2": lambda: _block(0),
    "block_Y3Y4": lambda: _block(2),
}


def golden_dir() -> Path:
    return Path(str(resources.files("persalg") / "data" / "golden"))


@dataclass
class CaseResult:
    name: str
    group: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


def _golden_case(name: str, directory: Path) -> CaseResult:
    start = time.perf_counter()
    path = directory / f"{name}.txt"
    if not path.exists():
        return CaseResult(name, "golden", False, f"missing golden file {path}")
    expected = normalize_golden(path.read_text())
    got = normalize_golden(GOLDEN_PRODUCERS[name]().format("m2"))
    elapsed = time.perf_counter() - start
    if got == expected:
        return CaseResult(name, "golden", True, seconds=elapsed)
    pos = next((i for i, (a, b) in enumerate(zip(got, expected)) if a != b), min(len(got), len(expected)))
    return CaseResult(name, "golden", False,
                      f"first difference at character {pos}: got {got[pos:pos + 30]!r}, "
                      f"expected {expected[pos:pos + 30]!r}", elapsed)


def _check(name: str, group: str, fn: Callable[[], bool]) -> CaseResult:
    start = time.perf_counter()
    try:
        ok = bool(fn())
        detail = ""
    except Exception as exc:  # reported per case
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CaseResult(name, group, ok, detail, time.perf_counter() - start)


def _multiplier_example() -> bool:
    c = catalog.two_generator_complex()
    table = be_multipliers(c)
    x = c.ring.var(0)
    return table[1, (1, 2)] == x ** 2 and be_diagram_check(c, table)


def _fitting_example() -> bool:
    c = catalog.two_generator_complex()
    p = Presentation(c.differential(1))
    x, y = c.ring.gens()
    return (ideal_equal(fitting_ideal(p, 0), [x ** 3, x ** 2 * y])
            and ideal_equal(fitting_ideal(p, 1), [x, y])
            and fitting_ideal(p, 2) == [c.ring.one()]
            and fitting_invariance_check(p, trials=2, seed=1))


def _straighten_sample() -> bool:
    rng = random.Random(7)
    for _ in range(5):
        b = random_bitableau(rng, 3, 5)
        out = straighten(FormalSum({b: 1}), 3, 5)
        for _ in range(3):
            x = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(3)]
            lhs = evaluate_bitableau(b, x)
            rhs = sum(c * evaluate_bitableau(t, x) for t, c in out.items())
            if lhs != rhs or not all(t.is_standard() for t, _ in out.items()):
                return False
    return True


def _standard_count_sample() -> bool:
    fmt = RankedFormat((2, 2, 1), (1, 1))
    return [count_standard(fmt, d, exclude_vmax=False) for d in range(3)] == \
        hilbert_function_oracle(fmt, range(3), modulus=32003)


def _homology_presentation() -> bool:
    from .persistence import (cokernel_dims, grid_points, homology_dim, presentation_of_homology,
                              synthetic_two_generator_bifiltration)
    b = synthetic_two_generator_bifiltration()
    f = presentation_of_homology(b, 1)
    dims = cokernel_dims(f, b.grid)
    return (sorted(f.source.basis_grades) == [(1, 3), (2, 2), (3, 1)]
            and all(dims[u] == homology_dim(b, 1, u) for u in grid_points(b.grid)))


PROPERTY_CASES = [
    ("rank_conditions_resolution", "complexes", lambda: rank_conditions([1, 6, 8, 4, 1]) == [0, 1, 5, 3, 1]),
    ("multiplier_two_generator", "complexes", _multiplier_example),
    ("fitting_two_generator", "determinantal", _fitting_example),
    ("straighten_random", "tableaux", _straighten_sample),
    ("cauchy_small", "tableaux", lambda: all(cauchy_check(a, b, n) for a in (1, 2) for b in (1, 2)
                                              for n in range(3))),
    ("standard_monomial_count", "varieties", _standard_count_sample),
    ("homology_presentation", "persistence", _homology_presentation),
]


def run_selftest(filter_text: Optional[str] = None, directory: Optional[Path] = None) -> List[CaseResult]:
    """Run the golden files and property cases whose name or group contains filter_text."""
    directory = Path(directory) if directory else golden_dir()
    wanted = lambda name, group: not filter_text or filter_text in name or filter_text in group
    results = []
    for name in GOLDEN_PRODUCERS:
        if wanted(name, "golden") or wanted(name, "polymatrix"):
            results.append(_golden_case(name, directory))
    for name, group, fn in PROPERTY_CASES:
        if wanted(name, group):
            results.append(_check(name, group, fn))
    return results
