"""Multigraded free modules, tops, bifiltrations of flag complexes and rank invariants.

Grades live in N^n.  A free summand R(-u) is generated in grade u, so a homogeneous
map R(-s) -> R(-t) is a scalar multiple of x^(s - t) and needs s >= t.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import independent_extension, nullspace, rank, smith_diagonal, solve
from .polymatrix import PolyMatrix
from .polyring import RingCtx

Grade = Tuple[int, ...]
Simplex = Tuple


class GridError(ValueError):
    """A grade falls outside the finite grid, or the grid is too small."""


class BifiltrationError(ValueError):
    """Simplices or grades violate the bifiltration invariants."""


def grade_le(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(u, v))


def grade_join(grades: Iterable[Sequence[int]]) -> Grade:
    grades = list(grades)
    return tuple(max(col) for col in zip(*grades))


def grid_points(grid: Sequence[int]) -> List[Grade]:
    """All grades in the box [0, G_1) x ... x [0, G_n), ordered by total degree then lexicographically."""
    pts = list(itertools.product(*(range(g) for g in grid)))
    return sorted(pts, key=lambda u: (sum(u), u))


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("PERSALG_THREADS", "1")))
    except ValueError:
        return 1


# -- graded free modules and maps ---------------------------------------------


@dataclass(frozen=True)
class GradedFreeModule:
    """Direct sum of R(-u)^m over the listed (grade, multiplicity) pairs."""

    summands: Tuple[Tuple[Grade, int], ...]
    ambient: int

    def __init__(self, summands: Iterable[Tuple[Sequence[int], int]] = (), ambient: Optional[int] = None):
        merged: Dict[Grade, int] = {}
        order: List[Grade] = []
        for grade, mult in summands:
            grade = tuple(int(x) for x in grade)
            if mult < 1:
                raise ValueError("multiplicities must be positive")
            if any(x < 0 for x in grade):
                raise ValueError("grades must be nonnegative")
            if grade not in merged:
                order.append(grade)
                merged[grade] = 0
            merged[grade] += mult
        if ambient is None:
            if not order:
                raise ValueError("ambient rank is required for the zero module")
            ambient = len(order[0])
        if any(len(g) != ambient for g in order):
            raise ValueError("grades must all have length equal to the ambient rank")
        object.__setattr__(self, "summands", tuple((g, merged[g]) for g in order))
        object.__setattr__(self, "ambient", ambient)

    @classmethod
    def from_grades(cls, grades: Sequence[Sequence[int]], ambient: Optional[int] = None):
        """One summand per listed grade, keeping the listed basis order."""
        mod = cls([(g, 1) for g in grades], ambient)
        object.__setattr__(mod, "_basis", [tuple(g) for g in grades])
        return mod

    @property
    def basis_grades(self) -> List[Grade]:
        explicit = getattr(self, "_basis", None)
        if explicit is not None:
            return list(explicit)
        return [g for g, m in self.summands for _ in range(m)]

    @property
    def rank(self) -> int:
        return sum(m for _, m in self.summands)

    def format(self, ring_name: str = "R") -> str:
        if not self.summands:
            return "0"
        parts = []
        for g, m in self.summands:
            shift = ",".join(str(-x) for x in g) if any(g) else "0"
            term = f"{ring_name}({shift})" if any(g) else ring_name
            parts.append(term if m == 1 else f"{term}^{m}")
        return " + ".join(parts)


@dataclass
class GradedMap:
    """Homogeneous map source -> target; column i is the image of the i-th source basis vector."""

    source: GradedFreeModule
    target: GradedFreeModule
    matrix: PolyMatrix

    def __post_init__(self):
        if self.matrix.nrows != self.target.rank or self.matrix.ncols != self.source.rank:
            raise ValueError("matrix shape does not match the free modules")
        if self.matrix.ring.nvars != self.target.ambient:
            raise ValueError("ring rank does not match the grading")

    @property
    def ring(self) -> RingCtx:
        return self.matrix.ring

    def coefficient(self, row: int, col: int):
        """Scalar c with entry = c * x^(source - target), or 0."""
        entry = self.matrix.entries[row][col]
        if entry.is_zero():
            return 0
        s = self.source.basis_grades[col]
        t = self.target.basis_grades[row]
        exps = tuple(a - b for a, b in zip(s, t))
        return entry.terms.get(exps, 0)

    def to_json(self) -> dict:
        return {"source": [list(g) for g in self.source.basis_grades],
                "target": [list(g) for g in self.target.basis_grades],
                "matrix": self.matrix.to_json()}


def graded_map_check(f: GradedMap) -> bool:
    """Every nonzero entry is a single term of multidegree source grade minus target grade."""
    src = f.source.basis_grades
    tgt = f.target.basis_grades
    for j, row in enumerate(f.matrix.entries):
        for i, entry in enumerate(row):
            if entry.is_zero():
                continue
            if len(entry.terms) != 1:
                return False
            (exps,) = entry.terms
            if any(s - t < 0 for s, t in zip(src[i], tgt[j])):
                return False
            if tuple(s - t for s, t in zip(src[i], tgt[j])) != exps:
                return False
    return True


def _check_in_grid(grades: Iterable[Grade], grid: Sequence[int], what: str):
    for g in grades:
        if len(g) != len(grid) or any(x < 0 or x >= G for x, G in zip(g, grid)):
            raise GridError(f"{what} grade {g} lies outside the grid {tuple(grid)}; enlarge the grid")


def _relation_columns(f: GradedMap, u: Grade, rows: List[int]) -> List[List]:
    src = f.source.basis_grades
    return [[f.coefficient(j, i) for j in rows]
            for i in range(len(src)) if grade_le(src[i], u)]


def cokernel_dims(f: GradedMap, grid: Sequence[int], p: int = 0) -> Dict[Grade, int]:
    """dim_K of the cokernel in each grade of the grid."""
    _check_in_grid(f.target.basis_grades, grid, "generator")
    _check_in_grid(f.source.basis_grades, grid, "relation")
    tgt = f.target.basis_grades
    out = {}
    for u in grid_points(grid):
        rows = [j for j, t in enumerate(tgt) if grade_le(t, u)]
        cols = _relation_columns(f, u, rows)
        out[u] = len(rows) - (rank(cols, p) if cols and rows else 0)
    return out


def top(f: GradedMap, grid: Sequence[int], p: int = 0) -> List[Tuple[Grade, int]]:
    """Minimal generator grades of coker f with multiplicities.

    In grade u this is dim M_u / (sum_i x_i M_{u - e_i}), i.e. the target basis
    vectors of grade <= u modulo the relations and the vectors of grade strictly below u.
    """
    _check_in_grid(f.target.basis_grades, grid, "generator")
    _check_in_grid(f.source.basis_grades, grid, "relation")
    tgt = f.target.basis_grades
    result = []
    for u in grid_points(grid):
        rows = [j for j, t in enumerate(tgt) if grade_le(t, u)]
        if not rows:
            continue
        vectors = _relation_columns(f, u, rows)
        for pos, j in enumerate(rows):
            if tgt[j] != u:
                vectors.append([int(k == pos) for k in range(len(rows))])
        mult = len(rows) - (rank(vectors, p) if vectors else 0)
        if mult:
            result.append((u, mult))
    return result


def projective_cover(top_data: Sequence[Tuple[Sequence[int], int]], ambient: int = 2) -> GradedFreeModule:
    """The free module with one summand R(-u) for each minimal generator."""
    return GradedFreeModule(top_data, ambient)


# -- bifiltrations -------------------------------------------------------------


class Bifiltration:
    """A one-critical filtered simplicial complex: each simplex has one entry grade."""

    def __init__(self, simplices: Iterable[Tuple[Iterable, Sequence[int]]], grid: Sequence[int],
                 validate: bool = True, warnings: Optional[List[str]] = None):
        self.grid = tuple(int(g) for g in grid)
        self.grades: Dict[Simplex, Grade] = {}
        for verts, grade in simplices:
            key = tuple(sorted(verts))
            if not key:
                raise BifiltrationError("empty simplex")
            if len(set(key)) != len(key):
                raise BifiltrationError(f"repeated vertex in {key}")
            if key in self.grades:
                raise BifiltrationError(f"duplicate simplex {key}")
            self.grades[key] = tuple(int(x) for x in grade)
        self.warnings = list(warnings or [])
        if validate:
            self.validate()
        self._by_dim: Dict[int, List[Simplex]] = {}
        for s in sorted(self.grades, key=lambda s: (len(s), s)):
            self._by_dim.setdefault(len(s) - 1, []).append(s)
        self._index = {d: {s: i for i, s in enumerate(lst)} for d, lst in self._by_dim.items()}
        self._cache: Dict = {}

    def validate(self):
        for s, g in self.grades.items():
            if len(g) != len(self.grid) or any(x < 0 or x >= G for x, G in zip(g, self.grid)):
                raise BifiltrationError(f"grade {g} of {s} is outside the grid {self.grid}")
            if len(s) > 1:
                for face in itertools.combinations(s, len(s) - 1):
                    fg = self.grades.get(face)
                    if fg is None:
                        raise BifiltrationError(f"face {face} of {s} is missing")
                    if not grade_le(fg, g):
                        raise BifiltrationError(f"face {face} enters after {s}")

    @property
    def max_dim(self) -> int:
        return max(self._by_dim, default=-1)

    def simplices(self, dim: int) -> List[Simplex]:
        return list(self._by_dim.get(dim, []))

    def present(self, dim: int, u: Sequence[int]) -> List[int]:
        """Indices of dim-simplices with entry grade <= u."""
        return [i for i, s in enumerate(self._by_dim.get(dim, [])) if grade_le(self.grades[s], u)]

    def boundary_columns(self, dim: int) -> List[List[int]]:
        """Columns of the boundary map C_dim -> C_(dim-1), one list per dim-simplex."""
        key = ("bd", dim)
        if key not in self._cache:
            rows = self._index.get(dim - 1, {})
            cols = []
            for s in self._by_dim.get(dim, []):
                col = [0] * len(rows)
                if dim > 0:
                    for k in range(len(s)):
                        col[rows[s[:k] + s[k + 1:]]] = -1 if k % 2 else 1
                cols.append(col)
            self._cache[key] = cols
        return self._cache[key]

    def to_json(self) -> dict:
        return {"grid": list(self.grid),
                "simplices": [{"vertices": list(s), "grade": list(self.grades[s])}
                              for d in sorted(self._by_dim) for s in self._by_dim[d]],
                "warnings": self.warnings}

    @classmethod
    def from_json(cls, data: dict) -> "Bifiltration":
        try:
            return cls([(s["vertices"], s["grade"]) for s in data["simplices"]], data["grid"],
                       warnings=data.get("warnings"))
        except (KeyError, TypeError) as exc:
            raise BifiltrationError(f"malformed bifiltration JSON: {exc}") from None


def _cliques(adjacency: Dict, max_size: int) -> List[Tuple]:
    """All cliques with at least 3 and at most max_size vertices."""
    out = []
    nodes = sorted(adjacency)

    def extend(clique, candidates):
        if len(clique) >= 3:
            out.append(tuple(clique))
        if len(clique) == max_size:
            return
        for idx, v in enumerate(candidates):
            extend(clique + [v], [w for w in candidates[idx + 1:] if w in adjacency[v]])

    for idx, v in enumerate(nodes):
        extend([v], [w for w in nodes[idx + 1:] if w in adjacency[v]])
    return out


def flag_bifiltration(snapshots: Sequence[dict], thresholds: Optional[Sequence[float]] = None,
                      max_dim: int = 3) -> Bifiltration:
    """Flag-complex bifiltration of a time series of weighted graphs.

    Axis 0 is the snapshot index in time order.  Axis 1 indexes the thresholds in
    decreasing order, so stronger edges enter earlier.  Edge weights are replaced by
    their running maximum over time, which makes every edge monotone in both axes.
    An edge whose staircase of entry grades has several corners is placed at the
    join of its corners and a warning is recorded.  Cliques up to max_dim + 1
    vertices are filled in at the join of their edges' grades.
    """
    snaps = sorted(snapshots, key=lambda s: s["time"])
    if thresholds is None:
        thresholds = sorted({float(e["weight"]) for s in snaps for e in s.get("edges", [])}, reverse=True)
    thresholds = sorted((float(t) for t in thresholds), reverse=True)
    if not thresholds:
        thresholds = [0.0]
    ntimes, nlevels = max(1, len(snaps)), len(thresholds)
    warnings = []

    vertex_time: Dict = {}
    running: Dict[Tuple, float] = {}
    edge_levels: Dict[Tuple, List[Optional[int]]] = {}
    for t, snap in enumerate(snaps):
        for v in snap.get("vertices", []):
            v = v["id"] if isinstance(v, dict) else v
            vertex_time.setdefault(v, t)
        seen = set()
        for e in snap.get("edges", []):
            a, b, w = e["a"], e["b"], float(e["weight"])
            if a == b:
                raise BifiltrationError(f"self-loop at vertex {a}")
            key = tuple(sorted((a, b)))
            vertex_time.setdefault(a, t)
            vertex_time.setdefault(b, t)
            prev = running.get(key)
            if prev is not None and w < prev and key not in seen:
                warnings.append(f"edge {key}: weight dropped at time {snap['time']}; running maximum used")
            running[key] = w if prev is None else max(prev, w)
            seen.add(key)
        for key, w in running.items():
            # first threshold index met by the running maximum
            level = next((s for s, thr in enumerate(thresholds) if w >= thr), None)
            edge_levels.setdefault(key, [None] * ntimes)[t] = level

    grades: Dict[Tuple, Grade] = {}
    for v, t in vertex_time.items():
        grades[(v,)] = (t, 0)
    for key, levels in edge_levels.items():
        corners = []
        best = None
        for t, lev in enumerate(levels):
            if lev is not None and (best is None or lev < best):
                corners.append((t, lev))
                best = lev
        if not corners:
            continue
        if len(corners) > 1:
            warnings.append(f"edge {key}: entry grades {corners} are multi-critical; join used")
        g = grade_join(corners)
        grades[key] = grade_join([g, grades[(key[0],)], grades[(key[1],)]])

    adjacency: Dict = {v[0]: set() for v in grades if len(v) == 1}
    for s in grades:
        if len(s) == 2:
            adjacency[s[0]].add(s[1])
            adjacency[s[1]].add(s[0])
    for clique in _cliques(adjacency, max_dim + 1):
        grades[clique] = grade_join(grades[e] for e in itertools.combinations(clique, 2))
    return Bifiltration(grades.items(), (ntimes, nlevels), warnings=warnings)


# -- homology -----------------------------------------------------------------


def _cycles(b: Bifiltration, i: int, u: Grade, p: int) -> List[List]:
    key = ("Z", i, u, p)
    if key not in b._cache:
        idx = b.present(i, u)
        n = len(b.simplices(i))
        if i == 0:
            basis = [[int(k == j) for k in range(n)] for j in idx]
        else:
            cols = b.boundary_columns(i)
            nrows = len(b.simplices(i - 1))
            rows = [[cols[j][r] for j in idx] for r in range(nrows)]
            kernel = nullspace(rows, len(idx), p) if idx else []
            basis = []
            for vec in kernel:
                full = [0] * n
                for pos, j in enumerate(idx):
                    full[j] = vec[pos]
                basis.append(full)
        b._cache[key] = basis
    return b._cache[key]


def _boundaries(b: Bifiltration, i: int, v: Grade) -> List[List[int]]:
    cols = b.boundary_columns(i + 1)
    return [cols[j] for j in b.present(i + 1, v)]


def _rank_cached(b: Bifiltration, key, vectors, p):
    full = ("rank", key, p)
    if full not in b._cache:
        b._cache[full] = rank(vectors, p) if vectors else 0
    return b._cache[full]


def homology_dim(b: Bifiltration, i: int, u: Sequence[int], p: int = 0) -> int:
    u = tuple(u)
    z = _cycles(b, i, u, p)
    bd = _boundaries(b, i, u)
    return len(z) - _rank_cached(b, ("B", i, u), bd, p)


def rank_invariant(b: Bifiltration, i: int, u: Sequence[int], v: Sequence[int], p: int = 0) -> int:
    """Rank of H_i(X_u) -> H_i(X_v), i.e. dim Z_u - dim(Z_u intersect B_v)."""
    u, v = tuple(u), tuple(v)
    if not grade_le(u, v):
        raise GridError(f"{u} is not <= {v}")
    _check_in_grid([u, v], b.grid, "query")
    if i < 0:
        return 0
    z = _cycles(b, i, u, p)
    if not z:
        return 0
    bd = _boundaries(b, i, v)
    return _rank_cached(b, ("ZB", i, u, v), z + bd, p) - _rank_cached(b, ("B", i, v), bd, p)


def rank_invariant_table(b: Bifiltration, degrees: Optional[Sequence[int]] = None,
                         p: int = 0) -> Dict[Tuple[int, Grade, Grade], int]:
    """All values rho_i(u, v) with u <= v in the grid, in canonical order."""
    if degrees is None:
        degrees = range(max(b.max_dim, 0) + 1)
    pts = grid_points(b.grid)
    keys = [(i, u, v) for i in degrees for u in pts for v in pts if grade_le(u, v)]

    def work(i):
        return [(k, rank_invariant(b, *k, p=p)) for k in keys if k[0] == i]

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        chunks = list(pool.map(work, list(degrees)))
    return dict(item for chunk in chunks for item in chunk)


def integral_homology(b: Bifiltration, i: int, u: Sequence[int]) -> Tuple[int, List[int]]:
    """H_i(X_u; Z) as (free rank, torsion coefficients > 1) via Smith normal form."""
    u = tuple(u)
    idx_i = b.present(i, u)
    if i == 0:
        rank_out = 0
    else:
        cols = b.boundary_columns(i)
        rows = [[cols[j][r] for j in idx_i] for r in range(len(b.simplices(i - 1)))]
        rank_out = len(smith_diagonal(rows)) if idx_i else 0
    bd = _boundaries(b, i, u)
    diag = smith_diagonal(bd) if bd else []
    free = len(idx_i) - rank_out - len(diag)
    return free, [d for d in diag if d > 1]


# -- minimal presentations of homology ------------------------------------------


class _GradeHomology:
    """H_i(X_u) as cycles modulo boundaries, with coordinates on a chosen basis."""

    def __init__(self, b: Bifiltration, i: int, u: Grade, p: int):
        self.p = p
        self.boundaries = _boundaries(b, i, u)
        cycles = _cycles(b, i, u, p)
        chosen = independent_extension(self.boundaries, cycles, p)
        self.reps = [cycles[k] for k in chosen]
        self.bound_rank = rank(self.boundaries, p) if self.boundaries else 0
        # spanning set: independent boundaries then representatives
        if self.boundaries:
            keep = independent_extension([], self.boundaries, p)
            self.bound_basis = [self.boundaries[k] for k in keep]
        else:
            self.bound_basis = []

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, cycle: Sequence) -> List:
        sol = solve(self.bound_basis + self.reps, cycle, self.p)
        if sol is None:
            raise ValueError("vector is not a cycle at this grade")
        return sol[len(self.bound_basis):]


def presentation_of_homology(b: Bifiltration, i: int, p: int = 0) -> GradedMap:
    """Minimal presentation of the persistence module H_i(X_-) over K[x, y].

    Generators are found grade by grade as the part of H_i(X_u) not reached from
    smaller grades; relations are the kernel of the generator map not already
    generated by relations found at smaller grades.
    """
    if len(b.grid) != 2:
        raise GridError("presentations are computed for bifiltrations only")
    pts = grid_points(b.grid)
    gen_chains: List[List] = []
    gen_grades: List[Grade] = []
    rel_vectors: List[List] = []
    rel_grades: List[Grade] = []
    zero = Fraction(0) if p == 0 else 0
    for u in pts:
        hom = _GradeHomology(b, i, u, p)
        below = [k for k, g in enumerate(gen_grades) if grade_le(g, u)]
        if hom.dim == 0 and not below:
            continue
        images = [hom.coords(gen_chains[k]) for k in below]
        unit = [[int(a == c) for a in range(hom.dim)] for c in range(hom.dim)]
        for c in independent_extension(images, unit, p):
            gen_chains.append(hom.reps[c])
            gen_grades.append(u)
            below.append(len(gen_grades) - 1)
            images.append(unit[c])
        # kernel of K^{gens <= u} -> H_u
        mat_rows = [[images[c][r] for c in range(len(below))] for r in range(hom.dim)]
        kernel = nullspace(mat_rows, len(below), p) if below else []
        if not kernel:
            continue
        width = len(gen_grades)
        embedded = []
        for vec in kernel:
            full = [zero] * width
            for pos, k in enumerate(below):
                full[k] = vec[pos]
            embedded.append(full)
        older = [r + [zero] * (width - len(r)) for r, g in zip(rel_vectors, rel_grades) if grade_le(g, u)]
        for c in independent_extension(older, embedded, p):
            rel_vectors.append(embedded[c])
            rel_grades.append(u)
    ring = RingCtx(["x", "y"], p)
    width = len(gen_grades)
    cols = [r + [zero] * (width - len(r)) for r in rel_vectors]
    entries = [[ring.zero() for _ in cols] for _ in range(width)]
    for c, (vec, s) in enumerate(zip(cols, rel_grades)):
        for j, coeff in enumerate(vec):
            if coeff:
                exps = tuple(a - t for a, t in zip(s, gen_grades[j]))
                entries[j][c] = ring.monomial(exps, coeff)
    matrix = PolyMatrix(ring, entries, len(cols))
    return GradedMap(GradedFreeModule.from_grades(rel_grades, 2),
                     GradedFreeModule.from_grades(gen_grades, 2), matrix)


def synthetic_two_generator_bifiltration() -> Bifiltration:
    """Bifiltration whose H_1 is R(-1,-1)/(x^2) + R(-1,-2)/(x, y) on a 5 x 5 grid.

    A hollow triangle on a1 a2 a3 appears at (1,1) and is filled at (3,1).  A hollow
    triangle on b1 b2 b3 appears at (1,2); it is filled by its own face at (2,2) and
    by a cone from the apex c at (1,3).
    """
    simplices = [((v,), (0, 0)) for v in ("a1", "a2", "a3", "b1", "b2", "b3", "c")]
    simplices += [(e, (1, 1)) for e in itertools.combinations(("a1", "a2", "a3"), 2)]
    simplices.append((("a1", "a2", "a3"), (3, 1)))
    simplices += [(e, (1, 2)) for e in itertools.combinations(("b1", "b2", "b3"), 2)]
    simplices.append((("b1", "b2", "b3"), (2, 2)))
    simplices += [(("c", v), (1, 3)) for v in ("b1", "b2", "b3")]
    simplices += [(("c",) + e, (1, 3)) for e in itertools.combinations(("b1", "b2", "b3"), 2)]
    return Bifiltration(simplices, (5, 5))
