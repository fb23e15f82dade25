"""Minor symbols, multitableaux and standard monomials for varieties of complexes.

A format is a dimension vector d = (d_0, ..., d_N) with rank bounds
r = (r_1, ..., r_N).  The symbol <A|B>_k stands for the minor of the k-th
matrix X_k (size d_{k-1} x d_k) on rows A and columns B, with 1 <= |A| <= r_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .polymatrix import generic_matrix, matmul, minors
from .polyring import Polynomial, RingCtx, hilbert_function
from .tableaux import is_standard

Subset = Tuple[int, ...]


class FormatError(ValueError):
    """Raised for malformed formats or symbols outside a format."""


@dataclass(frozen=True)
class RankedFormat:
    dims: Tuple[int, ...]
    ranks: Tuple[int, ...]

    def __init__(self, dims: Sequence[int], ranks: Sequence[int]):
        dims = tuple(int(x) for x in dims)
        ranks = tuple(int(x) for x in ranks)
        if len(dims) != len(ranks) + 1 or not ranks:
            raise FormatError("need len(dims) == len(ranks) + 1 and at least one level")
        if any(x < 0 for x in dims):
            raise FormatError("dimensions must be nonnegative")
        for k, r in enumerate(ranks, start=1):
            if not 0 <= r <= min(dims[k - 1], dims[k]):
                raise FormatError(f"rank r_{k} = {r} out of range")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "ranks", ranks)

    @property
    def levels(self) -> int:
        return len(self.ranks)


def subset_key(s: Sequence[int]):
    """Linear order on subsets refining {a} <= {b} iff |a| <= |b| and a_i >= b_i."""
    return (len(s), tuple(-x for x in s))


def subset_le(a: Sequence[int], b: Sequence[int]) -> bool:
    """Partial order: a <= b iff |a| <= |b| and a_i >= b_i for i <= |a|."""
    return len(a) <= len(b) and all(x >= y for x, y in zip(a, b))


@total_ordering
class MinorSymbol:
    """The symbol <rows|cols>_level with 1-based sorted index sets."""

    __slots__ = ("level", "rows", "cols")

    def __init__(self, level: int, rows: Sequence[int], cols: Sequence[int]):
        rows, cols = tuple(rows), tuple(cols)
        if len(rows) != len(cols) or not rows:
            raise FormatError("a symbol needs nonempty index sets of equal size")
        if list(rows) != sorted(set(rows)) or list(cols) != sorted(set(cols)):
            raise FormatError("index sets must be strictly increasing")
        self.level = int(level)
        self.rows = rows
        self.cols = cols

    @property
    def size(self) -> int:
        return len(self.rows)

    def key(self):
        return (self.level, subset_key(self.rows), subset_key(self.cols))

    def __eq__(self, other):
        return isinstance(other, MinorSymbol) and self.key() == other.key()

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        j = lambda s: "".join(map(str, s)) if max(s) < 10 else ",".join(map(str, s))
        return f"<{j(self.rows)}|{j(self.cols)}>_{self.level}"

    def in_format(self, fmt: RankedFormat) -> bool:
        k = self.level
        if not 1 <= k <= fmt.levels:
            return False
        return (self.size <= fmt.ranks[k - 1] and self.rows[-1] <= fmt.dims[k - 1]
                and self.cols[-1] <= fmt.dims[k])


def symbol(level: int, rows: str | Sequence[int], cols: str | Sequence[int]) -> MinorSymbol:
    """Convenience constructor accepting digit strings such as symbol(1, '12', '14')."""
    if isinstance(rows, str):
        rows = [int(ch) for ch in rows]
    if isinstance(cols, str):
        cols = [int(ch) for ch in cols]
    return MinorSymbol(level, rows, cols)


def symbol_partial_order(a: MinorSymbol, b: MinorSymbol) -> Optional[str]:
    """'=', '<', '>' or None (incomparable) in the partial order on symbols of one level."""
    if a == b:
        return "="
    if a.level != b.level:
        return None
    if subset_le(a.rows, b.rows) and subset_le(a.cols, b.cols):
        return "<"
    if subset_le(b.rows, a.rows) and subset_le(b.cols, a.cols):
        return ">"
    return None


def all_symbols(fmt: RankedFormat, level: Optional[int] = None) -> List[MinorSymbol]:
    """The variables V(d) in increasing order (optionally one level only)."""
    out = []
    levels = [level] if level is not None else range(1, fmt.levels + 1)
    for k in levels:
        for size in range(1, fmt.ranks[k - 1] + 1):
            for a in combinations(range(1, fmt.dims[k - 1] + 1), size):
                for b in combinations(range(1, fmt.dims[k] + 1), size):
                    out.append(MinorSymbol(k, a, b))
    out.sort()
    return out


def hasse_diagram(fmt: RankedFormat, level: int = 1) -> Dict[MinorSymbol, List[MinorSymbol]]:
    """Covering relations: each symbol maps to the symbols it covers."""
    syms = all_symbols(fmt, level)
    below = {s: [t for t in syms if symbol_partial_order(t, s) == "<"] for s in syms}
    cover = {}
    for s, lows in below.items():
        cover[s] = sorted((t for t in lows
                           if not any(symbol_partial_order(t, u) == "<" for u in lows)), reverse=True)
    return cover


def is_vmax(s: MinorSymbol, fmt: RankedFormat) -> bool:
    return s.size == fmt.ranks[s.level - 1]


# -- monomials and multitableaux ---------------------------------------------

Monomial = Tuple[MinorSymbol, ...]


def monomial(*symbols: MinorSymbol) -> Monomial:
    """A monomial as a multiset of symbols, stored in decreasing order."""
    return tuple(sorted(symbols, reverse=True))


def _check(m: Monomial, fmt: RankedFormat) -> None:
    for s in m:
        if not s.in_format(fmt):
            raise FormatError(f"symbol {s} does not belong to the format")


def _complement(s: Sequence[int], n: int) -> Subset:
    chosen = set(s)
    return tuple(i for i in range(1, n + 1) if i not in chosen)


def tableau_of(m: Sequence[MinorSymbol], fmt: RankedFormat, strict: bool = True) -> Tuple[Tuple[Subset, ...], ...]:
    """The multitableau t(m) with N + 1 components.

    Component 0 holds the row sets of level 1.  Component i (0 < i < N) holds the
    complements in [1, d_i] of the column sets of level i, listed from the
    smallest symbol up, stacked over the row sets of level i + 1; an empty
    complement is kept as an empty row, so it cannot sit above a nonempty one.
    Component N holds the complements of the column sets of level N (empty ones
    dropped).
    With strict=False symbols are not checked against the format.
    """
    m = monomial(*m)
    if strict:
        _check(m, fmt)
    n = fmt.levels
    by_level: Dict[int, List[MinorSymbol]] = {k: [] for k in range(1, n + 1)}
    for s in m:
        if not 1 <= s.level <= n:
            raise FormatError(f"symbol {s} has no level in the format")
        by_level[s.level].append(s)
    comps = []
    comps.append(tuple(s.rows for s in by_level[1]))
    for i in range(1, n + 1):
        comp = [_complement(s.cols, fmt.dims[i]) for s in reversed(by_level[i])]
        if i < n:
            comp += [s.rows for s in by_level[i + 1]]
        else:
            comp = [r for r in comp if r]
        comps.append(tuple(comp))
    return tuple(comps)


def format_multitableau(t) -> str:
    fmt_row = lambda r: "".join(map(str, r)) if max(r, default=0) < 10 else ",".join(map(str, r))
    return "(" + ", ".join("/".join(fmt_row(r) for r in comp) if comp else "()" for comp in t) + ")"


def is_standard_multitableau(t) -> bool:
    for comp in t:
        comp = list(comp)
        while comp and not comp[-1]:
            comp.pop()
        if comp and not is_standard(comp):
            return False
    return True


def is_standard_monomial(m: Sequence[MinorSymbol], fmt: RankedFormat, strict: bool = True,
                         exclude_vmax: bool = True) -> bool:
    """t(m) standard and (by default) m not divisible by a maximal-size symbol."""
    if exclude_vmax and any(is_vmax(s, fmt) for s in m):
        return False
    return is_standard_multitableau(tableau_of(m, fmt, strict))


def initial_ideal_member(m: Sequence[MinorSymbol], fmt: RankedFormat, exclude_vmax: bool = True) -> bool:
    """Membership in the monomial ideal spanned by the nonstandard monomials."""
    return not is_standard_monomial(m, fmt, exclude_vmax=exclude_vmax)


def polynomial_degree(m: Sequence[MinorSymbol]) -> int:
    return sum(s.size for s in m)


def enumerate_standard(fmt: RankedFormat, degree: int, grading: str = "polynomial",
                       exclude_vmax: bool = True) -> Iterator[Monomial]:
    """Standard monomials of the given degree.

    grading "polynomial" measures a monomial by the total size of its minors,
    "symbol" by the number of symbols.  Monomials are generated by adding
    symbols in decreasing order; since nonstandard monomials form an ideal,
    branches are pruned as soon as a partial product is nonstandard.
    """
    if grading not in ("polynomial", "symbol"):
        raise ValueError("grading must be 'polynomial' or 'symbol'")
    syms = all_symbols(fmt)
    if exclude_vmax:
        syms = [s for s in syms if not is_vmax(s, fmt)]
    syms.sort(reverse=True)
    weight = (lambda s: s.size) if grading == "polynomial" else (lambda s: 1)
    chosen: List[MinorSymbol] = []

    def rec(start: int, remaining: int):
        if remaining == 0:
            yield tuple(chosen)
            return
        for i in range(start, len(syms)):
            s = syms[i]
            w = weight(s)
            if w > remaining:
                continue
            chosen.append(s)
            if is_standard_multitableau(tableau_of(chosen, fmt, strict=False)):
                yield from rec(i, remaining - w)
            chosen.pop()

    if degree < 0:
        return
    yield from rec(0, degree)


def count_standard(fmt: RankedFormat, degree: int, grading: str = "polynomial",
                   exclude_vmax: bool = True) -> int:
    return sum(1 for _ in enumerate_standard(fmt, degree, grading, exclude_vmax))


# -- coordinate ring --------------------------------------------------------

def variety_ideal(fmt: RankedFormat, modulus: int = 0):
    """Ring and ideal of the variety of complexes: X_k X_{k+1} = 0 and rank X_k <= r_k."""
    sizes = [fmt.dims[k - 1] * fmt.dims[k] for k in range(1, fmt.levels + 1)]
    ring = RingCtx(sum(sizes), modulus)
    mats, start = [], 0
    for k in range(1, fmt.levels + 1):
        mats.append(generic_matrix(ring, start, fmt.dims[k - 1], fmt.dims[k]))
        start += sizes[k - 1]
    gens: List[Polynomial] = []
    for k in range(fmt.levels - 1):
        gens.extend(matmul(mats[k], mats[k + 1]).flatten())
    for k, m in enumerate(mats, start=1):
        if fmt.ranks[k - 1] < min(m.nrows, m.ncols):
            gens.extend(minors(fmt.ranks[k - 1] + 1, m))
    gens = [g for g in gens if g]
    return ring, gens


def hilbert_function_oracle(fmt: RankedFormat, degrees: Sequence[int], modulus: int = 0) -> List[int]:
    ring, gens = variety_ideal(fmt, modulus)
    return hilbert_function(gens, degrees, ring=ring, modulus=modulus)


# -- several colours ---------------------------------------------------------

def monomial_order_key(m: Sequence[MinorSymbol], fmt: RankedFormat, strict: bool = True):
    """Key for the product order: levels compared lexicographically, each by
    graded reverse lexicographic order with larger symbols as earlier variables."""
    m = monomial(*m)
    key = []
    for k in range(1, fmt.levels + 1):
        part = [s for s in m if s.level == k]
        pool = sorted(set(part) | (set(all_symbols(fmt, k)) if strict else set()))
        counts = [part.count(s) for s in pool]  # ascending symbols: smallest first
        key.append((len(part), tuple(-c for c in counts), tuple(s.key() for s in pool)))
    return tuple(key)


def compare_monomials(a: Sequence[MinorSymbol], b: Sequence[MinorSymbol], fmt: RankedFormat) -> int:
    """-1, 0 or 1 comparing two monomials of one colour in the product order."""
    if monomial(*a) == monomial(*b):
        return 0
    for k in range(1, fmt.levels + 1):
        pa = sorted((s for s in a if s.level == k))
        pb = sorted((s for s in b if s.level == k))
        if pa == pb:
            continue
        if len(pa) != len(pb):
            return 1 if len(pa) > len(pb) else -1
        pool = sorted(set(pa) | set(pb))
        for s in pool:  # smallest variable first: reverse lexicographic
            ca, cb = pa.count(s), pb.count(s)
            if ca != cb:
                return 1 if ca < cb else -1
    return 0


def compare_multi(a: Sequence[Sequence[MinorSymbol]], b: Sequence[Sequence[MinorSymbol]],
                  fmts: Sequence[RankedFormat]) -> int:
    """Lexicographic product over colours of the per-colour orders."""
    for ma, mb, f in zip(a, b, fmts):
        c = compare_monomials(ma, mb, f)
        if c:
            return c
    return 0


def is_standard_multi(monomials: Sequence[Sequence[MinorSymbol]], fmts: Sequence[RankedFormat],
                      strict: bool = True) -> bool:
    """A product over colours is standard when every colour's monomial is."""
    if len(monomials) != len(fmts):
        raise FormatError("need one format per colour")
    return all(is_standard_monomial(m, f, strict) for m, f in zip(monomials, fmts))


# -- the simplicial complex of standard squarefree monomials ----------------

def delta_complex_faces(fmt: RankedFormat, max_card: Optional[int] = None,
                        exclude_vmax: bool = True, limit: int = 100000) -> List[Tuple[MinorSymbol, ...]]:
    """Faces: sets of distinct symbols whose product is standard (empty face included)."""
    syms = sorted(all_symbols(fmt), reverse=True)
    if exclude_vmax:
        syms = [s for s in syms if not is_vmax(s, fmt)]
    faces: List[Tuple[MinorSymbol, ...]] = [()]
    chosen: List[MinorSymbol] = []

    def rec(start: int):
        for i in range(start, len(syms)):
            if max_card is not None and len(chosen) >= max_card:
                return
            chosen.append(syms[i])
            if is_standard_multitableau(tableau_of(chosen, fmt, strict=False)):
                if len(faces) >= limit:
                    raise OverflowError("face enumeration exceeded the limit")
                faces.append(tuple(chosen))
                rec(i + 1)
            chosen.pop()

    rec(0)
    return faces


# -- rank sequences ----------------------------------------------------------

def degeneration_order(a: Sequence[int], b: Sequence[int]) -> Tuple[Optional[str], Tuple[int, ...]]:
    """Compare rank sequences componentwise; also return their meet (componentwise min)."""
    if len(a) != len(b):
        raise FormatError("rank sequences of different lengths")
    meet = tuple(min(x, y) for x, y in zip(a, b))
    if tuple(a) == tuple(b):
        rel = "="
    elif all(x <= y for x, y in zip(a, b)):
        rel = "<"
    elif all(x >= y for x, y in zip(a, b)):
        rel = ">"
    else:
        rel = None
    return rel, meet


def admissible_rank_sequences(betti: Sequence[int]) -> List[Tuple[int, ...]]:
    """Rank sequences (r_1..r_n) of complexes with the Betti numbers (b_0..b_n)."""
    n = len(betti) - 1
    out: List[Tuple[int, ...]] = []

    def rec(k: int, prev: int, acc: List[int]):
        if k > n:
            out.append(tuple(acc))
            return
        cap = min(betti[k - 1] - prev, betti[k])
        for r in range(cap + 1):
            acc.append(r)
            rec(k + 1, r, acc)
            acc.pop()

    rec(1, 0, [])
    return out


def maximal_rank_sequences(betti: Sequence[int]) -> List[Tuple[int, ...]]:
    """Maximal elements of the admissible rank sequences (the irreducible components)."""
    seqs = admissible_rank_sequences(betti)
    return [s for s in seqs if not any(t != s and all(x <= y for x, y in zip(s, t)) for t in seqs)]
