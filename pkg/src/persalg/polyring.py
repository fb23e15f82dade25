"""Sparse multivariate polynomials over the integers, the rationals and prime fields.

A polynomial is a mapping from exponent tuples to nonzero coefficients.  The
ring context fixes the variable names, the coefficient domain and the active
monomial order.  A small Buchberger implementation provides ideal membership,
ideal equality and Hilbert functions of homogeneous quotients.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

Exps = Tuple[int, ...]


class RingError(ValueError):
    """Raised for mismatched rings, bad parses and similar misuse."""


def grevlex_key(e: Exps):
    """Sort key for graded reverse lexicographic order with x_1 > x_2 > ..."""
    return (sum(e), tuple(-a for a in reversed(e)))


def lex_key(e: Exps):
    return e


ORDERS: Dict[str, Callable[[Exps], object]] = {"grevlex": grevlex_key, "lex": lex_key}


class RingCtx:
    """Polynomial ring K[x_1..x_n] with K the integers (modulus 0) or Z/p.

    Rational coefficients are allowed in characteristic zero; they show up in
    Groebner computations and in presentations over the rationals.
    """

    def __init__(self, names: Sequence[str] | int, modulus: int = 0, order: str = "grevlex"):
        if isinstance(names, int):
            names = [f"x_{i}" for i in range(1, names + 1)]
        names = list(names)
        if len(set(names)) != len(names):
            raise RingError("duplicate variable names")
        if order not in ORDERS:
            raise RingError(f"unknown monomial order {order!r}")
        if modulus < 0 or modulus == 1:
            raise RingError("modulus must be 0 or a prime")
        self.names = tuple(names)
        self.modulus = modulus
        self.order = order
        self.key = ORDERS[order]
        self._index = {n: i for i, n in enumerate(self.names)}
        self._name_re = None

    @classmethod
    def from_blocks(cls, blocks: Iterable[Tuple[str, int]], modulus: int = 0, order: str = "grevlex"):
        """Ring with variables prefix_1..prefix_k for each (prefix, k) block."""
        names = []
        for prefix, count in blocks:
            names.extend(f"{prefix}_{i}" for i in range(1, count + 1))
        return cls(names, modulus, order)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return (isinstance(other, RingCtx) and self.names == other.names
                and self.modulus == other.modulus and self.order == other.order)

    def __hash__(self):
        return hash((self.names, self.modulus, self.order))

    def __repr__(self):
        dom = "ZZ" if self.modulus == 0 else f"ZZ/{self.modulus}"
        return f"RingCtx({dom}[{', '.join(self.names)}], {self.order})"

    def with_order(self, order: str) -> "RingCtx":
        return RingCtx(self.names, self.modulus, order)

    def with_modulus(self, modulus: int) -> "RingCtx":
        return RingCtx(self.names, modulus, self.order)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RingError(f"unknown variable {name!r}") from None

    def normalize(self, c):
        """Bring a coefficient into the canonical form of the domain."""
        if self.modulus:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, self.modulus) % self.modulus
            return int(c) % self.modulus
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        return c

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, i: int | str) -> "Polynomial":
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> List["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


class Polynomial:
    """Immutable sparse polynomial.  Terms are kept in a dict keyed by exponents."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingCtx, terms: Dict[Exps, object], _clean: bool = False):
        self.ring = ring
        if _clean:
            self.terms = terms
        else:
            n = ring.nvars
            clean = {}
            for e, c in terms.items():
                if len(e) != n:
                    raise RingError("exponent length does not match ring")
                c = ring.normalize(c)
                if c:
                    clean[tuple(e)] = c
            self.terms = clean
        self._hash = None

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise RingError("polynomial is not constant")
        return next(iter(self.terms.values()), 0)

    def sorted_terms(self) -> List[Tuple[Exps, object]]:
        """Terms in decreasing order for the ring's monomial order."""
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self) -> Tuple[Exps, object]:
        if not self.terms:
            raise RingError("zero polynomial has no leading term")
        key = self.ring.key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def leading_monomial(self) -> Exps:
        return self.leading_term()[0]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def multidegrees(self) -> set:
        return set(self.terms)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Exps, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise RingError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        return Polynomial(self.ring, {e: c * v for e, v in self.terms.items()})

    def mul_term(self, exps: Exps, c) -> "Polynomial":
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(e, exps)): v * c
                                      for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def divide_exact(self, other: "Polynomial") -> "Polynomial":
        """Quotient self / other, raising RingError when the division is not exact."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = other.leading_term()
        field = self.ring.modulus != 0
        rem = dict(self.terms)
        quot: Dict[Exps, object] = {}
        key = self.ring.key
        while rem:
            e = max(rem, key=key)
            c = rem[e]
            if any(a < b for a, b in zip(e, lm)):
                raise RingError("division is not exact")
            if field:
                qc = c * pow(lc, -1, self.ring.modulus) % self.ring.modulus
            elif isinstance(c, int) and isinstance(lc, int):
                if c % lc:
                    raise RingError("division is not exact over the integers")
                qc = c // lc
            else:
                qc = Fraction(c) / lc
            qe = tuple(a - b for a, b in zip(e, lm))
            quot[qe] = qc
            for e2, c2 in other.terms.items():
                t = tuple(a + b for a, b in zip(qe, e2))
                v = rem.get(t, 0) - qc * c2
                if field:
                    v %= self.ring.modulus
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Polynomial(self.ring, quot)

    # -- evaluation and change of rings --------------------------------

    def evaluate(self, point: Sequence):
        """Value at a point given as one number per variable."""
        if len(point) != self.ring.nvars:
            raise RingError("point has wrong length")
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, a in zip(point, e):
                if a:
                    v *= x ** a
            total += v
        if self.ring.modulus:
            total %= self.ring.modulus
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Ring map sending x_i to images[i]; all images share one target ring."""
        if len(images) != self.ring.nvars:
            raise RingError("need one image per variable")
        if not images:
            return self
        target = images[0].ring
        result = target.zero()
        power_cache: Dict[Tuple[int, int], Polynomial] = {}
        for e, c in self.terms.items():
            term = target.const(c)
            for i, a in enumerate(e):
                if a:
                    p = power_cache.get((i, a))
                    if p is None:
                        p = power_cache[(i, a)] = images[i] ** a
                    term = term * p
            result = result + term
        return result

    def change_ring(self, target: RingCtx, mapping: Optional[Sequence[int]] = None) -> "Polynomial":
        """Copy into another ring; variable i goes to target variable mapping[i] (default i)."""
        if mapping is None:
            mapping = range(self.ring.nvars)
        mapping = list(mapping)
        out = {}
        for e, c in self.terms.items():
            t = [0] * target.nvars
            for i, a in enumerate(e):
                if a:
                    t[mapping[i]] += a
            out[tuple(t)] = c
        return Polynomial(target, out)

    # -- printing ------------------------------------------------------

    def format(self, style: str = "star") -> str:
        """Text form with terms in decreasing order.

        style "star" writes 2*x_1^2*x_2; style "m2" writes 2x_1^2x_2 the way
        Macaulay2 prints ring elements.
        """
        if not self.terms:
            return "0"
        sep = "*" if style == "star" else ""
        pieces = []
        for e, c in self.sorted_terms():
            factors = []
            for name, a in zip(self.ring.names, e):
                if a == 1:
                    factors.append(name)
                elif a > 1:
                    factors.append(f"{name}^{a}")
            mono = sep.join(factors)
            neg = c < 0 if not self.ring.modulus else False
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}{sep}{mono}" if isinstance(mag, int) else f"({mag}){sep}{mono}"
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append(("-" if neg else "+") + body)
        return "".join(pieces)

    def __str__(self):
        return self.format("star")

    def __repr__(self):
        return f"Polynomial({self.format('star')!r})"


# -- parsing -------------------------------------------------------------

_COEFF_RE = re.compile(r"\(?(\d+(?:/\d+)?)\)?")


def parse_polynomial(ring: RingCtx, text: str) -> Polynomial:
    """Parse a polynomial written with or without '*' between factors."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise RingError("empty polynomial text")
    if ring._name_re is None:
        names = sorted(ring.names, key=len, reverse=True)
        ring._name_re = re.compile("|".join(re.escape(n) for n in names)) if names else None
    name_re = ring._name_re
    result: Dict[Exps, object] = {}
    pos = 0
    n = ring.nvars
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif pos != 0:
            raise RingError(f"expected sign at position {pos} in {text!r}")
        coeff = Fraction(1)
        m = _COEFF_RE.match(s, pos)
        saw_coeff = False
        if m and m.group(1):
            coeff = Fraction(m.group(1))
            pos = m.end()
            saw_coeff = True
            if pos < len(s) and s[pos] == "*":
                pos += 1
        exps = [0] * n
        saw_var = False
        while pos < len(s) and s[pos] not in "+-":
            if s[pos] == "*":
                pos += 1
                continue
            vm = name_re.match(s, pos) if name_re else None
            if not vm:
                raise RingError(f"cannot parse {s[pos:]!r} in {text!r}")
            pos = vm.end()
            power = 1
            if pos < len(s) and s[pos] == "^":
                pm = re.compile(r"\d+").match(s, pos + 1)
                if not pm:
                    raise RingError(f"bad exponent in {text!r}")
                power = int(pm.group(0))
                pos = pm.end()
            exps[ring.index(vm.group(0))] += power
            saw_var = True
        if not (saw_coeff or saw_var):
            raise RingError(f"empty term in {text!r}")
        e = tuple(exps)
        result[e] = result.get(e, 0) + sign * coeff
    return Polynomial(ring, result)


# -- Groebner bases ------------------------------------------------------

class _FieldOps:
    """Coefficient arithmetic for the field used during Buchberger."""

    def __init__(self, modulus: int):
        self.p = modulus

    def conv(self, c):
        if self.p:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, self.p) % self.p
            return c % self.p
        return Fraction(c)

    def inv(self, c):
        return pow(c, -1, self.p) if self.p else 1 / c

    def reduce(self, c):
        return c % self.p if self.p else c


def _lcm(a: Exps, b: Exps) -> Exps:
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


class _GBPoly:
    """Monic working polynomial for Buchberger: dict plus cached leading monomial."""

    __slots__ = ("terms", "lm")

    def __init__(self, terms, key):
        self.terms = terms
        self.lm = max(terms, key=key) if terms else None


def _make_monic(terms, ops, key):
    if not terms:
        return _GBPoly({}, key)
    g = _GBPoly(terms, key)
    inv = ops.inv(terms[g.lm])
    g.terms = {e: ops.reduce(c * inv) for e, c in terms.items()}
    return g


def _reduce_full(terms, basis: List[_GBPoly], ops, key) -> Dict[Exps, object]:
    """Remainder of terms modulo the list of monic polynomials (complete reduction)."""
    rem = dict(terms)
    out: Dict[Exps, object] = {}
    while rem:
        e = max(rem, key=key)
        c = rem[e]
        for g in basis:
            if _divides(g.lm, e):
                shift = tuple(a - b for a, b in zip(e, g.lm))
                for ge, gc in g.terms.items():
                    t = tuple(a + b for a, b in zip(ge, shift))
                    v = ops.reduce(rem.get(t, 0) - c * gc)
                    if v:
                        rem[t] = v
                    else:
                        rem.pop(t, None)
                break
        else:
            out[e] = c
            del rem[e]
    return out


def groebner_basis(gens: Iterable[Polynomial], modulus: Optional[int] = None,
                   max_degree: Optional[int] = None) -> List[Polynomial]:
    """Reduced Groebner basis over Q (modulus 0) or Z/p for the ring's order.

    With max_degree set (homogeneous input only) the computation is truncated:
    the result is correct in all degrees up to max_degree.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    if modulus is None:
        modulus = ring.modulus
    ops = _FieldOps(modulus)
    key = ring.key
    if max_degree is not None and not all(g.is_homogeneous() for g in gens):
        raise RingError("degree truncation needs homogeneous generators")

    basis: List[_GBPoly] = []
    pairs: List[Tuple[int, int, Exps]] = []

    def add(poly: _GBPoly):
        nonlocal pairs
        idx = len(basis)
        basis.append(poly)
        new = []
        for i in range(idx):
            if basis[i] is None:
                continue
            new.append((i, idx, _lcm(basis[i].lm, poly.lm)))
        # chain criterion: drop old pairs whose lcm is a multiple of lm(poly) strictly
        kept = []
        for (i, j, l) in pairs:
            if (_divides(poly.lm, l) and l != _lcm(basis[i].lm, poly.lm)
                    and l != _lcm(basis[j].lm, poly.lm)):
                continue
            kept.append((i, j, l))
        # among new pairs, keep one per lcm and drop those dominated by another
        new.sort(key=lambda t: key(t[2]))
        filtered = []
        for t in new:
            if any(_divides(u[2], t[2]) and u[2] != t[2] for u in new):
                continue
            if any(u[2] == t[2] for u in filtered):
                continue
            filtered.append(t)
        for (i, j, l) in filtered:
            a, b = basis[i].lm, basis[j].lm
            if all(x == 0 or y == 0 for x, y in zip(a, b)):
                continue  # coprime leading monomials
            kept.append((i, j, l))
        pairs = kept

    start = []
    for g in gens:
        t = {e: ops.conv(c) for e, c in g.terms.items()}
        t = {e: c for e, c in t.items() if c}
        if t:
            start.append(_make_monic(t, ops, key))
    start.sort(key=lambda g: key(g.lm))
    for g in start:
        active = [b for b in basis if b is not None]
        r = _reduce_full(g.terms, active, ops, key)
        if r:
            add(_make_monic(r, ops, key))

    while pairs:
        pairs.sort(key=lambda t: (sum(t[2]), key(t[2])))
        i, j, l = pairs.pop(0)
        if max_degree is not None and sum(l) > max_degree:
            continue
        f, g = basis[i], basis[j]
        sf = tuple(a - b for a, b in zip(l, f.lm))
        sg = tuple(a - b for a, b in zip(l, g.lm))
        s: Dict[Exps, object] = {}
        for e, c in f.terms.items():
            s[tuple(a + b for a, b in zip(e, sf))] = c
        for e, c in g.terms.items():
            t = tuple(a + b for a, b in zip(e, sg))
            v = ops.reduce(s.get(t, 0) - c)
            if v:
                s[t] = v
            else:
                s.pop(t, None)
        active = [b for b in basis if b is not None]
        r = _reduce_full(s, active, ops, key)
        if r:
            add(_make_monic(r, ops, key))

    # interreduce
    polys = [b for b in basis if b is not None]
    minimal = []
    for k, g in enumerate(polys):
        if any(_divides(h.lm, g.lm) and (h.lm != g.lm or m < k)
               for m, h in enumerate(polys) if m != k):
            continue
        minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        others = [h for m, h in enumerate(minimal) if m != k]
        t = _reduce_full(g.terms, others, ops, key)
        reduced.append(_make_monic(t, ops, key))
    reduced.sort(key=lambda g: key(g.lm))
    out_ring = ring if ring.modulus == modulus else ring.with_modulus(modulus)
    return [Polynomial(out_ring, g.terms) for g in reduced]


def normal_form(f: Polynomial, basis: Sequence[Polynomial], modulus: Optional[int] = None) -> Polynomial:
    """Remainder of f on division by a Groebner basis."""
    ring = f.ring
    if modulus is None:
        modulus = ring.modulus
    ops = _FieldOps(modulus)
    key = ring.key
    gb = [_make_monic({e: ops.conv(c) for e, c in g.terms.items()}, ops, key) for g in basis if g]
    t = {e: ops.conv(c) for e, c in f.terms.items()}
    t = {e: c for e, c in t.items() if c}
    out_ring = ring if ring.modulus == modulus else ring.with_modulus(modulus)
    return Polynomial(out_ring, _reduce_full(t, gb, ops, key))


def ideal_contains(gens: Sequence[Polynomial], f: Polynomial, modulus: Optional[int] = None) -> bool:
    gb = groebner_basis(gens, modulus)
    return normal_form(f, gb, modulus).is_zero()


def ideal_equal(a: Sequence[Polynomial], b: Sequence[Polynomial], modulus: Optional[int] = None) -> bool:
    """Equality of the ideals generated by a and b (over Q when modulus is 0)."""
    return groebner_basis(a, modulus) == groebner_basis(b, modulus)


def is_unit_ideal(gens: Sequence[Polynomial], modulus: Optional[int] = None) -> bool:
    gb = groebner_basis(gens, modulus)
    return len(gb) == 1 and gb[0].is_constant()


def monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree d."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    for bars in combinations(range(d + nvars - 1), nvars - 1):
        prev = -1
        e = []
        for b in bars:
            e.append(b - prev - 1)
            prev = b
        e.append(d + nvars - 2 - prev)
        yield tuple(e)


def hilbert_function(gens: Sequence[Polynomial], degrees: Iterable[int], ring: Optional[RingCtx] = None,
                     modulus: Optional[int] = None) -> List[int]:
    """dim_K (R/I)_d for each requested d, by counting standard monomials.

    The generators must be homogeneous for the standard grading.
    """
    degrees = list(degrees)
    gens = [g for g in gens if g]
    if ring is None:
        if not gens:
            raise RingError("ring is required when the ideal has no generators")
        ring = gens[0].ring
    if any(not g.is_homogeneous() for g in gens):
        raise RingError("Hilbert function needs homogeneous generators")
    top = max(degrees) if degrees else 0
    gb = groebner_basis(gens, modulus, max_degree=top) if gens else []
    leads = [g.leading_monomial() for g in gb]
    out = []
    for d in degrees:
        count = 0
        for e in monomials_of_degree(ring.nvars, d):
            if not any(_divides(l, e) for l in leads):
                count += 1
        out.append(count)
    return out
