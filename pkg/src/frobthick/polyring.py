"""Sparse homogeneous polynomials over F_p.

A :class:`HomogPoly` is a dict from exponent tuples to nonzero residues,
together with its ring and an explicit degree (kept even for the zero
polynomial).  Products and powers accept a ``trunc`` bound ``q`` which drops
every term lying in the bracket power ``m^[q] = (x_0^q, ..., x_n^q)`` while
accumulating; since ``m^[q]`` is an ideal this gives the same result as
reducing at the end.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from . import _kernels
from .linalg import PrimeModulus


class ShapeError(ValueError):
    """Operands live in different rings or graded pieces."""


@dataclass(frozen=True)
class RingSpec:
    """The polynomial ring F_p[x_0, ..., x_n]; ``num_vars`` is n+1."""

    num_vars: int
    modulus: PrimeModulus

    def __post_init__(self):
        if isinstance(self.modulus, int):
            object.__setattr__(self, "modulus", PrimeModulus(self.modulus))
        if self.num_vars < 1:
            raise ValueError("a ring needs at least one variable")

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def n(self) -> int:
        """Projective dimension of Proj S."""
        return self.num_vars - 1

    def monomial_count(self, degree: int) -> int:
        return comb(degree + self.n, self.n) if degree >= 0 else 0

    def __repr__(self):
        return f"RingSpec(num_vars={self.num_vars}, p={self.p})"


@lru_cache(maxsize=512)
def monomials(nvars: int, degree: int) -> tuple:
    """All exponent tuples of the given degree, graded-lex (descending)."""
    if degree < 0:
        return ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


def bounded_monomials(nvars: int, degree: int, bound: int):
    """Exponent tuples of the given degree with every entry ``< bound``, in
    graded-lex (descending) order."""
    if degree < 0 or degree > nvars * (bound - 1):
        return
    if nvars == 1:
        if degree < bound:
            yield (degree,)
        return
    top = min(degree, bound - 1)
    low = max(0, degree - (nvars - 1) * (bound - 1))
    for first in range(top, low - 1, -1):
        for rest in bounded_monomials(nvars - 1, degree - first, bound):
            yield (first,) + rest


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


class HomogPoly:
    """Homogeneous polynomial with coefficients reduced modulo ``ring.p``."""

    __slots__ = ("ring", "degree", "terms")

    def __init__(self, ring: RingSpec, degree: int, terms=None, *, check=True):
        self.ring = ring
        self.degree = degree
        terms = {} if terms is None else terms
        if check:
            p = ring.p
            clean = {}
            for exp, c in terms.items():
                exp = tuple(int(x) for x in exp)
                if len(exp) != ring.num_vars:
                    raise ShapeError(f"exponent {exp} has wrong length for {ring}")
                if min(exp, default=0) < 0:
                    raise ShapeError(f"negative exponent in {exp}")
                if sum(exp) != degree:
                    raise ShapeError(f"term {exp} is not of degree {degree}")
                c = int(c) % p
                if c:
                    clean[exp] = c
            terms = clean
        self.terms = terms

    # constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ring, degree=0):
        return cls(ring, degree, {}, check=False)

    @classmethod
    def one(cls, ring):
        return cls(ring, 0, {(0,) * ring.num_vars: 1}, check=False)

    @classmethod
    def monomial(cls, ring, exp, coeff=1):
        exp = tuple(exp)
        return cls(ring, sum(exp), {exp: coeff})

    @classmethod
    def variable(cls, ring, i):
        exp = [0] * ring.num_vars
        exp[i] = 1
        return cls.monomial(ring, exp)

    # basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        """Terms in canonical graded-lex order, leading monomial first."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def coefficient(self, exp) -> int:
        return self.terms.get(tuple(exp), 0)

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self.ring == other.ring and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        from .parser import format_poly

        return f"HomogPoly({format_poly(self)!r}, deg={self.degree}, p={self.ring.p})"

    def __str__(self):
        from .parser import format_poly

        return format_poly(self)

    # arithmetic -------------------------------------------------------

    def _check_same_ring(self, other):
        if not isinstance(other, HomogPoly):
            raise TypeError(f"expected HomogPoly, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ShapeError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, -other)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        return poly_pow(self, k)

    def scale(self, c: int) -> "HomogPoly":
        p = self.ring.p
        c %= p
        if not c:
            return HomogPoly.zero(self.ring, self.degree)
        return HomogPoly(self.ring, self.degree, {e: v * c % p for e, v in self.terms.items()}, check=False)

    def truncate(self, q: int) -> "HomogPoly":
        """Drop every term with some exponent ``>= q`` (reduction mod m^[q])."""
        kept = {e: c for e, c in self.terms.items() if max(e) < q}
        return HomogPoly(self.ring, self.degree, kept, check=False)

    def frobenius(self, r: int = 1, trunc: int | None = None) -> "HomogPoly":
        """The p^r-th power, computed termwise: c*x^a -> c*x^(p^r a)."""
        scale = self.ring.p ** r
        terms = {}
        for e, c in self.terms.items():
            w = tuple(scale * x for x in e)
            if trunc is None or max(w) < trunc:
                terms[w] = c
        return HomogPoly(self.ring, self.degree * scale, terms, check=False)

    def shift(self, exp) -> "HomogPoly":
        """Multiply by the monomial x^exp."""
        terms = {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()}
        return HomogPoly(self.ring, self.degree + sum(exp), terms, check=False)


def add(f: HomogPoly, g: HomogPoly) -> HomogPoly:
    f._check_same_ring(g)
    if f.degree != g.degree:
        raise ShapeError(f"cannot add degree {f.degree} and degree {g.degree}")
    p = f.ring.p
    out = dict(f.terms)
    for e, c in g.terms.items():
        v = (out.get(e, 0) + c) % p
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return HomogPoly(f.ring, f.degree, out, check=False)


def mul(f: HomogPoly, g: HomogPoly, trunc: int | None = None) -> HomogPoly:
    f._check_same_ring(g)
    if trunc is not None and trunc < 1:
        raise ValueError("truncation bound must be >= 1")
    terms = _kernels.poly_mul(f.terms, g.terms, f.ring.p, trunc or 0)
    return HomogPoly(f.ring, f.degree + g.degree, terms, check=False)


def poly_pow(f: HomogPoly, k: int, trunc: int | None = None) -> HomogPoly:
    """f^k, optionally modulo m^[trunc].

    Writes ``k = sum k_i p^i`` and multiplies the Frobenius twists
    ``(f^(k_i))^(p^i)``; each small power ``f^(k_i)`` is a repeated product.
    """
    if k < 0:
        raise ValueError("negative exponent")
    if trunc is not None and trunc < 1:
        raise ValueError("truncation bound must be >= 1")
    ring = f.ring
    p = ring.p
    q = trunc or 0
    result = HomogPoly.one(ring)
    r = 0
    while k:
        k, digit = divmod(k, p)
        if digit:
            small = _kernels.poly_pow_small(f.terms, digit, ring.num_vars, p, q)
            piece = HomogPoly(ring, f.degree * digit, small, check=False).frobenius(r, trunc)
            result = mul(result, piece, trunc)
        r += 1
    if not result.terms:
        return HomogPoly.zero(ring, result.degree)
    return result


def naive_pow(f: HomogPoly, k: int, trunc: int | None = None) -> HomogPoly:
    """f^k by k successive products; the reference for :func:`poly_pow`."""
    result = HomogPoly.one(f.ring)
    for _ in range(k):
        result = mul(result, f, trunc)
    if trunc is not None:
        result = result.truncate(trunc)
    return result


def partial_derivative(f: HomogPoly, i: int) -> HomogPoly:
    if not 0 <= i < f.ring.num_vars:
        raise ShapeError(f"no variable x{i} in {f.ring}")
    if f.degree < 1:
        raise ShapeError("derivative of a degree-0 form")
    p = f.ring.p
    out = {}
    for e, c in f.terms.items():
        a = e[i]
        v = a * c % p
        if v:
            w = list(e)
            w[i] -= 1
            out[tuple(w)] = v
    return HomogPoly(f.ring, f.degree - 1, out, check=False)


def product(polys, ring: RingSpec, trunc: int | None = None) -> HomogPoly:
    result = HomogPoly.one(ring)
    for g in polys:
        result = mul(result, g, trunc)
    return result
