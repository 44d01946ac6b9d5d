"""Monomial ideals, bracket powers m^[q] and ordinary powers m^N."""

from __future__ import annotations

import numpy as np

from .polyring import HomogPoly, bounded_monomials, divides, monomials


def minimalize(gens):
    """Drop every generator divisible by another one."""
    gens = sorted(set(map(tuple, gens)), key=lambda g: (sum(g), g))
    kept = []
    for g in gens:
        if not any(divides(h, g) for h in kept):
            kept.append(g)
    return frozenset(kept)


class MonomialIdeal:
    """Monomial ideal in ``nvars`` variables, stored by minimal generators.

    The unit ideal has the single generator ``(0, ..., 0)``; the zero ideal
    has none.
    """

    __slots__ = ("nvars", "generators")

    def __init__(self, nvars, generators=(), *, minimal=False):
        self.nvars = nvars
        gens = frozenset(map(tuple, generators)) if minimal else minimalize(generators)
        for g in gens:
            if len(g) != nvars:
                raise ValueError(f"generator {g} has wrong length")
        self.generators = gens

    @classmethod
    def unit(cls, nvars):
        return cls(nvars, [(0,) * nvars], minimal=True)

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, (), minimal=True)

    @classmethod
    def bracket_power(cls, nvars, q):
        if q < 1:
            raise ValueError("bracket power needs q >= 1")
        gens = []
        for i in range(nvars):
            e = [0] * nvars
            e[i] = q
            gens.append(tuple(e))
        return cls(nvars, gens, minimal=True)

    @classmethod
    def max_power(cls, nvars, N):
        """m^N, with m^N = S for N <= 0."""
        if N <= 0:
            return cls.unit(nvars)
        return cls(nvars, monomials(nvars, N), minimal=True)

    @classmethod
    def bracket_plus_power(cls, nvars, q, K):
        """m^K + m^[q] built from its known minimal generators.

        For K <= 0 this is S.  Otherwise the degree-K monomials with all
        exponents below q are minimal, and x_i^q is minimal exactly when no
        degree-K monomial divides it, i.e. when K >= q.
        """
        if K <= 0:
            return cls.unit(nvars)
        gens = list(bounded_monomials(nvars, K, q))
        if K >= q:
            gens.extend(cls.bracket_power(nvars, q).generators)
        return cls(nvars, gens, minimal=True)

    def is_unit(self):
        return (0,) * self.nvars in self.generators

    def contains(self, mono) -> bool:
        return any(divides(g, mono) for g in self.generators)

    __contains__ = contains

    def __add__(self, other):
        return MonomialIdeal(self.nvars, self.generators | other.generators)

    def intersect(self, other):
        if not self.generators or not other.generators:
            return MonomialIdeal.zero(self.nvars)
        lcms = {tuple(max(a, b) for a, b in zip(g, h)) for g in self.generators for h in other.generators}
        return MonomialIdeal(self.nvars, lcms)

    def colon_monomial(self, mono):
        """(I : x^mono), generated by x^(g - mono)_+ over generators g."""
        return MonomialIdeal(self.nvars, [tuple(max(a - b, 0) for a, b in zip(g, mono)) for g in self.generators])

    def colon(self, other):
        """(I : J) as the intersection of the colons by J's generators."""
        result = MonomialIdeal.unit(self.nvars)
        for g in sorted(other.generators):
            result = result.intersect(self.colon_monomial(g))
        return result

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.nvars == other.nvars and self.generators == other.generators

    def __hash__(self):
        return hash((self.nvars, self.generators))

    def __repr__(self):
        gens = sorted(self.generators, key=lambda g: (sum(g), g))
        shown = ", ".join(map(str, gens[:6]))
        more = f", ... ({len(gens)} total)" if len(gens) > 6 else ""
        return f"MonomialIdeal({shown}{more})"


def in_bracket(mono, q) -> bool:
    """Whether x^mono lies in m^[q]."""
    return any(a >= q for a in mono)


def reduce_mod_bracket(f: HomogPoly, q: int) -> HomogPoly:
    return f.truncate(q)


def poly_in_bracket(f: HomogPoly, q: int) -> bool:
    return reduce_mod_bracket(f, q).is_zero()


def colon_bracket_by_power(n: int, q: int, N: int) -> MonomialIdeal:
    """The colon ideal m^[q] : m^N in n+1 variables.

    Each degree-N monomial x^a contributes the colon (x_i^(q - a_i))_i, whose
    standard monomials form the box ``b <= q - 1 - a`` (empty if some
    a_i >= q).  Intersecting these ideals is the same as taking the union of
    the boxes; the union is computed as a down-closure on the grid
    ``[0, q)^(n+1)`` and the minimal generators are read off its complement.
    """
    if q < 1 or N < 0:
        raise ValueError("need q >= 1 and N >= 0")
    nvars = n + 1
    if N == 0:
        return MonomialIdeal.bracket_power(nvars, q)
    shape = (q,) * nvars
    # corner q-1-a for every degree-N monomial a with all a_i < q
    grid = np.indices(shape).reshape(nvars, -1)
    a = (q - 1) - grid
    corners = (a.sum(axis=0) == N).reshape(shape)
    standard = corners
    for axis in range(nvars):
        flipped = np.flip(standard, axis=axis)
        standard = np.flip(np.logical_or.accumulate(flipped, axis=axis), axis=axis)
    inside = ~standard
    minimal = inside.copy()
    for axis in range(nvars):
        below = np.zeros_like(inside)
        src = [slice(None)] * nvars
        dst = [slice(None)] * nvars
        src[axis] = slice(0, q - 1)
        dst[axis] = slice(1, q)
        below[tuple(dst)] = inside[tuple(src)]
        minimal &= ~below
    gens = [tuple(int(x) for x in idx) for idx in zip(*np.nonzero(minimal))]
    for i in range(nvars):
        corner = [0] * nvars
        corner[i] = q - 1
        if not inside[tuple(corner)]:
            e = [0] * nvars
            e[i] = q
            gens.append(tuple(e))
    return MonomialIdeal(nvars, gens, minimal=True)


def colon_bracket_by_power_naive(n: int, q: int, N: int) -> MonomialIdeal:
    """Same ideal via generic monomial colon and intersection (small inputs)."""
    nvars = n + 1
    return MonomialIdeal.bracket_power(nvars, q).colon(MonomialIdeal.max_power(nvars, N))


def graded_dim_complement(ideal: MonomialIdeal, D: int) -> int:
    """Number of degree-D monomials outside *ideal*."""
    return sum(1 for m in monomials(ideal.nvars, D) if not ideal.contains(m))

