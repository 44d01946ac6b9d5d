"""Graded pieces of the top local cohomology module H^{n+1}_m(S).

A Cech class is a numerator ``s`` over ``(x_0 ... x_n)^e``; it vanishes
exactly when ``s`` lies in ``m^[e]``.  Raising the level multiplies the
numerator by ``x_0 ... x_n`` and never changes the class.  At level ``e`` a
class of internal degree ``m`` is recorded by the coordinates of its
numerator, reduced mod ``m^[e]``, on the monomials of degree ``(n+1)e + m``
with every exponent below ``e``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .linalg import FpMatrix, rref
from .polyring import HomogPoly, RingSpec, ShapeError, bounded_monomials, mul


class LevelError(ValueError):
    pass


@dataclass(frozen=True)
class CohomologyPiece:
    ring: RingSpec
    degree: int

    @property
    def dimension(self) -> int:
        n = self.ring.n
        return comb(-self.degree - 1, n) if self.degree <= -(n + 1) else 0

    @property
    def minimal_level(self) -> int:
        """Smallest level at which every class of the piece is representable."""
        return max(1, -self.degree - self.ring.n)

    def numerator_degree(self, level: int) -> int:
        return self.ring.num_vars * level + self.degree

    def coordinate_monomials(self, level: int):
        return list(bounded_monomials(self.ring.num_vars, self.numerator_degree(level), level))


@dataclass(frozen=True)
class CechClass:
    numerator: HomogPoly
    level: int

    def __post_init__(self):
        if self.level < 1:
            raise LevelError("Cech level must be >= 1")

    @property
    def ring(self):
        return self.numerator.ring

    @property
    def degree(self) -> int:
        return self.numerator.degree - self.ring.num_vars * self.level

    def __repr__(self):
        return f"[({self.numerator}) / (x0...x{self.ring.n})^{self.level}]"


def std_basis(piece: CohomologyPiece):
    """The classes [x^-a], a_i >= 1, sum(a) = -m, at the minimal level."""
    if piece.dimension == 0:
        return []
    e = piece.minimal_level
    ring = piece.ring
    return [
        CechClass(HomogPoly(ring, sum(b), {b: 1}, check=False), e)
        for b in piece.coordinate_monomials(e)
    ]


def is_zero(c: CechClass) -> bool:
    return c.numerator.truncate(c.level).is_zero()


def raise_level(c: CechClass, e_new: int) -> CechClass:
    if e_new < c.level:
        raise LevelError(f"cannot lower level {c.level} to {e_new}")
    k = e_new - c.level
    return CechClass(c.numerator.shift((k,) * c.ring.num_vars), e_new)


def frobenius(c: CechClass) -> CechClass:
    """Numerator s -> s^p (termwise), level e -> e p."""
    p = c.ring.p
    return CechClass(c.numerator.frobenius(1), c.level * p)


def multiply(g: HomogPoly, c: CechClass) -> CechClass:
    if g.ring != c.ring:
        raise ShapeError("ring mismatch")
    return CechClass(mul(g, c.numerator, trunc=c.level), c.level)


def coordinates(c: CechClass, index) -> list:
    """Coordinates of the reduced numerator on a monomial index."""
    vec = [0] * len(index)
    for e, v in c.numerator.terms.items():
        if max(e) < c.level:
            vec[index[e]] = v
    return vec


def class_from_coordinates(ring, monos, vec, level) -> CechClass:
    degree = sum(monos[0]) if monos else 0
    terms = {m: v for m, v in zip(monos, vec) if v % ring.p}
    return CechClass(HomogPoly(ring, degree, terms), level)


@dataclass(frozen=True)
class Subspace:
    """Subspace of a piece; basis columns are coordinates on ``monomials``."""

    piece: CohomologyPiece
    level: int
    monomials: tuple
    basis: FpMatrix

    @property
    def dim(self) -> int:
        return self.basis.cols

    def classes(self):
        ring = self.piece.ring
        return [class_from_coordinates(ring, self.monomials, col, self.level) for col in self.basis.columns()]


def full_subspace(piece: CohomologyPiece, level: int | None = None) -> Subspace:
    e = piece.minimal_level if level is None else level
    monos = tuple(piece.coordinate_monomials(e)) if piece.dimension else ()
    return Subspace(piece, e, monos, FpMatrix.identity(len(monos), piece.ring.p))


def multiplication_matrix(g: HomogPoly, piece: CohomologyPiece, level: int) -> FpMatrix:
    """Matrix of eta -> g*eta from ``piece`` to the piece of degree m + deg g,
    both in level-``level`` coordinates."""
    ring = piece.ring
    source = piece.coordinate_monomials(level)
    target = CohomologyPiece(ring, piece.degree + g.degree).coordinate_monomials(level)
    index = {m: i for i, m in enumerate(target)}
    cols = []
    for b in source:
        col = [0] * len(target)
        for u, c in g.terms.items():
            w = tuple(x + y for x, y in zip(u, b))
            if max(w) < level:
                col[index[w]] = (col[index[w]] + c) % ring.p
        cols.append(col)
    return FpMatrix.from_columns(cols, ring.p, len(target))


def annihilator_subspace(f_list, piece: CohomologyPiece, level: int | None = None) -> Subspace:
    """Classes of ``piece`` killed by every form in ``f_list``: the joint
    kernel of the multiplication matrices."""
    e = piece.minimal_level if level is None else level
    if e < piece.minimal_level:
        raise LevelError(f"level {e} below the minimal level {piece.minimal_level}")
    p = piece.ring.p
    monos = tuple(piece.coordinate_monomials(e)) if piece.dimension else ()
    if not monos:
        return Subspace(piece, e, (), FpMatrix.zeros(0, 0, p))
    rows = []
    for f in f_list:
        rows.extend(multiplication_matrix(f, piece, e).entries)
    stacked = FpMatrix.from_rows(rows, p, cols=len(monos))
    _, kernel = rref(stacked)
    return Subspace(piece, e, monos, kernel)
