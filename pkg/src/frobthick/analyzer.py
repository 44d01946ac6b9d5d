"""Frobenius maps on cohomology of thickenings.

For X = Proj S/(f_1..f_c) and a twist j, the map on top cohomology of the
bracket thickening is modelled on H^{n+1}_m(S): a class eta of degree j - d
annihilated by every f_i is sent to ``(f_1...f_c)^(p-t) * F(eta)``, a class
of degree p j - d t.  Injectivity is a rank computation on that linear map.
For c = 1 bracket and power thickenings coincide.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import _kernels
from .cohomology import (
    CechClass,
    CohomologyPiece,
    LevelError,
    Subspace,
    annihilator_subspace,
    class_from_coordinates,
    frobenius,
    full_subspace,
    is_zero,
    multiply,
)
from .ideals import InvariantViolation
from .linalg import FpMatrix, rref
from .parser import format_poly, parse_poly
from .polyring import HomogPoly, RingSpec, ShapeError, bounded_monomials, poly_pow, product

DEFAULT_GUARDRAIL = 500_000


class GuardrailError(RuntimeError):
    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Variety:
    ring: RingSpec
    generators: tuple
    smooth_certificate: bool | None = None

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ShapeError("a variety needs at least one equation")
        if len(gens) > self.ring.n:
            raise ShapeError(f"{len(gens)} equations in P^{self.ring.n}")
        for g in gens:
            if g.ring != self.ring or not g.terms or g.degree < 1:
                raise ShapeError(f"bad generator {g!r}")

    @classmethod
    def parse(cls, n, p, texts):
        ring = RingSpec(n + 1, p)
        return cls(ring, tuple(parse_poly(t, ring) for t in texts))

    @property
    def c(self):
        return len(self.generators)

    @property
    def degrees(self):
        return tuple(g.degree for g in self.generators)

    @property
    def d(self):
        return sum(self.degrees)

    def to_dict(self):
        return {
            "n": self.ring.n,
            "p": self.ring.p,
            "c": self.c,
            "degrees": list(self.degrees),
            "generators": [format_poly(g) for g in self.generators],
        }


@dataclass(frozen=True)
class ThickeningQuery:
    t: int
    twist: int = 0
    mode: str = "bracket"

    def to_dict(self):
        return {"t": self.t, "twist": self.twist, "mode": self.mode}


@dataclass
class InjectivityReport:
    variety: Variety
    query: ThickeningQuery
    domain_dim: int
    codomain_dim: int
    rank: int
    injective: bool
    level: int
    kernel_witness: CechClass | None = None
    note: str = ""
    elapsed_ms: float = 0.0

    def to_dict(self):
        witness = None
        if self.kernel_witness is not None:
            witness = {
                "numerator": format_poly(self.kernel_witness.numerator),
                "level": self.kernel_witness.level,
            }
        result = {
            "domain_dim": self.domain_dim,
            "codomain_dim": self.codomain_dim,
            "rank": self.rank,
            "injective": self.injective,
            "kernel_witness": witness,
            "level": self.level,
        }
        if self.note:
            result["note"] = self.note
        return {
            "variety": self.variety.to_dict(),
            "query": self.query.to_dict(),
            "result": result,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


@dataclass
class _MapData:
    domain: Subspace
    codomain_monomials: list
    matrix: FpMatrix
    multiplier: HomogPoly
    level: int
    codomain_piece: CohomologyPiece


def predicted_codomain_monomials(v: Variety, q: ThickeningQuery, level: int | None = None) -> int:
    """Number of monomials in the numerator degree of the target at level e p."""
    n, p = v.ring.n, v.ring.p
    piece = CohomologyPiece(v.ring, q.twist - v.d)
    e = piece.minimal_level if level is None else level
    top = (n + 1) * e * p - v.d * q.t + p * q.twist
    return comb(top + n, n) if top >= 0 else 0


def _check_query(v: Variety, q: ThickeningQuery, guardrail, level):
    p = v.ring.p
    if not 1 <= q.t <= p:
        raise PreconditionError(f"thickening exponent t={q.t} must satisfy 1 <= t <= p={p}")
    if q.mode not in ("bracket", "power"):
        raise PreconditionError(f"unknown mode {q.mode!r}")
    if q.mode == "power" and v.c > 1:
        raise PreconditionError("power thickenings are only supported for hypersurfaces")
    if guardrail is not None:
        estimate = predicted_codomain_monomials(v, q, level)
        if estimate > guardrail:
            raise GuardrailError(
                f"predicted codomain monomial count {estimate} exceeds the ceiling {guardrail}", estimate
            )


def domain_subspace(v: Variety, twist: int, level: int | None = None) -> Subspace:
    """The degree-(twist - d) classes annihilated by every generator."""
    piece = CohomologyPiece(v.ring, twist - v.d)
    if level is not None and level < piece.minimal_level:
        raise LevelError(f"level {level} below the minimal level {piece.minimal_level}")
    vanishing_targets = all(piece.degree + di > -v.ring.num_vars for di in v.degrees)
    if piece.dimension == 0 or vanishing_targets:
        return full_subspace(piece, level)
    return annihilator_subspace(v.generators, piece, level)


def _build(v: Variety, q: ThickeningQuery, level=None, guardrail=DEFAULT_GUARDRAIL) -> _MapData:
    _check_query(v, q, guardrail, level)
    ring = v.ring
    p = ring.p
    domain = domain_subspace(v, q.twist, level)
    e = domain.level
    bound = e * p
    codomain_piece = CohomologyPiece(ring, p * q.twist - v.d * q.t)
    multiplier = poly_pow(product(v.generators, ring), p - q.t, trunc=bound)
    numer_degree = ring.num_vars * bound + codomain_piece.degree
    codomain = list(bounded_monomials(ring.num_vars, numer_degree, bound)) if domain.dim else []
    index = {m: i for i, m in enumerate(codomain)}
    images = _kernels.frobenius_shifts(multiplier.terms, list(domain.monomials), p, bound)
    cols = []
    for vec in domain.basis.columns():
        col = [0] * len(codomain)
        for coeff, image in zip(vec, images):
            if coeff:
                for w, c in image.items():
                    i = index[w]
                    col[i] = (col[i] + coeff * c) % p
        cols.append(col)
    matrix = FpMatrix.from_columns(cols, p, len(codomain))
    return _MapData(domain, codomain, matrix, multiplier, e, codomain_piece)


def thickening_matrix(v: Variety, q: ThickeningQuery, level=None, guardrail=DEFAULT_GUARDRAIL) -> FpMatrix:
    """Matrix of eta -> (f_1...f_c)^(p-t) F(eta): columns index the domain
    (annihilator) basis, rows the codomain coordinates at level e p."""
    return _build(v, q, level, guardrail).matrix


def is_injective(v: Variety, q: ThickeningQuery, level=None, guardrail=DEFAULT_GUARDRAIL) -> InjectivityReport:
    start = time.perf_counter()
    data = _build(v, q, level, guardrail)
    p = v.ring.p
    rank, kernel = rref(data.matrix) if data.matrix.cols else (0, FpMatrix.zeros(0, 0, p))
    domain_dim = data.domain.dim
    injective = rank == domain_dim
    note = ""
    if domain_dim == 0:
        note = "domain piece is zero; injectivity is vacuous"
    elif data.codomain_piece.dimension == 0:
        note = "not injective (codomain zero)"
    witness = None
    if not injective:
        vec = kernel.column(0)
        coords = data.domain.basis @ vec
        witness = class_from_coordinates(v.ring, list(data.domain.monomials), coords, data.level)
        image = multiply(data.multiplier, frobenius(witness))
        if is_zero(witness) or not is_zero(image):
            raise InvariantViolation("kernel witness does not re-verify")
    elapsed = (time.perf_counter() - start) * 1000
    return InjectivityReport(
        v, q, domain_dim, data.codomain_piece.dimension, rank, injective, data.level, witness, note, elapsed
    )


def minimal_t(v: Variety, twist: int = 0, mode: str = "bracket", check_monotone=False, guardrail=DEFAULT_GUARDRAIL):
    """Least t in [1, p] with an injective map, or None.

    Injectivity is upward closed in t (the map for a larger t factors the one
    for a smaller t), so a binary search suffices.  With ``check_monotone``
    every t is evaluated and the up-set property is asserted.
    """
    p = v.ring.p

    def ok(t):
        return is_injective(v, ThickeningQuery(t, twist, mode), guardrail=guardrail).injective

    if check_monotone:
        flags = [ok(t) for t in range(1, p + 1)]
        first = next((t for t, f in zip(range(1, p + 1), flags) if f), None)
        if first is not None and not all(flags[first - 1:]):
            raise InvariantViolation(f"injective t values are not an up-set: {flags}")
    if not ok(p):
        result = None
    else:
        lo, hi = 1, p
        while lo < hi:
            mid = (lo + hi) // 2
            if ok(mid):
                hi = mid
            else:
                lo = mid + 1
        result = lo
    if check_monotone and result != first:
        raise InvariantViolation(f"binary search gave {result}, scan gave {first}")
    return result


def nu(f: HomogPoly, e: int = 1) -> int:
    """max{k >= 0 : f^k not in m^[p^e]}."""
    if e < 1:
        raise ValueError("need e >= 1")
    if not f.terms or f.degree < 1:
        raise ValueError("need a nonzero form of positive degree")
    q = f.ring.p ** e
    n = f.ring.n

    def outside(k):
        return not poly_pow(f, k, trunc=q).is_zero()

    lo, hi = 0, ((n + 1) * (q - 1)) // f.degree
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if outside(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def fpt_estimate(f: HomogPoly, e: int = 1) -> Fraction:
    return Fraction(nu(f, e), f.ring.p ** e)


def ci_bound_t0(n: int, degrees) -> int:
    """Least t0 with t0 * d_i >= (n+1-c)(d-c)+1 for every i."""
    degrees = list(degrees)
    if not degrees or min(degrees) < 1:
        raise ValueError("need c >= 1 positive degrees")
    c, d = len(degrees), sum(degrees)
    target = (n + 1 - c) * (d - c) + 1
    low = min(degrees)
    return max(1, -(-target // low))


def ordinary_power_bound(c: int, t0: int) -> int:
    if c < 1 or t0 < 1:
        raise ValueError("need c, t0 >= 1")
    return c * (t0 - 1) + 1
