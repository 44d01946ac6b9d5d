"""Homogeneous ideals handled one graded piece at a time.

Every question (membership, Hilbert function, containment of a power of the
maximal ideal) is answered by exact linear algebra over F_p in a single
degree.  No Groebner bases are computed.

Monomial generators are treated specially: the degree-D piece of
S/(monomial part) has the standard monomials as a basis, so only the
non-monomial generators need to be expanded into spanning vectors.  The
resulting sparse system is split into connected blocks before elimination.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb

from . import _kernels
from .linalg import FpMatrix
from .monomial import MonomialIdeal
from .polyring import HomogPoly, RingSpec, ShapeError, monomials, mul, partial_derivative


class InvariantViolation(AssertionError):
    """An internal cross-check disagreed with the primary computation."""


class HomogIdeal:
    """Ideal generated by homogeneous forms; zero generators are dropped."""

    def __init__(self, ring: RingSpec, generators):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ShapeError("generator from a different ring")
            if g.terms:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)

    @property
    def degrees(self):
        return tuple(g.degree for g in self.generators)

    def __add__(self, other):
        return HomogIdeal(self.ring, self.generators + other.generators)

    def __repr__(self):
        return f"HomogIdeal({', '.join(map(str, self.generators))})"

    def monomial_part(self) -> MonomialIdeal:
        return MonomialIdeal(
            self.ring.num_vars, [next(iter(g.terms)) for g in self.generators if len(g.terms) == 1]
        )

    def nonmonomial_generators(self):
        return [g for g in self.generators if len(g.terms) > 1]


@dataclass(frozen=True)
class GradedPiece:
    """Spanning data for [I]_D.

    ``basis`` lists the coordinate monomials; the columns of ``span`` are the
    coordinates of the products g * x^a.  With ``reduced`` the coordinates are
    taken in S/(monomial generators) and ``basis`` holds only the standard
    monomials.
    """

    degree: int
    basis: tuple
    span: FpMatrix
    reduced: bool

    @property
    def quotient_dim(self):
        return len(self.basis) - rank_of_rows(self.span.transpose().entries, self.span.rows, self.span.p)


def _spanning_rows(ideal: HomogIdeal, D: int, reduced: bool):
    """Sparse spanning vectors (dicts column -> value) and the basis."""
    nv = ideal.ring.num_vars
    if reduced:
        mono = ideal.monomial_part()
        basis = [m for m in monomials(nv, D) if not mono.contains(m)]
        gens = ideal.nonmonomial_generators()
    else:
        mono = MonomialIdeal.zero(nv)
        basis = list(monomials(nv, D))
        gens = list(ideal.generators)
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    for g in gens:
        if g.degree > D:
            continue
        for a in monomials(nv, D - g.degree):
            if reduced and mono.contains(a):
                continue
            row = {}
            for u, c in g.terms.items():
                j = index.get(tuple(x + y for x, y in zip(u, a)))
                if j is not None:
                    row[j] = c
            if row:
                rows.append(row)
    return basis, index, rows


def graded_piece(ideal: HomogIdeal, D: int, reduced=False) -> GradedPiece:
    basis, _, rows = _spanning_rows(ideal, D, reduced)
    p = ideal.ring.p
    cols = [[r.get(i, 0) for i in range(len(basis))] for r in rows]
    return GradedPiece(D, tuple(basis), FpMatrix.from_columns(cols, p, len(basis)), reduced)


def _components(rows, ncols):
    """Group row indices by connected component of the row/column graph."""
    parent = list(range(ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in rows:
        it = iter(r)
        first = find(next(it))
        for j in it:
            root = find(j)
            if root != first:
                parent[root] = first
    groups = {}
    for k, r in enumerate(rows):
        groups.setdefault(find(next(iter(r))), []).append(k)
    return groups, find


def _dense(rows, cols):
    pos = {c: i for i, c in enumerate(cols)}
    out = []
    for r in rows:
        v = [0] * len(cols)
        for j, c in r.items():
            v[pos[j]] = c
        out.append(v)
    return out


def rank_of_rows(rows, ncols, p) -> int:
    rows = [list(r) for r in rows]
    if not rows or not ncols:
        return 0
    return len(_kernels.echelon(rows, ncols, p, False)[1])


def _sparse_rank(rows, p):
    if not rows:
        return 0
    ncols = 1 + max(max(r) for r in rows)
    groups, _ = _components(rows, ncols)
    total = 0
    for members in groups.values():
        block = [rows[k] for k in members]
        cols = sorted({j for r in block for j in r})
        total += len(_kernels.echelon(_dense(block, cols), len(cols), p, False)[1])
    return total


def _in_span(rows, target, p) -> bool:
    """Whether the sparse vector *target* lies in the span of *rows*."""
    if not target:
        return True
    if not rows:
        return False
    ncols = 1 + max(max(max(r) for r in rows), max(target))
    groups, find = _components(rows, ncols)
    roots = {find(j) for j in target}
    block = [rows[k] for root in roots for k in groups.get(root, ())]
    cols = sorted({j for r in block for j in r} | set(target))
    reduced, pivots = _kernels.echelon(_dense(block, cols), len(cols), p, False)
    vec = _dense([target], cols)[0]
    for row, pc in zip(reduced, pivots):
        c = vec[pc]
        if c:
            vec = [(x - c * y) % p for x, y in zip(vec, row)]
    return not any(vec)


def membership(f: HomogPoly, ideal: HomogIdeal) -> bool:
    """Whether f lies in the ideal, decided in degree deg f."""
    if f.ring != ideal.ring:
        raise ShapeError("ring mismatch")
    if not f.terms:
        return True
    basis, index, rows = _spanning_rows(ideal, f.degree, reduced=True)
    target = {index[e]: c for e, c in f.terms.items() if e in index}
    return _in_span(rows, target, f.ring.p)


def hilbert_function(ideal: HomogIdeal, D: int) -> int:
    """dim_F [S/I]_D."""
    if D < 0:
        return 0
    basis, _, rows = _spanning_rows(ideal, D, reduced=True)
    return len(basis) - _sparse_rank(rows, ideal.ring.p)


def contains_power_of_max_ideal(ideal: HomogIdeal, N: int) -> bool:
    """Whether m^N is contained in the ideal (a zero piece stays zero upward)."""
    return hilbert_function(ideal, max(N, 0)) == 0


def _det(matrix, ring):
    """Leibniz expansion of a small square matrix of polynomials."""
    size = len(matrix)
    total = None
    for perm in permutations(range(size)):
        inversions = sum(1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j])
        term = HomogPoly.one(ring)
        for i, j in enumerate(perm):
            term = mul(term, matrix[i][j])
        if inversions % 2:
            term = -term
        total = term if total is None else total + term
    return total


def jacobian_ideal(f_list) -> HomogIdeal:
    """Ideal of the c x c minors of the (n+1) x c matrix (d f_j / d x_i)."""
    f_list = list(f_list)
    if not f_list:
        raise ShapeError("need at least one form")
    ring = f_list[0].ring
    c = len(f_list)
    if c > ring.num_vars:
        raise ShapeError(f"{c} forms exceed the {ring.num_vars} variables")
    partials = [[partial_derivative(f, i) for f in f_list] for i in range(ring.num_vars)]
    minors = [_det([partials[i] for i in rows], ring) for rows in combinations(range(ring.num_vars), c)]
    return HomogIdeal(ring, minors)


def smoothness_degree_bound(n: int, degrees) -> int:
    """Sum(d_i - 1) + (n+1-c)(d-c-1) + 1: a degree where m^B lies in J + I once
    J + I is m-primary."""
    c = len(degrees)
    d = sum(degrees)
    return sum(di - 1 for di in degrees) + (n + 1 - c) * (d - c - 1) + 1


def is_smooth_projective_ci(f_list) -> bool:
    """Jacobian criterion with an explicit degree: J + I contains m^B."""
    f_list = list(f_list)
    ring = f_list[0].ring
    jac = jacobian_ideal(f_list)
    if not jac.generators:
        return False
    bound = smoothness_degree_bound(ring.n, [f.degree for f in f_list])
    return contains_power_of_max_ideal(jac + HomogIdeal(ring, f_list), bound)


def complete_intersection_hilbert(n: int, degrees, D: int) -> int:
    """Coefficient of t^D in prod(1 - t^d_i) / (1 - t)^(n+1)."""
    numer = {0: 1}
    for di in degrees:
        nxt = dict(numer)
        for k, v in numer.items():
            nxt[k + di] = nxt.get(k + di, 0) - v
        numer = nxt
    return sum(v * comb(D - k + n, n) for k, v in numer.items() if k <= D)


def regular_sequence_probe(f_list, max_degree=None) -> bool:
    """Compare the Hilbert function of S/(f_1..f_c) with that of a complete
    intersection of the same degrees up to ``max_degree`` (default 2d).

    Agreement in every degree is equivalent to being a regular sequence; this
    probe only inspects finitely many degrees, so a True answer is evidence,
    not a proof.
    """
    f_list = list(f_list)
    ring = f_list[0].ring
    degrees = [f.degree for f in f_list]
    top = 2 * sum(degrees) if max_degree is None else max_degree
    ideal = HomogIdeal(ring, f_list)
    if len(ideal.generators) != len(f_list):
        return False
    return all(
        hilbert_function(ideal, D) == complete_intersection_hilbert(ring.n, degrees, D) for D in range(top + 1)
    )


def power_containment(f_list, t: int, t0: int, cross_check: int = 0, seed: int = 0) -> bool:
    """Whether (f_1..f_c)^t lies in (f_1^t0, ..., f_c^t0).

    Decided by pigeonhole: every exponent vector a with |a| = t has some
    a_i >= t0 exactly when t >= c(t0-1)+1.  With ``cross_check > 0`` that many
    products f^a (all of them if fewer exist) are also tested by membership,
    and each answer must agree with ``max(a) >= t0``.
    """
    if t < 1 or t0 < 1:
        raise ValueError("need t, t0 >= 1")
    f_list = list(f_list)
    c = len(f_list)
    verdict = t >= c * (t0 - 1) + 1
    if cross_check:
        ring = f_list[0].ring
        target = HomogIdeal(ring, [f ** t0 for f in f_list])
        vectors = [tuple(m) for m in monomials(c, t)]
        if len(vectors) > cross_check:
            vectors = random.Random(seed).sample(vectors, cross_check)
        for a in vectors:
            prod = HomogPoly.one(ring)
            for f, k in zip(f_list, a):
                prod = mul(prod, f ** k)
            if membership(prod, target) != (max(a) >= t0):
                raise InvariantViolation(f"membership of f^{a} disagrees with the pigeonhole count")
    return verdict
