"""Prime-field scalars and dense matrices over F_p."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import _kernels


@lru_cache(maxsize=None)
def _is_prime(p: int) -> bool:
    from sympy import isprime

    return bool(isprime(p))


@dataclass(frozen=True)
class PrimeModulus:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or self.p >= 1 << 31:
            raise ValueError(f"modulus must be a prime in [2, 2^31), got {self.p!r}")
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __int__(self):
        return self.p


@dataclass(frozen=True)
class Scalar:
    """A fully reduced residue modulo a prime."""

    value: int
    modulus: PrimeModulus

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus.p)

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.modulus != self.modulus:
                raise ValueError("scalars over different primes")
            return other.value
        return other

    def __add__(self, other):
        return Scalar(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return Scalar(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other):
        return Scalar(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.value, self.modulus)

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0


def scalar_inv(a: Scalar) -> Scalar:
    if a.value == 0:
        raise ZeroDivisionError("zero has no inverse modulo p")
    return Scalar(pow(a.value, -1, a.modulus.p), a.modulus)


@dataclass(frozen=True)
class FpMatrix:
    """Dense row-major matrix over F_p.

    ``entries`` is a tuple of row tuples; every entry lies in ``[0, p)``.
    """

    p: int
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows, p, cols=None):
        rows = [tuple(x % p for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(p, len(rows), cols, tuple(rows))

    @classmethod
    def from_columns(cls, columns, p, rows):
        columns = list(columns)
        data = tuple(tuple(c[i] % p for c in columns) for i in range(rows))
        return cls(p, rows, len(columns), data)

    @classmethod
    def zeros(cls, rows, cols, p):
        return cls(p, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, size, p):
        return cls(p, size, size, tuple(tuple(int(i == j) for j in range(size)) for i in range(size)))

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self):
        return FpMatrix(self.p, self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def __matmul__(self, other):
        if isinstance(other, FpMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            p = self.p
            ocols = other.columns()
            data = [
                tuple(sum(a * b for a, b in zip(r, c)) % p for c in ocols)
                for r in self.entries
            ]
            return FpMatrix(p, self.rows, other.cols, tuple(data))
        v = list(other)
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) % self.p for r in self.entries)


def echelon_form(m: FpMatrix, full=True):
    """Reduced (or plain) row echelon rows of *m* and their pivot columns."""
    return _kernels.echelon([list(r) for r in m.entries], m.cols, m.p, full)


def rank(m: FpMatrix) -> int:
    return len(echelon_form(m, full=False)[1])


def kernel_from_rref(reduced, pivots, ncols, p):
    """Basis of the null space read off a reduced row echelon form."""
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(reduced, pivots):
            if row[free]:
                v[pc] = (-row[free]) % p
        basis.append(v)
    return basis


def rref(m: FpMatrix):
    """Return ``(rank, kernel_basis)``; kernel vectors are the columns of
    ``kernel_basis`` (an ``m.cols x nullity`` matrix)."""
    reduced, pivots = echelon_form(m, full=True)
    kernel = kernel_from_rref(reduced, pivots, m.cols, m.p)
    return len(pivots), FpMatrix.from_columns(kernel, m.p, m.cols)
