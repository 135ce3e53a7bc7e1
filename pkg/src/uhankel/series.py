"""
Truncated power series over the complex numbers.

A series of order N carries the Taylor coefficients of powers 0..N. Every
operation silently drops powers above N. Values are immutable; the
coefficient array is marked read-only on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError, OrderMismatchError, SingularityError

DEFAULT_ORDER = 8
NORMALIZED_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    coeffs: np.ndarray

    # numpy scalars on the left must defer to __rmul__ / __radd__
    __array_ufunc__ = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size < 2:
            raise DomainError("a truncated series needs order >= 1")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_coeffs(cls, values: Iterable[complex], order: int = DEFAULT_ORDER) -> TruncatedSeries:
        """Pad with zeros or truncate ``values`` to exactly ``order + 1`` entries."""
        c = np.zeros(order + 1, dtype=complex)
        vals = np.asarray(list(values), dtype=complex)[: order + 1]
        c[: vals.size] = vals
        return cls(c)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        return cls(np.zeros(order + 1, dtype=complex))

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        return cls.from_coeffs([1.0], order)

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        """The series z."""
        return cls.from_coeffs([0.0, 1.0], order)

    @classmethod
    def normalized(cls, tail: Iterable[complex], order: int = DEFAULT_ORDER) -> TruncatedSeries:
        """z + tail[0] z^2 + tail[1] z^3 + ..."""
        return cls.from_coeffs([0.0, 1.0, *tail], order)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return self.coeffs.size

    def is_normalized(self, tol: float = NORMALIZED_TOL) -> bool:
        return abs(self.coeffs[0]) <= tol and abs(self.coeffs[1] - 1) <= tol

    def allclose(self, other: TruncatedSeries, atol: float = 1e-12) -> bool:
        return self.order == other.order and bool(np.all(np.abs(self.coeffs - other.coeffs) <= atol))

    def max_abs_diff(self, other: TruncatedSeries) -> float:
        _check_orders(self, other)
        return float(np.max(np.abs(self.coeffs - other.coeffs)))

    def shift(self, k: int = 1) -> TruncatedSeries:
        """Multiply by z**k, dropping overflow."""
        c = np.zeros_like(self.coeffs)
        c[k:] = self.coeffs[: self.coeffs.size - k]
        return TruncatedSeries(c)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            _check_orders(self, other)
            return TruncatedSeries(self.coeffs + other.coeffs)
        c = self.coeffs.copy()
        c[0] += other
        return TruncatedSeries(c)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return TruncatedSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __repr__(self):
        terms = ", ".join(f"{c.real:.6g}{c.imag:+.6g}j" for c in self.coeffs)
        return f"TruncatedSeries(order={self.order}, [{terms}])"


def _check_orders(a: TruncatedSeries, b: TruncatedSeries):
    if a.order != b.order:
        raise OrderMismatchError(f"series orders differ: {a.order} != {b.order}")


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    _check_orders(a, b)
    return TruncatedSeries(np.convolve(a.coeffs, b.coeffs)[: a.order + 1])


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """Coefficients of ``outer(inner(z))`` by Horner's scheme over truncated series."""
    _check_orders(outer, inner)
    if inner.coeffs[0] != 0:
        raise DomainError("inner series must have zero constant term")
    n = outer.order
    acc = np.zeros(n + 1, dtype=complex)
    acc[0] = outer.coeffs[n]
    for k in range(n - 1, -1, -1):
        acc = np.convolve(acc, inner.coeffs)[: n + 1]
        acc[0] += outer.coeffs[k]
    return TruncatedSeries(acc)


def series_revert(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of a normalized series.

    Solves for the inverse coefficients one order at a time. Because
    f has unit linear term, the n-th coefficient of f(g) is g_n plus a
    polynomial in g_1..g_{n-1}, so each step is a single subtraction.
    """
    if not f.is_normalized():
        raise DomainError("series reversion needs f(0) = 0 and f'(0) = 1")
    n = f.order
    a = f.coeffs
    g = np.zeros(n + 1, dtype=complex)
    g[1] = 1.0
    for m in range(2, n + 1):
        # [w^m] of sum_{k>=2} a_k g^k, with g known through w^{m-1}
        power = g.copy()
        total = 0j
        for k in range(2, m + 1):
            power = np.convolve(power, g)[: n + 1]
            total += a[k] * power[m]
        g[m] = -total
    return TruncatedSeries(g)


def series_reciprocal(p: TruncatedSeries) -> TruncatedSeries:
    """1/p through order N; needs p(0) != 0."""
    c = p.coeffs
    if c[0] == 0:
        raise SingularityError("reciprocal of a series with zero constant term")
    n = p.order
    q = np.zeros(n + 1, dtype=complex)
    q[0] = 1.0 / c[0]
    for m in range(1, n + 1):
        q[m] = -np.dot(c[1 : m + 1], q[m - 1 :: -1][:m]) / c[0]
    return TruncatedSeries(q)
