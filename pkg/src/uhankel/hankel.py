"""Hankel determinants H_q(n) of coefficient sequences."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .coeffs import UFunctionParams
from .errors import DomainError, LengthError

UNIT_TOL = 1e-12


@dataclass(frozen=True)
class HankelSpec:
    q: int
    n: int

    def __post_init__(self):
        if self.q < 1 or self.n < 1:
            raise DomainError(f"need q >= 1 and n >= 1, got q={self.q}, n={self.n}")

    @property
    def last_index(self) -> int:
        return self.n + 2 * self.q - 2


H2_2 = HankelSpec(2, 2)
H3_1 = HankelSpec(3, 1)


def hankel_matrix(spec: HankelSpec, coeffs: Sequence[complex]) -> np.ndarray:
    c = _checked(spec, coeffs)
    idx = spec.n + np.add.outer(np.arange(spec.q), np.arange(spec.q))
    return c[idx]


def hankel_det(spec: HankelSpec, coeffs: Sequence[complex]) -> complex:
    """Determinant of the q x q matrix with entries coeffs[n + i + j].

    ``coeffs`` is indexed by power, so ``coeffs[1]`` is the unit linear
    coefficient of a normalized function (a TruncatedSeries' coefficient
    array can be passed as is). Orders up to 3 use the explicit expansion.
    """
    c = _checked(spec, coeffs)
    n, q = spec.n, spec.q
    if q == 1:
        return complex(c[n])
    if q == 2:
        return complex(c[n] * c[n + 2] - c[n + 1] ** 2)
    if q == 3:
        a, b, d, e, g = c[n : n + 5]
        # [[a b d] [b d e] [d e g]]
        return complex(a * (d * g - e * e) - b * (b * g - e * d) + d * (b * e - d * d))
    return complex(np.linalg.det(hankel_matrix(spec, c)))


def _checked(spec: HankelSpec, coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    if c.size <= spec.last_index:
        raise LengthError(
            f"H_{spec.q}({spec.n}) needs coefficients through index {spec.last_index}, got {c.size - 1}"
        )
    if spec.n == 1 and abs(c[1] - 1) > UNIT_TOL:
        raise DomainError("coefficient sequence is not normalized (coeffs[1] != 1)")
    return c


def h22_inverse_reduced(p: UFunctionParams) -> complex:
    """H_2(2) of f^{-1} written in the parameters (lambda, a2, c)."""
    lam, a2 = p.lam, p.a2
    c1, c2, _ = p.schwarz.as_tuple()
    return lam * (a2 * c2 - a2**2 * c1 - lam * c1**2)


def h31_inverse_reduced(p: UFunctionParams) -> complex:
    """H_3(1) of f^{-1}; a2 drops out entirely."""
    lam = p.lam
    c1, c2, c3 = p.schwarz.as_tuple()
    return lam**2 * (c1 * c3 - c2**2 - lam * c1**3)
