"""
Closed-form coefficient maps for U(lambda).

Three maps are kept side by side so that each can be checked against the
composition of the others:

* direct -> inverse: a_2..a_5 of f to A_2..A_5 of f^{-1};
* parameters -> direct: (lambda, a_2, c_1, c_2, c_3) to a_2..a_5, where c_k
  are the Taylor coefficients of the Schwarz-type function in
  z/f(z) = 1 - a_2 z - lambda z w(z);
* parameters -> inverse.

No class constraints are enforced here.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SchwarzCoeffs:
    """First three coefficients of w(z) = c1 z + c2 z^2 + c3 z^3 + ..."""

    c1: complex = 0j
    c2: complex = 0j
    c3: complex = 0j

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (complex(self.c1), complex(self.c2), complex(self.c3))


@dataclass(frozen=True)
class UFunctionParams:
    lam: float
    a2: complex
    schwarz: SchwarzCoeffs

    @classmethod
    def of(cls, lam, a2=0j, c1=0j, c2=0j, c3=0j) -> UFunctionParams:
        return cls(float(lam), complex(a2), SchwarzCoeffs(complex(c1), complex(c2), complex(c3)))


@dataclass(frozen=True)
class DirectCoeffs:
    a2: complex
    a3: complex
    a4: complex
    a5: complex

    def as_tuple(self):
        return (self.a2, self.a3, self.a4, self.a5)

    def sequence(self) -> list[complex]:
        """Coefficients indexed by power: [0, 1, a2, a3, a4, a5]."""
        return [0j, 1 + 0j, *self.as_tuple()]


@dataclass(frozen=True)
class InverseCoeffs:
    A2: complex
    A3: complex
    A4: complex
    A5: complex

    def as_tuple(self):
        return (self.A2, self.A3, self.A4, self.A5)

    def sequence(self) -> list[complex]:
        return [0j, 1 + 0j, *self.as_tuple()]


def inverse_coeffs_from_direct(d: DirectCoeffs) -> InverseCoeffs:
    a2, a3, a4, a5 = d.as_tuple()
    return InverseCoeffs(
        A2=-a2,
        A3=2 * a2**2 - a3,
        A4=-a4 + 5 * a2 * a3 - 5 * a2**3,
        A5=-a5 + 6 * a2 * a4 - 21 * a2**2 * a3 + 3 * a3**2 + 14 * a2**4,
    )


def direct_coeffs_from_params(p: UFunctionParams) -> DirectCoeffs:
    lam, a2 = p.lam, p.a2
    c1, c2, c3 = p.schwarz.as_tuple()
    return DirectCoeffs(
        a2=a2,
        a3=lam * c1 + a2**2,
        a4=lam * c2 + 2 * lam * a2 * c1 + a2**3,
        a5=lam * c3 + 2 * lam * a2 * c2 + lam**2 * c1**2 + 3 * lam * a2**2 * c1 + a2**4,
    )


def inverse_coeffs_from_params(p: UFunctionParams) -> InverseCoeffs:
    lam, a2 = p.lam, p.a2
    c1, c2, c3 = p.schwarz.as_tuple()
    return InverseCoeffs(
        A2=-a2,
        A3=-lam * c1 + a2**2,
        A4=-lam * c2 + 3 * lam * a2 * c1 - a2**3,
        A5=-lam * c3 + 4 * lam * a2 * c2 - 6 * lam * a2**2 * c1 + 2 * lam**2 * c1**2 + a2**4,
    )
