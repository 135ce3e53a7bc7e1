"""
The class U(lambda): Schwarz-coefficient feasibility, the defining
deviation functional, and a catalog of closed-form members z/p(z).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .coeffs import DirectCoeffs, SchwarzCoeffs, UFunctionParams
from .errors import CatalogError, DomainError, PoleError
from .series import TruncatedSeries, series_reciprocal

FEASIBILITY_TOL = 1e-12
POLE_TOL = 1e-9
DEFAULT_RADIUS = 0.999
DEFAULT_SAMPLES = 4096

__all__ = [
    "SchwarzCoeffs",
    "Feasibility",
    "ClosedFormFunction",
    "Membership",
    "CATALOG",
    "c2_ceiling",
    "c3_ceiling",
    "schwarz_feasible",
    "u_deviation",
    "is_in_u_lambda",
    "extremal",
    "schwarz_to_series",
]


def c2_ceiling(t1):
    """Largest admissible |c2| given |c1| = t1."""
    return 0.5 * (1.0 - t1 * t1)


def c3_ceiling(t1, t2):
    """Largest admissible |c3| given |c1| = t1, |c2| = t2 (may be negative off the body)."""
    return (1.0 - t1 * t1 - 4.0 * t2 * t2 / (1.0 + t1)) / 3.0


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    slacks: tuple[float, float, float]

    def __bool__(self):
        return self.feasible


def schwarz_feasible(c: SchwarzCoeffs, tol: float = FEASIBILITY_TOL) -> Feasibility:
    t1, t2, t3 = (abs(v) for v in c.as_tuple())
    s1 = 1.0 - t1
    s2 = c2_ceiling(t1) - t2
    s3 = c3_ceiling(t1, t2) - t3
    slacks = (s1, s2, s3)
    return Feasibility(all(s >= -tol for s in slacks), slacks)


@dataclass(frozen=True)
class ClosedFormFunction:
    """f(z) = z / p(z) with p(0) = 1."""

    denom: tuple[complex, ...]
    name: str = ""

    def __post_init__(self):
        d = tuple(complex(v) for v in self.denom)
        if not d or abs(d[0] - 1) > FEASIBILITY_TOL:
            raise DomainError("denominator must satisfy p(0) = 1")
        object.__setattr__(self, "denom", d)

    def p(self, z):
        return np.polyval(self.denom[::-1], z)

    def deviation_poly(self) -> tuple[complex, ...]:
        """Coefficients of p(z) - z p'(z) - 1 = sum_k (1 - k) p_k z^k."""
        return (0j,) + tuple((1 - k) * pk for k, pk in enumerate(self.denom) if k >= 1)

    def series(self, order: int = 8) -> TruncatedSeries:
        q = series_reciprocal(TruncatedSeries.from_coeffs(self.denom, order))
        return q.shift(1)

    def direct_coeffs(self) -> DirectCoeffs:
        s = self.series(max(8, len(self.denom) + 5))
        return DirectCoeffs(*(complex(s[k]) for k in range(2, 6)))


def u_deviation(f: ClosedFormFunction, radius: float = DEFAULT_RADIUS, samples: int = DEFAULT_SAMPLES) -> float:
    """max |(z/f)^2 f' - 1| over ``samples`` equally spaced points of |z| = radius.

    Evaluated through the polynomial p - z p' - 1 so nothing is divided by p.
    """
    if not 0 < radius < 1:
        raise DomainError(f"radius must lie in (0, 1), got {radius}")
    if samples < 8:
        raise DomainError("need at least 8 samples")
    z = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    if np.min(np.abs(f.p(z))) < POLE_TOL:
        raise PoleError(f"denominator of {f.name or 'f'} vanishes near |z| = {radius}")
    dev = np.polyval(f.deviation_poly()[::-1], z)
    return float(np.max(np.abs(dev)))


@dataclass(frozen=True)
class Membership:
    member: bool
    margin: float
    deviation: float

    def __bool__(self):
        return self.member


def is_in_u_lambda(
    f: ClosedFormFunction, lam: float, radius: float = DEFAULT_RADIUS, samples: int = DEFAULT_SAMPLES
) -> Membership:
    """Boundary-grid membership test at |z| = radius.

    This is a necessary condition only. For f = z/p the deviation is a
    polynomial vanishing at 0, so its maximum modulus grows with the radius
    and radius -> 1 recovers the supremum over the disc.
    """
    dev = u_deviation(f, radius, samples)
    return Membership(dev <= lam, lam - dev, dev)


def _k_phi(lam, phi):
    e = cmath.exp(1j * phi)
    return (1, -(1 + lam) * e, lam * e * e)


CATALOG = {
    "k_phi": _k_phi,
    "f_lambda": lambda lam, phi: (1, -(1 + lam), lam),
    "f1": lambda lam, phi: (1, 0, 0, -lam / 2),
    "f2": lambda lam, phi: (1, 0, -lam),
    "identity": lambda lam, phi: (1,),
}


def extremal(name: str, lam: float = 1.0, phi: float = 0.0) -> ClosedFormFunction:
    """Closed-form member of U(lambda) from the catalog.

    k_phi       rotations of the |a2| = 1 + lambda extremal
    f_lambda    z / ((1 - z)(1 - lambda z)), the k_phi with phi = 0
    f1          z / (1 - lambda z^3 / 2)
    f2          z / (1 - lambda z^2)
    identity    z
    """
    try:
        build = CATALOG[name]
    except KeyError:
        raise CatalogError(f"unknown extremal {name!r}; choose from {sorted(CATALOG)}") from None
    if not 0 < lam <= 1:
        raise DomainError(f"lambda must lie in (0, 1], got {lam}")
    return ClosedFormFunction(build(lam, phi), name)


def schwarz_to_series(p: UFunctionParams, order: int = 8) -> TruncatedSeries:
    """Series of f realizing z/f(z) = 1 - a2 z - lambda z w(z).

    Only the coefficient data is realized: a feasible (a2, c) need not
    come from an actual member of the class.
    """
    if order < 5:
        raise DomainError("schwarz_to_series needs order >= 5")
    c1, c2, c3 = p.schwarz.as_tuple()
    lam = p.lam
    z_over_f = TruncatedSeries.from_coeffs([1, -p.a2, -lam * c1, -lam * c2, -lam * c3], order)
    return series_reciprocal(z_over_f).shift(1)
