"""
Sharp bounds for Hankel determinants of inverse functions in U(lambda).

Closed forms:
    |H_2(2)(f^-1)| <= lambda (1 + lambda + lambda^2)     (needs |a3| <= 1 + lambda + lambda^2)
    |H_3(1)(f^-1)| <= lambda^2 / 4   for lambda <= 1/4,  lambda^3 otherwise

Both are reproduced numerically by maximizing the reduced functionals over
the coefficient feasibility body. The search works in a box: every modulus
is a fraction in [0, 1] of its ceiling (which depends on the moduli before
it) and every phase is free, so each box point is feasible by construction.
A coarse grid plus seeded random samples picks the starting cells, and
bounded Nelder-Mead refines the best few.

``brute_force_oracle`` is a separate check that uses no local search: it
aligns all phases (the constraints only see moduli) and scans a dense grid
of moduli.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import minimize

from .coeffs import UFunctionParams, inverse_coeffs_from_params
from .errors import ConvergenceError, DomainError, UHankelError
from .hankel import H3_1, hankel_det, h22_inverse_reduced, h31_inverse_reduced
from .uclass import c2_ceiling, c3_ceiling

TWO_PI = 2.0 * math.pi
SOUNDNESS_TOL = 1e-9
SHARPNESS_RTOL = 1e-3
CONSTRAINT_TOL = 1e-12
CROSSOVER = 0.25


class Target(str, Enum):
    H2_2 = "H2_2"
    H3_1 = "H3_1"

    @classmethod
    def parse(cls, value) -> Target:
        if isinstance(value, Target):
            return value
        key = str(value).lower().replace("_", "").replace("(", "").replace(")", "")
        aliases = {"h2": cls.H2_2, "h22": cls.H2_2, "h3": cls.H3_1, "h31": cls.H3_1}
        try:
            return aliases[key]
        except KeyError:
            raise DomainError(f"unknown target {value!r}; use h2 or h3") from None


@dataclass(frozen=True)
class SearchConfig:
    grid_points_per_axis: int = 8
    refine_iterations: int = 4000
    tol_opt: float = 1e-6
    enforce_a3_constraint: bool = True
    seed: int = 0
    restarts: int = 3
    random_starts: int = 256

    def __post_init__(self):
        if self.grid_points_per_axis < 8:
            raise DomainError("grid_points_per_axis must be >= 8")
        if not self.tol_opt > 0:
            raise DomainError("tol_opt must be positive")
        if self.restarts < 1 or self.refine_iterations < 1:
            raise DomainError("need at least one restart and one refinement iteration")


@dataclass
class BoundReport:
    lam: float
    target: Target
    closed_form: float
    optimizer_max: float
    argmax: UFunctionParams
    gap: float
    constraint_residuals: dict[str, float] = field(default_factory=dict)
    claimed: bool = True

    @property
    def family(self) -> str:
        return witness_family(self.argmax, self.target)

    def sound(self, tol: float = SOUNDNESS_TOL) -> bool:
        return not self.claimed or self.optimizer_max <= self.closed_form + tol

    def sharp(self, rtol: float = SHARPNESS_RTOL) -> bool:
        return not self.claimed or self.gap <= rtol * self.closed_form

    def min_slack(self) -> float:
        return min(self.constraint_residuals.values())


def _check_lambda(lam):
    if not (isinstance(lam, (int, float)) and 0 < lam <= 1):
        raise DomainError(f"lambda must lie in (0, 1], got {lam!r}")


def bound_h2(lam: float) -> float:
    _check_lambda(lam)
    return lam * (1 + lam + lam * lam)


def bound_h3(lam: float) -> float:
    _check_lambda(lam)
    return lam * lam / 4 if lam <= CROSSOVER else lam**3


def closed_form(lam: float, target) -> float:
    return bound_h2(lam) if Target.parse(target) is Target.H2_2 else bound_h3(lam)


def phi1(t, lam, a2_mod):
    """Envelope for H2: |H_2(2)(f^-1)| <= lam * phi1(|c1|).

    The leading lambda is kept outside, so phi1(1) = 1 + lam + lam^2.
    """
    _check_lambda(lam)
    t = np.asarray(t, dtype=float)
    a2_mod = np.asarray(a2_mod, dtype=float)
    if np.any((t < 0) | (t > 1)):
        raise DomainError("t must lie in [0, 1]")
    if np.any((a2_mod < 0) | (a2_mod > 1 + lam)):
        raise DomainError("a2_mod must lie in [0, 1 + lambda]")
    out = -0.5 * a2_mod * t * t + (1 + lam + lam * lam) * t + 0.5 * a2_mod
    return float(out) if out.ndim == 0 else out


def phi2(t, lam):
    """Envelope for H3: |H_3(1)(f^-1)| <= lam^2 / 12 * phi2(|c1|)."""
    _check_lambda(lam)
    t = np.asarray(t, dtype=float)
    if np.any((t < 0) | (t > 1)):
        raise DomainError("t must lie in [0, 1]")
    out = 3 - 2 * t**2 + 12 * lam * t**3 - t**4
    return float(out) if out.ndim == 0 else out


def phi2_max(lam: float, dense: int = 10_001) -> tuple[float, float]:
    """Maximum of phi2 on [0, 1] and where it is attained.

    The maximum sits at an endpoint: t = 0 (value 3) below the crossover
    and t = 1 (value 12 lam) above it. A dense scan guards the claim that
    no interior point does better, including around lam = 2/9 where the
    interior stationary point reaches t = 1.
    """
    _check_lambda(lam)
    left, right = 3.0, 12.0 * lam
    value, where = (left, 0.0) if left >= right else (right, 1.0)
    scan = float(np.max(phi2(np.linspace(0.0, 1.0, max(dense, 10_000)), lam)))
    if scan > value + 1e-12:
        raise UHankelError(f"phi2 exceeds its endpoint maximum at lambda={lam}: {scan} > {value}")
    return value, where


def witness_family(p: UFunctionParams, target) -> str:
    """'c1' for f2-like maximizers (|c1| near 1), 'c2' for f1-like ones."""
    if Target.parse(target) is Target.H2_2:
        return "f_lambda"
    return "c1" if abs(p.schwarz.c1) >= 0.5 else "c2"


# ---------------------------------------------------------------------------
# box parametrizations (vectorized over leading axes)
# ---------------------------------------------------------------------------

PHASE_AXES = {Target.H3_1: (3, 4, 5), Target.H2_2: (1, 3, 5)}


def _h3_point(x, lam):
    """x = (t1, s2, s3, arg c1, arg c2, arg c3) -> (c1, c2, c3)."""
    t1 = np.clip(x[..., 0], 0.0, 1.0)
    t2 = np.clip(x[..., 1], 0.0, 1.0) * c2_ceiling(t1)
    t3 = np.clip(x[..., 2], 0.0, 1.0) * np.maximum(c3_ceiling(t1, t2), 0.0)
    c1 = t1 * np.exp(1j * x[..., 3])
    c2 = t2 * np.exp(1j * x[..., 4])
    c3 = t3 * np.exp(1j * x[..., 5])
    return c1, c2, c3


def _h3_value(x, lam):
    c1, c2, c3 = _h3_point(x, lam)
    return lam * lam * np.abs(c1 * c3 - c2 * c2 - lam * c1**3)


def _ray_exit(p, centre, radius, u):
    """Distance from p (inside the disc) along unit direction u to the circle."""
    d = p - centre
    b = np.real(np.conj(u) * d)
    disc = b * b - (np.abs(d) ** 2 - radius * radius)
    return np.maximum(-b + np.sqrt(np.maximum(disc, 0.0)), 0.0)


def _h2_point(x, lam, enforce_a3):
    """x = (ta, arg a2, s1, arg c1, s2, arg c2) -> (a2, c1, c2).

    With the a3 constraint on, c1 ranges over the unit disc intersected with
    |lam c1 + a2^2| <= 1 + lam + lam^2. That set is convex and contains the
    point -e^{2i arg a2} min(1, |a2|^2 / lam), so c1 is placed along a ray
    from there at fraction s1 of the distance to the boundary.
    """
    ta = np.clip(x[..., 0], 0.0, 1.0) * (1 + lam)
    rot = np.exp(1j * x[..., 1])
    a2 = ta * rot
    s1 = np.clip(x[..., 2], 0.0, 1.0)
    u = np.exp(1j * x[..., 3])
    if enforce_a3:
        base = -(rot * rot) * np.minimum(1.0, ta * ta / lam)
        centre = -(a2 * a2) / lam
        radius = (1 + lam + lam * lam) / lam
        reach = np.minimum(_ray_exit(base, 0.0, 1.0, u), _ray_exit(base, centre, radius, u))
        c1 = base + s1 * reach * u
    else:
        c1 = s1 * u
    c2 = np.clip(x[..., 4], 0.0, 1.0) * c2_ceiling(np.minimum(np.abs(c1), 1.0)) * np.exp(1j * x[..., 5])
    return a2, c1, c2


def _h2_value(x, lam, enforce_a3):
    a2, c1, c2 = _h2_point(x, lam, enforce_a3)
    return lam * np.abs(a2 * c2 - a2 * a2 * c1 - lam * c1 * c1)


def _params(x, lam, target, enforce_a3=True) -> UFunctionParams:
    x = np.asarray(x, dtype=float)
    if target is Target.H3_1:
        c1, c2, c3 = _h3_point(x, lam)
        return UFunctionParams.of(lam, 0j, c1, c2, c3)
    a2, c1, c2 = _h2_point(x, lam, enforce_a3)
    return UFunctionParams.of(lam, a2, c1, c2, 0j)


def constraint_residuals(p: UFunctionParams, target, enforce_a3: bool = True) -> dict[str, float]:
    """Signed slack of every active constraint at ``p`` (negative = violated)."""
    lam = p.lam
    c1, c2, c3 = p.schwarz.as_tuple()
    t1, t2, t3 = abs(c1), abs(c2), abs(c3)
    res = {"c1": 1.0 - t1, "c2": c2_ceiling(t1) - t2}
    if Target.parse(target) is Target.H3_1:
        res["c3"] = c3_ceiling(t1, t2) - t3
    else:
        res["a2"] = (1 + lam) - abs(p.a2)
        if enforce_a3:
            res["a3"] = (1 + lam + lam * lam) - abs(lam * c1 + p.a2**2)
    return res


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


def _start_pool(target, cfg: SearchConfig) -> np.ndarray:
    g = cfg.grid_points_per_axis
    phases = PHASE_AXES[target]
    axes = [
        np.linspace(0.0, TWO_PI, g, endpoint=False) if k in phases else np.linspace(0.0, 1.0, g)
        for k in range(6)
    ]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 6)
    rng = np.random.default_rng(cfg.seed)
    extra = rng.random((cfg.random_starts, 6))
    extra[:, list(phases)] *= TWO_PI
    return np.concatenate([grid, extra])


def _initial_simplex(x0, target, cfg):
    g = cfg.grid_points_per_axis
    phases = PHASE_AXES[target]
    simplex = np.tile(x0, (7, 1))
    for k in range(6):
        if k in phases:
            step = math.pi / g
        else:
            step = 0.5 / (g - 1)
            if x0[k] + step > 1.0:
                step = -step
        simplex[k + 1, k] += step
    return simplex


def _snap(x, fun, target):
    """Push moduli fractions that ended within 1e-4 of a box face onto it."""
    phases = PHASE_AXES[target]
    best, best_val = x, fun(x)
    for k in range(6):
        if k in phases:
            continue
        for face in (0.0, 1.0):
            if abs(best[k] - face) < 1e-4 and best[k] != face:
                trial = best.copy()
                trial[k] = face
                v = fun(trial)
                if v <= best_val:
                    best, best_val = trial, v
    return best, best_val


def _refine(x0, value, target, cfg: SearchConfig):
    """Bounded Nelder-Mead on -value from x0.

    Returns (x, value(x), spread); spread is None when converged, else the
    simplex extent left after ``cfg.refine_iterations``.
    """
    phases = PHASE_AXES[target]
    bounds = [(None, None) if k in phases else (0.0, 1.0) for k in range(6)]
    neg = lambda x: -float(value(np.asarray(x)))  # noqa: E731
    res = minimize(
        neg,
        x0,
        method="Nelder-Mead",
        bounds=bounds,
        options={
            "maxiter": cfg.refine_iterations,
            "maxfev": 4 * cfg.refine_iterations,
            "xatol": cfg.tol_opt,
            "fatol": 1e-15,
            "initial_simplex": _initial_simplex(x0, target, cfg),
        },
    )
    x, fx = _snap(np.asarray(res.x), neg, target)
    spread = None
    if not res.success:
        extent = float(np.max(np.abs(res.final_simplex[0][1:] - res.final_simplex[0][0])))
        if extent > cfg.tol_opt:
            spread = extent
    return x, -fx, spread


def _maximize(lam: float, target: Target, cfg: SearchConfig) -> BoundReport:
    enforce = cfg.enforce_a3_constraint
    if target is Target.H3_1:
        value = lambda x: _h3_value(x, lam)  # noqa: E731
    else:
        value = lambda x: _h2_value(x, lam, enforce)  # noqa: E731

    pool = _start_pool(target, cfg)
    vals = value(pool)
    order = np.argsort(-vals, kind="stable")

    candidates = [(float(vals[i]), tuple(pool[i])) for i in order[: cfg.restarts]]
    stalled = []
    for i in order[: cfg.restarts]:
        x, fx, spread = _refine(pool[i], value, target, cfg)
        candidates.append((fx, tuple(x)))
        if spread is not None:
            stalled.append(spread)

    best_val, best_x = min(candidates, key=lambda c: (-c[0], c[1]))
    report = _report(lam, target, best_val, best_x, cfg)
    if stalled:
        raise ConvergenceError(
            f"refinement still moving (simplex spread {max(stalled):.3g}) after "
            f"{cfg.refine_iterations} iterations",
            best=report,
        )
    return report


def _report(lam, target, val, x, cfg) -> BoundReport:
    enforce = cfg.enforce_a3_constraint
    p = _params(x, lam, target, enforce)
    bound = closed_form(lam, target)
    if target is Target.H3_1:
        _check_a2_invariance(p)
        claimed = True
    else:
        claimed = enforce
    return BoundReport(
        lam=lam,
        target=target,
        closed_form=bound,
        optimizer_max=val,
        argmax=p,
        gap=bound - val,
        constraint_residuals=constraint_residuals(p, target, enforce),
        claimed=claimed,
    )


def _check_a2_invariance(p: UFunctionParams, tol: float = 1e-10):
    reduced = h31_inverse_reduced(p)
    for a2 in (0j, (1 + p.lam) * complex(math.cos(0.7), math.sin(0.7))):
        q = UFunctionParams(p.lam, a2, p.schwarz)
        generic = hankel_det(H3_1, inverse_coeffs_from_params(q).sequence())
        if abs(generic - reduced) > tol:
            raise UHankelError(f"H3 depends on a2 at {p}: {generic} vs {reduced}")


def maximize_h2(lam: float, cfg: SearchConfig | None = None) -> BoundReport:
    """Maximize |lam (a2 c2 - a2^2 c1 - lam c1^2)| over the feasibility body.

    With ``cfg.enforce_a3_constraint`` off the |a3| hypothesis is dropped;
    the report is then marked ``claimed=False`` since no bound is asserted
    for that region.
    """
    _check_lambda(lam)
    return _maximize(lam, Target.H2_2, cfg or SearchConfig())


def maximize_h3(lam: float, cfg: SearchConfig | None = None) -> BoundReport:
    """Maximize lam^2 |c1 c3 - c2^2 - lam c1^3| over the Schwarz body."""
    _check_lambda(lam)
    return _maximize(lam, Target.H3_1, cfg or SearchConfig())


def maximize(lam: float, target, cfg: SearchConfig | None = None) -> BoundReport:
    t = Target.parse(target)
    return maximize_h2(lam, cfg) if t is Target.H2_2 else maximize_h3(lam, cfg)


def brute_force_oracle(lam: float, target, moduli_grid: int = 200, enforce_a3: bool = True) -> float:
    """Grid maximum of the functional with all phases aligned.

    H3: the constraints only involve |c1|, |c2|, |c3| and the phases of c2, c3
    are free, so the three terms can be made collinear and the maximum is
    lam^2 max (t1 t3 + t2^2 + lam t1^3) over a (t1, t2, t3) grid.

    H2: with arg a2 = 0 and c1 = t1 e^{ig}, the c2 phase aligns its term, giving
    lam (ta t2 + t1 |ta^2 + lam t1 e^{ig}|). The modulus in the second term is
    |a3|, which the a3 constraint bounds, so g is gridded as well. The |c2|
    axis enters linearly with weight ta >= 0, so only its top node is used.
    """
    _check_lambda(lam)
    target = Target.parse(target)
    if moduli_grid < 50:
        raise DomainError("moduli_grid must be >= 50")
    m = moduli_grid
    frac = np.linspace(0.0, 1.0, m)
    best = 0.0
    if target is Target.H3_1:
        for t1 in frac:
            t2 = frac * c2_ceiling(t1)
            t3 = np.outer(np.maximum(c3_ceiling(t1, t2), 0.0), frac)
            vals = t1 * t3 + (t2 * t2)[:, None] + lam * t1**3
            best = max(best, float(vals.max()))
        return lam * lam * best

    ceiling_a3 = 1 + lam + lam * lam
    n_phase = m + (m % 2)
    gam = np.linspace(0.0, TWO_PI, n_phase, endpoint=False)
    rot = np.exp(1j * gam)
    t1 = frac[:, None]
    t2 = c2_ceiling(t1)
    for ta in (1 + lam) * frac:
        a3 = np.abs(ta * ta + lam * t1 * rot)
        vals = ta * t2 + t1 * a3
        if enforce_a3:
            vals = np.where(a3 <= ceiling_a3 + CONSTRAINT_TOL, vals, -np.inf)
        best = max(best, float(vals.max()))
    return lam * best
