"""Classical and fractional least-squares fitting.

Three routes produce a fit over the ladder {1, x^lam, ..., x^(n*lam)}:

* continuous normal equations (moment matrix assembled in closed form,
  data vector by quadrature);
* discrete normal equations over a data set (sums); the classical
  polynomial fit is exactly this route at lam = 1;
* orthogonal projection against a pre-built W-orthogonal basis, which
  needs no linear solve at all.

Every result records which route produced it, the fitted coefficients, the
least-squares error functional and a condition estimate of the solved
system (1 for the projection route).
"""

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .errors import ConditioningError, DomainError, UsageError
from .fracpoly import FractionalPolynomial, frac_poly_linear_combine, muntz_legendre_eval
from .orthobasis import OrthogonalBasis
from .solvers import solve_normal_equations
from . import quadrature as quad

__all__ = [
    "DataSet",
    "FitResult",
    "fit_continuous_normal",
    "fit_discrete_normal",
    "fit_projection",
    "predict",
    "add_noise",
    "expand_to_monomial",
]

MAX_CONTINUOUS_SIZE = 20  # n+1 cap for the continuous normal equations
DEFAULT_QUAD_POINTS = 64


@dataclass(frozen=True)
class DataSet:
    """Points (x_k, y_k) with optional positive weights (default all one)."""

    xs: np.ndarray
    ys: np.ndarray
    weights: Optional[np.ndarray] = None

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        if xs.ndim != 1 or xs.shape != ys.shape or len(xs) == 0:
            raise DomainError("xs and ys must be equal-length non-empty 1-d arrays")
        if np.any(xs < 0):
            raise DomainError("abscissae must be >= 0 (fractional powers)")
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float)
            object.__setattr__(self, "weights", w)
            if w.shape != xs.shape:
                raise DomainError("weights must match the data length")
            if np.any(w <= 0):
                raise DomainError("weights must be strictly positive")

    def __len__(self):
        return len(self.xs)

    def weight_array(self):
        return np.ones_like(self.xs) if self.weights is None else self.weights


@dataclass(frozen=True)
class FitResult:
    """A fitted expansion plus its diagnostics.

    ``basis`` is "monomial" (coeffs over x^(i*lam)), "muntz_legendre"
    (coeffs over L_i(.; lam)) or "orthogonal" (coeffs over basis_ref.polys).
    ``error`` is the value of the minimized least-squares functional;
    ``cond`` the condition estimate of the solved system (1 when nothing
    was solved).
    """

    basis: str
    lam: float
    coeffs: np.ndarray
    error: float
    cond: float
    lo: float = 0.0
    hi: float = 1.0
    basis_ref: Optional[OrthogonalBasis] = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))
        if self.error < 0 and self.error > -1e-12:
            object.__setattr__(self, "error", 0.0)  # tiny negative from roundoff
        if self.error < 0:
            raise DomainError(f"least-squares error cannot be negative: {self.error}")

    def __call__(self, x):
        return predict(self, x)


def _monomial_values(lam, n, x):
    x = np.asarray(x, dtype=float)
    exps = lam * np.arange(n + 1)
    with np.errstate(divide="ignore"):
        V = np.where(x[..., None] == 0.0, (exps == 0.0).astype(float),
                     x[..., None] ** exps)
    return V


def fit_continuous_normal(y, lo, hi, lam, n, rule=None):
    """Fit y on [lo, hi] by the fractional normal equations A a = d.

    A is assembled exactly from closed-form moments; d and the error
    functional use the supplied quadrature rule (default: 64 points with
    the x^lam substitution when lo = 0, plain Gauss-Legendre otherwise).
    """
    if not 0 <= lo < hi:
        raise DomainError(f"need 0 <= lo < hi, got [{lo}, {hi}]")
    if not 0 < lam <= 2:
        raise DomainError(f"lambda must lie in (0, 2], got {lam}")
    if n < 0 or n + 1 > MAX_CONTINUOUS_SIZE:
        raise DomainError(f"degree index must be in [0, {MAX_CONTINUOUS_SIZE - 1}]")
    if rule is None:
        if lo == 0.0:
            rule = quad.substituted_rule(DEFAULT_QUAD_POINTS, lam, hi)
        else:
            rule = quad.gauss_legendre(DEFAULT_QUAD_POINTS, lo, hi)

    idx = np.arange(n + 1)
    A = np.array([[quad.frac_moment(lo, hi, lam * (i + j)) for j in idx] for i in idx])

    def yv(x):
        try:
            vals = np.asarray(y(x), dtype=float)
            if vals.shape != np.shape(x):
                raise TypeError
            return vals
        except (TypeError, ValueError):
            return np.array([float(y(t)) for t in np.atleast_1d(x)])

    ynodes = yv(rule.nodes)
    V = _monomial_values(lam, n, rule.nodes)
    d = V.T @ (rule.weights * ynodes)
    coeffs, cond = solve_normal_equations(A, d)
    resid = ynodes - V @ coeffs
    error = float(np.sum(rule.weights * resid * resid))
    return FitResult("monomial", lam, coeffs, max(error, 0.0), cond, lo, hi)


def fit_discrete_normal(data, lam, n):
    """Fit a data set by the discrete fractional normal equations.

    At lam = 1 this is exactly the classical polynomial least-squares fit:
    the normal matrix entries coincide entrywise with the integer-power
    sums.  Raises ConditioningError on rank deficiency (fewer points than
    coefficients) or a numerically singular system.
    """
    if not 0 < lam <= 2:
        raise DomainError(f"lambda must lie in (0, 2], got {lam}")
    if n < 0:
        raise DomainError(f"degree index must be >= 0, got {n}")
    if len(data) < n + 1:
        raise ConditioningError(
            f"{len(data)} points cannot determine {n + 1} coefficients",
            cond=float("inf"),
        )
    w = data.weight_array()
    idx = np.arange(n + 1)
    # direct powers x^((i+j) lam), matching the sums' definition exactly
    exps = lam * (idx[:, None] + idx[None, :])
    with np.errstate(divide="ignore"):
        P = np.where(data.xs[:, None, None] == 0.0, (exps == 0.0).astype(float),
                     data.xs[:, None, None] ** exps[None, :, :])
    A = np.einsum("k,kij->ij", w, P)
    V = _monomial_values(lam, n, data.xs)
    d = V.T @ (w * data.ys)
    coeffs, cond = solve_normal_equations(A, d)
    resid = data.ys - V @ coeffs
    error = float(np.sum(w * resid * resid))
    lo, hi = float(np.min(data.xs)), float(np.max(data.xs))
    return FitResult("monomial", lam, coeffs, max(error, 0.0), cond, lo, hi)


def fit_projection(target, basis):
    """Expand a target over a W-orthogonal basis by direct inner products.

    a_i = <W y, L_i> / <W, L_i^2>: one ratio per coefficient, no linear
    solve, so the reported condition number is 1.  ``target`` is either a
    callable or a DataSet sampled exactly at the basis's points.
    """
    if isinstance(target, DataSet):
        if basis.mode != "discrete":
            raise UsageError("a DataSet target needs a discrete-mode basis")
        if len(target) != len(basis.points) or np.any(target.xs != basis.points):
            raise UsageError("data abscissae must match the basis points")
        yvals = target.ys
    else:
        try:
            yvals = np.asarray(target(basis.points), dtype=float)
            if yvals.shape != basis.points.shape:
                raise TypeError
        except (TypeError, ValueError):
            yvals = np.array([float(target(x)) for x in basis.points])

    w = basis.ip_weights
    n = basis.degree_index
    coeffs = np.empty(n + 1)
    fitted = np.zeros_like(basis.points)
    for i, lvals in enumerate(basis.ladder_values(basis.points)):
        coeffs[i] = float(np.sum(w * yvals * lvals)) / basis.sq_norms[i]
        fitted += coeffs[i] * lvals
    resid = yvals - fitted
    error = float(np.sum(w * resid * resid))
    lo = float(basis.points.min()) if basis.mode == "discrete" else 0.0
    hi = float(basis.points.max()) if basis.mode == "discrete" else 1.0
    return FitResult("orthogonal", basis.lam, coeffs, max(error, 0.0), 1.0,
                     lo, hi, basis_ref=basis)


def predict(fit, x):
    """Evaluate the fitted expansion at x >= 0 (extrapolation allowed)."""
    scalar = np.isscalar(x) or np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa < 0):
        raise DomainError("fits evaluate on x >= 0 only")
    if fit.basis == "monomial":
        V = _monomial_values(fit.lam, len(fit.coeffs) - 1, xa)
        out = V @ fit.coeffs
    elif fit.basis == "muntz_legendre":
        out = np.zeros_like(xa)
        for i, a in enumerate(fit.coeffs):
            out += a * np.array([muntz_legendre_eval(i, fit.lam, t) for t in xa])
    elif fit.basis == "orthogonal":
        out = np.zeros_like(xa)
        for a, lvals in zip(fit.coeffs, fit.basis_ref.ladder_values(xa)):
            out += a * lvals
    else:
        raise UsageError(f"unknown basis descriptor {fit.basis!r}")
    return float(out[0]) if scalar else out


def expand_to_monomial(fit):
    """Rewrite any fit as ladder coefficients over {x^(i*lam)}."""
    if fit.basis == "monomial":
        return FractionalPolynomial(fit.lam, tuple(fit.coeffs))
    if fit.basis == "orthogonal":
        polys = list(fit.basis_ref.polys)
    elif fit.basis == "muntz_legendre":
        from .fracpoly import muntz_legendre_coeffs

        polys = [muntz_legendre_coeffs(i, fit.lam) for i in range(len(fit.coeffs))]
    else:
        raise UsageError(f"unknown basis descriptor {fit.basis!r}")
    return frac_poly_linear_combine(polys, list(fit.coeffs))


def add_noise(data, percent, seed):
    """Perturb ys with zero-mean Gaussian noise, sigma = percent/100 * |y_k|.

    Deterministic for a fixed seed; percent = 0 returns the data unchanged.
    """
    if percent < 0:
        raise DomainError(f"noise percent must be >= 0, got {percent}")
    if percent == 0:
        return data
    rng = np.random.default_rng(seed)
    sigma = (percent / 100.0) * np.abs(data.ys)
    noisy = data.ys + sigma * rng.standard_normal(len(data))
    return replace(data, ys=noisy)
