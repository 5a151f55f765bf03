"""Gaussian quadrature rules for the continuous inner products.

Two families cover everything the fitting and FDE machinery integrates:

* Gauss-Legendre for smooth integrands on [lo, hi];
* Gauss-Jacobi for weights with endpoint singularities (x-lo)^bl (hi-x)^br.

Fractional-monomial integrands x^(i*lam) on [0, hi] are handled exactly by
the substitution u = x^lam, which turns them into ordinary polynomials and
absorbs the Jacobian u^(1/lam - 1) as a Gauss-Jacobi left-endpoint factor.
:func:`substituted_rule` and :func:`weighted_rule` package that substitution
as ready-made rules.

Node/weight computation is delegated to the Golub-Welsch implementations in
numpy/scipy rather than re-deriving the eigenvalue problem here.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import roots_jacobi

from .errors import DomainError

__all__ = [
    "QuadratureRule",
    "gauss_legendre",
    "gauss_jacobi",
    "integrate",
    "frac_moment",
    "substituted_rule",
    "weighted_rule",
    "common_step",
]

MAX_POINTS = 256


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights approximating integral of weight(x) * f(x) on [lo, hi].

    ``weight_kind`` is a human-readable descriptor: "unit" for weight 1, or
    "jacobi(bl,br)" for the built-in factor (x-lo)^bl (hi-x)^br.  ``integrate``
    never re-applies the weight; it is folded into the weights array.
    """

    nodes: np.ndarray
    weights: np.ndarray
    lo: float
    hi: float
    weight_kind: str = "unit"

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise DomainError("nodes and weights must be 1-d arrays of equal length")
        if not (np.all(np.diff(nodes) > 0) and nodes[0] > self.lo and nodes[-1] < self.hi):
            raise DomainError("nodes must increase strictly inside (lo, hi)")
        if not np.all(weights > 0):
            raise DomainError("quadrature weights must all be positive")

    def __len__(self):
        return len(self.nodes)


def gauss_legendre(m, lo=-1.0, hi=1.0):
    """m-point Gauss-Legendre rule on [lo, hi], exact to polynomial degree 2m-1."""
    if not 1 <= m <= MAX_POINTS:
        raise DomainError(f"point count must be in [1, {MAX_POINTS}], got {m}")
    if not lo < hi:
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    t, w = np.polynomial.legendre.leggauss(m)
    half = 0.5 * (hi - lo)
    return QuadratureRule(lo + half * (t + 1.0), half * w, lo, hi, "unit")


def gauss_jacobi(m, beta_left, beta_right, lo=-1.0, hi=1.0):
    """m-point rule with built-in weight (x-lo)^beta_left (hi-x)^beta_right.

    Sum w_k f(x_k) equals the weighted integral exactly for polynomial f of
    degree <= 2m-1.  Both exponents must exceed -1 for integrability.
    """
    if not 1 <= m <= MAX_POINTS:
        raise DomainError(f"point count must be in [1, {MAX_POINTS}], got {m}")
    if not (beta_left > -1 and beta_right > -1):
        raise DomainError(
            f"endpoint exponents must exceed -1, got ({beta_left}, {beta_right})"
        )
    if not lo < hi:
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    if beta_left == 0.0 and beta_right == 0.0:
        rule = gauss_legendre(m, lo, hi)
        return rule
    # scipy's convention: weight (1-t)^alpha (1+t)^beta on [-1, 1], so the
    # right-endpoint factor maps to alpha and the left one to beta.
    t, w = roots_jacobi(m, beta_right, beta_left)
    half = 0.5 * (hi - lo)
    scale = half ** (beta_left + beta_right + 1)
    kind = f"jacobi({beta_left:g},{beta_right:g})"
    return QuadratureRule(lo + half * (t + 1.0), scale * w, lo, hi, kind)


def integrate(rule, f):
    """Apply the rule: sum_k weights[k] * f(nodes[k]).

    ``f`` excludes any weight factor built into the rule.  Accepts either a
    vectorized callable or a plain scalar one.
    """
    try:
        vals = np.asarray(f(rule.nodes), dtype=float)
        if vals.shape != rule.nodes.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([float(f(x)) for x in rule.nodes])
    if not np.all(np.isfinite(vals)):
        bad = rule.nodes[~np.isfinite(vals)][0]
        raise DomainError(f"integrand is not finite at node x={bad}")
    return float(vals @ rule.weights)


def frac_moment(lo, hi, s):
    """Closed form of integral of x^s over [lo, hi]: (hi^(s+1)-lo^(s+1))/(s+1)."""
    if s <= -1:
        raise DomainError(f"moment exponent must exceed -1, got {s}")
    if not 0 <= lo < hi:
        raise DomainError(f"need 0 <= lo < hi, got [{lo}, {hi}]")
    return (hi ** (s + 1) - lo ** (s + 1)) / (s + 1)


def substituted_rule(m, step, hi=1.0):
    """Unit-weight rule on [0, hi] exact for integrands polynomial in x^step.

    Substituting u = (x/hi)^step maps x^(k*step) to a polynomial in u and
    absorbs the Jacobian into a Gauss-Jacobi left-endpoint factor, so the
    returned m-point rule integrates x^(k*step) exactly for k <= 2m-1, and
    any smooth function of x^step rapidly.
    """
    if not 0 < step <= 2:
        raise DomainError(f"substitution step must lie in (0, 2], got {step}")
    if step == 1.0:
        return gauss_legendre(m, 0.0, hi)
    base = gauss_jacobi(m, 1.0 / step - 1.0, 0.0, 0.0, 1.0)
    nodes = hi * base.nodes ** (1.0 / step)
    weights = (hi / step) * base.weights
    return QuadratureRule(nodes, weights, 0.0, hi, "unit")


def weighted_rule(m, lam, beta_left=0.0, beta_right=0.0):
    """Rule on [0, 1] with built-in weight x^beta_left (1-x)^beta_right,
    exact for integrands polynomial in x^lam.

    Combines the u = x^lam substitution with Gauss-Jacobi absorption of both
    endpoint factors; the leftover smooth factor ((1-x)/(1-u))^beta_right is
    folded into the weights (evaluated via expm1/log to survive u near 1).
    """
    if not 0 < lam <= 2:
        raise DomainError(f"lambda must lie in (0, 2], got {lam}")
    if not (beta_left > -1 and beta_right > -1):
        raise DomainError(
            f"endpoint exponents must exceed -1, got ({beta_left}, {beta_right})"
        )
    bl_u = (beta_left + 1.0) / lam - 1.0
    base = gauss_jacobi(m, bl_u, beta_right, 0.0, 1.0)
    u = base.nodes
    x = u ** (1.0 / lam)
    w = base.weights / lam
    if beta_right != 0.0 and lam != 1.0:
        one_minus_x = -np.expm1(np.log(u) / lam)
        w = w * (one_minus_x / (1.0 - u)) ** beta_right
    kind = "unit" if beta_left == beta_right == 0.0 else (
        f"jacobi({beta_left:g},{beta_right:g})"
    )
    return QuadratureRule(x, w, 0.0, 1.0, kind)


def common_step(exponents, max_den=1000):
    """Largest step s such that every exponent is an integer multiple of s.

    Exponents are matched to rationals with denominator <= max_den; returns
    None when some exponent is not (numerically) commensurable.  Used to pick
    a substitution that makes mixed-exponent integrands exactly polynomial.
    """
    fracs = []
    for e in exponents:
        if e < 0:
            return None
        if e == 0:
            continue
        f = Fraction(e).limit_denominator(max_den)
        if f == 0 or abs(float(f) - e) > 1e-9 * max(1.0, abs(e)):
            return None
        fracs.append(f)
    if not fracs:
        return None
    g = fracs[0]
    for f in fracs[1:]:
        g = Fraction(math.gcd(g.numerator, f.numerator),
                     (g.denominator * f.denominator) // math.gcd(g.denominator, f.denominator))
    return float(g)
