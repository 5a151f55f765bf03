"""Fractional polynomials on the monomial ladder {1, x^lam, ..., x^(n*lam)}.

A fractional polynomial is a coefficient vector over that ladder for a fixed
step ``lam`` in (0, 2].  Multiplication by x^lam is an index shift, which is
what makes the three-term recurrences of the orthogonal-basis builder exact
in coefficient space.

Also provides classical Jacobi polynomials and the two evaluation routes for
Muntz-Legendre polynomials: the direct coefficient formula (factorially
unstable for large degree, hence capped) and the Jacobi recurrence route
(stable, the default).
"""

from dataclasses import dataclass

from .errors import DomainError, UsageError

__all__ = [
    "FractionalPolynomial",
    "JacobiParams",
    "frac_poly_eval",
    "frac_poly_shift_mul",
    "frac_poly_linear_combine",
    "jacobi_eval",
    "muntz_legendre_coeffs",
    "muntz_legendre_eval",
]

#: largest degree index for the direct eta-coefficient construction;
#: beyond this the factorial growth of the coefficients loses all accuracy
MAX_DIRECT_DEGREE = 30


@dataclass(frozen=True)
class FractionalPolynomial:
    """P(x) = sum_i coeffs[i] * x^(i*lam), defined for x >= 0."""

    lam: float
    coeffs: tuple

    def __post_init__(self):
        if not 0.0 < self.lam <= 2.0:
            raise DomainError(f"lambda must lie in (0, 2], got {self.lam}")
        if len(self.coeffs) == 0:
            raise DomainError("coefficient sequence must be non-empty")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    @property
    def degree_index(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        return frac_poly_eval(self, x)


def frac_poly_eval(p, x):
    """Evaluate P(x) = sum_i a_i x^(i*lam); 0^0 := 1 so constants survive at 0."""
    if x < 0:
        raise DomainError(f"fractional polynomials are defined for x >= 0, got {x}")
    if x == 0.0:
        return p.coeffs[0]
    # Horner in u = x^lam
    u = x**p.lam
    acc = 0.0
    for c in reversed(p.coeffs):
        acc = acc * u + c
    return acc


def frac_poly_shift_mul(p):
    """Multiply by x^lam: shift the coefficient sequence up one index."""
    return FractionalPolynomial(p.lam, (0.0,) + p.coeffs)


def frac_poly_linear_combine(ps, ws):
    """Coefficient-wise weighted sum of polynomials sharing one lambda."""
    if len(ps) != len(ws):
        raise UsageError(f"{len(ps)} polynomials but {len(ws)} weights")
    if not ps:
        raise UsageError("need at least one polynomial to combine")
    lam = ps[0].lam
    for p in ps:
        if p.lam != lam:
            raise UsageError(f"mixed lambda values {lam} and {p.lam}")
    size = max(len(p.coeffs) for p in ps)
    out = [0.0] * size
    for p, w in zip(ps, ws):
        for i, c in enumerate(p.coeffs):
            out[i] += w * c
    return FractionalPolynomial(lam, tuple(out))


@dataclass(frozen=True)
class JacobiParams:
    """Parameters (a, b) of a Jacobi polynomial family; both must exceed -1."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > -1 and self.b > -1):
            raise DomainError(f"Jacobi parameters must exceed -1, got {self}")


def jacobi_eval(params, n, x):
    """Jacobi polynomial P_n^(a,b)(x) on [-1, 1] by three-term recurrence.

    P_0 = 1, P_1 = ((a-b) + (a+b+2) x) / 2, and for n >= 1

        c1_n P_{n+1} = c2_n(x) P_n - c3_n P_{n-1}

    with c1_n = 2(n+1)(n+a+b+1)(2n+a+b),
         c2_n(x) = (2n+a+b+1)[(2n+a+b)(2n+a+b+2) x + a^2 - b^2],
         c3_n = 2(n+a)(n+b)(2n+a+b+2).
    """
    if n < 0:
        raise DomainError(f"polynomial degree must be >= 0, got {n}")
    if not -1.0 <= x <= 1.0:
        raise DomainError(f"Jacobi polynomials are evaluated on [-1, 1], got {x}")
    a, b = params.a, params.b
    p_prev = 1.0
    if n == 0:
        return p_prev
    p_cur = 0.5 * ((a - b) + (a + b + 2) * x)
    for k in range(1, n):
        s = 2 * k + a + b
        c1 = 2 * (k + 1) * (k + a + b + 1) * s
        c2 = (s + 1) * (s * (s + 2) * x + a * a - b * b)
        c3 = 2 * (k + a) * (k + b) * (s + 2)
        p_prev, p_cur = p_cur, (c2 * p_cur - c3 * p_prev) / c1
    return p_cur


def muntz_legendre_coeffs(n, lam):
    """Muntz-Legendre polynomial L_n(.; lam) as explicit ladder coefficients.

    coeff[i] = (-1)^(n-i) / (lam^n i! (n-i)!) * prod_{k<n} ((i+k) lam + 1).

    The products grow factorially, so this route is capped at degree 30;
    use :func:`muntz_legendre_eval` for stable evaluation at large n.
    """
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    if n > MAX_DIRECT_DEGREE:
        raise DomainError(
            f"direct coefficient construction is limited to n <= {MAX_DIRECT_DEGREE} "
            f"(factorial overflow), got {n}"
        )
    if not 0.0 < lam <= 2.0:
        raise DomainError(f"lambda must lie in (0, 2], got {lam}")
    coeffs = []
    for i in range(n + 1):
        num = 1.0
        for k in range(n):
            num *= (i + k) * lam + 1.0
        den = lam**n
        for j in range(2, i + 1):
            den *= j
        for j in range(2, n - i + 1):
            den *= j
        sign = -1.0 if (n - i) % 2 else 1.0
        coeffs.append(sign * num / den)
    return FractionalPolynomial(lam, tuple(coeffs))


def muntz_legendre_eval(n, lam, x):
    """Evaluate L_n(x; lam) through the Jacobi representation.

    L_n(x; lam) = P_n^(0, 1/lam - 1)(2 x^lam - 1), which stays stable where
    the direct coefficient sum cancels catastrophically.
    """
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"Muntz-Legendre polynomials live on [0, 1], got x={x}")
    if not 0.0 < lam <= 2.0:
        raise DomainError(f"lambda must lie in (0, 2], got {lam}")
    t = 2.0 * x**lam - 1.0
    # guard rounding that would push the argument a hair outside [-1, 1]
    t = min(1.0, max(-1.0, t))
    return jacobi_eval(JacobiParams(0.0, 1.0 / lam - 1.0), n, t)
