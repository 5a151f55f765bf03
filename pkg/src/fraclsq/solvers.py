"""Direct solver for the (symmetric positive-definite) normal equations.

Normal matrices built from fractional monomials go ill-conditioned fast, so
the solve is made stability-aware in two cheap ways:

* Jacobi equilibration D^-1/2 A D^-1/2 before factorization, which strips
  the scale disparity of mixed-exponent moment sums;
* iterative refinement with residuals accumulated in exact rational
  arithmetic, which drives the forward error of the returned solution to
  the last bit whenever eps * cond(A) < 1.

The reported condition estimate always refers to the raw, un-equilibrated
matrix: it is the diagnostic the caller uses to compare basis choices.
"""

from fractions import Fraction

import numpy as np

from .errors import ConditioningError

__all__ = ["solve_normal_equations", "condition_estimate"]

_MAX_REFINE = 50


def condition_estimate(A):
    """2-norm condition number of A (SVD-based); inf for singular input."""
    try:
        return float(np.linalg.cond(np.asarray(A, dtype=float)))
    except np.linalg.LinAlgError:
        return float("inf")


def _as_fractions(M):
    if M.ndim == 1:
        return [Fraction(v) for v in M.tolist()]
    return [[Fraction(v) for v in row] for row in M.tolist()]


def solve_normal_equations(A, b, exact_A=None, exact_b=None,
                           allow_semidefinite=False):
    """Solve A x = b and return (x, cond) with cond = cond_2 of raw A.

    ``exact_A`` / ``exact_b`` optionally supply the system in exact rational
    form (lists of Fractions); refinement residuals are computed against
    those, so a float solution of an exactly-assembled system converges to
    its correctly rounded answer.  When omitted, the float entries are taken
    as exact.

    With ``allow_semidefinite`` a singular-but-consistent system (a Gram
    matrix with flat directions) falls back to the minimum-norm SVD
    solution instead of raising; otherwise singular or non-finite systems
    raise ConditioningError carrying the condition estimate.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    n = len(b)
    cond = condition_estimate(A)

    # equilibrate: As = D A D with D = diag(1/sqrt(diag A))
    diag = np.diag(A).copy()
    if np.any(diag <= 0) or not np.all(np.isfinite(A)) or not np.all(np.isfinite(b)):
        raise ConditioningError(
            f"normal matrix is not positive definite (cond~{cond:.3e})", cond=cond
        )
    d = 1.0 / np.sqrt(diag)
    As = A * d[:, None] * d[None, :]
    bs = b * d
    if allow_semidefinite:
        # symmetric pseudo-solve with a relative rank cutoff: flat
        # directions of the Gram matrix (operator image parallel to the IC
        # constant) get the minimum-norm resolution, while merely
        # ill-conditioned full-rank systems pass through untruncated
        try:
            evals, evecs = np.linalg.eigh(As)
        except np.linalg.LinAlgError as exc:
            raise ConditioningError(
                f"normal-equation eigensolve failed: {exc} (cond~{cond:.3e})",
                cond=cond) from exc
        cutoff = 64 * np.finfo(float).eps * np.max(np.abs(evals))
        inv = np.where(np.abs(evals) > cutoff, 1.0 / np.where(evals == 0, 1, evals),
                       0.0)

        def solve_scaled(rhs):
            return evecs @ (inv * (evecs.T @ rhs))
    else:
        def solve_scaled(rhs):
            try:
                return np.linalg.solve(As, rhs)
            except np.linalg.LinAlgError as exc:
                raise ConditioningError(
                    f"normal-equation solve failed: {exc} (cond~{cond:.3e})",
                    cond=cond) from exc

    x = solve_scaled(bs) * d
    if not np.all(np.isfinite(x)):
        raise ConditioningError(
            f"normal-equation solution is non-finite (cond~{cond:.3e})", cond=cond
        )

    Aq = exact_A if exact_A is not None else _as_fractions(A)
    bq = exact_b if exact_b is not None else _as_fractions(b)
    best_x, best_rnorm = x, float("inf")
    for _ in range(_MAX_REFINE):
        xq = [Fraction(v) for v in x.tolist()]
        r = np.array(
            [float(bq[i] - sum(Aq[i][j] * xq[j] for j in range(n))) for i in range(n)],
            dtype=float,
        )
        rnorm = float(np.linalg.norm(r))
        if rnorm < best_rnorm:
            best_x, best_rnorm = x, rnorm
        if not r.any():
            break
        try:
            dx = d * solve_scaled(r * d)
        except (np.linalg.LinAlgError, ConditioningError):
            break
        x_next = x + dx
        if not np.all(np.isfinite(x_next)) or np.array_equal(x_next, x):
            break
        x = x_next
    return best_x, cond
