"""Built-in analytic test functions addressable by name from the CLI.

Each entry pairs a callable with (when the function is a finite sum of
power terms) its FracFunction form, which lets continuous-fit jobs pick a
quadrature substitution making every integral exact.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .fraccalc import FdeProblem, FracFunction, apply_operator
from .special import mittag_leffler

__all__ = ["NamedFunction", "NAMED_FUNCTIONS", "lookup", "multi_term_problem",
           "single_term_problem"]

#: growth-rate and order of the world-population model curve
POPULATION_RATE = 1.3502e-2
POPULATION_ORDER = 1.39


@dataclass(frozen=True)
class NamedFunction:
    name: str
    fn: Callable
    frac: Optional[FracFunction]
    description: str

    def __call__(self, x):
        return self.fn(x)

    @property
    def exponents(self):
        return tuple(e for e, _ in self.frac.terms) if self.frac else ()


def _powsum(*pairs):
    ff = FracFunction.from_terms(pairs)
    return ff, ff  # FracFunction doubles as the callable


def single_term_problem(alpha=0.5):
    """D^alpha y = f with exact solution y = x, y(0) = 0 on [0, 1].

    The right-hand side is the operator applied to the exact solution, so
    its coefficients match the solver's power-rule arithmetic bit for bit.
    """
    prob = FdeProblem(terms=((alpha, 1.0),))
    y_exact = FracFunction.from_terms([(1.0, 1.0)])
    return FdeProblem(terms=prob.terms, rhs=apply_operator(prob, y_exact)), y_exact


def multi_term_problem(alpha1=0.5, alpha2=0.25):
    """D^alpha1 y + D^alpha2 y + y = f with exact solution x^3.5 + x^4, y(0)=0."""
    prob = FdeProblem(terms=((alpha1, 1.0), (alpha2, 1.0)), reaction=1.0)
    y_exact = FracFunction.from_terms([(1.0, 3.5), (1.0, 4.0)])
    return FdeProblem(terms=prob.terms, reaction=1.0,
                      rhs=apply_operator(prob, y_exact)), y_exact


def _population_curve(x):
    return mittag_leffler(POPULATION_ORDER, POPULATION_RATE * x**POPULATION_ORDER)


def _build_registry():
    reg = {}

    ff, fn = _powsum((1.0, 0.75), (1.0, 1.5))
    reg["x075+x15"] = NamedFunction("x075+x15", fn, ff, "x^0.75 + x^1.5")

    ff, fn = _powsum((1.0, 1.5))
    reg["x15"] = NamedFunction("x15", fn, ff, "x^1.5")

    ff, fn = _powsum((-math.pi / 4, 0.0), (1.0, 0.5))
    reg["sqrt-shift"] = NamedFunction("sqrt-shift", fn, ff, "x^0.5 - pi/4")

    ff, fn = _powsum((1.0, 3.5), (1.0, 4.0))
    reg["x35+x4"] = NamedFunction("x35+x4", fn, ff, "x^3.5 + x^4")

    ff, fn = _powsum((1.0, 0.75))
    reg["x075"] = NamedFunction("x075", fn, ff, "x^0.75")

    reg["ml-population"] = NamedFunction(
        "ml-population", _population_curve, None,
        f"E_{POPULATION_ORDER}({POPULATION_RATE} * x^{POPULATION_ORDER})",
    )

    prob, _ = single_term_problem()
    reg["fde-single-rhs"] = NamedFunction(
        "fde-single-rhs", prob.rhs, prob.rhs,
        "right-hand side of D^0.5 y = f with solution y = x")

    prob, _ = multi_term_problem()
    reg["fde-multi-rhs"] = NamedFunction(
        "fde-multi-rhs", prob.rhs, prob.rhs,
        "right-hand side of D^0.5 y + D^0.25 y + y = f with solution x^3.5 + x^4")
    return reg


NAMED_FUNCTIONS = _build_registry()


def lookup(name):
    try:
        return NAMED_FUNCTIONS[name]
    except KeyError:
        known = ", ".join(sorted(NAMED_FUNCTIONS))
        raise KeyError(f"unknown function {name!r}; known: {known}") from None
