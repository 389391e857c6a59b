"""Rational/float numeric primitives and Gauss-Legendre quadrature.

The quadrature rules double as the package-wide independent oracle: node
finding is a plain Newton iteration on the Legendre three-term recurrence,
so the rules carry no dependency on any of the recursion machinery they
are later used to check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import gmpy2

from .scalars import EXACT, FLOAT, RAT, check_finite, is_integral, mode_of


def pochhammer(a, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.

    Exact when ``a`` is an int or rational.
    """
    if n < 0:
        raise ValueError("pochhammer order must be nonnegative")
    out = 1 if not isinstance(a, float) else 1.0
    for k in range(n):
        out = out * (a + k)
    return out


def factorial_exact(n: int):
    return RAT(math.factorial(n))


def beta_exact(x: int, y: int):
    """B(x, y) for positive integers, as an exact rational."""
    if not (is_integral(x) and is_integral(y)):
        raise ValueError("exact Beta needs integer arguments")
    x, y = int(x), int(y)
    if x <= 0 or y <= 0:
        raise ValueError("Beta arguments must be positive")
    return RAT(math.factorial(x - 1) * math.factorial(y - 1),
               math.factorial(x + y - 1))


def beta_function(x, y, mode: str | None = None):
    """Euler Beta B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y), x, y > 0.

    Integer arguments in exact mode use factorials; otherwise log-Gamma.
    """
    if x <= 0 or y <= 0:
        raise ValueError(f"Beta arguments must be positive, got ({x}, {y})")
    if mode is None:
        mode = EXACT if (is_integral(x) and is_integral(y)
                         and mode_of(x) != FLOAT and mode_of(y) != FLOAT) else FLOAT
    if mode == EXACT:
        return beta_exact(x, y)
    return math.exp(math.lgamma(float(x)) + math.lgamma(float(y))
                    - math.lgamma(float(x) + float(y)))


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes/weights on (-1, 1), exact to degree 2k-1."""

    nodes: tuple
    weights: tuple
    exactness_degree: int

    def __post_init__(self):
        if len(self.nodes) != len(self.weights):
            raise ValueError("node/weight count mismatch")


def _legendre_pair(k: int, x):
    """(P_k(x), P_k'(x)) by the three-term recurrence.

    Polymorphic over the scalar type (float or gmpy2.mpfr), so the same
    code serves the Newton sweep and the extended-precision polish.
    """
    one = x - x + 1
    p0, p1 = one, x
    if k == 0:
        return one, x - x
    for j in range(2, k + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    # derivative from the standard relation on (-1, 1)
    dp = k * (x * p1 - p0) / (x * x - 1)
    return p1, dp


_RULE_CACHE: dict[int, QuadratureRule] = {}


def gauss_legendre(k: int) -> QuadratureRule:
    """k-point Gauss-Legendre rule on [-1, 1].

    Newton iteration from Chebyshev initial guesses; converges when the
    step drops below 1e-15 (at most 100 iterations per node).
    """
    if k < 1:
        raise ValueError("rule size must be >= 1")
    cached = _RULE_CACHE.get(k)
    if cached is not None:
        return cached
    nodes = [0.0] * k
    weights = [0.0] * k
    ctx = gmpy2.context(precision=120)
    for i in range(k // 2):
        x = -math.cos(math.pi * (i + 0.75) / (k + 0.5))
        for _ in range(100):
            p, dp = _legendre_pair(k, x)
            step = p / dp
            x -= step
            if abs(step) < 1e-15:
                break
        # two extended-precision polish steps leave the stored double within
        # half an ulp of the true root (plain float Newton plateaus at ~k*eps
        # because the recurrence itself rounds)
        with ctx:
            xe = gmpy2.mpfr(x)
            for _ in range(2):
                p, dp = _legendre_pair(k, xe)
                xe -= p / dp
            _, dp = _legendre_pair(k, xe)
            w = float(2 / ((1 - xe * xe) * dp * dp))
            x = float(xe)
        nodes[i], weights[i] = x, w
        nodes[k - 1 - i], weights[k - 1 - i] = -x, w
    if k % 2 == 1:
        _, dp = _legendre_pair(k, 0.0)
        nodes[k // 2] = 0.0
        weights[k // 2] = 2.0 / (dp * dp)
    rule = QuadratureRule(tuple(nodes), tuple(weights), 2 * k - 1)
    _RULE_CACHE[k] = rule
    return rule


def integrate(rule: QuadratureRule, f: Callable[[float], float]) -> float:
    """Apply a rule to a callable: sum of w_i f(x_i)."""
    total = 0.0
    for x, w in zip(rule.nodes, rule.weights):
        total += w * check_finite(float(f(x)))
    return total


def integrate_values(rule: QuadratureRule, values: Sequence[float]) -> float:
    """Apply a rule to pretabulated integrand values."""
    if len(values) != len(rule.nodes):
        raise ValueError("value count does not match rule size")
    return float(sum(w * check_finite(float(v))
                     for w, v in zip(rule.weights, values)))
