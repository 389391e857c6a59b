"""Jacobi, integrated Jacobi, and integrated Legendre polynomials.

Evaluation is by the forward three-term recurrence; an independent
terminating-hypergeometric evaluator (`jacobi_hyp`) cross-checks it
exactly in rational mode.  A small machine-checkable catalog of classical
difference identities is exposed through `identity_residual`.

The second parameter value beta = -1 is never run through the recurrence
(it degenerates there); it is defined through the integrated-polynomial
factorization (1+x)/2 * (n+alpha)/n * P_{n-1}^{(alpha,1)} instead.
"""

from __future__ import annotations

import math

import numpy as np

from .numerics import pochhammer
from .scalars import EXACT, FLOAT, RAT, common_mode


def _check_params(alpha, beta):
    if alpha <= -1:
        raise ValueError(f"alpha must exceed -1, got {alpha}")
    if beta < -1:
        raise ValueError(f"beta must be >= -1, got {beta}")


def jacobi_eval(n: int, alpha, beta, x):
    """P_n^{(alpha,beta)}(x) by forward recurrence; exact for rational input."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    _check_params(alpha, beta)
    if beta == -1:
        # defined through the (alpha, 1) family, see module docstring
        if n == 0:
            return _one_like(x)
        return (1 + x) * (n + alpha) * jacobi_eval(n - 1, alpha, 1, x) / (2 * n)
    return jacobi_all(n, alpha, beta, x)[-1]


def jacobi_all(nmax: int, alpha, beta, x) -> list:
    """Values P_0 ... P_nmax at one point, in a single forward pass."""
    if nmax < 0:
        raise ValueError("degree must be nonnegative")
    _check_params(alpha, beta)
    if beta == -1:
        return [jacobi_eval(n, alpha, beta, x) for n in range(nmax + 1)]
    one = _one_like(x)
    out = [one]
    if nmax == 0:
        return out
    ab = alpha + beta
    out.append((alpha + 1) + (ab + 2) * (x - 1) / 2)
    for k in range(2, nmax + 1):
        a1 = 2 * k * (k + ab) * (2 * k + ab - 2)
        a2 = (2 * k + ab - 1) * (alpha * alpha - beta * beta)
        a3 = (2 * k + ab - 2) * (2 * k + ab - 1) * (2 * k + ab)
        a4 = 2 * (k + alpha - 1) * (k + beta - 1) * (2 * k + ab)
        out.append(((a2 + a3 * x) * out[k - 1] - a4 * out[k - 2]) / a1)
    return out


def _one_like(x):
    return 1.0 if common_mode(x) == FLOAT else RAT(1)


def jacobi_hyp(n: int, alpha, beta, x):
    """P_n via the terminating 2F1 sum; independent oracle for jacobi_eval.

    ((alpha+1)_n / n!) * sum_k (-n)_k (n+alpha+beta+1)_k / ((alpha+1)_k k!) * ((1-x)/2)^k
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    mode = common_mode(alpha, beta, x)
    t = (1 - x) / 2
    term = _one_like(x)
    total = term
    for k in range(n):
        low = alpha + 1 + k
        if low == 0:
            raise ZeroDivisionError("lower-parameter pole in hypergeometric sum")
        term = term * (-n + k) * (n + alpha + beta + 1 + k) * t / (low * (k + 1))
        total = total + term
    pref = pochhammer(alpha + 1, n)
    if mode == EXACT:
        return RAT(pref) * total / math.factorial(n)
    return float(pref) * total / math.factorial(n)


def integrated_jacobi(n: int, alpha, x):
    """Antiderivative of P_{n-1}^{(alpha,0)} vanishing at -1, for alpha > 0.

    Equals (1+x)/n * P_{n-1}^{(alpha-1,1)}(x).
    """
    if n < 1:
        raise ValueError("integrated polynomial index starts at 1")
    if alpha <= 0:
        raise ValueError("weight exponent must be positive (alpha=0 is the Legendre case)")
    return (1 + x) * jacobi_eval(n - 1, alpha - 1, 1, x) / n


def integrated_legendre(n: int, x):
    """Antiderivative of P_{n-1} vanishing at -1: (x^2-1)/(2(n-1)) P_{n-2}^{(1,1)}."""
    if n < 1:
        raise ValueError("integrated polynomial index starts at 1")
    if n == 1:
        return x + _one_like(x)
    return (x * x - 1) * jacobi_eval(n - 2, 1, 1, x) / (2 * (n - 1))


def integrated_any(n: int, alpha, x):
    """Integrated Jacobi for alpha > 0, integrated Legendre for alpha == 0."""
    return integrated_legendre(n, x) if alpha == 0 else integrated_jacobi(n, alpha, x)


# ---------------------------------------------------------------------------
# vectorized float evaluation (quadrature/assembly kernels)
# ---------------------------------------------------------------------------

def jacobi_all_array(nmax: int, alpha: float, beta: float, x: np.ndarray) -> np.ndarray:
    """Rows P_0 ... P_nmax evaluated at an array of points (float64)."""
    _check_params(alpha, beta)
    if beta == -1:
        raise ValueError("array path does not take the degenerate beta")
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax == 0:
        return out
    ab = alpha + beta
    out[1] = (alpha + 1) + (ab + 2) * (x - 1) / 2
    for k in range(2, nmax + 1):
        a1 = 2 * k * (k + ab) * (2 * k + ab - 2)
        a2 = (2 * k + ab - 1) * (alpha * alpha - beta * beta)
        a3 = (2 * k + ab - 2) * (2 * k + ab - 1) * (2 * k + ab)
        a4 = 2 * (k + alpha - 1) * (k + beta - 1) * (2 * k + ab)
        out[k] = ((a2 + a3 * x) * out[k - 1] - a4 * out[k - 2]) / a1
    return out


def integrated_all_array(nmax: int, alpha: float, x: np.ndarray) -> np.ndarray:
    """Rows p-hat_1 ... p-hat_nmax (index 0 unused, kept zero)."""
    x = np.asarray(x, dtype=float)
    out = np.zeros((nmax + 1,) + x.shape)
    if nmax < 1:
        return out
    if alpha == 0:
        out[1] = x + 1.0
        if nmax >= 2:
            jac = jacobi_all_array(nmax - 2, 1, 1, x)
            for n in range(2, nmax + 1):
                out[n] = (x * x - 1.0) * jac[n - 2] / (2 * (n - 1))
    else:
        jac = jacobi_all_array(nmax - 1, alpha - 1, 1, x)
        for n in range(1, nmax + 1):
            out[n] = (x + 1.0) * jac[n - 1] / n
    return out


# ---------------------------------------------------------------------------
# identity catalog
# ---------------------------------------------------------------------------

def _res_l1(n, a, b, x):
    return ((a + b + n) * jacobi_eval(n, a, b, x)
            - (b + n) * jacobi_eval(n, a, b - 1, x)
            - (a + n) * jacobi_eval(n, a - 1, b, x))


def _res_l2(n, a, b, x):
    return ((2 + a + b + 2 * n) * (x - 1) * jacobi_eval(n, a + 1, b, x) / 2
            - (n + 1) * jacobi_eval(n + 1, a, b, x)
            + (1 + a + n) * jacobi_eval(n, a, b, x))


def _res_l3(n, a, b, x):
    return ((2 + a + b + 2 * n) * (x + 1) * jacobi_eval(n, a, b + 1, x) / 2
            - (n + 1) * jacobi_eval(n + 1, a, b, x)
            - (1 + b + n) * jacobi_eval(n, a, b, x))


def _res_l4(n, a, b, x):
    return ((a + b + 2 * n) * jacobi_eval(n, a, b - 1, x)
            - (a + b + n) * jacobi_eval(n, a, b, x)
            - (a + n) * jacobi_eval(n - 1, a, b, x))


def _res_l5(n, a, b, x):
    return ((a + b + 2 * n) * jacobi_eval(n, a - 1, b, x)
            - (a + b + n) * jacobi_eval(n, a, b, x)
            + (b + n) * jacobi_eval(n - 1, a, b, x))


def _res_l6(n, a, b, x):
    return (2 * jacobi_eval(n, a, b, x)
            - (1 + x) * jacobi_eval(n, a, b + 1, x)
            - (1 - x) * jacobi_eval(n, a + 1, b, x))


def _res_l7(n, a, b, x):
    return (jacobi_eval(n - 1, a, b, x)
            - jacobi_eval(n, a, b - 1, x)
            + jacobi_eval(n, a - 1, b, x))


def _res_three_term(n, a, b, x):
    s = a + b
    return (2 * n * (s + n) * (s + 2 * n - 2) * jacobi_eval(n, a, b, x)
            - ((s + 2 * n - 1) * (a * a - b * b)
               + x * (s + 2 * n - 2) * (s + 2 * n - 1) * (s + 2 * n))
            * jacobi_eval(n - 1, a, b, x)
            + 2 * (a + n - 1) * (b + n - 1) * (s + 2 * n) * jacobi_eval(n - 2, a, b, x))


def _res_reflect(n, a, b, x):
    return jacobi_eval(n, a, b, -x) - (-1) ** n * jacobi_eval(n, b, a, x)


def _res_hyp_b(n, a, b, x):
    # second hypergeometric form, anchored at x = -1 instead of x = 1
    mode = common_mode(a, b, x)
    t = (1 + x) / 2
    term = _one_like(x)
    total = term
    for k in range(n):
        low = b + 1 + k
        if low == 0:
            raise ZeroDivisionError("lower-parameter pole in hypergeometric sum")
        term = term * (-n + k) * (n + a + b + 1 + k) * t / (low * (k + 1))
        total = total + term
    pref = (-1) ** n * pochhammer(b + 1, n)
    if mode == EXACT:
        hyp = RAT(pref) * total / math.factorial(n)
    else:
        hyp = float(pref) * total / math.factorial(n)
    return jacobi_eval(n, a, b, x) - hyp


#: id -> (residual function, regime predicate on (n, alpha, beta))
IDENTITIES = {
    "L1": (_res_l1, lambda n, a, b: a > 0 and b >= 0),
    "L2": (_res_l2, lambda n, a, b: True),
    "L3": (_res_l3, lambda n, a, b: True),
    "L4": (_res_l4, lambda n, a, b: n >= 1 and b >= 0),
    "L5": (_res_l5, lambda n, a, b: n >= 1 and a > 0),
    "L6": (_res_l6, lambda n, a, b: True),
    "L7": (_res_l7, lambda n, a, b: n >= 1 and a > 0 and b >= 0),
    "ThreeTerm": (_res_three_term, lambda n, a, b: n >= 2),
    "Reflect": (_res_reflect, lambda n, a, b: b > -1),
    "HypB": (_res_hyp_b, lambda n, a, b: b > -1),
}


def identity_residual(identity_id: str, n: int, alpha, beta, x):
    """LHS - RHS of a cataloged identity; contract: exactly zero in regime."""
    try:
        fn, regime = IDENTITIES[identity_id]
    except KeyError:
        raise KeyError(f"unknown identity {identity_id!r}; "
                       f"known: {sorted(IDENTITIES)}") from None
    if not regime(n, alpha, beta):
        raise ValueError(f"({n}, {alpha}, {beta}) outside regime of {identity_id}")
    return fn(n, alpha, beta, x)
