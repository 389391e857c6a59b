"""The weighted product integral in its directly computable forms.

Canonical value:

    I = integral_{-1}^{1} ((1-x)/2)^mu ((1+x)/2)^nu
        P_n^{(alpha,beta)}(x) P_m^{(rho,delta)}(x) dx            (kind "plain")

or, for kind "integrated", with the polynomials replaced by integrated
Jacobi polynomials p-hat_n^{(alpha,0)}, p-hat_m^{(rho,0)} (n, m >= 1; the
beta/delta fields are ignored).  Everything downstream (tables, assembly)
uses this scaled-weight convention; the unscaled weight (1-x)^mu (1+x)^nu
differs by the constant 2^(mu+nu), which `integral_direct` absorbs.

Two independent evaluation routes are provided: the exact double sum over
the hypergeometric expansions of both polynomials (`integral_direct`,
bit-exact in rational mode) and degree-exact Gauss-Legendre quadrature
(`integral_quad`).  Note the direct sum is strongly cancelling; in float
mode it is only trustworthy for small degrees, which is why table seeding
prefers the rational branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hyper import PoleError, pfq_terminating
from .jacobi import integrated_all_array, jacobi_all_array
from .numerics import beta_exact, beta_function, gauss_legendre, pochhammer
from .scalars import EXACT, FLOAT, RAT, common_mode, is_integral

PLAIN = "plain"
INTEGRATED = "integrated"


@dataclass(frozen=True)
class IntegralSpec:
    """One integral I_{n,m}; see module docstring for the conventions."""

    n: int
    m: int
    alpha: object = 0
    beta: object = 0
    rho: object = 0
    delta: object = 0
    mu: object = 0
    nu: object = 0
    kind: str = PLAIN

    def __post_init__(self):
        if self.kind not in (PLAIN, INTEGRATED):
            raise ValueError(f"unknown kind {self.kind!r}")
        lo = 0 if self.kind == PLAIN else 1
        if self.n < lo or self.m < lo:
            raise ValueError(f"indices must be >= {lo} for kind {self.kind}")
        if self.mu <= -1 or self.nu <= -1:
            raise ValueError("weight exponents must exceed -1")
        if self.kind == PLAIN:
            if self.n + self.alpha + self.beta < 0 or self.m + self.rho + self.delta < 0:
                raise ValueError("need n+alpha+beta >= 0 and m+rho+delta >= 0")
        else:
            if self.alpha < 0 or self.rho < 0:
                raise ValueError("integrated kind needs alpha, rho >= 0")

    @property
    def mode(self) -> str:
        return common_mode(self.alpha, self.beta, self.rho, self.delta,
                           self.mu, self.nu)


def _integrated_factor(k: int, alpha):
    """Rewrite one p-hat factor as (multiplier, (n', a', b'), dmu, dnu).

    p-hat_k^{(alpha,0)} = multiplier * ((1-x)/2)^dmu ((1+x)/2)^dnu P_{n'}^{(a',b')}.
    """
    if k < 1:
        raise ValueError("integrated index starts at 1")
    if alpha > 0:
        return RAT(2, k), (k - 1, alpha - 1, 1), 0, 1
    if alpha == 0:
        if k == 1:
            return RAT(2), (0, 0, 0), 0, 1
        return RAT(-2, k - 1), (k - 2, 1, 1), 1, 1
    raise ValueError("integrated weight exponent must be >= 0")


def integrated_to_plain(spec: IntegralSpec) -> tuple:
    """(multiplier, plain IntegralSpec) with the same canonical value."""
    if spec.kind != INTEGRATED:
        raise ValueError("spec is already plain")
    cn, (n2, a2, b2), dmu_n, dnu_n = _integrated_factor(spec.n, spec.alpha)
    cm, (m2, r2, d2), dmu_m, dnu_m = _integrated_factor(spec.m, spec.rho)
    plain = IntegralSpec(n2, m2, a2, b2, r2, d2,
                         spec.mu + dmu_n + dmu_m, spec.nu + dnu_n + dnu_m, PLAIN)
    return cn * cm, plain


def _direct_plain(spec: IntegralSpec, mode: str):
    n, m = spec.n, spec.m
    a, b, r, d = spec.alpha, spec.beta, spec.rho, spec.delta
    mu, nu = spec.mu, spec.nu
    if mode == EXACT:
        if not (is_integral(mu) and is_integral(nu)):
            raise ValueError("exact mode needs integer weight exponents")
        one = RAT(1)
        bet = beta_exact(int(mu) + 1, int(nu) + 1)
    else:
        one = 1.0
        bet = beta_function(float(mu) + 1, float(nu) + 1, mode=FLOAT)
    bn = n + a + b + 1
    bm = m + r + d + 1
    total = 0 * one
    row = one
    for l in range(n + 1):
        term = row
        for rr in range(m + 1):
            total = total + term
            if rr < m:
                if r + 1 + rr == 0:
                    raise PoleError("lower-parameter pole in the direct sum")
                term = (term * (-m + rr) * (bm + rr) * (mu + 1 + l + rr)
                        / ((r + 1 + rr) * (mu + nu + 2 + l + rr) * (rr + 1)))
        if l < n:
            if a + 1 + l == 0:
                raise PoleError("lower-parameter pole in the direct sum")
            row = (row * (-n + l) * (bn + l) * (mu + 1 + l)
                   / ((a + 1 + l) * (mu + nu + 2 + l) * (l + 1)))
    pref = 2 * pochhammer(a + 1, n) * pochhammer(r + 1, m) * bet
    pref = pref / (math.factorial(n) * math.factorial(m))
    return pref * total


def integral_direct(spec: IntegralSpec, mode: str | None = None):
    """Exact double-sum value of the canonical integral.

    Rational mode (integer mu, nu and rational parameters) is bit-exact.
    Integrated kind is first rewritten to plain form with shifted weights.
    """
    if mode is None:
        mode = spec.mode
        if mode == EXACT and not (is_integral(spec.mu) and is_integral(spec.nu)):
            mode = FLOAT
    if spec.kind == INTEGRATED:
        mult, plain = integrated_to_plain(spec)
        mult = float(mult) if mode == FLOAT else mult
        return mult * _direct_plain(plain, mode)
    return _direct_plain(spec, mode)


def single_integrated_direct(mu, alpha, ell: int, mode: str = EXACT):
    """integral ((1-x)/2)^mu p-hat_ell^{(alpha,0)}(x) dx (one-factor case)."""
    mult, (m2, r2, d2), dmu, dnu = _integrated_factor(ell, alpha)
    plain = IntegralSpec(0, m2, 0, 0, r2, d2, mu + dmu, dnu, PLAIN)
    val = _direct_plain(plain, mode)
    return (float(mult) if mode == FLOAT else mult) * val


def quad_point_count(spec: IntegralSpec) -> int:
    return math.ceil((spec.n + spec.m + int(spec.mu) + int(spec.nu) + 2) / 2)


def integral_quad(spec: IntegralSpec) -> float:
    """Degree-exact Gauss-Legendre value (integer weight exponents only)."""
    if not (is_integral(spec.mu) and is_integral(spec.nu)):
        raise ValueError("quadrature route needs integer weight exponents; "
                         "use integral_direct")
    mu, nu = int(spec.mu), int(spec.nu)
    if mu < 0 or nu < 0:
        raise ValueError("quadrature route needs nonnegative weight exponents")
    rule = gauss_legendre(quad_point_count(spec))
    x = np.asarray(rule.nodes)
    w = np.asarray(rule.weights)
    if spec.kind == PLAIN:
        pn = jacobi_all_array(spec.n, float(spec.alpha), float(spec.beta), x)[spec.n]
        pm = jacobi_all_array(spec.m, float(spec.rho), float(spec.delta), x)[spec.m]
    else:
        pn = integrated_all_array(spec.n, float(spec.alpha), x)[spec.n]
        pm = integrated_all_array(spec.m, float(spec.rho), x)[spec.m]
    wgt = ((1.0 - x) / 2.0) ** mu * ((1.0 + x) / 2.0) ** nu
    return float(np.dot(w, wgt * pn * pm))


def fourf3_value(n: int, m: int, alpha, rho, mu):
    """Terminating 4F3(-m, rho+m+1, 1, 1+mu-alpha; rho+1, n+2, 1+mu-alpha-n; 1).

    The bare series only: any calibration constant relating it to the
    integral is deliberately not applied here (that constant is reported by
    the tests, not assumed).  Precondition mu <= alpha or alpha
    non-integer, so that no lower-parameter pole is reachable.
    """
    if not (mu <= alpha or not is_integral(alpha)):
        raise ValueError("need mu <= alpha or non-integer alpha")
    return pfq_terminating(
        (-m, rho + m + 1, 1, 1 + mu - alpha),
        (rho + 1, n + 2, 1 + mu - alpha - n),
        RAT(1) if common_mode(alpha, rho, mu) == EXACT else 1.0)
