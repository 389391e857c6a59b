"""Terminating hypergeometric and Kampé de Fériet series.

Everything here is a finite sum: a terminating series is one whose upper
parameter list contains a nonpositive integer.  In exact mode sums are
evaluated with rational arithmetic and incremental term ratios, so the
results are bit-exact and usable as certification oracles.

The two-variable series used throughout is the prefactored

    F = 2^(mu+nu+1) (alpha+1)_n (rho+1)_m B(nu+1, mu+1) / (n! m!)
        * F^{1;2;2}_{1;1;1}( mu+1 ; -n, n+alpha+beta+1 ; -m, m+rho+delta+1
                           / mu+nu+2 ; alpha+1 ; rho+1 ; x ; y ),

which at x = y = 1 equals the weighted Jacobi product integral
integral_{-1}^{1} (1-t)^mu (1+t)^nu P_n^{(alpha,beta)} P_m^{(rho,delta)} dt.
An analogue form anchored at the other interval endpoint (lower parameters
beta+1, delta+1, coupled upper nu+1) is used by part of the relation
catalog; both agree at x = y = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .numerics import beta_exact, beta_function, pochhammer
from .scalars import EXACT, FLOAT, RAT, common_mode, is_integral


class PoleError(ArithmeticError):
    """A lower parameter hit a nonpositive integer before termination."""


def _termination_index(upper) -> int:
    hits = [int(-a) for a in upper if is_integral(a) and a <= 0]
    if not hits:
        raise ValueError("series does not terminate: no nonpositive integer "
                         "upper parameter")
    return min(hits)


def pfq_terminating(upper, lower, x):
    """Terminating pFq(upper; lower; x) as a finite sum; exact for rationals."""
    kmax = _termination_index(upper)
    mode = common_mode(x, *upper, *lower)
    term = RAT(1) if mode == EXACT else 1.0
    total = term
    for k in range(kmax):
        num = term
        for a in upper:
            num = num * (a + k)
        if num == 0:
            break
        for b in lower:
            if b + k == 0:
                raise PoleError(f"lower parameter {b} poles at step {k}")
            num = num / (b + k)
        term = num * x / (k + 1)
        total = total + term
    return total


def _ratio(num, den):
    # keep exact inputs exact (int/int would fall to float division)
    if isinstance(num, float) or isinstance(den, float):
        return num / den
    return RAT(num) / RAT(den)


def chu_vandermonde_rhs(m: int, b, c):
    """Closed form of 2F1(-m, b; c; 1): (c-b)_m / (c)_m."""
    if m < 0:
        raise ValueError("order must be nonnegative")
    den = pochhammer(c, m)
    if den == 0:
        raise PoleError(f"(c)_{m} vanishes for c={c}")
    return _ratio(pochhammer(c - b, m), den)


def gauss_sum_rhs(a, b, c):
    """Gauss summation of 2F1(a, b; c; 1).

    Terminating case (a or b a nonpositive integer) is exact via the
    Chu-Vandermonde form; otherwise needs c-a-b > 0 and goes through
    log-Gamma ratios in float.
    """
    if is_integral(a) and a <= 0:
        return chu_vandermonde_rhs(int(-a), b, c)
    if is_integral(b) and b <= 0:
        return chu_vandermonde_rhs(int(-b), a, c)
    if c - a - b <= 0:
        raise ValueError("Gauss sum needs c - a - b > 0 for a convergent series")
    for g in (c, c - a - b, c - a, c - b):
        if g <= 0 and is_integral(g):
            raise PoleError(f"Gamma pole at {g}")
    return math.exp(math.lgamma(float(c)) + math.lgamma(float(c - a - b))
                    - math.lgamma(float(c - a)) - math.lgamma(float(c - b)))


def pfaff_saalschutz_rhs(m: int, a, b, c):
    """Closed form of the balanced 3F2(-m, a, b; c, 1+a+b-c-m; 1).

    (c-a)_m (c-b)_m / ((c)_m (c-a-b)_m), certified against brute-force
    summation of the series itself.
    """
    if m < 0:
        raise ValueError("order must be nonnegative")
    den = pochhammer(c, m) * pochhammer(c - a - b, m)
    if den == 0:
        raise PoleError("denominator Pochhammer vanishes")
    return _ratio(pochhammer(c - a, m) * pochhammer(c - b, m), den)


# ---------------------------------------------------------------------------
# Kampé de Fériet series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KampeSpec:
    """Prefactored two-variable series instance (see module docstring)."""

    n: int
    m: int
    alpha: object
    beta: object
    rho: object
    delta: object
    mu: object
    nu: object
    x: object = 1
    y: object = 1

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.m, int)):
            raise TypeError("series orders n, m must be ints")
        if self.n < 0 or self.m < 0:
            raise ValueError(f"series orders must be nonnegative, got ({self.n}, {self.m})")
        for name in ("alpha", "rho", "mu", "nu"):
            if getattr(self, name) <= -1:
                raise ValueError(f"{name} must exceed -1, got {getattr(self, name)}")

    @property
    def mode(self) -> str:
        return common_mode(self.alpha, self.beta, self.rho, self.delta,
                           self.mu, self.nu, self.x, self.y)

    def shifted(self, dn=0, dm=0, dalpha=0, dbeta=0, drho=0, ddelta=0,
                dmu=0, dnu=0) -> "KampeSpec":
        return replace(self, n=self.n + dn, m=self.m + dm,
                       alpha=self.alpha + dalpha, beta=self.beta + dbeta,
                       rho=self.rho + drho, delta=self.delta + ddelta,
                       mu=self.mu + dmu, nu=self.nu + dnu)


@dataclass(frozen=True)
class ParameterShift:
    """Integer offsets applied to all eight series parameters."""

    dn: int = 0
    dm: int = 0
    dalpha: int = 0
    dbeta: int = 0
    drho: int = 0
    ddelta: int = 0
    dmu: int = 0
    dnu: int = 0

    def __post_init__(self):
        for name, v in self.__dict__.items():
            if not isinstance(v, int) or not -2 <= v <= 2:
                raise ValueError(f"shift component {name}={v} outside -2..2")

    def apply(self, spec: KampeSpec) -> KampeSpec:
        return spec.shifted(**self.__dict__)


def _prefactor(spec: KampeSpec, analogue: bool):
    mode = spec.mode
    if mode == EXACT:
        if not (is_integral(spec.mu) and is_integral(spec.nu)):
            raise ValueError("exact mode needs integer weight exponents mu, nu")
        two_pow = RAT(2) ** (int(spec.mu) + int(spec.nu) + 1)
        bet = beta_exact(int(spec.nu) + 1, int(spec.mu) + 1)
        fac = RAT(math.factorial(spec.n) * math.factorial(spec.m))
    else:
        two_pow = 2.0 ** (float(spec.mu) + float(spec.nu) + 1)
        bet = beta_function(float(spec.nu) + 1, float(spec.mu) + 1, mode=FLOAT)
        fac = float(math.factorial(spec.n) * math.factorial(spec.m))
    if analogue:
        sign = (-1) ** (spec.n + spec.m)
        poch = pochhammer(spec.beta + 1, spec.n) * pochhammer(spec.delta + 1, spec.m)
        return sign * two_pow * poch * bet / fac
    poch = pochhammer(spec.alpha + 1, spec.n) * pochhammer(spec.rho + 1, spec.m)
    return two_pow * poch * bet / fac


def _double_sum(spec: KampeSpec, analogue: bool, theta: str | None):
    """The bare F^{1;2;2}_{1;1;1} sum, optionally with a termwise k or l factor."""
    n, m = spec.n, spec.m
    up_nm = (spec.nu if analogue else spec.mu) + 1
    lo_nm = spec.mu + spec.nu + 2
    lo_n = (spec.beta if analogue else spec.alpha) + 1
    lo_m = (spec.delta if analogue else spec.rho) + 1
    if analogue and (lo_n <= 0 or lo_m <= 0):
        raise PoleError("analogue form needs beta, delta > -1")
    bn = spec.n + spec.alpha + spec.beta + 1
    bm = spec.m + spec.rho + spec.delta + 1
    x, y = spec.x, spec.y
    one = RAT(1) if spec.mode == EXACT else 1.0
    total = 0 * one
    row = one
    for k in range(n + 1):
        term = row
        for l in range(m + 1):
            if theta is None:
                total = total + term
            elif theta == "x":
                total = total + k * term
            else:
                total = total + l * term
            if l < m:
                term = (term * (up_nm + k + l) * (-m + l) * (bm + l) * y
                        / ((lo_nm + k + l) * (lo_m + l) * (l + 1)))
        if k < n:
            row = (row * (up_nm + k) * (-n + k) * (bn + k) * x
                   / ((lo_nm + k) * (lo_n + k) * (k + 1)))
    return total


def kampe_eval(spec: KampeSpec):
    """Value of the prefactored series; exact in rational mode (integer mu, nu)."""
    return _prefactor(spec, analogue=False) * _double_sum(spec, False, None)


def kampe_eval_analogue(spec: KampeSpec):
    """Same quantity built from the endpoint-reflected expansion.

    Requires beta, delta > -1; equals kampe_eval when x = y = 1.
    """
    return _prefactor(spec, analogue=True) * _double_sum(spec, True, None)


def kampe_shifted(spec: KampeSpec, shift: ParameterShift):
    """Evaluate the series with all eight parameters offset (prefactor included)."""
    return kampe_eval(shift.apply(spec))


def euler_theta(spec: KampeSpec, axis: str, analogue: bool = False):
    """x d/dx (axis 'x') or y d/dy (axis 'y') of the series, termwise.

    The sum terminates, so the operator is exact: it multiplies the (k, l)
    term by k or l.
    """
    if axis not in ("x", "y"):
        raise ValueError("axis must be 'x' or 'y'")
    return _prefactor(spec, analogue) * _double_sum(spec, analogue, axis)
