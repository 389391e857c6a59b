"""Certified catalog of contiguous/recurrence relations for the series F.

Each relation is stored as data: a list of (coefficient function, parameter
shift, optional Euler-operator axis) terms whose sum must be exactly zero.
`relation_residual` assembles that sum from `kampe_eval`/`euler_theta`
calls, so one generic evaluator serves the whole catalog.

Every entry below was certified in exact rational arithmetic against the
series evaluator (itself checked against brute-force polynomial
integration) before being frozen.  Where certification rejected a
published form, the corrected form is the one stored here; the visible
differences are confined to sign flips on the nu-/mu-lowering terms of
"MixedRec2"/"MixedRec4"/"Mixed2", the inner factors of the three 5-point
relations, and the constant term of the reduced relation "folg4p13".

Relation ids are a stable external interface (used by the CLI verify
command); "general" relations hold for arbitrary arguments (x, y) and are
checked there, the rest are specific to x = y = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .hyper import KampeSpec, euler_theta, kampe_eval, kampe_eval_analogue
from .scalars import EXACT, RAT


@dataclass(frozen=True)
class Term:
    coeff: Callable[[KampeSpec], object]
    shift: dict
    theta: str | None = None


@dataclass(frozen=True)
class Relation:
    name: str
    terms: tuple
    analogue: bool = False      # evaluate on the endpoint-reflected series
    general_xy: bool = False    # holds for all (x, y); else x = y = 1 only
    n_min: int = 0
    m_min: int = 0
    alpha_pos: bool = False     # needs alpha > 0 (an alpha-lowering shift)
    rho_pos: bool = False
    mu_min: int = 0
    nu_min: int = 0
    special: str | None = None  # extra parameter constraint, see in_regime

    def in_regime(self, spec: KampeSpec) -> bool:
        if spec.n < self.n_min or spec.m < self.m_min:
            return False
        if self.alpha_pos and not spec.alpha > 0:
            return False
        if self.rho_pos and not spec.rho > 0:
            return False
        if spec.mu < self.mu_min or spec.nu < self.nu_min:
            return False
        if not self.general_xy and not (spec.x == 1 and spec.y == 1):
            return False
        if self.special == "easy":
            return (spec.alpha == spec.rho and spec.beta == 0 and spec.delta == 0
                    and spec.mu == 0 and spec.nu == 0)
        if self.special == "nu1=beta+delta":
            return spec.nu + 1 == spec.beta + spec.delta
        return True


def T(coeff, theta=None, **shift) -> Term:
    return Term(coeff, shift, theta)


def _exactify(spec: KampeSpec) -> KampeSpec:
    if spec.mode != EXACT:
        return spec
    return KampeSpec(spec.n, spec.m, RAT(spec.alpha), RAT(spec.beta),
                     RAT(spec.rho), RAT(spec.delta), RAT(spec.mu),
                     RAT(spec.nu), RAT(spec.x), RAT(spec.y))


def _p3(v):
    # rising factorial of length 3
    return v * (v + 1) * (v + 2)


def _star_terms(side: str, variant: int):
    """Five-point bracket in the n (or m) direction.

    variant 1 comes from eliminating the alpha-lowered (rho-lowered) series,
    variant 2 from the beta-lowered (delta-lowered) one; variant 3 is their
    sum.  Returned coefficients already carry the opposite side's cubic
    prefactor, with the m-side entering negated so the terms sum to zero.
    """
    if side == "n":
        one, par1, par2 = (lambda s: s.n), (lambda s: s.alpha), (lambda s: s.beta)
        dshift, sgn = "dn", 1
        pref = lambda s: _p3(2 * s.m + s.rho + s.delta)
    else:
        one, par1, par2 = (lambda s: s.m), (lambda s: s.rho), (lambda s: s.delta)
        dshift, sgn = "dm", -1
        pref = lambda s: _p3(2 * s.n + s.alpha + s.beta)

    def c_up(s):
        k, a, b = one(s), par1(s), par2(s)
        return sgn * pref(s) * (k + 1) * (2 * k + a + b) * (k + a + b + 1) * (2 if variant == 3 else 1)

    def c_mid(s):
        k, a, b = one(s), par1(s), par2(s)
        lead = (k + 1) * (2 * k + a + b)
        tail = (2 * k + a + b + 2) * (k + a + b)
        if variant == 1:
            v = -lead * (k + b + 1) - tail * (k + a)
        elif variant == 2:
            v = lead * (k + a + 1) + tail * (k + b)
        else:
            v = lead * (a - b) + tail * (b - a)
        return sgn * pref(s) * v

    def c_down(s):
        k, a, b = one(s), par1(s), par2(s)
        v = (k + a) * (k + b) * (2 * k + a + b + 2)
        return sgn * pref(s) * v * (2 if variant == 3 else 1)

    return (T(c_up, **{dshift: 1}), T(c_mid), T(c_down, **{dshift: -1}))


def _build_catalog() -> dict:
    rels = []

    # contiguous relations lifted from the classical parameter-shift identities
    rels.append(Relation("Rec1", (
        T(lambda s: s.alpha + s.beta + s.n),
        T(lambda s: -(s.beta + s.n), dbeta=-1),
        T(lambda s: -(s.alpha + s.n), dalpha=-1),
    ), alpha_pos=True))
    rels.append(Relation("Rec2", (
        T(lambda s: -(2 + s.alpha + s.beta + 2 * s.n) / 2, dalpha=1, dmu=1),
        T(lambda s: -(s.n + 1), dn=1),
        T(lambda s: 1 + s.alpha + s.n),
    )))
    rels.append(Relation("Rec3", (
        T(lambda s: (2 + s.alpha + s.beta + 2 * s.n) / 2, dbeta=1, dnu=1),
        T(lambda s: -(s.n + 1), dn=1),
        T(lambda s: -(1 + s.beta + s.n)),
    )))
    rels.append(Relation("Rec4", (
        T(lambda s: s.alpha + s.beta + 2 * s.n, dbeta=-1),
        T(lambda s: -(s.alpha + s.beta + s.n)),
        T(lambda s: -(s.alpha + s.n), dn=-1),
    ), n_min=1))
    rels.append(Relation("Rec5", (
        T(lambda s: s.alpha + s.beta + 2 * s.n, dalpha=-1),
        T(lambda s: -(s.alpha + s.beta + s.n)),
        T(lambda s: s.beta + s.n, dn=-1),
    ), n_min=1, alpha_pos=True))
    rels.append(Relation("Rec6", (
        T(lambda s: 2),
        T(lambda s: -1, dnu=1, dbeta=1),
        T(lambda s: -1, dmu=1, dalpha=1),
    )))
    rels.append(Relation("Rec7", (
        T(lambda s: 1, dn=-1),
        T(lambda s: -1, dbeta=-1),
        T(lambda s: 1, dalpha=-1),
    ), n_min=1, alpha_pos=True))
    rels.append(Relation("Rec4_2", (
        T(lambda s: s.rho + s.delta + 2 * s.m, ddelta=-1),
        T(lambda s: -(s.rho + s.delta + s.m)),
        T(lambda s: -(s.rho + s.m), dm=-1),
    ), m_min=1))

    rels.append(Relation("basicrec", (
        T(lambda s: -2 * (1 + s.alpha + s.n)),
        T(lambda s: -(1 + s.beta + s.n), dalpha=1),
        T(lambda s: 2 + s.alpha + s.beta + 2 * s.n, dalpha=1, dmu=1),
        T(lambda s: -(s.alpha + s.beta + 1), dn=1),
        T(lambda s: 2 + s.alpha + s.beta + s.n, dn=1, dalpha=1),
    )))
    rels.append(Relation("munu", (
        T(lambda s: 2),
        T(lambda s: -1, dnu=1),
        T(lambda s: -1, dmu=1),
    )))

    rels.append(Relation("MixedRec1", (
        T(lambda s: s.n + s.m + s.mu + s.nu + 4, dn=1, dm=1, dnu=1),
        T(lambda s: -(s.alpha + s.n + 1), dm=1, dbeta=1, dnu=1),
        T(lambda s: -(s.rho + s.m + 1), dn=1, ddelta=1, dnu=1),
        T(lambda s: -2 * (s.nu + 1), dn=1, dm=1),
    )))
    rels.append(Relation("MixedRec2", (
        T(lambda s: s.n + s.alpha + s.beta + s.m + s.rho + s.delta - s.mu - s.nu + 1),
        T(lambda s: -(s.n + s.alpha + s.beta + 1), dbeta=1),
        T(lambda s: -(s.m + s.rho + s.delta + 1), ddelta=1),
        T(lambda s: 2 * s.nu, dnu=-1),
    ), nu_min=1))
    rels.append(Relation("MixedRec3", (
        T(lambda s: s.n + s.m + s.mu + s.nu + 4, dn=1, dm=1, dmu=1),
        T(lambda s: s.beta + s.n + 1, dm=1, dalpha=1, dmu=1),
        T(lambda s: s.delta + s.m + 1, dn=1, drho=1, dmu=1),
        T(lambda s: -2 * (s.mu + 1), dn=1, dm=1),
    )))
    rels.append(Relation("MixedRec4", (
        T(lambda s: s.n + s.alpha + s.beta + s.m + s.rho + s.delta - s.mu - s.nu + 1),
        T(lambda s: -(s.n + s.alpha + s.beta + 1), dalpha=1),
        T(lambda s: -(s.m + s.rho + s.delta + 1), drho=1),
        T(lambda s: 2 * s.mu, dmu=-1),
    ), mu_min=1))

    rels.append(Relation("Mixed1", (
        T(lambda s: (2 * s.m + s.rho + s.delta + 1) * (s.n + 1), dn=1, dalpha=-1),
        T(lambda s: -(2 * s.m + s.rho + s.delta + 1) * (s.alpha + s.n), dalpha=-1),
        T(lambda s: -(2 * s.n + s.alpha + s.beta + 1) * (s.m + 1), dm=1, drho=-1),
        T(lambda s: (2 * s.n + s.alpha + s.beta + 1) * (s.rho + s.m), drho=-1),
    ), alpha_pos=True, rho_pos=True))
    rels.append(Relation("Mixed2", (
        T(lambda s: (2 * s.m + s.rho + s.delta + 1) * (s.n + 1), dn=1, dbeta=-1),
        T(lambda s: (2 * s.m + s.rho + s.delta + 1) * (s.beta + s.n), dbeta=-1),
        T(lambda s: -(2 * s.n + s.alpha + s.beta + 1) * (s.m + 1), dm=1, ddelta=-1),
        T(lambda s: -(2 * s.n + s.alpha + s.beta + 1) * (s.delta + s.m), ddelta=-1),
    )))

    for variant, name in ((1, "Mixed5Point"), (2, "Mixed5Point2"), (3, "Mixed5Point3")):
        rels.append(Relation(name, _star_terms("n", variant) + _star_terms("m", variant),
                             n_min=1, m_min=1))

    rels.append(Relation("recnu", (
        T(lambda s: (s.n + s.alpha + s.beta + 1) * (s.m + s.rho + s.delta + 1)
          * (s.n + s.m + s.mu + s.nu + 4), dn=1, dm=1, dnu=1),
        T(lambda s: -(s.n + s.alpha + s.beta + 1) * (s.m + s.rho + s.delta + 1)
          * 2 * (s.nu + 1), dn=1, dm=1),
        T(lambda s: -(s.alpha + s.n + 1) * (s.m + s.rho + s.delta + 1)
          * (s.n + s.alpha + s.beta - s.m - s.mu - s.nu - 2), dm=1, dnu=1),
        T(lambda s: -(s.alpha + s.n + 1) * (s.m + s.rho + s.delta + 1)
          * 2 * (s.nu + 1), dm=1),
        T(lambda s: -(s.rho + s.m + 1) * (s.n + s.alpha + s.beta + 1)
          * (-s.n + s.m + s.rho + s.delta - s.mu - s.nu - 2), dn=1, dnu=1),
        T(lambda s: -(s.rho + s.m + 1) * (s.n + s.alpha + s.beta + 1)
          * 2 * (s.nu + 1), dn=1),
        T(lambda s: -(s.rho + s.m + 1) * (s.alpha + s.n + 1)
          * (s.n + s.alpha + s.beta + s.m + s.rho + s.delta - s.mu - s.nu), dnu=1),
        T(lambda s: -(s.rho + s.m + 1) * (s.alpha + s.n + 1) * 2 * (s.nu + 1)),
    )))
    rels.append(Relation("recmu", (
        T(lambda s: (s.n + s.alpha + s.beta + 1) * (s.m + s.rho + s.delta + 1)
          * (s.n + s.m + s.mu + s.nu + 4), dn=1, dm=1, dmu=1),
        T(lambda s: -(s.n + s.alpha + s.beta + 1) * (s.m + s.rho + s.delta + 1)
          * 2 * (s.mu + 1), dn=1, dm=1),
        T(lambda s: (s.beta + s.n + 1) * (s.m + s.rho + s.delta + 1)
          * (s.n + s.alpha + s.beta - s.m - s.mu - s.nu - 2), dm=1, dmu=1),
        T(lambda s: (s.beta + s.n + 1) * (s.m + s.rho + s.delta + 1)
          * 2 * (s.mu + 1), dm=1),
        T(lambda s: (s.delta + s.m + 1) * (s.n + s.alpha + s.beta + 1)
          * (-s.n + s.m + s.rho + s.delta - s.mu - s.nu - 2), dn=1, dmu=1),
        T(lambda s: (s.delta + s.m + 1) * (s.n + s.alpha + s.beta + 1)
          * 2 * (s.mu + 1), dn=1),
        T(lambda s: -(s.delta + s.m + 1) * (s.beta + s.n + 1)
          * (s.n + s.alpha + s.beta + s.m + s.rho + s.delta - s.mu - s.nu), dmu=1),
        T(lambda s: -(s.delta + s.m + 1) * (s.beta + s.n + 1) * 2 * (s.mu + 1)),
    )))

    def hr_c(s):
        return s.nu + 1 - s.beta - s.delta

    rels.append(Relation("HardRec", (
        T(lambda s: (s.n + 1) * (s.m + 1) * (s.n + s.m + s.mu + s.nu + 4),
          dn=1, dm=1, dnu=1),
        T(lambda s: -(s.n + 1) * (s.m + 1) * 2 * hr_c(s), dn=1, dm=1),
        T(lambda s: -(s.n + s.beta + 1) * (s.m + 1)
          * (s.n + s.alpha + s.beta - s.m - s.mu - s.nu - 2), dm=1, dnu=1),
        T(lambda s: -(s.n + s.beta + 1) * (s.m + 1) * 2 * hr_c(s), dm=1),
        T(lambda s: -(s.n + 1) * (s.m + s.delta + 1)
          * (-s.n + s.m + s.rho + s.delta - s.mu - s.nu - 2), dn=1, dnu=1),
        T(lambda s: -(s.n + 1) * (s.m + s.delta + 1) * 2 * hr_c(s), dn=1),
        T(lambda s: -(s.n + s.beta + 1) * (s.m + s.delta + 1)
          * (s.n + s.alpha + s.beta + s.m + s.rho + s.delta - s.mu - s.nu), dnu=1),
        T(lambda s: -(s.n + s.beta + 1) * (s.m + s.delta + 1) * 2 * hr_c(s)),
    )))

    rels.append(Relation("folg4p13", (
        T(lambda s: (s.n + 1) * (s.m + 1) * (s.n + s.m + s.mu + s.nu + 4),
          dn=1, dm=1, dnu=1),
        T(lambda s: -(s.n + s.beta + 1) * (s.m + 1)
          * (s.n + s.alpha + s.beta - s.m - s.mu - s.nu - 2), dm=1, dnu=1),
        T(lambda s: -(s.n + 1) * (s.m + s.delta + 1)
          * (-s.n + s.m + s.rho + s.delta - s.mu - s.nu - 2), dn=1, dnu=1),
        T(lambda s: -(s.n + s.beta + 1) * (s.m + s.delta + 1)
          * (s.n + s.alpha + s.m + s.rho - s.mu + 1), dnu=1),
    ), special="nu1=beta+delta"))

    rels.append(Relation("EasyRec", (
        T(lambda s: s.m + s.n + 3, dn=1, dm=1),
        T(lambda s: -(s.alpha + s.m - s.n - 1), dn=1),
        T(lambda s: -(s.alpha - s.m + s.n - 1), dm=1),
        T(lambda s: -(2 * s.alpha + s.m + s.n + 1)),
    ), special="easy"))

    # differential (Euler-operator) relations; hold at arbitrary (x, y)
    rels.append(Relation("dx1", (
        T(lambda s: 1, theta="x"),
        T(lambda s: -s.n),
        T(lambda s: s.n + s.alpha, dn=-1, dbeta=1),
    ), n_min=1, general_xy=True))
    rels.append(Relation("dx2", (
        T(lambda s: 1, theta="x"),
        T(lambda s: s.n + s.alpha + s.beta + 1),
        T(lambda s: -(s.n + s.alpha + s.beta + 1), dbeta=1),
    ), general_xy=True))
    rels.append(Relation("dy1", (
        T(lambda s: 1, theta="y"),
        T(lambda s: -s.m),
        T(lambda s: s.m + s.rho, dm=-1, ddelta=1),
    ), m_min=1, general_xy=True))
    rels.append(Relation("dy2", (
        T(lambda s: 1, theta="y"),
        T(lambda s: s.m + s.rho + s.delta + 1),
        T(lambda s: -(s.m + s.rho + s.delta + 1), ddelta=1),
    ), general_xy=True))
    rels.append(Relation("dxdy", (
        T(lambda s: 1, theta="x"),
        T(lambda s: 1, theta="y"),
        T(lambda s: s.mu + s.nu + 1),
        T(lambda s: -2 * s.nu, dnu=-1),
    ), nu_min=1, general_xy=True))

    rels.append(Relation("dx3", (
        T(lambda s: 1, theta="x"),
        T(lambda s: -s.n),
        T(lambda s: -(s.n + s.beta), dn=-1, dalpha=1),
    ), n_min=1, general_xy=True, analogue=True))
    rels.append(Relation("dx4", (
        T(lambda s: 1, theta="x"),
        T(lambda s: s.n + s.alpha + s.beta + 1),
        T(lambda s: -(s.n + s.alpha + s.beta + 1), dalpha=1),
    ), general_xy=True, analogue=True))
    rels.append(Relation("dy3", (
        T(lambda s: 1, theta="y"),
        T(lambda s: -s.m),
        T(lambda s: -(s.m + s.delta), dm=-1, drho=1),
    ), m_min=1, general_xy=True, analogue=True))
    rels.append(Relation("dy4", (
        T(lambda s: 1, theta="y"),
        T(lambda s: s.m + s.rho + s.delta + 1),
        T(lambda s: -(s.m + s.rho + s.delta + 1), drho=1),
    ), general_xy=True, analogue=True))
    rels.append(Relation("dxdy2", (
        T(lambda s: 1, theta="x"),
        T(lambda s: 1, theta="y"),
        T(lambda s: s.mu + s.nu + 1),
        T(lambda s: -2 * s.mu, dmu=-1),
    ), mu_min=1, general_xy=True, analogue=True))

    return {r.name: r for r in rels}


CATALOG: dict[str, Relation] = _build_catalog()

#: the ids exercised by the acceptance gate, in catalog order
ACCEPTANCE_IDS = [
    "Rec2", "Rec3", "Rec4", "Rec5", "Rec4_2", "basicrec", "munu",
    "MixedRec1", "MixedRec2", "MixedRec3", "MixedRec4", "Mixed1", "Mixed2",
    "Mixed5Point", "Mixed5Point2", "Mixed5Point3", "recnu", "recmu",
    "HardRec", "folg4p13", "EasyRec",
    "dx1", "dx2", "dy1", "dy2", "dxdy",
    "dx3", "dx4", "dy3", "dy4", "dxdy2",
]


def relation_residual(name: str, spec: KampeSpec):
    """Sum of the relation's terms at a spec; contract: exactly zero.

    Terms whose coefficient vanishes are skipped, so a relation may sit on
    the boundary of a shift's validity without triggering a spurious
    domain error.
    """
    try:
        rel = CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown relation {name!r}; known: {sorted(CATALOG)}") from None
    if not rel.in_regime(spec):
        raise ValueError(f"spec {spec} outside regime of relation {name}")
    spec = _exactify(spec)
    total = 0
    for term in rel.terms:
        c = term.coeff(spec)
        if c == 0:
            continue
        shifted = spec.shifted(**term.shift) if term.shift else spec
        if term.theta is not None:
            val = euler_theta(shifted, term.theta, analogue=rel.analogue)
        elif rel.analogue:
            val = kampe_eval_analogue(shifted)
        else:
            val = kampe_eval(shifted)
        total = total + c * val
    return total


DEFAULT_GRID = (RAT(0), RAT(1, 2), RAT(1), RAT(3, 2), RAT(2))


def random_spec(rel: Relation, rng, grid=DEFAULT_GRID, n_hi: int = 6,
                m_hi: int = 6, mu_hi: int = 6, nu_hi: int = 6) -> KampeSpec:
    """Draw a random in-regime spec for one relation (rational parameters)."""
    pos = [g for g in grid if g > 0]
    while True:
        n = rng.randint(rel.n_min, n_hi)
        m = rng.randint(rel.m_min, m_hi)
        alpha = rng.choice(pos if rel.alpha_pos else grid)
        rho = rng.choice(pos if rel.rho_pos else grid)
        beta = rng.choice(grid)
        delta = rng.choice(grid)
        mu = rng.randint(rel.mu_min, mu_hi)
        nu = rng.randint(rel.nu_min, nu_hi)
        x = y = RAT(1)
        if rel.general_xy:
            x = RAT(rng.randint(-3, 3), rng.choice((1, 2, 3)))
            y = RAT(rng.randint(-3, 3), rng.choice((1, 2, 3)))
        if rel.special == "easy":
            rho, beta, delta, mu, nu = alpha, RAT(0), RAT(0), 0, 0
        elif rel.special == "nu1=beta+delta":
            nu = rng.randint(0, min(3, nu_hi))
            beta = rng.choice(grid)
            delta = nu + 1 - beta
            if delta not in grid:
                continue
        spec = KampeSpec(n, m, alpha, beta, rho, delta, mu, nu, x, y)
        if rel.in_regime(spec):
            return spec


def verify_relation(name: str, seed: int = 0, cases: int = 200):
    """Max |residual| over random in-regime specs (exact mode).

    Returns (max_abs_residual, cases, first_failure_spec_or_None).
    """
    import random as _random

    rng = _random.Random(seed ^ hash(name) & 0xFFFF)
    rel = CATALOG[name]
    worst = 0
    first_bad = None
    for _ in range(cases):
        spec = random_spec(rel, rng)
        r = relation_residual(name, spec)
        if r != 0 and first_bad is None:
            first_bad = spec
        worst = max(worst, abs(r))
    return worst, cases, first_bad
