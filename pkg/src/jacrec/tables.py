"""Recursive table-filling engines for the weighted product integrals.

A table holds one parameter family (fixed weights and polynomial
parameters) over an (n, m) index grid.  Row n0 and column m0 are seeded
from the direct-sum oracle (bit-exact rational when the parameters allow,
degree-exact quadrature otherwise); every interior entry is then produced
by a single three-term stencil step using the predecessors
(n-1, m-1), (n-1, m), (n, m-1), i.e. constant arithmetic per entry.

Fill order is row-major: with that stencil any sweep that sees the
predecessors first would do, row-major is simply cache-linear.

The three-index tables extend the same idea with a Legendre factor L_a in
the integrand and a seven-predecessor stencil over (a, n, m); the a = -1
layer is identically zero by convention and the a = 0 layer coincides
with the matching two-index table (L_0 == 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .integrals import (INTEGRATED, PLAIN, IntegralSpec, integral_direct,
                        integral_quad)
from .jacobi import integrated_all_array, jacobi_all_array
from .numerics import gauss_legendre
from .scalars import EXACT, FLOAT, RAT, format_scalar, is_integral

SEED = "seed"
RECURSED = "recursed"


@dataclass
class RecurrenceTable:
    """Filled (n, m) block of integral values with per-entry provenance."""

    kind: str
    mu: object
    alpha: object
    rho: object
    beta: object = 0
    delta: object = 0
    nu: object = 0
    nmin: int = 0
    mmin: int = 0
    nmax: int = 0
    mmax: int = 0
    mode: str = EXACT
    values: list = field(default_factory=list)
    provenance: list = field(default_factory=list)

    def get(self, n: int, m: int):
        if not (self.nmin <= n <= self.nmax and self.mmin <= m <= self.mmax):
            raise IndexError(f"({n}, {m}) outside table range")
        return self.values[n - self.nmin][m - self.mmin]

    def provenance_of(self, n: int, m: int) -> str:
        return self.provenance[n - self.nmin][m - self.mmin]

    def entries(self):
        for i, row in enumerate(self.values):
            for j, v in enumerate(row):
                yield self.nmin + i, self.mmin + j, v

    def spec_at(self, n: int, m: int) -> IntegralSpec:
        return IntegralSpec(n, m, self.alpha, self.beta, self.rho, self.delta,
                            self.mu, self.nu, self.kind)

    def to_csv(self, path, with_provenance: bool = True):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("n,m,value" + (",provenance" if with_provenance else "") + "\n")
            for n, m, v in self.entries():
                line = f"{n},{m},{format_scalar(v)}"
                if with_provenance:
                    line += f",{self.provenance_of(n, m)}"
                fh.write(line + "\n")


def _seed_value(spec: IntegralSpec, mode: str):
    """Seed policy: rational direct sum when exactly representable, else quadrature."""
    exact_ok = (spec.mode == EXACT and is_integral(spec.mu) and is_integral(spec.nu))
    if mode == EXACT:
        if not exact_ok:
            raise ValueError("exact table needs rational parameters and integer "
                             "weight exponents")
        return integral_direct(spec, mode=EXACT)
    if exact_ok:
        return float(integral_direct(spec, mode=EXACT))
    return integral_quad(spec)


def _new_table(kind, mu, alpha, rho, beta, delta, nu, nmin, mmin, nmax, mmax, mode):
    if nmax < nmin or mmax < mmin:
        raise ValueError("empty table range")
    rows = nmax - nmin + 1
    cols = mmax - mmin + 1
    return RecurrenceTable(kind, mu, alpha, rho, beta, delta, nu,
                           nmin, mmin, nmax, mmax, mode,
                           [[None] * cols for _ in range(rows)],
                           [[RECURSED] * cols for _ in range(rows)])


def _fill(table: RecurrenceTable, coeffs, seed_spec):
    """Seed boundary row/column, then sweep the stencil row-major.

    coeffs(n, m) returns (c0, c1, c2, c3) with
    c0 * I[n, m] = c1 * I[n-1, m-1] + c2 * I[n-1, m] + c3 * I[n, m-1].
    """
    n0, m0 = table.nmin, table.mmin
    vals, prov = table.values, table.provenance
    for m in range(m0, table.mmax + 1):
        vals[0][m - m0] = _seed_value(seed_spec(n0, m), table.mode)
        prov[0][m - m0] = SEED
    for n in range(n0 + 1, table.nmax + 1):
        vals[n - n0][0] = _seed_value(seed_spec(n, m0), table.mode)
        prov[n - n0][0] = SEED
    conv = (lambda c: c) if table.mode == EXACT else float
    for n in range(n0 + 1, table.nmax + 1):
        row, prow = vals[n - n0], vals[n - n0 - 1]
        for m in range(m0 + 1, table.mmax + 1):
            c0, c1, c2, c3 = (conv(c) for c in coeffs(n, m))
            assert c0 != 0, "leading stencil coefficient must not vanish"
            j = m - m0
            row[j] = (c1 * prow[j - 1] + c2 * prow[j] + c3 * row[j - 1]) / c0
    return table


def fill_recint2(mu, alpha, rho, nmax: int, mmax: int | None = None,
                 mode: str = EXACT) -> RecurrenceTable:
    """Plain-kind table for weight ((1-x)/2)^mu and parameters (alpha,0), (rho,0).

    Stencil: (m+n+mu+1) I[n,m] = (m+n+alpha+rho-mu-1) I[n-1,m-1]
             + (n-m+alpha-mu-1) I[n-1,m] + (m-n+rho-mu-1) I[n,m-1].
    """
    if mu < 0:
        raise ValueError("weight exponent must be nonnegative")
    if mmax is None:
        mmax = nmax
    t = _new_table(PLAIN, mu, alpha, rho, 0, 0, 0, 0, 0, nmax, mmax, mode)

    def coeffs(n, m):
        return (m + n + mu + 1, m + n + alpha + rho - mu - 1,
                n - m + alpha - mu - 1, m - n + rho - mu - 1)

    return _fill(t, coeffs, t.spec_at)


def fill_easy(alpha, nmax: int, mode: str = EXACT) -> RecurrenceTable:
    """Unweighted equal-parameter table, filled by the four-point diagonal rule.

    Stencil (shifted to target I[n,m]):
    (m+n+1) I[n,m] = (2*alpha+m+n-1) I[n-1,m-1] + (alpha-m+n-1) I[n-1,m]
                     + (alpha+m-n-1) I[n,m-1].
    """
    t = _new_table(PLAIN, 0, alpha, alpha, 0, 0, 0, 0, 0, nmax, nmax, mode)

    def coeffs(n, m):
        return (m + n + 1, 2 * alpha + m + n - 1,
                alpha - m + n - 1, alpha + m - n - 1)

    return _fill(t, coeffs, t.spec_at)


def fill_recint(mu, alpha, rho, nmax: int, mmax: int | None = None,
                mode: str = EXACT) -> RecurrenceTable:
    """Integrated-kind table (indices start at 1).

    Stencil: (m+n+mu+1) I[n,m] = (m+n+alpha+rho-mu-5) I[n-1,m-1]
             + (n-m+alpha-mu-3) I[n-1,m] + (m-n+rho-mu-3) I[n,m-1].
    """
    if mu < 0:
        raise ValueError("weight exponent must be nonnegative")
    if alpha < 0 or rho < 0:
        raise ValueError("integrated parameters must be nonnegative")
    if mmax is None:
        mmax = nmax
    t = _new_table(INTEGRATED, mu, alpha, rho, 0, 0, 0, 1, 1, nmax, mmax, mode)

    def coeffs(n, m):
        return (m + n + mu + 1, m + n + alpha + rho - mu - 5,
                n - m + alpha - mu - 3, m - n + rho - mu - 3)

    return _fill(t, coeffs, t.spec_at)


def fill_folg4p13(alpha, beta, rho, delta, mu, nu, nmax: int,
                  mmax: int | None = None, mode: str = EXACT) -> RecurrenceTable:
    """General-parameter table on the constraint nu + 1 = beta + delta.

    Stores the canonical integrals with raised second weight exponent
    (nu+1), which is the level the reduced four-point relation lives on:

    n m (n+m+mu+nu+2) J[n,m] = (n+beta)(m+delta)(n+m+alpha+rho-mu-1) J[n-1,m-1]
        + (n+beta) m (n+alpha+beta-m-mu-nu-2) J[n-1,m]
        + n (m+delta) (m+rho+delta-n-mu-nu-2) J[n,m-1].
    """
    if nu + 1 != beta + delta:
        raise ValueError("family needs nu + 1 == beta + delta")
    if mmax is None:
        mmax = nmax
    t = _new_table(PLAIN, mu, alpha, rho, beta, delta, nu + 1,
                   0, 0, nmax, mmax, mode)

    def coeffs(n, m):
        return (n * m * (n + m + mu + nu + 2),
                (n + beta) * (m + delta) * (n + m + alpha + rho - mu - 1),
                (n + beta) * m * (n + alpha + beta - m - mu - nu - 2),
                n * (m + delta) * (m + rho + delta - n - mu - nu - 2))

    return _fill(t, coeffs, t.spec_at)


def gram_band_seeds(pmax: int, weight_exp: int, alpha, band: int,
                    mode: str = FLOAT) -> dict:
    """Boundary seeds of the banded Gram family: O(band) of them in total."""
    seeds = {}
    for m in range(0, min(band, pmax) + 1):
        spec = IntegralSpec(0, m, alpha, 0, alpha, 0, weight_exp, 0, PLAIN)
        seeds[(0, m)] = _seed_value(spec, mode)
    for n in range(1, min(band, pmax) + 1):
        spec = IntegralSpec(n, 0, alpha, 0, alpha, 0, weight_exp, 0, PLAIN)
        seeds[(n, 0)] = _seed_value(spec, mode)
    return seeds


def fill_gram_band(pmax: int, weight_exp: int, alpha, band: int | None = None,
                   mode: str = FLOAT, seeds: dict | None = None):
    """Band-restricted plain fill for the Gram-matrix family (rho = alpha).

    Entries with |n - m| > weight_exp - alpha vanish identically (the
    excess weight folds into the orthogonality weight), so the stencil can
    treat everything outside the filled band as exact zero; the filled
    band keeps a safety margin above that bound.  Requires
    weight_exp >= alpha; returns a dict {(n, m): value} on the band.

    Precomputed `seeds` (from gram_band_seeds) may be injected so timing
    runs can separate seed cost from stencil cost.
    """
    if band is None:
        band = weight_exp + 2
    if weight_exp < alpha:
        raise ValueError("band fill needs weight_exp >= alpha "
                         "(otherwise the family is not banded)")
    mu = weight_exp
    zero = RAT(0) if mode == EXACT else 0.0
    vals = dict(seeds) if seeds is not None else \
        gram_band_seeds(pmax, weight_exp, alpha, band, mode)
    conv = (lambda c: c) if mode == EXACT else float
    for n in range(1, pmax + 1):
        for m in range(max(1, n - band), min(pmax, n + band) + 1):
            c0 = conv(m + n + mu + 1)
            c1 = conv(m + n + 2 * alpha - mu - 1)
            c2 = conv(n - m + alpha - mu - 1)
            c3 = conv(m - n + alpha - mu - 1)
            vals[(n, m)] = (c1 * vals.get((n - 1, m - 1), zero)
                            + c2 * vals.get((n - 1, m), zero)
                            + c3 * vals.get((n, m - 1), zero)) / c0
    return vals


# ---------------------------------------------------------------------------
# three-index tables (extra Legendre factor in the integrand)
# ---------------------------------------------------------------------------

@dataclass
class TripleTable:
    """I[a,n,m] = integral ((1-x)/2)^(i+j+1) L_a(x) * pair(x) dx.

    pair is P_n^{(2i,0)} P_m^{(2j,0)} (plain) or the integrated analogue.
    Layer a = -1 is identically zero by convention.
    """

    kind: str
    i: int
    j: int
    amax: int
    nmax: int
    mmax: int
    nmin: int
    values: list = field(default_factory=list)
    provenance: list = field(default_factory=list)

    def get(self, a: int, n: int, m: int) -> float:
        if a == -1:
            return 0.0
        if not (0 <= a <= self.amax and self.nmin <= n <= self.nmax
                and self.nmin <= m <= self.mmax):
            raise IndexError(f"({a}, {n}, {m}) outside table range")
        return self.values[a][n - self.nmin][m - self.nmin]


def _triple_quad_faces(kind, i, j, amax, nmax, mmax, nmin):
    """Quadrature values of the boundary faces n = nmin and m = nmin."""
    mu = i + j + 1
    k = math.ceil((amax + nmax + mmax + mu + 2) / 2)
    rule = gauss_legendre(k)
    x = np.asarray(rule.nodes)
    w = np.asarray(rule.weights) * ((1.0 - x) / 2.0) ** mu
    leg = jacobi_all_array(amax, 0, 0, x)
    if kind == PLAIN:
        pn = jacobi_all_array(nmax, 2 * i, 0, x)
        pm = jacobi_all_array(mmax, 2 * j, 0, x)
    else:
        pn = integrated_all_array(nmax, 2 * i, x)
        pm = integrated_all_array(mmax, 2 * j, x)
    face_n = {(a, m): float(np.dot(w, leg[a] * pn[nmin] * pm[m]))
              for a in range(amax + 1) for m in range(nmin, mmax + 1)}
    face_m = {(a, n): float(np.dot(w, leg[a] * pn[n] * pm[nmin]))
              for a in range(amax + 1) for n in range(nmin, nmax + 1)}
    return face_n, face_m


def fill_triple(kind: str, i: int, j: int, amax: int, nmax: int,
                mmax: int) -> TripleTable:
    """Fill a three-index table by the seven-predecessor stencil.

    Layer a = 0 comes from the matching two-index engine (L_0 == 1); the
    n/m boundary faces of the higher layers are seeded by degree-exact
    quadrature; everything else is one stencil step per entry.  The plain
    and integrated stencils share their shape and differ in four integer
    offsets.
    """
    if kind not in (PLAIN, INTEGRATED):
        raise ValueError(f"unknown kind {kind!r}")
    if i < 0 or j < 0 or amax < 0:
        raise ValueError("indices must be nonnegative")
    nmin = 0 if kind == PLAIN else 1
    mu = i + j + 1
    # offsets (o7, o5a, o5b, o2) of the stencil coefficients
    offs = (2, 2, 2, 2) if kind == PLAIN else (6, 4, 4, 2)
    o7, o5a, o5b, o2 = offs

    if kind == PLAIN:
        base = fill_recint2(mu, 2 * i, 2 * j, nmax, mmax, mode=EXACT)
    else:
        base = fill_recint(mu, 2 * i, 2 * j, nmax, mmax, mode=EXACT)

    t = TripleTable(kind, i, j, amax, nmax, mmax, nmin)
    t.values = [[[0.0] * (mmax - nmin + 1) for _ in range(nmax - nmin + 1)]
                for _ in range(amax + 1)]
    t.provenance = [[[RECURSED] * (mmax - nmin + 1) for _ in range(nmax - nmin + 1)]
                    for _ in range(amax + 1)]
    for n in range(nmin, nmax + 1):
        for m in range(nmin, mmax + 1):
            t.values[0][n - nmin][m - nmin] = float(base.get(n, m))
            t.provenance[0][n - nmin][m - nmin] = SEED

    face_n, face_m = _triple_quad_faces(kind, i, j, amax, nmax, mmax, nmin)
    for a in range(1, amax + 1):
        lay, prev = t.values[a], t.values[a - 1]
        for m in range(nmin, mmax + 1):
            lay[0][m - nmin] = face_n[(a, m)]
            t.provenance[a][0][m - nmin] = SEED
        for n in range(nmin + 1, nmax + 1):
            lay[n - nmin][0] = face_m[(a, n)]
            t.provenance[a][n - nmin][0] = SEED
        for n in range(nmin + 1, nmax + 1):
            for m in range(nmin + 1, mmax + 1):
                c0 = 2 + a + i + j + m + n
                s = i + j + m + n
                u = i - j - m + n
                v = -i + j + m - n
                q = -i - j - m - n
                ln, lp = lay[n - nmin], prev[n - nmin]
                val = ((a + s - o7) * prev[n - nmin - 1][m - nmin - 1]
                       + (s - a - o7) * lay[n - nmin - 1][m - nmin - 1]
                       + (a + u - o5a) * prev[n - nmin - 1][m - nmin]
                       + (u - a - o5a) * lay[n - nmin - 1][m - nmin]
                       + (a + v - o5b) * lp[m - nmin - 1]
                       + (v - a - o5b) * ln[m - nmin - 1]
                       + (a + q - o2) * lp[m - nmin])
                lay[n - nmin][m - nmin] = val / c0
    return t


def weighted_modal_integral(coeffs, table: TripleTable, n: int, m: int) -> float:
    """sum_a coeffs[a] * I[a,n,m] for a Legendre coefficient vector."""
    if len(coeffs) > table.amax + 1:
        raise IndexError(f"{len(coeffs)} coefficients exceed table depth "
                         f"{table.amax + 1}")
    return float(sum(float(c) * table.get(a, n, m) for a, c in enumerate(coeffs)))
