"""Shared test oracles: exact polynomial-coefficient integration.

These helpers are deliberately independent of the package's evaluation
paths: polynomials are built as rational coefficient lists through the
three-term recurrence, multiplied out, and integrated monomial by
monomial.  Several expected values in the tests were computed (and are
re-checked) this way.
"""

import pytest

from jacrec.scalars import RAT


def jacobi_coeffs(n, a, b):
    """Coefficient list (ascending powers) of the degree-n Jacobi polynomial."""
    polys = [[RAT(1)]]
    if n >= 1:
        polys.append([(a + 1) - RAT(a + b + 2) / 2, RAT(a + b + 2) / 2])
    for k in range(2, n + 1):
        ab = a + b
        a1 = 2 * k * (k + ab) * (2 * k + ab - 2)
        a2 = (2 * k + ab - 1) * (a * a - b * b)
        a3 = (2 * k + ab - 2) * (2 * k + ab - 1) * (2 * k + ab)
        a4 = 2 * (k + a - 1) * (k + b - 1) * (2 * k + ab)
        p1, p2 = polys[k - 1], polys[k - 2]
        out = [RAT(0)] * (k + 1)
        for i, c in enumerate(p1):
            out[i] += a2 * c
            out[i + 1] += a3 * c
        for i, c in enumerate(p2):
            out[i] -= a4 * c
        polys.append([c / a1 for c in out])
    return polys[n]


def phat_coeffs(n, alpha):
    """Coefficients of the integrated polynomial (Legendre case at alpha=0)."""
    if alpha > 0:
        return [c / n for c in
                poly_mul([RAT(1), RAT(1)], jacobi_coeffs(n - 1, alpha - 1, 1))]
    if n == 1:
        return [RAT(1), RAT(1)]
    return [c / (2 * (n - 1)) for c in
            poly_mul([RAT(-1), RAT(0), RAT(1)], jacobi_coeffs(n - 2, 1, 1))]


def poly_mul(p, q):
    out = [RAT(0)] * (len(p) + len(q) - 1)
    for i, ci in enumerate(p):
        for j, cj in enumerate(q):
            out[i + j] += ci * cj
    return out


def poly_int(p):
    """Exact integral of a coefficient list over [-1, 1]."""
    return sum(2 * c / (i + 1) for i, c in enumerate(p) if i % 2 == 0)


def poly_eval(p, x):
    acc = RAT(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def weight_coeffs(mu, nu):
    """((1-x)/2)^mu ((1+x)/2)^nu as a coefficient list."""
    p = [RAT(1)]
    for _ in range(mu):
        p = poly_mul(p, [RAT(1, 2), RAT(-1, 2)])
    for _ in range(nu):
        p = poly_mul(p, [RAT(1, 2), RAT(1, 2)])
    return p


def brute_pair_integral(n, m, alpha, beta, rho, delta, mu, nu, kind="plain"):
    """Canonical integral by exact polynomial multiplication + integration."""
    w = weight_coeffs(int(mu), int(nu))
    if kind == "plain":
        pn, pm = jacobi_coeffs(n, alpha, beta), jacobi_coeffs(m, rho, delta)
    else:
        pn, pm = phat_coeffs(n, alpha), phat_coeffs(m, rho)
    return poly_int(poly_mul(w, poly_mul(pn, pm)))


GRID = (RAT(0), RAT(1, 2), RAT(1), RAT(3, 2), RAT(2))


@pytest.fixture
def grid():
    return GRID
