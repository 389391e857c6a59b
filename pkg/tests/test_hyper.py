import random

import pytest

from jacrec.hyper import (KampeSpec, ParameterShift, PoleError,
                          chu_vandermonde_rhs, euler_theta, gauss_sum_rhs,
                          kampe_eval, kampe_eval_analogue, kampe_shifted,
                          pfaff_saalschutz_rhs, pfq_terminating)
from jacrec.numerics import beta_exact, pochhammer
from jacrec.scalars import RAT

from conftest import GRID, brute_pair_integral


def test_pfq_examples():
    assert pfq_terminating((0, RAT(5, 2)), (RAT(1, 3),), RAT(1)) == 1
    assert pfq_terminating((-2, 1), (3,), RAT(1)) == RAT(1, 2)
    assert pfq_terminating((-1, 5), (2,), RAT(1, 2)) == RAT(-1, 4)


def test_pfq_no_termination():
    with pytest.raises(ValueError):
        pfq_terminating((RAT(1, 2), 1), (2,), RAT(1))


def test_pfq_pole():
    with pytest.raises(PoleError):
        pfq_terminating((-3, 1), (-1,), RAT(1))


def test_gauss_sum_examples():
    assert gauss_sum_rhs(0, RAT(1, 2), RAT(1, 3)) == 1
    assert gauss_sum_rhs(-1, 1, 2) == RAT(1, 2)
    assert gauss_sum_rhs(-2, 1, 3) == RAT(1, 2)
    # convergent non-terminating branch via log-Gamma
    val = gauss_sum_rhs(0.5, 0.25, 2.0)
    import math
    expect = math.exp(math.lgamma(2) + math.lgamma(1.25)
                      - math.lgamma(1.5) - math.lgamma(1.75))
    assert val == pytest.approx(expect, rel=1e-14)
    with pytest.raises(ValueError):
        gauss_sum_rhs(1.0, 1.0, 1.5)


def test_chu_vandermonde_examples():
    assert chu_vandermonde_rhs(0, RAT(1), RAT(5)) == 1
    assert chu_vandermonde_rhs(2, 1, 3) == RAT(1, 2)
    assert chu_vandermonde_rhs(3, 2, 5) == RAT(2, 7)


def test_pfaff_examples():
    assert pfaff_saalschutz_rhs(0, RAT(1), RAT(1), RAT(3)) == 1
    assert pfaff_saalschutz_rhs(1, 1, 1, 3) == RAT(4, 3)
    m, a, b, c = 2, RAT(1), RAT(2), RAT(4)
    brute = pfq_terminating((-m, a, b), (c, 1 + a + b - c - m), RAT(1))
    assert pfaff_saalschutz_rhs(m, a, b, c) == brute


def _random_rationals(rng):
    num = rng.randint(-6, 8)
    den = rng.choice((2, 3, 4, 5))
    return RAT(num, den)


def test_summation_theorems_brute_force_sweep():
    # terminating Gauss / Chu-Vandermonde / Pfaff-Saalschutz against the
    # raw series, 100 random parameter sets each, m <= 12, exact
    rng = random.Random(7)
    done = 0
    while done < 100:
        m = rng.randint(0, 12)
        b = _random_rationals(rng)
        c = _random_rationals(rng)
        if any(c + k == 0 for k in range(m + 1)):
            continue
        brute = pfq_terminating((-m, b), (c,), RAT(1))
        assert gauss_sum_rhs(-m, b, c) == brute
        assert chu_vandermonde_rhs(m, b, c) == brute

        a = _random_rationals(rng)
        low2 = 1 + a + b - c - m
        if any(low2 + k == 0 for k in range(m)):
            continue
        brute3 = pfq_terminating((-m, a, b), (c, low2), RAT(1))
        if pochhammer(c - a - b, m) == 0:
            continue
        assert pfaff_saalschutz_rhs(m, a, b, c) == brute3
        done += 1


def test_kampe_examples():
    s = KampeSpec(0, 0, RAT(0), RAT(0), RAT(0), RAT(0), 0, 0)
    assert kampe_eval(s) == 2
    for mu, nu in ((1, 0), (3, 2), (0, 4)):
        s = KampeSpec(0, 0, RAT(0), RAT(0), RAT(0), RAT(0), mu, nu)
        assert kampe_eval(s) == RAT(2) ** (mu + nu + 1) * beta_exact(nu + 1, mu + 1)
    s = KampeSpec(1, 0, RAT(0), RAT(0), RAT(0), RAT(0), 0, 0)
    assert kampe_eval(s) == 0


def test_kampe_matches_brute_integration():
    rng = random.Random(3)
    for _ in range(40):
        n, m = rng.randint(0, 4), rng.randint(0, 4)
        a, b, r, d = (rng.choice(GRID) for _ in range(4))
        mu, nu = rng.randint(0, 3), rng.randint(0, 3)
        spec = KampeSpec(n, m, a, b, r, d, mu, nu)
        brute = brute_pair_integral(n, m, a, b, r, d, mu, nu) * RAT(2) ** (mu + nu)
        assert kampe_eval(spec) == brute
        assert kampe_eval_analogue(spec) == brute


def test_kampe_shifted():
    s = KampeSpec(0, 0, RAT(0), RAT(0), RAT(0), RAT(0), 0, 0)
    assert kampe_shifted(s, ParameterShift()) == kampe_eval(s)
    assert kampe_shifted(s, ParameterShift(dnu=1)) == 2
    s2 = KampeSpec(0, 0, RAT(0), RAT(0), RAT(0), RAT(0), 0, 0)
    assert kampe_shifted(s2, ParameterShift(dn=1)) == 0


def test_shift_validation():
    with pytest.raises(ValueError):
        ParameterShift(dn=3)
    s = KampeSpec(0, 0, RAT(0), RAT(0), RAT(0), RAT(0), 0, 0)
    with pytest.raises(ValueError):
        kampe_shifted(s, ParameterShift(dn=-1))
    with pytest.raises(ValueError):
        kampe_shifted(s, ParameterShift(dalpha=-1))
    with pytest.raises(ValueError):
        kampe_shifted(s, ParameterShift(dmu=-1))


def test_spec_validation():
    with pytest.raises(ValueError):
        KampeSpec(-1, 0, RAT(0), RAT(0), RAT(0), RAT(0), 0, 0)
    with pytest.raises(TypeError):
        KampeSpec(0.0, 0, RAT(0), RAT(0), RAT(0), RAT(0), 0, 0)
    with pytest.raises(ValueError):
        KampeSpec(0, 0, RAT(-3, 2), RAT(0), RAT(0), RAT(0), 0, 0)


def test_euler_theta_basics():
    s = KampeSpec(0, 0, RAT(1), RAT(0), RAT(1), RAT(0), 2, 1)
    assert euler_theta(s, "x") == 0
    assert euler_theta(s, "y") == 0
    s = KampeSpec(3, 2, RAT(1), RAT(1, 2), RAT(1), RAT(0), 1, 0,
                  x=RAT(0), y=RAT(1, 3))
    assert euler_theta(s, "x") == 0
    with pytest.raises(ValueError):
        euler_theta(s, "z")


def test_euler_theta_difference_quotient():
    # for n = 1, m = 0 the series is linear in x, so the difference
    # quotient is the exact derivative: theta_x F = x (F(1) - F(0))
    for x0 in (RAT(1, 2), RAT(-2, 3), RAT(1)):
        def F(x):
            return kampe_eval(KampeSpec(1, 0, RAT(1, 2), RAT(1), RAT(2),
                                        RAT(0), 2, 1, x=x, y=RAT(1)))
        s = KampeSpec(1, 0, RAT(1, 2), RAT(1), RAT(2), RAT(0), 2, 1,
                      x=x0, y=RAT(1))
        assert euler_theta(s, "x") == x0 * (F(RAT(1)) - F(RAT(0)))


def _pfq21_coeffs(a, b, c, nterms):
    out = [RAT(1)]
    t = RAT(1)
    for k in range(nterms - 1):
        t = t * (a + k) * (b + k) / ((c + k) * (k + 1))
        out.append(t)
    return out


def test_gauss_derivative_coefficientwise():
    # termwise derivative of the terminating 2F1 equals (ab/c) * shifted series
    for n in range(1, 11):
        a, b, c = RAT(-n), RAT(7, 2), RAT(4, 3)
        base = _pfq21_coeffs(a, b, c, n + 1)
        deriv = [(k + 1) * ck for k, ck in enumerate(base[1:])]
        shifted = _pfq21_coeffs(a + 1, b + 1, c + 1, n)
        factor = a * b / c
        assert deriv == [factor * ck for ck in shifted]


def test_theta_plus_parameter_coefficientwise():
    # (theta + a) acting on the terminating 2F1 equals a * (a-raised series)
    for n in range(1, 11):
        a, b, c = RAT(-n), RAT(5, 4), RAT(3, 2)
        base = _pfq21_coeffs(a, b, c, n + 1)
        lhs = [(k + a) * ck for k, ck in enumerate(base)]
        rhs = [a * ck for ck in _pfq21_coeffs(a + 1, b, c, n + 1)]
        assert lhs == rhs
        lhs = [(k + b) * ck for k, ck in enumerate(base)]
        rhs = [b * ck for ck in _pfq21_coeffs(a, b + 1, c, n + 1)]
        assert lhs == rhs
