import math

import pytest

from jacrec.scalars import (EXACT, FLOAT, ModeError, RAT, as_mode, check_finite,
                            common_mode, default_mode, format_scalar,
                            is_integral, mode_of)


def test_rat_is_normalized():
    x = RAT(6, -4)
    assert x.numerator == -3 and x.denominator == 2
    assert RAT("7/21") == RAT(1, 3)


def test_mode_of():
    assert mode_of(RAT(1, 2)) == EXACT
    assert mode_of(3) == EXACT
    assert mode_of(0.5) == FLOAT
    with pytest.raises(ModeError):
        mode_of(True)
    with pytest.raises(ModeError):
        mode_of("1/2")


def test_common_mode():
    assert common_mode(1, RAT(1, 2)) == EXACT
    assert common_mode(1, 2.5) == FLOAT
    assert common_mode(7, 11) == EXACT
    with pytest.raises(ModeError):
        common_mode(RAT(1, 2), 0.5)


def test_as_mode():
    assert as_mode("2/7", EXACT) == RAT(2, 7)
    assert as_mode(3.0, EXACT) == RAT(3)
    assert as_mode("2/5", FLOAT) == 0.4
    with pytest.raises(ModeError):
        as_mode(0.3, EXACT)
    with pytest.raises(ValueError):
        as_mode(1, "half")


def test_is_integral():
    assert is_integral(RAT(4, 2))
    assert not is_integral(RAT(1, 3))
    assert is_integral(2.0)
    assert not is_integral(2.5)


def test_check_finite():
    assert check_finite(1.5) == 1.5
    assert check_finite(RAT(1, 3)) == RAT(1, 3)
    with pytest.raises(ValueError):
        check_finite(float("inf"))


def test_default_mode(monkeypatch):
    monkeypatch.delenv("JACREC_MODE", raising=False)
    assert default_mode() == FLOAT
    monkeypatch.setenv("JACREC_MODE", "exact")
    assert default_mode() == EXACT
    monkeypatch.setenv("JACREC_MODE", "banana")
    with pytest.raises(ValueError):
        default_mode()


def test_format_scalar():
    assert format_scalar(RAT(1, 3)) == "1/3"
    assert format_scalar(RAT(4, 2)) == "2"
    assert format_scalar(5) == "5"
    assert format_scalar(1 / 3) == "0.33333333333333331"
    assert float(format_scalar(math.pi)) == math.pi
