"""Scalar modes: exact rational arithmetic vs. binary64 floats.

Every numerical kernel in this package runs in one of two modes.  In
``EXACT`` mode scalars are arbitrary-precision rationals (``gmpy2.mpq``,
always stored in lowest terms with positive denominator); in ``FLOAT``
mode they are plain Python floats.  Plain ints are mode-neutral and may
combine with either.  Mixing a rational with a float in one computation
is a usage error and the helpers here are the guards for that.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

from gmpy2 import mpq

EXACT = "exact"
FLOAT = "float"

#: exact rational constructor, e.g. ``RAT(1, 3)`` or ``RAT("2/7")``
RAT = mpq

_EXACT_TYPES = (mpq, Fraction, int)


class ModeError(TypeError):
    """Raised when exact-rational and float scalars are mixed."""


def mode_of(x) -> str:
    """Return ``EXACT`` or ``FLOAT`` for a scalar value."""
    if isinstance(x, bool):
        raise ModeError(f"bool is not a scalar: {x!r}")
    if isinstance(x, _EXACT_TYPES):
        return EXACT
    if isinstance(x, float):
        return FLOAT
    raise ModeError(f"unsupported scalar type {type(x).__name__}")


def common_mode(*xs) -> str:
    """Mode shared by all arguments; ints count as either.

    Raises ModeError on a genuine exact/float mix.
    """
    mode = None
    for x in xs:
        if isinstance(x, int) and not isinstance(x, bool):
            continue
        m = mode_of(x)
        if mode is None:
            mode = m
        elif m != mode:
            raise ModeError(f"mixed scalar modes: {mode} and {m}")
    return mode if mode is not None else EXACT


def as_mode(x, mode: str):
    """Coerce a number (int, rational, float, or 'p/q' string) to a mode."""
    if mode == EXACT:
        if isinstance(x, float):
            if not x.is_integer():
                raise ModeError(f"cannot silently promote float {x} to exact")
            return RAT(int(x))
        return RAT(x)
    if mode == FLOAT:
        return float(RAT(x)) if isinstance(x, str) else float(x)
    raise ValueError(f"unknown mode {mode!r}")


def is_integral(x) -> bool:
    """True when the scalar holds an integer value."""
    if isinstance(x, int) and not isinstance(x, bool):
        return True
    if isinstance(x, (mpq, Fraction)):
        return x.denominator == 1
    if isinstance(x, float):
        return x.is_integer()
    return False


def check_finite(x):
    """Reject NaN/inf floats; exact values pass through."""
    if isinstance(x, float) and not math.isfinite(x):
        raise ValueError(f"non-finite scalar {x!r}")
    return x


def default_mode() -> str:
    """Mode selected by the JACREC_MODE environment variable (default float)."""
    mode = os.environ.get("JACREC_MODE", FLOAT).strip().lower()
    if mode not in (EXACT, FLOAT):
        raise ValueError(f"JACREC_MODE must be 'exact' or 'float', got {mode!r}")
    return mode


def format_scalar(x, sig: int = 17) -> str:
    """CSV rendering: exact values as 'p/q', floats with 17 significant digits."""
    if isinstance(x, (mpq, Fraction)):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, int):
        return str(x)
    return f"{float(x):.{sig}g}"
