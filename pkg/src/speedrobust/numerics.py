"""Exact arithmetic primitives shared by every algorithm in the package.

All quantities are rationals over arbitrary-precision integers; nothing in
this package ever touches a float on a computation path.  The canonical
rational type is :class:`fractions.Fraction` (always stored reduced, positive
denominator), re-exported here as ``Rational``.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


def floor_scale(units: int, rho: Fraction) -> int:
    """Greatest integer at most ``units * rho``, computed exactly.

    This is the bag size bought with ``units`` coins at robustness
    factor ``rho``.
    """
    if units < 1:
        raise ValueError(f"units must be >= 1, got {units}")
    if rho <= 0:
        raise ValueError(f"rho must be positive, got {rho}")
    rho = Fraction(rho)
    return (units * rho.numerator) // rho.denominator


def ceil_div(amount: int, parts: int) -> int:
    """Smallest integer at least ``amount / parts``.

    With ``amount`` coins spread over ``parts`` machines, some machine
    holds at least this many coins (pigeonhole).
    """
    if amount < 0:
        raise ValueError(f"amount must be >= 0, got {amount}")
    if parts < 1:
        raise ValueError(f"parts must be >= 1, got {parts}")
    return -(-amount // parts)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or a plain integer string into an exact rational.

    Floating-point syntax is rejected on purpose: accepting it would
    silently launder rounding error into exact computations.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    if any(ch in text for ch in ".eE") and not text.lstrip("+-").isdigit():
        raise ValueError(f"not an exact rational (floats are rejected): {text!r}")
    num, sep, den = text.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {text!r}: {exc}") from None


def format_rational(value: Fraction | int) -> str:
    """Serialize as ``"p/q"``, or just ``"p"`` for integral values."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
