"""Canonical arbitrary-precision rationals and controlled decimal rendering.

The rational type is the standard library ``fractions.Fraction``, which
already guarantees every invariant this package relies on: denominators are
strictly positive, numerator and denominator are coprime after every
operation, zero is uniquely ``0/1``, the backing integers are unbounded, and
values are immutable (safe to share across threads).  Arithmetic is the
native ``+ - * /`` operators; division by zero raises ``ZeroDivisionError``.

What this module adds is the strict text format used in every JSON file this
package reads or writes, and exact decimal rendering that never touches
floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rational = Fraction

# Wire format: optional sign, digits, optionally "/" digits.  No whitespace,
# no decimal points, no exponent forms.
_FRACTION_RE = re.compile(r"[+-]?[0-9]+(?:/[0-9]+)?")


def parse_rational(text: str) -> Fraction:
    """Parse ``[-]p`` or ``[-]p/q`` into a canonical Fraction.

    Raises ValueError for text outside the format and ZeroDivisionError for a
    zero denominator.
    """
    if not isinstance(text, str) or _FRACTION_RE.fullmatch(text) is None:
        raise ValueError(f"malformed fraction text: {text!r}")
    num_text, _, den_text = text.partition("/")
    if den_text:
        den = int(den_text)
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in fraction text: {text!r}")
        return Fraction(int(num_text), den)
    return Fraction(int(num_text))


def format_rational(r: Fraction) -> str:
    """Render a rational in the wire format: ``p`` for integers, else ``p/q``."""
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def to_decimal(r: Fraction, digits: int) -> str:
    """Render ``r`` as a decimal string with exactly ``digits`` fractional digits.

    Rounding is half-away-from-zero, computed by exact integer long division
    (no floating point anywhere).  A result that rounds to zero is rendered
    without a sign.
    """
    if digits < 0:
        raise ValueError(f"digits must be >= 0, got {digits}")
    quotient, remainder = divmod(abs(r.numerator) * 10**digits, r.denominator)
    if 2 * remainder >= r.denominator:
        quotient += 1
    body = str(quotient).rjust(digits + 1, "0")
    if digits:
        body = f"{body[:-digits]}.{body[-digits:]}"
    sign = "-" if r < 0 and quotient else ""
    return sign + body
