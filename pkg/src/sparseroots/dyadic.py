"""Exact dyadic numbers ``mantissa * 2**exponent``.

Ring operations are exact.  Rounding only happens through the explicit
``round_to``/``fixed``/``div`` helpers, which take a number of fractional
bits and a rounding mode.
"""

import math
import re
from fractions import Fraction
from numbers import Rational

__all__ = ["Dyadic", "FLOOR", "CEIL", "NEAREST"]

FLOOR = "floor"
CEIL = "ceil"
NEAREST = "nearest"

_DYADIC_RE = re.compile(r"^\s*([+-]?\d+)\s*\*\s*2\s*\^\s*\(?\s*([+-]?\d+)\s*\)?\s*$")


def _shift_round(x, s, mode):
    """Return x / 2**s rounded to an integer (s may be negative)."""
    if s <= 0:
        return x << -s
    if mode == FLOOR:
        return x >> s
    if mode == CEIL:
        return -((-x) >> s)
    # round half away from zero
    half = 1 << (s - 1)
    if x >= 0:
        return (x + half) >> s
    return -((-x + half) >> s)


class Dyadic:
    """An exact binary fraction in canonical form (mantissa zero or odd).

    >>> Dyadic(12)
    Dyadic(3, 2)
    >>> Dyadic(1, -1) + Dyadic(1, -2)
    Dyadic(3, -2)
    """

    __slots__ = ("mantissa", "exponent")

    def __init__(self, mantissa=0, exponent=0):
        mantissa = int(mantissa)
        exponent = int(exponent)
        if mantissa == 0:
            exponent = 0
        else:
            tz = (mantissa & -mantissa).bit_length() - 1
            if tz:
                mantissa >>= tz
                exponent += tz
        self.mantissa = mantissa
        self.exponent = exponent

    # -- constructors -----------------------------------------------------

    @classmethod
    def coerce(cls, value):
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, Rational):
            q = Fraction(value)
            den = q.denominator
            if den & (den - 1) == 0:
                return cls(q.numerator, -(den.bit_length() - 1))
        raise TypeError(f"cannot convert {value!r} to an exact Dyadic")

    @classmethod
    def from_fixed(cls, value, frac_bits):
        """``value * 2**-frac_bits``."""
        return cls(value, -frac_bits)

    @classmethod
    def from_fraction(cls, q, frac_bits, mode=NEAREST):
        """Round a rational to a multiple of ``2**-frac_bits``."""
        q = Fraction(q)
        num = q.numerator
        den = q.denominator
        if frac_bits >= 0:
            num <<= frac_bits
        else:
            den <<= -frac_bits
        if mode == FLOOR:
            v = num // den
        elif mode == CEIL:
            v = -((-num) // den)
        else:
            v, r = divmod(num, den)
            if 2 * r >= den:
                v += 1
        return cls(v, -frac_bits)

    @classmethod
    def parse(cls, text):
        """Parse the ``"m*2^e"`` form produced by ``str``."""
        match = _DYADIC_RE.match(text)
        if match is None:
            raise ValueError(f"not a dyadic literal: {text!r}")
        return cls(int(match.group(1)), int(match.group(2)))

    # -- conversions ------------------------------------------------------

    def to_fraction(self):
        if self.exponent >= 0:
            return Fraction(self.mantissa << self.exponent)
        return Fraction(self.mantissa, 1 << -self.exponent)

    def fixed(self, frac_bits, mode=NEAREST):
        """Integer ``X`` with ``X * 2**-frac_bits`` approximating ``self``."""
        return _shift_round(self.mantissa, -self.exponent - frac_bits, mode)

    def round_to(self, frac_bits, mode=NEAREST):
        return Dyadic(self.fixed(frac_bits, mode), -frac_bits)

    def div(self, other, frac_bits, mode=NEAREST):
        """Quotient rounded to a multiple of ``2**-frac_bits``."""
        other = Dyadic.coerce(other)
        if other.mantissa == 0:
            raise ZeroDivisionError("Dyadic division by zero")
        s = frac_bits + self.exponent - other.exponent
        num, den = self.mantissa, other.mantissa
        if den < 0:
            num, den = -num, -den
        if s >= 0:
            num <<= s
        else:
            den <<= -s
        if mode == FLOOR:
            v = num // den
        elif mode == CEIL:
            v = -((-num) // den)
        else:
            v, r = divmod(num, den)
            if 2 * r >= den:
                v += 1
        return Dyadic(v, -frac_bits)

    def __float__(self):
        m, e = self.mantissa, self.exponent
        excess = m.bit_length() - 60
        if excess > 0:
            m >>= excess
            e += excess
        try:
            return math.ldexp(m, e)
        except OverflowError:
            return math.copysign(math.inf, m)

    def __int__(self):
        if self.exponent >= 0:
            return self.mantissa << self.exponent
        return int(self.to_fraction())

    def __str__(self):
        return f"{self.mantissa}*2^{self.exponent}"

    def __repr__(self):
        return f"Dyadic({self.mantissa}, {self.exponent})"

    def decimal(self, digits=17):
        """Decimal rendering with ``digits`` significant digits."""
        if self.mantissa == 0:
            return "0"
        q = self.to_fraction()
        sign = "-" if q < 0 else ""
        q = abs(q)
        # exponent of the leading decimal digit
        e10 = math.floor(self.floor_log2() * math.log10(2))
        while Fraction(10) ** e10 > q:
            e10 -= 1
        while Fraction(10) ** (e10 + 1) <= q:
            e10 += 1
        scaled = q / Fraction(10) ** (e10 - digits + 1)
        digits_int = int(scaled + Fraction(1, 2))
        if digits_int >= 10 ** digits:
            digits_int //= 10
            e10 += 1
        s = str(digits_int)
        return f"{sign}{s[0]}.{s[1:]}e{e10:+d}"

    # -- inspection -------------------------------------------------------

    def sign(self):
        return (self.mantissa > 0) - (self.mantissa < 0)

    def is_zero(self):
        return self.mantissa == 0

    def floor_log2(self):
        """``floor(log2(|self|))``; raises on zero."""
        if self.mantissa == 0:
            raise ValueError("log of zero")
        return abs(self.mantissa).bit_length() - 1 + self.exponent

    def log2(self):
        """Floating-point ``log2(|self|)``, valid for huge exponents."""
        m = abs(self.mantissa)
        excess = m.bit_length() - 60
        e = self.exponent
        if excess > 0:
            m >>= excess
            e += excess
        return math.log2(m) + e

    def shift(self, k):
        """``self * 2**k``."""
        return Dyadic(self.mantissa, self.exponent + k)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Dyadic):
            try:
                other = Dyadic.coerce(other)
            except TypeError:
                return NotImplemented
        if self.mantissa == 0:
            return other
        if other.mantissa == 0:
            return self
        d = self.exponent - other.exponent
        if d >= 0:
            return Dyadic((self.mantissa << d) + other.mantissa, other.exponent)
        return Dyadic(self.mantissa + (other.mantissa << -d), self.exponent)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self.mantissa, self.exponent)

    def __pos__(self):
        return self

    def __abs__(self):
        return self if self.mantissa >= 0 else Dyadic(-self.mantissa, self.exponent)

    def __sub__(self, other):
        if not isinstance(other, Dyadic):
            try:
                other = Dyadic.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Dyadic):
            try:
                other = Dyadic.coerce(other)
            except TypeError:
                return NotImplemented
        return Dyadic(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        return Dyadic(self.mantissa ** k, self.exponent * k)

    # -- comparisons ------------------------------------------------------

    def _cmp(self, other):
        if not isinstance(other, Dyadic):
            other = Dyadic.coerce(other)
        a, b = self.mantissa, other.mantissa
        if (a >= 0) != (b >= 0) or a == 0 or b == 0:
            return (a > b) - (a < b)
        d = self.exponent - other.exponent
        if d >= 0:
            a <<= d
        else:
            b <<= -d
        return (a > b) - (a < b)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.mantissa == other.mantissa and self.exponent == other.exponent
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        # consistent with int and Fraction hashing
        return hash(self.to_fraction())

    def __lt__(self, other):
        try:
            return self._cmp(other) < 0
        except TypeError:
            return NotImplemented

    def __le__(self, other):
        try:
            return self._cmp(other) <= 0
        except TypeError:
            return NotImplemented

    def __gt__(self, other):
        try:
            return self._cmp(other) > 0
        except TypeError:
            return NotImplemented

    def __ge__(self, other):
        try:
            return self._cmp(other) >= 0
        except TypeError:
            return NotImplemented

    def __bool__(self):
        return self.mantissa != 0
