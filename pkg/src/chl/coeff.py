"""Exact rational functions in one formal parameter ``s``.

The Hall-Littlewood parameter is ``t = s**2``; the boson deformation ``q`` is
identified with ``t`` so that ``q**(1/2) = s`` and every identity in the package
is polynomial in ``s`` after clearing denominators.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

import flint

_fz = flint.fmpz_poly
_ONE_POLY = _fz([1])
_ZERO_POLY = _fz([])


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a root of its denominator."""


Number = Union[int, Fraction, "RatCoeff"]


class RatCoeff:
    """Normalized ``numerator(s) / denominator(s)`` with integer coefficients.

    Invariants: gcd(num, den) = 1 over Z[s], the denominator has positive
    leading coefficient, and zero is stored as 0/1.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value: Number = 0, den=None):
        if isinstance(value, RatCoeff):
            self.num, self.den = value.num, value.den
        elif isinstance(value, _fz):
            self.num, self.den = value, _ONE_POLY if den is None else den
            if den is not None:
                self._normalize()
        elif isinstance(value, Fraction):
            self.num, self.den = _fz([value.numerator]), _fz([value.denominator])
        elif isinstance(value, int):
            self.num, self.den = _fz([value]), _ONE_POLY
        else:
            raise TypeError(f"cannot build RatCoeff from {type(value).__name__}")
        self._hash = None

    @classmethod
    def _raw(cls, num, den) -> "RatCoeff":
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    @classmethod
    def from_polys(cls, num, den=None) -> "RatCoeff":
        """Build from coefficient lists (lowest degree first) or fmpz_polys."""
        num = num if isinstance(num, _fz) else _fz(list(num))
        if den is None:
            return cls._raw(num, _ONE_POLY)
        den = den if isinstance(den, _fz) else _fz(list(den))
        obj = cls._raw(num, den)
        obj._normalize()
        return obj

    def _normalize(self) -> None:
        if self.den.degree() < 0:
            raise ZeroDivisionError("zero denominator")
        if self.num.degree() < 0:
            self.num, self.den = _ZERO_POLY, _ONE_POLY
            return
        g = self.num.gcd(self.den)
        if g != _ONE_POLY:
            self.num = self.num // g
            self.den = self.den // g
        if self.den.coeffs()[-1] < 0:
            self.num, self.den = -self.num, -self.den

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "RatCoeff":
        if isinstance(other, RatCoeff):
            return other
        if isinstance(other, (int, Fraction)):
            return RatCoeff(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            if self.den == _ONE_POLY:
                return RatCoeff._raw(self.num + other.num, _ONE_POLY)
            out = RatCoeff._raw(self.num + other.num, self.den)
        else:
            out = RatCoeff._raw(self.num * other.den + other.num * self.den, self.den * other.den)
        out._normalize()
        return out

    __radd__ = __add__

    def __neg__(self):
        return RatCoeff._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == _ONE_POLY and other.den == _ONE_POLY:
            return RatCoeff._raw(self.num * other.num, _ONE_POLY)
        out = RatCoeff._raw(self.num * other.num, self.den * other.den)
        out._normalize()
        return out

    __rmul__ = __mul__

    def inverse(self) -> "RatCoeff":
        if self.num.degree() < 0:
            raise ZeroDivisionError("RatCoeff division by zero")
        out = RatCoeff._raw(self.den, self.num)
        if out.den.coeffs()[-1] < 0:
            out.num, out.den = -out.num, -out.den
        return out

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatCoeff._raw(self.num ** k, self.den ** k)

    # -- comparison -------------------------------------------------------
    def __bool__(self):
        return self.num.degree() >= 0

    def is_zero(self) -> bool:
        return self.num.degree() < 0

    def __eq__(self, other):
        if isinstance(other, RatCoeff):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == RatCoeff(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(int(c) for c in self.num.coeffs()), tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    # -- inspection -------------------------------------------------------
    def is_polynomial(self) -> bool:
        return self.den == _ONE_POLY

    def is_integral_polynomial_in_t(self) -> bool:
        """True when the value lies in Z[t] (only even powers of s, denominator 1)."""
        return self.den == _ONE_POLY and all(int(c) == 0 for c in self.num.coeffs()[1::2])

    def numerator_coeffs(self) -> list[int]:
        return [int(c) for c in self.num.coeffs()]

    def denominator_coeffs(self) -> list[int]:
        return [int(c) for c in self.den.coeffs()]

    def constant(self) -> Fraction:
        """Value as a rational number; only valid for s-free coefficients."""
        if self.num.degree() > 0 or self.den.degree() > 0:
            raise ValueError(f"{self} depends on s")
        return Fraction(int(self.num.coeffs()[0]) if self else 0, int(self.den.coeffs()[0]))

    def evaluate(self, s0) -> Fraction:
        """Exact value at ``s = s0``; raises :class:`PoleError` at a pole."""
        s0 = Fraction(s0)
        d = _horner(self.denominator_coeffs(), s0)
        if d == 0:
            raise PoleError(f"pole of {self} at s = {s0}")
        return _horner(self.numerator_coeffs(), s0) / d

    def substitute_t_zero(self) -> "RatCoeff":
        """Specialise s = 0 (hence t = q = 0)."""
        return RatCoeff(self.evaluate(0))

    def __repr__(self):
        return f"RatCoeff({self})"

    def __str__(self):
        return f"({_poly_str(self.numerator_coeffs())})/({_poly_str(self.denominator_coeffs())})"

    def short(self) -> str:
        """Compact form: drops a unit denominator."""
        if self.den == _ONE_POLY:
            body = _poly_str(self.numerator_coeffs())
            return body if len(self.num.coeffs()) <= 1 else f"({body})"
        return str(self)

    @classmethod
    def parse(cls, text: str) -> "RatCoeff":
        """Inverse of ``str``: ``"(1 - s^2)/(1)"``; a bare polynomial is also accepted."""
        text = text.strip()
        m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", text)
        if m:
            return cls.from_polys(_parse_poly(m.group(1)), _parse_poly(m.group(2)))
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
        return cls.from_polys(_parse_poly(text))


def _horner(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_str(coeffs) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = "s" if k == 1 else f"s^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(s(?:\^(\d+))?)?")


def _parse_poly(text: str) -> list[int]:
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        sign, digits, mono, power = m.groups()
        if not digits and not mono:
            raise ValueError(f"cannot parse polynomial {text!r}")
        c = int(digits) if digits else 1
        k = 0 if not mono else int(power) if power else 1
        coeffs[k] = coeffs.get(k, 0) + (-c if sign == "-" else c)
        pos = m.end()
    top = max(coeffs)
    return [coeffs.get(k, 0) for k in range(top + 1)]


ZERO = RatCoeff(0)
ONE = RatCoeff(1)
S = RatCoeff.from_polys([0, 1])
T = S * S
Q = T
Q_HALF = S


def t_power(k: int) -> RatCoeff:
    return T ** k


def one_minus_t_power(k: int) -> RatCoeff:
    """``1 - t**k``."""
    return ONE - T ** k


def as_coeff(x) -> RatCoeff:
    return x if isinstance(x, RatCoeff) else RatCoeff(x)


def series_coefficients(num: list, den: list, order: int) -> list:
    """Power-series coefficients of ``num(D)/den(D)`` up to ``D**order``.

    ``num`` and ``den`` are coefficient lists in ``D`` (lowest first) whose
    entries are RatCoeff; ``den[0]`` must be invertible.
    """
    num = [as_coeff(c) for c in num]
    den = [as_coeff(c) for c in den]
    inv0 = den[0].inverse()
    out = []
    for k in range(order + 1):
        acc = num[k] if k < len(num) else ZERO
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc * inv0)
    return out
