"""Exact scalars: rationals and quaternions with rational coefficients.

Rationals are :class:`fractions.Fraction`; nothing in the package touches
floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(token: str) -> Fraction:
    """Parse ``"p/q"`` or an integer. Decimal and float notation is refused."""
    m = _RATIONAL_RE.match(token)
    if m is None:
        raise ValueError(f"not a rational: {token!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {token!r}")
    return Fraction(num, den)


def format_rational(x: RationalLike) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def epsilon(alpha: int, beta: int, gamma: int) -> int:
    """Levi-Civita symbol on indices 1..3 with epsilon(1, 2, 3) = 1."""
    for idx in (alpha, beta, gamma):
        if idx not in (1, 2, 3):
            raise ValueError(f"quaternionic index out of range: {idx}")
    if len({alpha, beta, gamma}) < 3:
        return 0
    return 1 if (alpha, beta, gamma) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)) else -1


def third_index(alpha: int, beta: int) -> int:
    """The gamma completing distinct alpha, beta to a permutation of 123."""
    if alpha == beta:
        raise ValueError("indices must differ")
    return 6 - alpha - beta


@dataclass(frozen=True)
class Quaternion:
    """``re + im1*i1 + im2*i2 + im3*i3`` with exact rational coefficients."""

    re: Fraction = Fraction(0)
    im1: Fraction = Fraction(0)
    im2: Fraction = Fraction(0)
    im3: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("re", "im1", "im2", "im3"):
            v = getattr(self, name)
            if not isinstance(v, Fraction):
                if isinstance(v, bool) or not isinstance(v, int):
                    raise TypeError(f"quaternion coefficient must be int or Fraction, got {v!r}")
                object.__setattr__(self, name, Fraction(v))

    @classmethod
    def unit(cls, alpha: int) -> "Quaternion":
        """The imaginary unit i_alpha (alpha = 1, 2, 3); alpha = 0 gives 1."""
        coeffs = [0, 0, 0, 0]
        coeffs[alpha] = 1
        return cls(*coeffs)

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.re, self.im1, self.im2, self.im3)

    def imag(self, alpha: int) -> Fraction:
        return self.coeffs[alpha]

    def is_zero(self) -> bool:
        return not (self.re or self.im1 or self.im2 or self.im3)

    def conj(self) -> "Quaternion":
        return Quaternion(self.re, -self.im1, -self.im2, -self.im3)

    def norm2(self) -> Fraction:
        return self.re**2 + self.im1**2 + self.im2**2 + self.im3**2

    def __add__(self, other: "Quaternion") -> "Quaternion":
        other = _as_quaternion(other)
        return Quaternion(*(x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        other = _as_quaternion(other)
        return Quaternion(*(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other) -> "Quaternion":
        return _as_quaternion(other) - self

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.re, -self.im1, -self.im2, -self.im3)

    def __mul__(self, other) -> "Quaternion":
        if isinstance(other, (int, Fraction)):
            return Quaternion(*(x * other for x in self.coeffs))
        return quat_mul(self, other)

    def __rmul__(self, other) -> "Quaternion":
        # real scalars are central, so left and right scaling coincide
        if isinstance(other, (int, Fraction)):
            return Quaternion(*(other * x for x in self.coeffs))
        return NotImplemented

    def __str__(self) -> str:
        return format_quaternion(self)


def _as_quaternion(x) -> Quaternion:
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, (int, Fraction)):
        return Quaternion(Fraction(x))
    raise TypeError(f"cannot treat {x!r} as a quaternion")


def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product, using i_a i_b = -delta_ab + sum_g eps_abg i_g."""
    a0, a1, a2, a3 = a.coeffs
    b0, b1, b2, b3 = b.coeffs
    return Quaternion(
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


ZERO = Quaternion()
ONE = Quaternion(1)


def format_quaternion(q: Quaternion) -> str:
    """Render as ``a+bi+cj+dk`` with rational coefficients, zero terms dropped."""
    parts = []
    for coeff, unit in zip(q.coeffs, ("", "i", "j", "k")):
        if coeff == 0:
            continue
        mag = format_rational(abs(coeff))
        if unit and mag == "1":
            mag = ""
        sign = "-" if coeff < 0 else "+"
        parts.append(f"{sign}{mag}{unit}")
    if not parts:
        return "0"
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out
