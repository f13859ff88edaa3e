"""Exact arithmetic in quadratic fields Q(sqrt(m))."""

from fractions import Fraction
from math import isqrt

import mpmath
import sympy


def squarefree_split(x):
    """Return (s, m) with x == s*s*m, s >= 0 rational and m a squarefree integer.

    x == 0 gives (0, 1).
    """
    x = Fraction(x)
    if x == 0:
        return Fraction(0), 1
    sign = -1 if x < 0 else 1
    # x = n/d = n*d/d^2
    n = abs(x.numerator) * x.denominator
    outside, inside = 1, 1
    for p, e in sympy.factorint(n).items():
        outside *= p ** (e // 2)
        if e % 2:
            inside *= p
    return Fraction(outside, x.denominator), sign * inside


def rational_sqrt(x):
    """Exact square root of a nonnegative rational, or None."""
    x = Fraction(x)
    if x < 0:
        return None
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


class QuadNum:
    """p + q*sqrt(m) with p, q rational and m squarefree."""

    __slots__ = ("p", "q", "m")

    def __init__(self, p=0, q=0, m=1):
        p, q = Fraction(p), Fraction(q)
        m = int(m)
        if m == 0:
            q = Fraction(0)
        elif m != 1:
            s, m2 = squarefree_split(m)
            q, m = q * s, m2
        if m == 1:
            p, q = p + q, Fraction(0)
        if q == 0:
            m = 1
        self.p, self.q, self.m = p, q, m

    @classmethod
    def sqrt(cls, x):
        """sqrt(x) for rational x, principal branch (i*sqrt(|x|) for x<0)."""
        s, m = squarefree_split(x)
        return cls(0, s, m)

    def _coerce(self, other):
        if isinstance(other, QuadNum):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum(other)
        return NotImplemented

    def _field(self, other):
        if self.m == 1:
            return other.m
        if other.m == 1 or other.m == self.m:
            return self.m
        raise ValueError(f"mixing Q(sqrt({self.m})) and Q(sqrt({other.m}))")

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = self._field(other)
        return QuadNum(self.p + other.p, self.q + other.q, m)

    __radd__ = __add__

    def __neg__(self):
        return QuadNum(-self.p, -self.q, self.m)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = self._field(other)
        return QuadNum(self.p * other.p + self.q * other.q * m,
                       self.p * other.q + self.q * other.p, m)

    __rmul__ = __mul__

    def conj(self):
        return QuadNum(self.p, -self.q, self.m)

    def norm(self):
        return self.p * self.p - self.q * self.q * self.m

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadNum division by zero")
        c = self.conj()
        return QuadNum(c.p / n, c.q / n, self.m)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = QuadNum(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return (self.p, self.q, self.m) == (other.p, other.q, other.m)

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.m))

    def is_rational(self):
        return self.q == 0

    def sqrt_exact(self):
        """Exact square root in a quadratic field (the same one when irrational), or None."""
        if self.q == 0:
            # a rational belongs to every field; its root lives in Q(sqrt(p))
            return QuadNum.sqrt(self.p)
        # (x + y sqrt m)^2 = p + q sqrt m: x^2 = (p +- sqrt(norm))/2
        r = rational_sqrt(self.norm())
        if r is None:
            return None
        for x2 in ((self.p + r) / 2, (self.p - r) / 2):
            x = rational_sqrt(x2)
            if x:
                cand = QuadNum(x, self.q / (2 * x), self.m)
                if cand * cand == self:
                    # principal branch: positive real part
                    return cand if mpmath.re(cand.to_mp()) >= 0 else -cand
        return None

    def to_mp(self):
        """Numeric value as mpf/mpc at the current mpmath precision."""
        p = mpmath.mpf(self.p.numerator) / self.p.denominator
        if self.q == 0:
            return p
        q = mpmath.mpf(self.q.numerator) / self.q.denominator
        return p + q * mpmath.sqrt(mpmath.mpf(self.m))

    def __complex__(self):
        return complex(self.to_mp())

    def to_json(self):
        return {"m": self.m, "p": str(self.p), "q": str(self.q)}

    @classmethod
    def from_json(cls, d):
        return cls(Fraction(d["p"]), Fraction(d["q"]), int(d["m"]))

    def __repr__(self):
        return f"QuadNum({self})"

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        sq = "i*sqrt(%d)" % -self.m if self.m < 0 else "sqrt(%d)" % self.m
        if self.p == 0:
            return sq if self.q == 1 else f"{self.q}*{sq}"
        sign = "-" if self.q < 0 else "+"
        return f"{self.p} {sign} {abs(self.q)}*{sq}"
