"""Rational helpers: "p/q" strings and a small Gaussian-rational number type."""

from fractions import Fraction


def to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def frac_str(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_frac(s):
    return Fraction(s)


class QI:
    """Gaussian rational a + b*i with Fraction parts; exact field arithmetic."""

    __slots__ = ("real", "imag")

    def __init__(self, re=0, im=0):
        self.real = Fraction(re)
        self.imag = Fraction(im)

    @staticmethod
    def _coerce(x):
        if isinstance(x, QI):
            return x
        if isinstance(x, (int, Fraction)):
            return QI(x, 0)
        raise TypeError(f"cannot mix QI with {type(x).__name__}")

    def __add__(self, o):
        o = self._coerce(o)
        return QI(self.real + o.real, self.imag + o.imag)

    __radd__ = __add__

    def __neg__(self):
        return QI(-self.real, -self.imag)

    def __sub__(self, o):
        o = self._coerce(o)
        return QI(self.real - o.real, self.imag - o.imag)

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        return QI(self.real * o.real - self.imag * o.imag,
                  self.real * o.imag + self.imag * o.real)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._coerce(o)
        d = o.real * o.real + o.imag * o.imag
        if d == 0:
            raise ZeroDivisionError("QI division by zero")
        return QI((self.real * o.real + self.imag * o.imag) / d,
                  (self.imag * o.real - self.real * o.imag) / d)

    def __rtruediv__(self, o):
        return self._coerce(o) / self

    def __pow__(self, k):
        out = QI(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.imag == 0 and self.real == o
        if isinstance(o, QI):
            return self.real == o.real and self.imag == o.imag
        return NotImplemented

    def __hash__(self):
        if self.imag == 0:
            return hash(self.real)
        return hash((self.real, self.imag))

    def __complex__(self):
        return complex(float(self.real), float(self.imag))

    def __abs__(self):
        return abs(complex(self))

    def conjugate(self):
        return QI(self.real, -self.imag)

    def __repr__(self):
        return f"QI({self.real}, {self.imag})"
