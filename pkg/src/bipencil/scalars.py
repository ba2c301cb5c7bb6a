"""Scalar arithmetic shared by every pencil computation.

Two carriers are supported: exact scalars (``Fraction`` and Gaussian
rationals ``QQi``) and floating complex numbers.  Which rules are used for
rank/zero decisions is controlled by a ``Mode`` value that is threaded
through the linear-algebra helpers, not by wrapping the numbers themselves.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


class _Infinity:
    """Projective parameter at infinity (the pencil value with no finite slope)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("projective-infinity")


INF = _Infinity()


def is_inf(x) -> bool:
    return isinstance(x, _Infinity)


@dataclass(frozen=True)
class QQi:
    """Gaussian rational a + b*i with exact Fraction components."""

    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _as_qqi(other)
        if other is NotImplemented:
            return NotImplemented
        return QQi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_qqi(other)
        if other is NotImplemented:
            return NotImplemented
        return QQi(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_qqi(other)
        if other is NotImplemented:
            return NotImplemented
        return QQi(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = _as_qqi(other)
        if other is NotImplemented:
            return NotImplemented
        return QQi(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_qqi(other)
        if other is NotImplemented:
            return NotImplemented
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QQi((self.re * other.re + self.im * other.im) / d,
                   (self.im * other.re - self.re * other.im) / d)

    def __rtruediv__(self, other):
        other = _as_qqi(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __pow__(self, n: int):
        if n < 0:
            return QQi(Fraction(1), Fraction(0)) / self ** (-n)
        out = QQi(Fraction(1), Fraction(0))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QQi):
            return self.re == other.re and self.im == other.im
        if isinstance(other, Rational) or isinstance(other, int):
            return self.im == 0 and self.re == other
        if isinstance(other, (float, complex)):
            return complex(self) == complex(other)
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"

    # -- structure --------------------------------------------------------
    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0


def _as_qqi(x):
    if isinstance(x, QQi):
        return x
    if isinstance(x, (int, Fraction)):
        return QQi(Fraction(x), Fraction(0))
    return NotImplemented


def _patch_qqi_float_interop():
    """Mixed QQi/float arithmetic degrades to complex (float-mode convenience)."""

    def wrap(name, op):
        orig = getattr(QQi, name)

        def method(self, other):
            if isinstance(other, (float, complex)):
                return op(complex(self), complex(other))
            return orig(self, other)

        setattr(QQi, name, method)

    import operator

    wrap("__add__", operator.add)
    wrap("__radd__", lambda a, b: b + a)
    wrap("__sub__", operator.sub)
    wrap("__rsub__", lambda a, b: b - a)
    wrap("__mul__", operator.mul)
    wrap("__rmul__", lambda a, b: b * a)
    wrap("__truediv__", operator.truediv)
    wrap("__rtruediv__", lambda a, b: b / a)


_patch_qqi_float_interop()


def is_exact_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, QQi))


def creal(x):
    """Real part, exact for exact scalars."""
    if isinstance(x, QQi):
        return x.re
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, complex):
        return x.real
    return x


def cimag(x):
    if isinstance(x, QQi):
        return x.im
    if isinstance(x, (int, Fraction)):
        return Fraction(0)
    if isinstance(x, complex):
        return x.imag
    return 0.0


def conj(x):
    if isinstance(x, QQi):
        return x.conjugate()
    if isinstance(x, (int, Fraction)):
        return x
    return complex(x).conjugate()


def as_complex(x) -> complex:
    if isinstance(x, QQi):
        return complex(x)
    return complex(x)


def scalar_is_real(x, mode: "Mode") -> bool:
    if is_exact_scalar(x):
        return cimag(x) == 0
    z = complex(x)
    return abs(z.imag) <= 10 * mode.eps * max(abs(z), 1.0)


def simplify_scalar(x):
    """Collapse a real QQi back to Fraction so real pencils stay rational."""
    if isinstance(x, QQi) and x.im == 0:
        return x.re
    return x


def snap_to_exact(z: complex, tol: float, max_den: int = 10 ** 9):
    """Nearest Gaussian rational of modest height, or None.

    Tries a ladder of denominator bounds so that simple values like 1/3 are
    recovered with their true denominator rather than a huge float-derived one.
    """
    z = complex(z)
    for den in (1, 2, 12, 60, 1000, 10 ** 6, max_den):
        re = Fraction(z.real).limit_denominator(den)
        im = Fraction(z.imag).limit_denominator(den)
        cand = QQi(re, im)
        if abs(complex(cand) - z) <= tol * max(1.0, abs(z)):
            return simplify_scalar(cand)
    return None


def format_scalar(x):
    """Canonical JSON form: rationals as strings, complex as {re, im}."""
    if is_inf(x):
        return "inf"
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if isinstance(x, QQi):
        if x.im == 0:
            return str(x.re)
        return {"re": str(x.re), "im": str(x.im)}
    z = complex(x)
    if z.imag == 0:
        return z.real
    return {"re": z.real, "im": z.imag}


def parse_rational(text) -> Fraction:
    """Parse 'p/q', integer, or decimal strings to an exact Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(str(text).strip())


@dataclass(frozen=True)
class Mode:
    """Arithmetic regime: 'exact' or 'float' with a relative tolerance."""

    kind: str
    eps: float = 0.0

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def zero(self, value, scale: float = 1.0) -> bool:
        if self.is_exact:
            return value == 0
        return abs(as_complex(value)) <= self.eps * max(scale, 1.0)


EXACT = Mode("exact", 0.0)


def float_mode(eps: float = 1e-9) -> Mode:
    if eps <= 0:
        raise ValueError("float tolerance must be positive")
    return Mode("float", eps)


def abs2(z) -> float:
    z = as_complex(z)
    return z.real * z.real + z.imag * z.imag
