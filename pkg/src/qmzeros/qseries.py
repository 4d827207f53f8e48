"""Truncated power series in q.

A series holds coefficients a_0..a_N either as exact rationals (``Fraction``)
or as complex floats.  Binary operations truncate to the smaller order and
refuse to mix the two modes.
"""
from fractions import Fraction
from math import lcm

import numpy as np


class ModeMismatchError(TypeError):
    pass


class NonUnitError(ZeroDivisionError):
    pass


def _to_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, (int, np.integer)):
        return Fraction(int(c))
    raise TypeError(f"cannot use {c!r} as an exact coefficient")


class PowerSeries:
    __slots__ = ("coeffs", "exact", "_float")

    def __init__(self, coeffs, exact=True):
        if len(coeffs) == 0:
            raise ValueError("a series needs at least the constant coefficient")
        if exact:
            self.coeffs = tuple(_to_fraction(c) for c in coeffs)
        else:
            self.coeffs = tuple(complex(c) for c in coeffs)
        self.exact = bool(exact)
        self._float = None

    # construction helpers
    @classmethod
    def zero(cls, order, exact=True):
        z = Fraction(0) if exact else 0j
        return cls([z] * (order + 1), exact)

    @classmethod
    def one(cls, order, exact=True):
        s = [Fraction(0) if exact else 0j] * (order + 1)
        s[0] = Fraction(1) if exact else 1 + 0j
        return cls(s, exact)

    @classmethod
    def monomial(cls, n, order, coeff=1, exact=True):
        s = [Fraction(0) if exact else 0j] * (order + 1)
        if n <= order:
            s[n] = _to_fraction(coeff) if exact else complex(coeff)
        return cls(s, exact)

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:6])
        more = ", ..." if len(self.coeffs) > 6 else ""
        return f"PowerSeries([{shown}{more}], order={self.order}, exact={self.exact})"

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.exact == other.exact and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.exact, self.coeffs))

    def _check(self, other):
        if not isinstance(other, PowerSeries):
            raise TypeError(f"expected PowerSeries, got {type(other).__name__}")
        if self.exact != other.exact:
            raise ModeMismatchError("cannot combine exact and floating series")
        return min(self.order, other.order)

    def _scalar(self, c):
        if self.exact:
            return _to_fraction(c)
        return complex(c)

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return PowerSeries(self.coeffs[: order + 1], self.exact)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def valuation(self):
        """Index of the first nonzero coefficient, or None if all vanish."""
        for n, c in enumerate(self.coeffs):
            if c != 0:
                return n
        return None

    def shift_down(self, m):
        """Divide by q^m; the first m coefficients must vanish."""
        if m == 0:
            return self
        if m > self.order:
            raise ValueError("shift exceeds truncation order")
        if any(c != 0 for c in self.coeffs[:m]):
            raise ValueError(f"series is not divisible by q^{m}")
        return PowerSeries(self.coeffs[m:], self.exact)

    def to_float(self):
        if not self.exact:
            return self
        return PowerSeries([complex(float(c)) for c in self.coeffs], exact=False)

    def as_array(self):
        """Coefficients as a complex128 array (cached)."""
        if self._float is None:
            if self.exact:
                arr = np.array([float(c) for c in self.coeffs], dtype=np.complex128)
            else:
                arr = np.array(self.coeffs, dtype=np.complex128)
            arr.setflags(write=False)
            self._float = arr
        return self._float

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            return self + PowerSeries.monomial(0, self.order, other, self.exact)
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.exact)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return series_mul(self, other)
        c = self._scalar(other)
        return PowerSeries([c * a for a in self.coeffs], self.exact)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return series_mul(self, series_invert(other))
        c = self._scalar(other)
        if c == 0:
            raise ZeroDivisionError("division of a series by zero")
        return PowerSeries([a / c for a in self.coeffs], self.exact)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = PowerSeries.one(self.order, self.exact)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # serialization
    def to_json(self):
        if self.exact:
            return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}
        return {
            "order": self.order,
            "mode": "float",
            "coeffs": [[c.real, c.imag] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data):
        coeffs = data["coeffs"]
        if data.get("mode") == "float":
            series = cls([complex(re, im) for re, im in coeffs], exact=False)
        else:
            series = cls(coeffs, exact=True)
        if series.order != data["order"]:
            raise ValueError("order does not match the number of coefficients")
        return series


def series_add(a, b):
    n = a._check(b)
    return PowerSeries([x + y for x, y in zip(a.coeffs[: n + 1], b.coeffs[: n + 1])], a.exact)


def _integerize(coeffs):
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def series_mul(a, b):
    n = a._check(b)
    if not a.exact:
        prod = np.convolve(a.as_array()[: n + 1], b.as_array()[: n + 1])[: n + 1]
        return PowerSeries(prod, exact=False)
    # integer convolution over a common denominator is much faster than Fractions
    xs, dx = _integerize(a.coeffs[: n + 1])
    ys, dy = _integerize(b.coeffs[: n + 1])
    lo_x = next((i for i, v in enumerate(xs) if v), n + 1)
    lo_y = next((i for i, v in enumerate(ys) if v), n + 1)
    out = [0] * (n + 1)
    for i in range(lo_x, n + 1 - lo_y):
        xi = xs[i]
        if not xi:
            continue
        for j in range(lo_y, n + 1 - i):
            out[i + j] += xi * ys[j]
    den = dx * dy
    return PowerSeries([Fraction(v, den) for v in out], exact=True)


def series_invert(a):
    if a.coeffs[0] == 0:
        raise NonUnitError("series with zero constant term is not invertible")
    n = a.order
    inv0 = 1 / a.coeffs[0]
    b = [inv0] + [a.coeffs[0] * 0] * n
    for k in range(1, n + 1):
        acc = sum(a.coeffs[i] * b[k - i] for i in range(1, k + 1))
        b[k] = -acc * inv0
    return PowerSeries(b, a.exact)


def d_operator(a):
    """q d/dq."""
    return PowerSeries([n * c for n, c in enumerate(a.coeffs)], a.exact)
