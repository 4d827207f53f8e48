"""Independent reference computations used to freeze expected values."""
from fractions import Fraction


def sigma(power, n):
    return sum(d ** power for d in range(1, n + 1) if n % d == 0)


def eisenstein_coeffs(k, order):
    scale = {2: -24, 4: 240, 6: -504, 8: 480, 10: -264, 14: -24}[k]
    return [1] + [scale * sigma(k - 1, n) for n in range(1, order + 1)]


def delta_product(order):
    """q prod (1 - q^n)^24 by repeated multiplication of plain integer lists."""
    poly = [0] * (order + 1)
    poly[1] = 1 if order >= 1 else 0
    for n in range(1, order + 1):
        for _ in range(24):
            for i in range(order, n - 1, -1):
                poly[i] -= poly[i - n]
    return poly


def long_division(num, den, order):
    """Coefficients of num/den for integer lists with den[0] != 0."""
    out = []
    rem = [Fraction(x) for x in num] + [Fraction(0)] * (order + 1)
    for n in range(order + 1):
        c = rem[n] / den[0]
        out.append(c)
        for i, d in enumerate(den):
            if n + i < len(rem):
                rem[n + i] -= c * d
    return out


def conv(a, b, order):
    return [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(order + 1)]
