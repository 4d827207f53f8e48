"""Closed-form zero counts built from boundary data.

Three classes of lambda appear, by |lambda|: "outer" for (1, inf], "mid" for
(1/2, 1) and "inner" for [0, 1/2).
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .boundary import (ARC_HI, ARC_LO, CommonZeroError, NotIrreducibleError, arc_zeros, cgl,
                       is_infinite, spectrum)
from .evaluate import DEFAULT, RHO, eval_many, hat_many
from .rings import DomainError, e2_form, modular, modular_dimension

CLASSES = ("outer", "mid", "inner")
_LABELS = {"outer": "(1,inf]", "mid": "(1/2,1)", "inner": "[0,1/2)"}


class BoundaryLambdaError(ValueError):
    pass


@dataclass(frozen=True)
class LambdaClass:
    tag: str
    value: object = None   # the exact lambda it came from, if any

    def __post_init__(self):
        if self.tag not in CLASSES:
            raise ValueError(f"unknown lambda class {self.tag!r}")

    @classmethod
    def of(cls, lam):
        if isinstance(lam, LambdaClass):
            return lam
        if isinstance(lam, str):
            key = lam.strip()
            for tag, label in _LABELS.items():
                if key in (tag, label):
                    return cls(tag)
            from .counting import parse_lambda
            lam = parse_lambda(key)
        if is_infinite(lam):
            return cls("outer", math.inf)
        a = abs(Fraction(lam)) if not isinstance(lam, float) else abs(lam)
        if a == 1 or a == Fraction(1, 2):
            raise BoundaryLambdaError(f"|lambda| = {a} is an endpoint of the classes")
        if a > 1:
            return cls("outer", lam)
        return cls("mid" if a > Fraction(1, 2) else "inner", lam)

    @property
    def label(self):
        return _LABELS[self.tag]

    def representative(self):
        return {"outer": Fraction(3), "mid": Fraction(3, 4), "inner": Fraction(1, 5)}[self.tag]


def _k6(k):
    return k // 6, -((-k) // 6)


def n_crit(g, lam_class):
    """Zeros of D(g) for a modular g with real coefficients."""
    if g.depth != 0:
        raise DomainError("n_crit expects a modular form")
    cls = LambdaClass.of(lam_class)
    data = cgl(g)
    base = Fraction(g.weight, 12)
    if cls.tag == "outer":
        return base + data.C + (Fraction(1, 3) if data.rho_flag else 0)
    if cls.tag == "mid":
        return base - data.C
    return base - data.C + data.L


def _low_part(f):
    return modular(f.weight - 2, f.components[1])


def _require_irreducible(f):
    if f.depth != 1:
        raise DomainError("the depth-1 formulas need a form of depth exactly 1")
    try:
        return spectrum(f)
    except (NotIrreducibleError, CommonZeroError) as exc:
        raise NotIrreducibleError(str(exc)) from exc


def _outer(k, sp):
    # r is the sign of f1 just above rho; crossing each zero of f1 on the arc
    # flips the half-plane that the hat of f moves through
    return Fraction(k // 6, 2) + sp.r * _alternating(sp.arc_angles, sp.signs_at_arc, sp.arc_weights)


def _alternating(angles, signs, weights=None):
    """sum_j (-1)^j sgn_j / w_j, indices counted with multiplicity, rho entering once."""
    total = Fraction(0)
    n = len(angles)
    for j, th in enumerate(angles, start=1):
        if th == ARC_HI and j < n and angles[j] == ARC_HI:
            continue
        total += Fraction((-1) ** j * signs[j - 1], weights[j - 1] if weights else 1)
    return total


def _inner_tail(sp):
    """r sum_j (-1)^j sgn f(z_j) / w(z_j) + (1/2)(-1)^(m+1) r s, with z_0 = rho of weight 2."""
    total = Fraction(0)
    for j, sgn in enumerate(sp.signs_at_line):
        total += Fraction((-1) ** j * sgn, 2 if j == 0 else 1)
    return sp.r * total + Fraction((-1) ** (sp.m + 1) * sp.r * sp.s, 2)


def n_depth1(f, lam_class, sp=None):
    cls = LambdaClass.of(lam_class)
    sp = sp or _require_irreducible(f)
    k = f.weight
    fl, ce = _k6(k)
    outer = _outer(k, sp)
    if cls.tag == "outer":
        value = outer
    elif cls.tag == "mid":
        value = fl - outer
    else:
        value = ce - outer - _inner_tail(sp)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral count {value}; boundary data is inconsistent")
    return int(value)


def n_depth1_all(f):
    sp = _require_irreducible(f)
    return tuple(n_depth1(f, c, sp) for c in CLASSES)


def n_infinity_depth1(f):
    """Zeros in F from the signs of the hat of f at the zeros of f1 on the arc (rho, rho + 1)."""
    sp = _require_irreducible(f)
    total = _alternating(sp.full_arc_angles, sp.full_arc_signs)
    return Fraction(f.weight // 6, 2) + sp.r * total / 2


def _turn(z_sign, base):
    """Angle of sign * exp(2 pi i base), as a fraction of a full turn in [0, 1)."""
    t = base + (Fraction(1, 2) if z_sign < 0 else 0)
    return t - math.floor(t)


def hat_argument_count(k, crossings, crossing_signs, rho_sign_value, im_sign):
    """k/12 minus the winding of the hat function along the arc from rho + 1 to rho.

    crossings are the angles in (pi/3, 2pi/3) where the hat is real, with the
    signs it takes there; rho_sign_value is the sign of the (real) value at rho;
    im_sign(theta) is the sign of the imaginary part between crossings.
    """
    order = sorted(range(len(crossings)), key=lambda i: crossings[i])
    angles = [math.pi / 3] + [crossings[i] for i in order] + [2 * math.pi / 3]
    turns = [_turn(rho_sign_value, Fraction(k, 12))]
    turns += [_turn(crossing_signs[i], Fraction(0)) for i in order]
    turns.append(_turn(rho_sign_value, Fraction(k, 6)))
    change = Fraction(0)
    for a, b, ta, tb in zip(angles, angles[1:], turns, turns[1:]):
        sigma = im_sign(0.5 * (a + b))
        if sigma == 0:
            raise ArithmeticError("imaginary part vanishes between crossings")
        if sigma < 0:
            ta, tb = (-ta) % 1, (-tb) % 1
        if ta > Fraction(1, 2) or tb > Fraction(1, 2):
            raise ArithmeticError("hat values leave the half-plane fixed by the imaginary part")
        change += sigma * (tb - ta)
    return Fraction(k, 12) - change


def _full_arc_zeros(g):
    """Distinct angles of zeros of g on the open arc (pi/3, 2pi/3)."""
    left = [th for th, _, _ in arc_zeros(g) if th != ARC_HI]
    return left + [math.pi - th for th in left if th != ARC_LO]


def n_mixed(top, low, cfg=DEFAULT):
    """Zeros in F of top + low, modular of weights k > k' with real coefficients."""
    if top.depth or low.depth:
        raise DomainError("n_mixed expects two modular forms")
    if top.weight <= low.weight or (top.weight - low.weight) % 2:
        raise DomainError("the summands must have weights k > k' of the same parity")
    k, shift = top.weight, (top.weight - low.weight) // 2
    # the imaginary part of the hat of top + low is sin(shift theta) times the hat of low
    thetas = _full_arc_zeros(low)
    thetas += [m * math.pi / shift for m in range(1, 2 * shift)
               if math.pi / 3 < m * math.pi / shift < 2 * math.pi / 3
               and all(abs(m * math.pi / shift - t) > 1e-12 for t in thetas)]
    total = lambda th: (hat_many(top, np.atleast_1d(th), cfg)
                        + np.exp(1j * shift * np.atleast_1d(th)) * hat_many(low, np.atleast_1d(th), cfg))
    scale = float(np.max(np.abs(total(np.linspace(ARC_LO, ARC_HI, 33)))))
    signs = []
    for th in thetas:
        v = complex(total(th)[0])
        if abs(v) <= 1e-9 * scale:
            raise CommonZeroError(f"top + low vanishes on the arc at theta = {th:.6f}")
        signs.append(1 if v.real > 0 else -1)
    at_rho = float(eval_many(top, np.array([RHO]), cfg)[0].real + eval_many(low, np.array([RHO]), cfg)[0].real)
    if abs(at_rho) <= 1e-9 * scale:
        raise CommonZeroError("top + low vanishes at rho")

    def im_sign(th):
        v = math.sin(shift * th) * float(hat_many(low, np.array([th]), cfg)[0].real)
        return 0 if v == 0 else (1 if v > 0 else -1)

    return hat_argument_count(k, thetas, signs, 1 if at_rho > 0 else -1, im_sign)


def pair_sum(f, regime, sp=None):
    """N_lam + N_{-1/lam}: 'mid' for 1/2 < |lam| < 2, 'outer' otherwise."""
    sp = sp or _require_irreducible(f)
    fl, ce = _k6(f.weight)
    if regime == "mid":
        return Fraction(fl)
    if regime == "outer":
        return ce - _inner_tail(sp)
    raise ValueError("regime must be 'mid' or 'outer'")


def known_tables(name, k, lam_class):
    cls = LambdaClass.of(lam_class)
    if k % 2:
        raise ValueError("weights are even")
    if name == "E2":
        if k != 2:
            raise ValueError("the E2 table has weight 2 only")
        return Fraction(1 if cls.tag == "inner" else 0)
    if name == "DEk":
        if k <= 2:
            raise ValueError("DEk needs k > 2")
        third = Fraction(1, 3) if k % 6 == 2 else Fraction(0)
        if cls.tag == "outer":
            return (k + 2) // 6 + third
        return third
    raise ValueError(f"unknown table {name!r}")


def quasimodular_dimension(k):
    """dim of the forms of depth at most 1 in weight k."""
    return modular_dimension(k) + modular_dimension(k - 2)


def upper_bound(k):
    d = quasimodular_dimension(k)
    return d - 1, d


def chebyshev_counts(n):
    if n < 1:
        raise ValueError("n must be positive")
    return n - 2 * math.floor(Fraction(n, 3) + Fraction(1, 2)), n - 1 - 2 * (n // 3)


def sign_changes(values):
    s = np.sign(np.asarray(values, dtype=float))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def scan_e2_power(n, resolution=3000, cfg=DEFAULT):
    """Sign changes of Re and Im of the hat of E2^n on the open arc (pi/3, 2pi/3)."""
    e2 = e2_form(max(60, 4 * n + 30))
    f = e2 ** n
    h = (math.pi / 3) / resolution
    th = math.pi / 3 + h * (np.arange(resolution) + 0.5)
    vals = hat_many(f, th, cfg)
    return sign_changes(vals.real), sign_changes(vals.imag)
