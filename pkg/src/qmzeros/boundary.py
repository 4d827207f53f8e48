"""Zeros of modular forms on the boundary of the fundamental domain.

The arc is the left half of the unit circle, angles in [pi/2, 2pi/3], and the
line is Re z = -1/2 above rho.  Both are level sets of j (j real in [0, 1728]
on the arc, j < 0 on the line), so zeros there are isolated exactly as real
roots of the j-polynomial and only their positions are found numerically.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from .evaluate import DEFAULT, eval_many, eval_matrix, hat_many, rho_sign, s_value, series_matrix
from .rings import DomainError, eisenstein_series, factor_form, frak_d, is_irreducible_depth1, modular

SQRT3_2 = math.sqrt(3) / 2
ARC_LO, ARC_HI = math.pi / 2, 2 * math.pi / 3
RHO = complex(-0.5, SQRT3_2)


class IndeterminateOrderError(ArithmeticError):
    pass


class CommonZeroError(ValueError):
    pass


class NotIrreducibleError(ValueError):
    pass


def is_infinite(lam):
    return lam is None or (isinstance(lam, float) and math.isinf(lam))


def cusp_order(f, lam):
    """Vanishing order at the cusp of gamma F, where lam = -d/c (inf for c = 0)."""
    if f.is_zero():
        raise ValueError("the zero form has no cusp order")
    if is_infinite(lam):
        n = f.expansion.valuation()
        if n is None:
            raise IndeterminateOrderError("no nonzero coefficient up to the truncation order")
        return n
    orders = []
    for j in range(f.depth + 1):
        n = frak_d(f, j).expansion.valuation()
        if n is not None:
            orders.append(n)
    if not orders:
        raise IndeterminateOrderError("no nonzero coefficient up to the truncation order")
    return min(orders)


_J_ROWS = series_matrix([eisenstein_series(4, 60), eisenstein_series(6, 60)])


def j_values(taus, cfg=DEFAULT):
    """Numerical j(tau) = 1728 E4^3 / (E4^3 - E6^2)."""
    e4, e6 = eval_matrix(_J_ROWS, np.atleast_1d(taus), cfg)
    c = e4 ** 3
    return 1728 * c / (c - e6 ** 2)


def _arc_j(th):
    return float(j_values(np.exp(1j * np.array([th])))[0].real)


def _line_j(t):
    return float(j_values(np.array([complex(-0.5, t)]))[0].real)


def arc_zeros(g, cfg=DEFAULT, bisect_tol=1e-13):
    """Zeros of g on the closed left arc as (theta, weight, multiplicity), theta descending.

    The arc from rho to i is where j runs through [0, 1728], so the zeros are
    the real roots of the j-polynomial in that range plus the elliptic orders.
    """
    if g.depth != 0:
        raise DomainError("arc_zeros expects a modular form")
    if g.is_zero():
        raise ValueError("the zero form vanishes everywhere")
    fac = factor_form(g)
    roots = fac.real_roots_between(0, 1728)
    out = []
    if fac.rho_order:
        out.append((ARC_HI, Fraction(1, 3), fac.rho_order))
    thetas = {}
    for j0 in roots:
        th = brentq(lambda x: _arc_j(x) - j0, ARC_LO, ARC_HI, xtol=bisect_tol)
        thetas[th] = thetas.get(th, 0) + 1
    for th in sorted(thetas, reverse=True):
        out.append((th, Fraction(1), thetas[th]))
    if fac.i_order:
        out.append((ARC_LO, Fraction(1, 2), fac.i_order))
    return out


def line_zeros(g, cfg=DEFAULT, bisect_tol=1e-13):
    """Zeros of g on Re z = -1/2 strictly above rho, by height, repeated by multiplicity."""
    if g.depth != 0:
        raise DomainError("line_zeros expects a modular form")
    fac = factor_form(g)
    out = []
    for j0 in sorted(fac.real_roots_between(None, 0), reverse=True):
        # j runs from 0 at rho down to about -exp(2 pi t)
        hi = max(1.0, math.log(-j0) / (2 * math.pi) + 1.0)
        while _line_j(hi) > j0:
            hi += 1.0
        t = brentq(lambda x: _line_j(x) - j0, SQRT3_2, hi, xtol=bisect_tol)
        out.append(complex(-0.5, t))
    return out


@dataclass(frozen=True)
class CGLCounts:
    C: Fraction
    L: int
    rho_flag: bool


def cgl(g, cfg=DEFAULT):
    arc = arc_zeros(g, cfg)
    C = sum((w for _, w, _ in arc), Fraction(0))
    L = len(line_zeros(g, cfg))
    if g.expansion.valuation() != 0:
        L += 1
    return CGLCounts(C, L, factor_form(g).rho_order > 0)


@dataclass(frozen=True)
class BoundarySpectrum:
    weight: int
    arc_angles: tuple      # theta_1 >= ... >= theta_n, repeated by multiplicity
    arc_weights: tuple     # w(e^{i theta}): 2 at rho and i, 1 elsewhere
    line_zeros: tuple      # z_1, ..., z_m by increasing height
    r: int
    v_rho: int
    s: int
    signs_at_arc: tuple
    signs_at_line: tuple   # sign of f at rho, z_1, ..., z_m
    full_arc_angles: tuple = field(default=())
    full_arc_signs: tuple = field(default=())

    @property
    def n(self):
        return len(self.arc_angles)

    @property
    def m(self):
        return len(self.line_zeros)

    def to_json(self):
        return {
            "weight": self.weight,
            "arc_angles": list(self.arc_angles),
            "arc_weights": list(self.arc_weights),
            "line_zeros": [[z.real, z.imag] for z in self.line_zeros],
            "r": self.r, "v_rho": self.v_rho, "s": self.s,
            "signs_at_arc": list(self.signs_at_arc),
            "signs_at_line": list(self.signs_at_line),
            "n": self.n, "m": self.m,
        }


def _certified_sign(x, scale, what):
    if abs(x) <= 1e-9 * scale:
        raise CommonZeroError(f"f nearly vanishes at {what}: common zero of f0 and f1 suspected")
    return 1 if x > 0 else -1


def spectrum(f, cfg=DEFAULT):
    if f.depth != 1:
        raise DomainError("the boundary spectrum is built for depth-1 forms")
    if not is_irreducible_depth1(f):
        raise NotIrreducibleError("f0 and f1 have a common zero")
    f1 = modular(f.weight - 2, f.components[1])
    f0 = modular(f.weight, f.components[0])
    r, v_rho = rho_sign(f1, cfg)
    s = s_value(f)
    arc = arc_zeros(f1, cfg)
    angles, weights = [], []
    for th, w, mult in arc:
        wt = 2 if th in (ARC_LO, ARC_HI) else 1
        angles.extend([th] * mult)
        weights.extend([wt] * mult)
    # f is real at the zeros of f1 on the arc and everywhere on the line
    def real_hat(th):
        vals = hat_many(f, np.array(th, dtype=float), cfg)
        if np.any(np.abs(vals.imag) > 1e-8 * np.maximum(np.abs(vals), 1.0)):
            raise CommonZeroError("hat of f is not real at a zero of f1")
        return vals.real

    scale = float(np.max(np.abs(hat_many(f0, np.linspace(ARC_LO, ARC_HI, 33), cfg))))
    arc_signs = tuple(_certified_sign(v, scale, f"theta={th:.6f}")
                      for v, th in zip(real_hat(angles), angles))

    # full-arc list on (pi/3, 2pi/3] via the mirror theta -> pi - theta
    mirrors = [math.pi - th for th in reversed(angles) if th not in (ARC_LO, ARC_HI)]
    mirror_signs = tuple(_certified_sign(v, scale, f"theta={th:.6f}")
                         for v, th in zip(real_hat(mirrors), mirrors))
    full_angles = tuple(angles) + tuple(mirrors)
    full_signs = arc_signs + mirror_signs

    lines = line_zeros(f1, cfg)
    pts = np.array([RHO] + lines)
    fvals = eval_many(f, pts, cfg).real
    lscale = max(float(np.max(np.abs(eval_many(f0, pts, cfg)))), 1e-300)
    line_signs = tuple(_certified_sign(v, lscale, f"z={z:.6f}") for v, z in zip(fvals, pts))
    return BoundarySpectrum(
        weight=f.weight, arc_angles=tuple(angles), arc_weights=tuple(weights),
        line_zeros=tuple(lines), r=r, v_rho=v_rho, s=s,
        signs_at_arc=arc_signs, signs_at_line=line_signs,
        full_arc_angles=full_angles, full_arc_signs=full_signs,
    )
