"""Numerical evaluation of forms in the upper half-plane.

Values come from the q-expansion only.  Each evaluation also sums the series
through about two thirds of its order; if the two sums disagree by more than
the tolerance (relative to the total size of the terms) the truncation is
declared inadequate.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .rings import DomainError, factor_form, frak_d

TWO_PI_I = 2j * math.pi
RHO = complex(-0.5, math.sqrt(3) / 2)


class EvaluationDomainError(ValueError):
    pass


class PrecisionError(ArithmeticError):
    pass


class IndeterminateSignError(ArithmeticError):
    pass


@dataclass(frozen=True)
class EvalConfig:
    tolerance: float = 1e-12
    min_im: float = 0.3
    order_a: int | None = None
    order_b: int | None = None

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.order_a is not None and self.order_b is not None and self.order_a >= self.order_b:
            raise ValueError("order_a must be smaller than order_b")

    def orders(self, available):
        hi = available if self.order_b is None else min(self.order_b, available)
        lo = (2 * hi) // 3 if self.order_a is None else self.order_a
        return lo, hi


DEFAULT = EvalConfig()


def series_matrix(series_list):
    order = min(s.order for s in series_list)
    return np.vstack([s.as_array()[: order + 1] for s in series_list])


def eval_matrix(matrix, tau, cfg=DEFAULT, check=True):
    """Sum each row of a coefficient matrix at q = exp(2 pi i tau)."""
    tau = np.atleast_1d(np.asarray(tau, dtype=np.complex128))
    if tau.size and tau.imag.min() < cfg.min_im:
        raise EvaluationDomainError(
            f"Im(tau) = {tau.imag.min():.4g} is below the evaluation floor {cfg.min_im}")
    lo, hi = cfg.orders(matrix.shape[1] - 1)
    q = np.exp(TWO_PI_I * tau)
    full, part, mag = kernels.eval_series(matrix[:, : hi + 1], q, lo)
    if check:
        err = np.abs(full - part)
        bad = err > cfg.tolerance * np.maximum(mag, 1e-300)
        if np.any(bad):
            idx = np.argwhere(bad)[0]
            raise PrecisionError(
                f"truncation orders {lo} and {hi} disagree at tau={tau[idx[1]]:.6g}: "
                f"relative gap {err[tuple(idx)] / mag[tuple(idx)]:.3g}")
    return full


def eval_many(f, taus, cfg=DEFAULT):
    """Values of f = sum f_j E2^j at an array of points."""
    taus = np.asarray(taus, dtype=np.complex128)
    vals = eval_matrix(series_matrix([f.expansion]), taus.ravel(), cfg)[0]
    return vals.reshape(taus.shape)


def eval_qm(f, tau, cfg=DEFAULT):
    return complex(eval_many(f, np.array([tau]), cfg)[0])


def eval_components(f, taus, cfg=DEFAULT):
    """Rows f_0(tau), ..., f_p(tau)."""
    taus = np.asarray(taus, dtype=np.complex128).ravel()
    return eval_matrix(series_matrix(f.components), taus, cfg)


def _check_theta(theta):
    if np.any(np.asarray(theta) < math.pi / 3 - 1e-12) or np.any(np.asarray(theta) > 2 * math.pi / 3 + 1e-12):
        raise EvaluationDomainError("theta must lie in [pi/3, 2pi/3]")


def hat_many(f, thetas, cfg=DEFAULT, weight=None):
    thetas = np.asarray(thetas, dtype=np.float64)
    _check_theta(thetas)
    k = f.weight if weight is None else weight
    return np.exp(0.5j * k * thetas) * eval_many(f, np.exp(1j * thetas), cfg)


def hat_eval(f, theta, cfg=DEFAULT):
    return complex(hat_many(f, np.array([theta]), cfg)[0])


def im_hat(f, theta, cfg=DEFAULT):
    """Imaginary part of the hat function, from the lowering-operator expansion."""
    _check_theta(theta)
    total = 0j
    for m in range(1, f.depth + 1):
        g = frak_d(f, m)
        ghat = cmath.exp(0.5j * g.weight * theta) * eval_qm(g, cmath.exp(1j * theta), cfg)
        total += ghat / (TWO_PI_I ** m * math.factorial(m))
    value = 0.5j * total
    if abs(value.imag) > 1e-8 * max(1.0, abs(value)):
        raise PrecisionError(f"imaginary-part expansion is not real: {value}")
    return value.real


# sign data

def _line_sign_changes(g, t_lo, t_hi, n, cfg):
    ts = np.linspace(t_lo, t_hi, n)
    vals = eval_many(g, -0.5 + 1j * (math.sqrt(3) / 2 + ts), cfg).real
    s = np.sign(vals)
    return ts, s


def rho_sign(g, cfg=DEFAULT):
    """(r, v_rho): sign of g just above rho on the left edge, and the order at rho.

    The sign is read at t = 0.5, 0.25, ... below the lowest sign change of
    g(-1/2 + i(sqrt(3)/2 + t)) and accepted after three agreeing readings.
    """
    if g.depth != 0:
        raise DomainError("rho_sign expects a modular form")
    if g.is_zero():
        raise ValueError("the zero form has no sign")
    v_rho = factor_form(g).rho_order
    # start below any line zero close to rho
    ts, s = _line_sign_changes(g, 1e-3, 0.5, 2001, cfg)
    nz = np.nonzero(s)[0]
    start = 0.5
    if nz.size:
        flips = np.nonzero(np.diff(s[nz]))[0]
        if flips.size:
            start = min(0.5, ts[nz[flips[0]]] / 2)
    t = start
    streak, last = 0, 0
    while t >= 1e-3:
        val = eval_qm(g, complex(-0.5, math.sqrt(3) / 2 + t), cfg).real
        sign = int(np.sign(val))
        if sign != 0 and sign == last:
            streak += 1
        else:
            streak = 1 if sign != 0 else 0
        last = sign
        if streak >= 3:
            return sign, v_rho
        t /= 2
    raise IndeterminateSignError("sign of g near rho did not stabilize above t = 1e-3")


def rho_sign_exact(g):
    """The same sign read off the j-polynomial: Delta < 0 and j -> 0- on the left edge."""
    fac = factor_form(g)
    ell = fac.root_multiplicity(0)
    lead = fac.poly[len(fac.poly) - 1 - ell]
    sign = (-1) ** (fac.m + ell) * (1 if lead > 0 else -1)
    return sign, fac.rho_order


def s_value(f):
    if f.depth != 1:
        raise DomainError("s is defined for depth-1 forms")
    a0 = f.expansion[0]
    if a0 != 0:
        return 1 if a0 > 0 else -1
    a1 = f.components[1][0]
    if a1 == 0:
        raise IndeterminateSignError("f and f1 both vanish at the cusp")
    return -1 if a1 > 0 else 1


def sign_of(x, tol=0.0):
    if abs(x) <= tol:
        return 0
    return 1 if x > 0 else -1


__all__ = [
    "EvalConfig", "EvaluationDomainError", "PrecisionError", "IndeterminateSignError",
    "eval_qm", "eval_many", "eval_components", "hat_eval", "hat_many", "im_hat",
    "rho_sign", "rho_sign_exact", "s_value",
]
