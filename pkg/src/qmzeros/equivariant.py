"""The equivariant functions attached to a quasimodular form.

For f of depth p the polynomial sum_j (frak_d^j f)(tau)/j! * u^j has p roots
u, and h = tau - 1/(2 pi i u) gives p values h_1(tau), ..., h_p(tau).  A zero
of f in gamma F is a point tau of F with h_j(tau) = gamma^{-1}(infinity) for
some j, which is how the zero counts change with lambda.
"""
import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import ndimage
from scipy.optimize import brentq, linear_sum_assignment

from .evaluate import DEFAULT, TWO_PI_I, eval_many, eval_matrix, hat_eval, series_matrix
from .rings import DomainError, e4_form, frak_d, modular, serre_theta

SQRT3_2 = math.sqrt(3) / 2


class PoleError(ZeroDivisionError):
    pass


class ThresholdNotFoundError(ValueError):
    pass


def _taylor_rows(f):
    return series_matrix([frak_d(f, j).expansion * Fraction(1, math.factorial(j))
                          for j in range(f.depth + 1)])


def h_depth1(f, tau, cfg=DEFAULT):
    """tau + (12 / 2 pi i) f1(tau) / f(tau)."""
    if f.depth != 1:
        raise DomainError("h_depth1 needs a form of depth 1")
    taus = np.atleast_1d(np.asarray(tau, dtype=np.complex128))
    f1 = modular(f.weight - 2, f.components[1])
    fv = eval_many(f, taus, cfg)
    scale = max(float(np.max(np.abs(eval_many(f1, taus, cfg)))), 1e-300)
    if np.any(np.abs(fv) < 1e-12 * scale):
        raise PoleError(f"f vanishes at tau: |f| = {float(np.min(np.abs(fv))):.3g}")
    h = taus + 12 / TWO_PI_I * eval_many(f1, taus, cfg) / fv
    return complex(h[0]) if np.ndim(tau) == 0 else h


class HFamily:
    """The roots h_1, ..., h_p for a fixed form, evaluated at points of the upper half-plane."""

    def __init__(self, f, cfg=DEFAULT):
        if f.depth < 1:
            raise DomainError("depth-0 forms have no equivariant roots")
        self.form = f
        self.depth = f.depth
        self.cfg = cfg
        self.rows = _taylor_rows(f)

    def coefficients(self, tau):
        return eval_matrix(self.rows, np.atleast_1d(np.complex128(tau)), self.cfg)[:, 0]

    def __call__(self, tau):
        c = self.coefficients(tau)
        if abs(c[0]) < 1e-13 * max(np.max(np.abs(c)), 1e-300):
            raise PoleError(f"f vanishes at {tau}")
        if abs(c[-1]) < 1e-300:
            raise ArithmeticError("leading coefficient vanishes")
        u = np.roots(c[::-1])
        if u.size != self.depth or not np.all(np.isfinite(u)):
            raise ArithmeticError("root finder did not return p finite roots")
        return tau - 1.0 / (TWO_PI_I * u)

    def residuals(self, tau, hs):
        """Relative size of the defining polynomial at u = 1/(2 pi i (tau - h))."""
        c = self.coefficients(tau)
        u = 1.0 / (TWO_PI_I * (tau - np.asarray(hs)))
        vals = np.polyval(c[::-1], u)
        mags = np.polyval(np.abs(c[::-1]), np.abs(u))
        return np.abs(vals) / mags

    def track(self, path, min_gap=1e-6, max_halvings=30):
        """Roots along a path, labelled by nearest-neighbour continuation."""
        path = np.asarray(path, dtype=np.complex128)
        out = [self(path[0])]
        for a, b in zip(path[:-1], path[1:]):
            out.append(self._continue(a, b, out[-1], min_gap, max_halvings))
        return np.array(out)

    def _continue(self, a, b, prev, min_gap, halvings):
        nxt = self(b)
        cost = np.abs(prev[:, None] - nxt[None, :])
        rows, cols = linear_sum_assignment(cost)
        matched = nxt[cols[np.argsort(rows)]]
        gaps = np.abs(matched[:, None] - matched[None, :]) + np.eye(self.depth) * 1e300
        step_ok = np.max(np.abs(matched - prev)) < 0.5 * max(np.min(np.abs(prev[:, None] - prev[None, :])
                                                                    + np.eye(self.depth) * 1e300), 1e-12)
        if (np.min(gaps) < min_gap or not step_ok) and halvings > 0:
            mid = 0.5 * (a + b)
            half = self._continue(a, mid, prev, min_gap, halvings - 1)
            return self._continue(mid, b, half, min_gap, halvings - 1)
        return matched


def h_roots(f, tau, cfg=DEFAULT):
    return list(HFamily(f, cfg)(complex(tau)))


def root_set_distance(a, b):
    a, b = np.asarray(a), np.asarray(b)
    cost = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())


def product_law(f, tau, lam, cfg=DEFAULT):
    """(prod_j (h_j - lam), (tau - lam)^p F_lam / f) at tau."""
    from .counting import target_function
    fam = HFamily(f, cfg)
    hs = fam(complex(tau))
    left = complex(np.prod(hs - lam))
    right = (tau - lam) ** f.depth * target_function(f, lam, tau, cfg) / complex(eval_many(f, [tau], cfg)[0])
    return left, right


def derivative_form(f):
    """The weight-2k form f0^2 + 12 f0 theta(f1) - 12 theta(f0) f1 + f1^2 E4."""
    if f.depth != 1:
        raise DomainError("the identity is stated for depth 1")
    k = f.weight
    f0 = modular(k, f.components[0])
    f1 = modular(k - 2, f.components[1])
    e4 = e4_form(f.order)
    return f0 * f0 + f0 * serre_theta(f1) * 12 - serre_theta(f0) * f1 * 12 + f1 * f1 * e4


def derivative_identity(f, taus, step=1e-5, cfg=DEFAULT):
    """(f^2 dh/dtau by central differences, the right-hand side form) at each point."""
    taus = np.asarray(taus, dtype=np.complex128)
    dh = (h_depth1(f, taus + step, cfg) - h_depth1(f, taus - step, cfg)) / (2 * step)
    lhs = dh * eval_many(f, taus, cfg) ** 2
    rhs = eval_many(derivative_form(f), taus, cfg)
    return lhs, rhs


# thresholds

def arc_crossings(f, samples=400, cfg=DEFAULT):
    """Real values taken by some h_j on the arc e^{i theta}, pi/2 < theta < 2pi/3, off the unit circle."""
    fam = HFamily(f, cfg)
    th = np.linspace(math.pi / 2 + 1e-6, 2 * math.pi / 3 - 1e-6, samples)
    roots = fam.track(np.exp(1j * th))
    found = []
    for b in range(fam.depth):
        im = roots[:, b].imag
        for i in np.nonzero(np.sign(im[:-1]) * np.sign(im[1:]) < 0)[0]:
            anchor = roots[i, b]

            def branch(t, anchor=anchor):
                hs = fam(np.exp(1j * t))
                return hs[np.argmin(np.abs(hs - anchor))]

            t0 = brentq(lambda t: branch(t).imag, th[i], th[i + 1], xtol=1e-14)
            h = branch(t0)
            if abs(abs(h) - 1) > 1e-6:
                found.append(abs(h.real))
    return sorted(found)


def find_threshold(source, selector, bracket=None, theta=math.pi / 2, tol=1e-10, cfg=DEFAULT):
    """A scalar at which the zero count can change.

    selector "arc-outer" / "arc-inner": the crossing of the real axis by an h_j
    on the arc, above or below 1.  selector "hat-sign": the parameter t in
    bracket where the hat at theta changes sign, for the family source(t) or,
    when source is a pair (base, direction), base + t * direction.
    """
    if selector in ("arc-outer", "arc-inner"):
        vals = arc_crossings(source, cfg=cfg)
        pick = [v for v in vals if (v > 1) == (selector == "arc-outer")]
        if not pick:
            raise ThresholdNotFoundError("no real crossing of h on the arc")
        return pick[0] if selector == "arc-inner" else pick[-1]
    if selector == "hat-sign":
        if bracket is None:
            raise ValueError("a parameter bracket is required")

        if isinstance(source, tuple):
            base, direction = (hat_eval(g, theta, cfg) for g in source)
            family = lambda t: base + t * direction
        else:
            family = lambda t: hat_eval(source(t), theta, cfg)

        def value(t):
            v = family(t)
            if abs(v.imag) > 1e-8 * max(1.0, abs(v)):
                raise ThresholdNotFoundError("the hat value is not real at this angle")
            return v.real

        a, b = bracket
        if value(a) * value(b) > 0:
            raise ThresholdNotFoundError(f"no sign change on [{a}, {b}]")
        return brentq(value, a, b, xtol=tol)
    raise ValueError(f"unknown selector {selector!r}")


def e2_square_threshold(cfg=DEFAULT):
    """-(pi^2 / 9) times the hat of E4 at pi/2."""
    return -(math.pi ** 2 / 9) * hat_eval(e4_form(), math.pi / 2, cfg).real


# level sets

@dataclass
class CurveSample:
    z: np.ndarray             # grid points (complex), NaN outside F
    h: np.ndarray             # h at the grid, NaN at poles and outside F
    poles: np.ndarray         # boolean mask of grid points too close to a zero of f
    points: list = field(default_factory=list)   # (z, h, branch_id) on the level set Im h = 0

    @property
    def branch_count(self):
        return len({b for _, _, b in self.points})

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["re_z", "im_z", "re_h", "im_h", "branch_id"])
            for z, h, b in self.points:
                w.writerow([repr(float(z.real)), repr(float(z.imag)), repr(float(h.real)), repr(float(h.imag)), b])


def sample_curves(f, nx=200, ny=200, top=2.5, cfg=DEFAULT):
    """h on a grid over F, with the points where Im h changes sign between neighbours."""
    if f.depth != 1:
        raise DomainError("curves are sampled for depth-1 forms; depth 0 has h = tau")
    x = np.linspace(-0.5, 0.5, nx)
    y = np.linspace(SQRT3_2, top, ny)
    zz = x[None, :] + 1j * y[:, None]
    inside = np.abs(zz) >= 1 - 1e-12
    f1 = modular(f.weight - 2, f.components[1])
    flat = zz[inside]
    fv = eval_many(f, flat, cfg)
    f1v = eval_many(f1, flat, cfg)
    pole = np.abs(fv) < 1e-9 * np.maximum(np.abs(f1v), 1e-300)
    hv = np.full(flat.shape, np.nan + 1j * np.nan)
    ok = ~pole
    hv[ok] = flat[ok] + 12 / TWO_PI_I * f1v[ok] / fv[ok]
    h = np.full(zz.shape, np.nan + 1j * np.nan)
    h[inside] = hv
    poles = np.zeros(zz.shape, dtype=bool)
    poles[inside] = pole
    # large |h| near a pole flips Im h without a real crossing; skip those edges
    big = np.abs(h) > 1e6

    crossings = []
    mark = np.zeros(zz.shape, dtype=bool)
    for axis in (0, 1):
        a = h[:-1, :] if axis == 0 else h[:, :-1]
        b = h[1:, :] if axis == 0 else h[:, 1:]
        za = zz[:-1, :] if axis == 0 else zz[:, :-1]
        zb = zz[1:, :] if axis == 0 else zz[:, 1:]
        bad = np.isnan(a) | np.isnan(b)
        bad |= (big[:-1, :] | big[1:, :]) if axis == 0 else (big[:, :-1] | big[:, 1:])
        with np.errstate(invalid="ignore"):
            flip = (np.sign(a.imag) * np.sign(b.imag) < 0) & ~bad
        for i, j in zip(*np.nonzero(flip)):
            w = a[i, j].imag / (a[i, j].imag - b[i, j].imag)
            zc = za[i, j] + w * (zb[i, j] - za[i, j])
            hc = a[i, j] + w * (b[i, j] - a[i, j])
            crossings.append(((i, j), zc, complex(hc.real, 0.0)))
            mark[i, j] = True
    labels, _ = ndimage.label(mark, structure=np.ones((3, 3), dtype=int))
    points = [(zc, hc, int(labels[ij])) for ij, zc, hc in crossings]
    z_out = np.where(inside, zz, np.nan + 1j * np.nan)
    return CurveSample(z=z_out, h=h, poles=poles, points=points)
