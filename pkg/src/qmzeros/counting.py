"""Zero counts by the argument principle.

For gamma in SL2(Z) with bottom row (c, d) and lam = -d/c, the zeros of f in
gamma F are the zeros in F of

    F_lam(tau) = sum_j (frak_d^j f)(tau) / j! * (1 / (2 pi i (tau - lam)))^j,

so every count reduces to winding numbers of F_lam around pieces of the
boundary of F (or of the Gamma_0(2) domain).  Zeros sitting on the boundary
are located first, cut out of the contour by small circular detours, and
added back with the weight the domain convention assigns to their position.
"""
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from . import kernels
from .boundary import cusp_order, is_infinite
from .evaluate import DEFAULT, TWO_PI_I, eval_matrix, series_matrix
from .rings import frak_d

INF = math.inf
SQRT3_2 = math.sqrt(3) / 2
RHO = complex(-0.5, SQRT3_2)


class ContourError(ArithmeticError):
    pass


class UnstableCountError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ContourConfig:
    indent_radius: float = 1e-3
    top_height: float = 12.0
    max_phase_step: float = math.pi / 2 - 0.1
    refinement_limit: int = 40
    scan_points: int = 2000
    verify: bool = True

    def __post_init__(self):
        if self.top_height <= 2:
            raise ValueError("top height must exceed 2")
        if not 0 < self.indent_radius < 0.05:
            raise ValueError("indent radius must lie in (0, 0.05)")


def parse_lambda(text):
    """'inf', 'p/q', an integer or a decimal; rationals stay exact."""
    if isinstance(text, (Fraction, int)):
        return Fraction(text)
    if isinstance(text, float):
        return INF if math.isinf(text) else text
    t = str(text).strip().lower()
    if t in ("inf", "infinity", "oo", "∞"):
        return INF
    try:
        return Fraction(t)
    except ValueError:
        return float(t)


def lambda_of(matrix):
    a, b, c, d = matrix
    if a * d - b * c != 1:
        raise ValueError(f"{matrix} is not in SL2(Z)")
    return INF if c == 0 else Fraction(-d, c)


def matrix_for(lam):
    """Some element of SL2(Z) whose bottom row gives lam."""
    if is_infinite(lam):
        return (1, 0, 0, 1)
    lam = Fraction(lam)
    c, d = lam.denominator, -lam.numerator
    # solve a d - b c = 1
    g, x, y = _egcd(d, c)
    return (x, -y, c, d)


def _egcd(a, b):
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


# the target function

class TargetFunction:
    """F_lam divided by q^n0, where n0 is the cusp order (keeps values O(1) near the cusp)."""

    def __init__(self, f, lam, cfg=DEFAULT):
        self.form = f
        self.lam = INF if is_infinite(lam) else lam
        self.cfg = cfg
        self.n0 = cusp_order(f, self.lam)
        if is_infinite(self.lam):
            rows = [f.expansion.shift_down(self.n0)]
        else:
            rows = []
            for j in range(f.depth + 1):
                s = frak_d(f, j).expansion * Fraction(1, math.factorial(j))
                rows.append(s.shift_down(self.n0) if not s.is_zero() else s.truncate(s.order - self.n0))
        self.matrix = series_matrix(rows)
        self.lam_c = None if is_infinite(self.lam) else complex(float(self.lam))

    @classmethod
    def from_series(cls, series, cfg=DEFAULT):
        """A plain q-series, for functions that are not modular of one weight."""
        self = cls.__new__(cls)
        self.form, self.lam, self.cfg = None, INF, cfg
        self.n0 = series.valuation()
        if self.n0 is None:
            raise ValueError("the series vanishes to its truncation order")
        self.matrix = series_matrix([series.shift_down(self.n0)])
        self.lam_c = None
        return self

    def reduced(self, tau):
        tau = np.asarray(tau, dtype=np.complex128)
        rows = eval_matrix(self.matrix, tau.ravel(), self.cfg)
        if self.lam_c is None:
            return rows[0].reshape(tau.shape)
        u = 1.0 / (TWO_PI_I * (tau.ravel() - self.lam_c))
        acc = rows[-1]
        for r in rows[-2::-1]:
            acc = acc * u + r
        return acc.reshape(tau.shape)

    def __call__(self, tau):
        tau = np.asarray(tau, dtype=np.complex128)
        return self.reduced(tau) * np.exp(TWO_PI_I * self.n0 * tau)

    def cusp_heights(self):
        """Heights of approximate zeros coming from the constant-term polynomial in u."""
        if self.lam_c is None:
            return []
        lead = self.matrix[:, 0]
        nz = np.nonzero(lead)[0]
        if nz.size == 0 or nz[-1] == 0:
            return []
        poly = lead[: nz[-1] + 1][::-1]
        heights = []
        for u in np.roots(poly):
            if abs(u) < 1e-300:
                continue
            tau = self.lam_c + 1.0 / (TWO_PI_I * u)
            heights.append(tau.imag)
        return heights


def target_function(f, lam, tau, cfg=DEFAULT):
    return complex(TargetFunction(f, lam, cfg)(np.array([tau]))[0])


# contour geometry

@dataclass(frozen=True)
class Line:
    a: complex
    b: complex

    def point(self, s):
        return self.a + (self.b - self.a) * np.asarray(s, dtype=float)

    @property
    def length(self):
        return abs(self.b - self.a)


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    t0: float
    t1: float

    def point(self, s):
        t = self.t0 + (self.t1 - self.t0) * np.asarray(s, dtype=float)
        return self.center + self.radius * np.exp(1j * t)

    @property
    def length(self):
        return abs(self.t1 - self.t0) * self.radius


@dataclass(frozen=True)
class Side:
    curve: object
    weight: object      # Fraction for zeros inside the side, None where zeros are not allowed
    tag: str


@dataclass(frozen=True)
class Corner:
    point: complex
    angle: float        # interior angle
    weight: object
    tag: str


@dataclass(frozen=True)
class Region:
    """Closed counterclockwise boundary: corner k is the start of side k."""
    sides: tuple
    corners: tuple
    cusp_weight: Fraction


def standard_region(top, rho_weight=Fraction(1, 3), i_weight=Fraction(1, 2)):
    """Boundary of F cut at height top; invariant functions give rho and i their stabilizer weights."""
    a = SQRT3_2
    sides = (
        Side(Arc(0j, 1.0, 2 * math.pi / 3, math.pi / 2), Fraction(1), "arc"),
        Side(Arc(0j, 1.0, math.pi / 2, math.pi / 3), Fraction(0), "right_arc"),
        Side(Line(complex(0.5, a), complex(0.5, top)), Fraction(0), "right_line"),
        Side(Line(complex(0.5, top), complex(-0.5, top)), None, "top"),
        Side(Line(complex(-0.5, top), complex(-0.5, a)), Fraction(1), "line"),
    )
    corners = (
        Corner(RHO, math.pi / 3, rho_weight, "rho"),
        Corner(1j, math.pi, i_weight, "i"),
        Corner(RHO + 1, math.pi / 3, Fraction(0), "rho_right"),
        Corner(complex(0.5, top), math.pi / 2, None, "top"),
        Corner(complex(-0.5, top), math.pi / 2, None, "top"),
    )
    return Region(sides, corners, Fraction(1))


def upper_region(top, side_weights, corner_weights, cusp_weight):
    """0 <= Re z <= 1 above both |z| = 1 and |z - 1| = 1."""
    e = complex(0.5, SQRT3_2)
    sides = (
        Side(Arc(0j, 1.0, math.pi / 2, math.pi / 3), side_weights[0], "unit_arc"),
        Side(Arc(1 + 0j, 1.0, 2 * math.pi / 3, math.pi / 2), side_weights[1], "shifted_arc"),
        Side(Line(complex(1, 1), complex(1, top)), side_weights[2], "right_line"),
        Side(Line(complex(1, top), complex(0, top)), None, "top"),
        Side(Line(complex(0, top), complex(0, 1)), side_weights[3], "left_line"),
    )
    corners = (
        Corner(1j, math.pi / 2, corner_weights[0], "i"),
        Corner(e, 2 * math.pi / 3, corner_weights[1], "e"),
        Corner(complex(1, 1), math.pi / 2, corner_weights[2], "1+i"),
        Corner(complex(1, top), math.pi / 2, None, "top"),
        Corner(complex(0, top), math.pi / 2, None, "top"),
    )
    return Region(sides, corners, Fraction(cusp_weight))


# phase tracking

def _track(point_fn, G, n_init, ccfg):
    """Total change of arg G along t -> point_fn(t), t in [0, 1]."""
    t = np.linspace(0.0, 1.0, n_init)
    v = G(point_fn(t))
    for _ in range(ccfg.refinement_limit):
        if not np.all(np.isfinite(v)) or np.any(v == 0):
            raise ContourError("target function vanishes or overflows on the contour")
        d = kernels.phase_increments(v)
        av = np.abs(v)
        jump = np.abs(np.log(av[1:] / av[:-1]))
        bad = (np.abs(d) > ccfg.max_phase_step) | (jump > 1.0)
        if not bad.any():
            return float(d.sum()), v
        tm = 0.5 * (t[:-1][bad] + t[1:][bad])
        vm = G(point_fn(tm))
        t = np.concatenate([t, tm])
        v = np.concatenate([v, vm])
        order = np.argsort(t, kind="stable")
        t, v = t[order], v[order]
    raise ContourError("phase tracking did not resolve within the refinement limit")


def winding_number(path, F, max_phase_step=math.pi / 2 - 0.1, refinement_limit=40):
    """Winding number of F around the closed polyline through the given points."""
    pts = np.asarray(path, dtype=np.complex128)
    if pts[0] != pts[-1]:
        pts = np.append(pts, pts[0])
    ccfg = ContourConfig(max_phase_step=max_phase_step, refinement_limit=refinement_limit)
    total, scale = 0.0, 0.0
    ends = []
    for a, b in zip(pts[:-1], pts[1:]):
        seg = Line(complex(a), complex(b))
        phase, v = _track(seg.point, F, 64, ccfg)
        total += phase
        ends.append((v[0], v[-1]))
        scale = max(scale, float(np.max(np.abs(v))))
    total += sum(float(np.angle(ends[(i + 1) % len(ends)][0] / ends[i][1])) for i in range(len(ends)))
    turns = total / (2 * math.pi)
    w = round(turns)
    if abs(turns - w) > 0.05:
        raise ContourError(f"winding residual {abs(turns - w):.3g} is too large")
    return int(w)


# boundary zeros

@dataclass
class BoundaryZero:
    point: complex
    multiplicity: int
    weight: Fraction
    tag: str
    side: int = -1       # index of the side, or -1 for a corner
    corner: int = -1
    param: float = 0.0
    radius: float = 0.0


def _circle_winding(G, z0, r, ccfg):
    circ = Arc(z0, r, 0.0, 2 * math.pi)
    phase, _ = _track(circ.point, G, 48, ccfg)
    turns = phase / (2 * math.pi)
    w = round(turns)
    if abs(turns - w) > 0.05:
        raise ContourError("multiplicity circle winding is not an integer")
    return int(w)


def _multiplicity(G, z0, r, ccfg):
    m1 = _circle_winding(G, z0, r, ccfg)
    m2 = _circle_winding(G, z0, r / 2, ccfg)
    if m1 != m2:
        raise ContourError(f"another zero lies within {r:.3g} of the boundary zero at {z0}")
    return m1


def _corner_is_zero(G, corner):
    v0 = abs(G(np.array([corner.point]))[0])
    ring = corner.point + 0.02 * np.exp(1j * np.linspace(0, 2 * math.pi, 16, endpoint=False))
    scale = float(np.max(np.abs(G(ring))))
    return v0 < 1e-8 * scale


def _scan_grid(n):
    """Uniform grid refined geometrically towards both ends, where zeros may crowd a corner."""
    s = np.linspace(0.0, 1.0, n)
    h = s[1]
    tail = h * 0.5 ** np.arange(1, 40)
    return np.unique(np.concatenate([s, tail, 1.0 - tail]))


def _side_zeros(G, side, n):
    curve = side.curve
    s = _scan_grid(n)
    n = s.size
    a = np.abs(G(curve.point(s)))
    found = []
    for i in range(1, n - 1):
        if not (a[i] <= a[i - 1] and a[i] <= a[i + 1]):
            continue
        # a zero between grid points leaves |G| at least three times larger two steps away
        if a[i] > 0.5 * min(a[max(i - 2, 0)], a[min(i + 2, n - 1)]):
            continue
        lo, hi = s[i - 1], s[i + 1]
        if found and found[-1] >= lo:
            continue
        fun = lambda x: float(abs(G(curve.point(np.array([x])))[0]))
        res = minimize_scalar(fun, bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-15, "maxiter": 400})
        x = float(res.x)
        # a few Newton steps projected on the side
        for _ in range(4):
            h = min(1e-7, 0.25 * (hi - lo))
            g0 = G(curve.point(np.array([x])))[0]
            g1 = G(curve.point(np.array([min(x + h, 1.0)])))[0]
            dg = (g1 - g0) / h
            if dg == 0:
                break
            step = (g0 / dg).real
            if abs(step) > hi - lo:
                break
            x = min(max(x - step, lo), hi)
        val = fun(x)
        if val <= 1e-7 * max(a[i - 1], a[i + 1]):
            found.append(x)
    return found


def _param_at_distance(curve, z0, s0, r, direction):
    """Parameter on the curve at distance r from z0, moving from s0 in the given direction."""
    fn = lambda s: abs(complex(curve.point(s)) - z0) - r
    step = r / max(curve.length, 1e-12)
    end = s0 + direction * step
    while 0.0 <= end <= 1.0 and fn(end) < 0:
        step *= 2
        end = s0 + direction * step
    end = min(max(end, 0.0), 1.0)
    if fn(end) < 0:
        raise ContourError("indentation radius exceeds the side length")
    return brentq(fn, s0, end, xtol=1e-15)


def locate_boundary_zeros(G, region, ccfg):
    """Zeros of G on the boundary, each with its own detour radius (at most the configured one)."""
    found = []
    corner_pts = [c.point for c in region.corners]
    for k, corner in enumerate(region.corners):
        if _corner_is_zero(G, corner):
            if corner.weight is None:
                raise ContourError("zero at a truncation corner; change the top height")
            found.append(BoundaryZero(corner.point, 0, corner.weight, corner.tag, corner=k))
    zero_corners = [bz.point for bz in found]
    for k, side in enumerate(region.sides):
        n = max(ccfg.scan_points // 4, int(ccfg.scan_points * min(side.curve.length, 4.0) / 2))
        for x in _side_zeros(G, side, n):
            z = complex(side.curve.point(x))
            if any(abs(z - c) < 1e-4 for c in zero_corners):
                continue    # the corner zero itself, seen from the side
            if any(abs(z - c) < 1e-12 for c in corner_pts):
                continue
            if side.weight is None:
                raise ContourError("zero on the truncation segment; change the top height")
            found.append(BoundaryZero(z, 0, side.weight, side.tag, side=k, param=x))
    zeros = []
    for bz in found:
        others = [c for c in corner_pts if c != bz.point] + [o.point for o in found if o is not bz]
        gap = min(abs(bz.point - c) for c in others)
        bz.radius = min(ccfg.indent_radius, 0.4 * gap)
        bz.multiplicity = _multiplicity(G, bz.point, bz.radius, ccfg)
        if bz.multiplicity > 0:
            zeros.append(bz)
    return zeros


def _contour_pieces(region, zeros, ccfg):
    """The boundary with a clockwise detour around every boundary zero."""
    nside = len(region.sides)
    corner_zero = {bz.corner: bz for bz in zeros if bz.corner >= 0}
    pieces = []
    for k, side in enumerate(region.sides):
        curve = side.curve
        lo, hi = 0.0, 1.0
        if k in corner_zero:
            lo = _param_at_distance(curve, curve.point(0.0), 0.0, corner_zero[k].radius, +1)
        end_corner = (k + 1) % nside
        if end_corner in corner_zero:
            hi = _param_at_distance(curve, curve.point(1.0), 1.0, corner_zero[end_corner].radius, -1)
        cuts = [lo]
        detours = []
        for bz in sorted((z for z in zeros if z.side == k), key=lambda z: z.param):
            s_in = _param_at_distance(curve, bz.point, bz.param, bz.radius, -1)
            s_out = _param_at_distance(curve, bz.point, bz.param, bz.radius, +1)
            cuts.extend([s_in, s_out])
            detours.append((bz.point, complex(curve.point(s_in)), complex(curve.point(s_out)), math.pi))
        cuts.append(hi)
        for i in range(0, len(cuts), 2):
            a, b = cuts[i], cuts[i + 1]
            pieces.append(lambda t, c=curve, a=a, b=b: c.point(a + (b - a) * np.asarray(t)))
            if i // 2 < len(detours):
                pieces.append(_detour(*detours[i // 2]))
        if end_corner in corner_zero:
            nxt = region.sides[end_corner].curve
            p_in = complex(curve.point(hi))
            s_next = _param_at_distance(nxt, nxt.point(0.0), 0.0, corner_zero[end_corner].radius, +1)
            p_out = complex(nxt.point(s_next))
            pieces.append(_detour(region.corners[end_corner].point, p_in, p_out,
                                  region.corners[end_corner].angle))
    return pieces


def _detour(z0, p_in, p_out, expected):
    a_in = math.atan2((p_in - z0).imag, (p_in - z0).real)
    a_out = math.atan2((p_out - z0).imag, (p_out - z0).real)
    sweep = (a_in - a_out) % (2 * math.pi)
    if abs(sweep - expected) > 0.25:
        raise ContourError(f"detour around {z0} sweeps {sweep:.3f}, expected {expected:.3f}")
    rad = abs(p_in - z0)
    return lambda t: z0 + rad * np.exp(1j * (a_in - sweep * np.asarray(t)))


def region_count(G, region, ccfg):
    """Interior winding number and located boundary zeros of G for the region."""
    zeros = locate_boundary_zeros(G, region, ccfg)
    pieces = _contour_pieces(region, zeros, ccfg)
    total = 0.0
    first = last = None
    for piece in pieces:
        phase, v = _track(piece, G, 96, ccfg)
        if last is not None:
            total += float(np.angle(v[0] / last))
        else:
            first = v[0]
        total += phase
        last = v[-1]
    total += float(np.angle(first / last))
    turns = total / (2 * math.pi)
    w = round(turns)
    if abs(turns - w) > 0.05:
        raise ContourError(f"winding residual {abs(turns - w):.3g} is too large")
    return int(w), zeros


# reports

@dataclass
class ZeroCountReport:
    lam: object
    n_value: Fraction
    interior: int
    arc: Fraction = Fraction(0)
    line: Fraction = Fraction(0)
    elliptic_rho: Fraction = Fraction(0)
    elliptic_i: Fraction = Fraction(0)
    other_boundary: Fraction = Fraction(0)
    cusp: int = 0
    method: str = "argument-principle"
    extended_lambda: bool = False
    zeros: list = field(default_factory=list)

    def to_json(self):
        lam = "inf" if is_infinite(self.lam) else str(self.lam)
        return {
            "lambda": lam,
            "n_value": str(self.n_value),
            "breakdown": {
                "interior": self.interior,
                "arc": str(self.arc),
                "line": str(self.line),
                "elliptic_rho": str(self.elliptic_rho),
                "elliptic_i": str(self.elliptic_i),
                "other_boundary": str(self.other_boundary),
                "cusp": self.cusp,
            },
            "method": self.method,
            "extended_lambda": self.extended_lambda,
        }


def _top_for(target, base):
    hs = [h for h in target.cusp_heights() if h > 0]
    return max(base, 2 * max(hs) + 2) if hs else base


def _standard_count(target, ccfg, **weights):
    top = _top_for(target, ccfg.top_height)
    region = standard_region(top, **weights)
    interior, zeros = region_count(target.reduced, region, ccfg)
    rep = ZeroCountReport(target.lam, Fraction(0), interior, cusp=target.n0)
    for bz in zeros:
        c = bz.weight * bz.multiplicity
        if bz.tag == "rho":
            rep.elliptic_rho += c
        elif bz.tag == "i":
            rep.elliptic_i += c
        elif bz.tag == "arc":
            rep.arc += c
        elif bz.tag == "line":
            rep.line += c
        else:
            rep.other_boundary += c
    rep.zeros = zeros
    rep.n_value = (Fraction(interior) + rep.arc + rep.line + rep.elliptic_rho
                   + rep.elliptic_i + rep.other_boundary + rep.cusp)
    return rep


def _stable(run, ccfg):
    base = run(ccfg)
    if not ccfg.verify:
        return base
    variants = [replace(ccfg, top_height=2 * ccfg.top_height),
                replace(ccfg, indent_radius=ccfg.indent_radius / 2)]
    for v in variants:
        other = run(v)
        if other.n_value != base.n_value:
            raise UnstableCountError(
                f"count {base.n_value} changed to {other.n_value} under "
                f"T={v.top_height}, eps={v.indent_radius}")
    return base


def count_zeros(f, lam, ccfg=None, cfg=DEFAULT):
    """Weighted number of zeros of f in gamma F, lam = -d/c."""
    ccfg = ccfg or ContourConfig()
    if f.is_zero():
        raise ValueError("the zero form has no finite zero count")
    lam = parse_lambda(lam) if isinstance(lam, str) else lam
    if isinstance(lam, int):
        lam = Fraction(lam)
    target = TargetFunction(f, lam, cfg)
    rep = _stable(lambda c: _standard_count(target, c), ccfg)
    rep.extended_lambda = isinstance(lam, float) and not math.isinf(lam)
    return rep


def count_series_zeros(series, ccfg=None, cfg=DEFAULT):
    """Zeros in F of the function given by a q-series; every point of F counts once."""
    ccfg = ccfg or ContourConfig()
    target = TargetFunction.from_series(series, cfg)
    rep = _stable(lambda c: _standard_count(target, c, rho_weight=Fraction(1), i_weight=Fraction(1)), ccfg)
    rep.method = "argument-principle-series"
    return rep


# Gamma_0(2)

# weights for the three pieces of the domain 0 <= Re z <= 1, |z - 1/2| >= 1/2:
# the region above both unit circles, and its images under w -> -1/(w-1)
# and w -> 1 - 1/w
_G02_PIECES = (
    ((1, 0, 0, 1), ((Fraction(1), Fraction(1), Fraction(0), Fraction(1)),
                    (Fraction(1), Fraction(1), Fraction(0)), 1)),
    ((0, -1, 1, -1), ((Fraction(1), Fraction(0), Fraction(1), Fraction(1)),
                      (Fraction(1, 2), Fraction(0), Fraction(0)), 1)),
    ((1, -1, 1, 0), ((Fraction(0), Fraction(0), Fraction(0), Fraction(0)),
                     (Fraction(0), Fraction(0), Fraction(0)), 0)),
)


def _mat_mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def gamma02_for(lam):
    """An element of Gamma_0(2) taking lam to a cusp: to infinity when possible, else to 0."""
    if is_infinite(lam):
        return (1, 0, 0, 1)
    lam = Fraction(lam)
    p, q = lam.numerator, lam.denominator
    if q % 2 == 0:
        # bottom row (q, -p) with c = q even
        return matrix_for(lam)
    # gamma(lam) = 0 with gamma = (q, -p; c, d), c even: q d + p c = 1
    g, x, y = _egcd(q, 2 * p)
    return (q, -p, 2 * y, x)


def count_zeros_gamma02(f, gamma, ccfg=None, cfg=DEFAULT):
    """Weighted zeros of f in gamma F_0(2); the point (1+i)/2 counts 1/2."""
    ccfg = ccfg or ContourConfig()
    gamma = tuple(int(x) for x in gamma)
    lambda_of(gamma)
    if gamma[2] % 2:
        raise ValueError(f"{gamma} is not in Gamma_0(2): the lower-left entry must be even")

    def run(c):
        total = Fraction(0)
        for piece, (side_w, corner_w, cusp_w) in _G02_PIECES:
            mu = lambda_of(_mat_mul(gamma, piece))
            target = TargetFunction(f, mu, cfg)
            region = upper_region(_top_for(target, c.top_height), side_w, corner_w, cusp_w)
            interior, zeros = region_count(target.reduced, region, c)
            total += interior + sum((z.weight * z.multiplicity for z in zeros), Fraction(0))
            total += region.cusp_weight * target.n0
        return ZeroCountReport(lambda_of(gamma), total, 0, method="argument-principle-gamma0(2)")

    return _stable(run, ccfg).n_value
