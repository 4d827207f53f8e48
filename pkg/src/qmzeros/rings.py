"""Modular and quasimodular forms for SL2(Z) as exact q-expansions.

A quasimodular form of weight k is stored through its E2-expansion
``f = sum_j f_j E2^j`` where each ``f_j`` is the q-series of a modular form of
weight ``k - 2j``.  The derivations D (= q d/dq), the lowering operator
(written ``frak_d`` here, it sends E2 to 12 and kills modular forms) and the
weight operator act on this representation directly.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, factorial

from .config import default_order
from .qseries import PowerSeries, d_operator, series_invert


class UnsupportedGeneratorError(ValueError):
    pass


class WeightMismatchError(ValueError):
    pass


class DomainError(ValueError):
    pass


class NotModularError(ValueError):
    pass


class NoGapFormError(ArithmeticError):
    pass


# divisor sums and Eisenstein series

@lru_cache(maxsize=None)
def _sigma_table(power, order):
    table = [0] * (order + 1)
    for d in range(1, order + 1):
        dp = d ** power
        for m in range(d, order + 1, d):
            table[m] += dp
    return tuple(table)


@lru_cache(maxsize=None)
def bernoulli(n):
    """Bernoulli number B_n with B_1 = -1/2."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        b.append(-sum(comb(m + 1, j) * b[j] for j in range(m)) / (m + 1))
    return b[n]


@lru_cache(maxsize=None)
def eisenstein_series(k, order):
    """Normalized E_k for any even k >= 2, constant term 1."""
    if k < 2 or k % 2:
        raise UnsupportedGeneratorError(f"no Eisenstein series of weight {k}")
    factor = Fraction(-2 * k) / bernoulli(k)
    sig = _sigma_table(k - 1, order)
    return PowerSeries([Fraction(1)] + [factor * sig[n] for n in range(1, order + 1)])


def eisenstein(k, order):
    if k not in (2, 4, 6):
        raise UnsupportedGeneratorError(f"generator E{k} is not one of E2, E4, E6")
    return eisenstein_series(k, order)


@lru_cache(maxsize=None)
def _power(k, e, order):
    if e == 0:
        return PowerSeries.one(order)
    if e == 1:
        return eisenstein_series(k, order)
    half = _power(k, e // 2, order)
    sq = half * half
    return sq * eisenstein_series(k, order) if e % 2 else sq


@lru_cache(maxsize=None)
def delta(order):
    if order < 1:
        raise ValueError("delta needs order >= 1")
    e4, e6 = eisenstein_series(4, order), eisenstein_series(6, order)
    return (e4 * e4 * e4 - e6 * e6) / 1728


@lru_cache(maxsize=None)
def _delta_power(e, order):
    if e == 0:
        return PowerSeries.one(order)
    return _delta_power(e - 1, order) * delta(order)


@lru_cache(maxsize=None)
def j_invariant(order):
    """The series q*j = 1 + 744 q + ... (j itself has a simple pole at the cusp)."""
    e4 = eisenstein_series(4, order + 1)
    delta_over_q = delta(order + 1).shift_down(1)
    return e4 * e4 * e4 * series_invert(delta_over_q)


def modular_monomial(a, b, order):
    """E4^a E6^b."""
    return _power(4, a, order) * _power(6, b, order)


def modular_exponents(weight):
    return [(a, (weight - 4 * a) // 6) for a in range(weight // 4 + 1)
            if (weight - 4 * a) >= 0 and (weight - 4 * a) % 6 == 0]


def modular_dimension(weight):
    if weight < 0 or weight % 2:
        return 0
    return len(modular_exponents(weight))


# forms

class QuasiModularForm:
    """f = sum_j components[j] * E2^j, homogeneous of the given weight."""

    def __init__(self, weight, components):
        comps = list(components)
        if not comps:
            raise ValueError("at least one component is required")
        order = min(c.order for c in comps)
        exact = comps[0].exact
        if any(c.exact != exact for c in comps):
            raise ValueError("components mix exact and floating series")
        comps = [c.truncate(order) if c.order > order else c for c in comps]
        while len(comps) > 1 and comps[-1].is_zero():
            comps.pop()
        if weight < 0 or weight % 2:
            raise ValueError(f"weight must be a non-negative even integer, got {weight}")
        if 2 * (len(comps) - 1) > weight and not (len(comps) == 1):
            raise ValueError("depth exceeds weight/2")
        self.weight = weight
        self.components = tuple(comps)

    @property
    def depth(self):
        return len(self.components) - 1

    @property
    def order(self):
        return self.components[0].order

    @property
    def exact(self):
        return self.components[0].exact

    def component(self, j):
        if j < len(self.components):
            return self.components[j]
        return PowerSeries.zero(self.order, self.exact)

    def is_zero(self):
        return self.depth == 0 and self.components[0].is_zero()

    def is_modular(self):
        return self.depth == 0

    @cached_property
    def expansion(self):
        """The q-expansion sum_j f_j E2^j."""
        e2 = eisenstein_series(2, self.order)
        if not self.exact:
            e2 = e2.to_float()
        total = self.components[-1]
        for comp in reversed(self.components[:-1]):
            total = total * e2 + comp
        return total

    def truncate(self, order):
        return QuasiModularForm(self.weight, [c.truncate(order) for c in self.components])

    def __repr__(self):
        return f"QuasiModularForm(weight={self.weight}, depth={self.depth}, order={self.order})"

    def __eq__(self, other):
        if not isinstance(other, QuasiModularForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.weight == other.weight and self.components == other.components

    def __hash__(self):
        return hash((self.weight, self.components))

    def _same_weight(self, other):
        if self.weight != other.weight:
            if self.is_zero():
                return other.weight
            if other.is_zero():
                return self.weight
            raise WeightMismatchError(f"cannot add weights {self.weight} and {other.weight}")
        return self.weight

    def __add__(self, other):
        if not isinstance(other, QuasiModularForm):
            if other == 0:
                return self
            if self.weight != 0:
                raise WeightMismatchError("only weight-0 forms can absorb scalars")
            other = constant(other, self.order)
        weight = self._same_weight(other)
        p = max(self.depth, other.depth)
        return QuasiModularForm(weight, [self.component(j) + other.component(j) for j in range(p + 1)])

    __radd__ = __add__

    def __neg__(self):
        return QuasiModularForm(self.weight, [-c for c in self.components])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QuasiModularForm):
            return QuasiModularForm(self.weight, [c * other for c in self.components])
        comps = []
        for n in range(self.depth + other.depth + 1):
            acc = None
            for i in range(max(0, n - other.depth), min(n, self.depth) + 1):
                term = self.components[i] * other.components[n - i]
                acc = term if acc is None else acc + term
            comps.append(acc)
        return QuasiModularForm(self.weight + other.weight, comps)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return QuasiModularForm(self.weight, [c / scalar for c in self.components])

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = constant(1, self.order, self.exact)
        for _ in range(n):
            result = result * self
        return result

    def to_json(self):
        return {"weight": self.weight, "depth": self.depth,
                "components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, data):
        form = cls(data["weight"], [PowerSeries.from_json(c) for c in data["components"]])
        if form.depth != data["depth"]:
            raise ValueError("declared depth does not match the components")
        return form


def constant(c, order, exact=True):
    return QuasiModularForm(0, [PowerSeries.monomial(0, order, c, exact)])


def modular(weight, series):
    return QuasiModularForm(weight, [series])


def e2_form(order=None):
    order = order if order is not None else default_order(2)
    return QuasiModularForm(2, [PowerSeries.zero(order), PowerSeries.one(order)])


def eisenstein_form(k, order=None):
    order = order if order is not None else default_order(k)
    if k == 2:
        return e2_form(order)
    return modular(k, eisenstein_series(k, order))


def e4_form(order=None):
    return eisenstein_form(4, order)


def e6_form(order=None):
    return eisenstein_form(6, order)


def delta_form(order=None):
    order = order if order is not None else default_order(12)
    return modular(12, delta(order))


# derivations

def theta_series(series, weight):
    """Serre derivative of a weight-`weight` modular q-series."""
    e2 = eisenstein_series(2, series.order)
    if not series.exact:
        e2 = e2.to_float()
    return d_operator(series) - e2 * series * Fraction(weight, 12)


def serre_theta(g):
    if g.depth != 0:
        raise DomainError("the Serre derivative is applied to modular forms only")
    return modular(g.weight + 2, theta_series(g.components[0], g.weight))


def d_form(f):
    """D f computed on the E2-expansion through the Ramanujan identities."""
    k, p, order = f.weight, f.depth, f.order
    e4 = eisenstein_series(4, order)
    if not f.exact:
        e4 = e4.to_float()
    comps = []
    for i in range(p + 2):
        acc = PowerSeries.zero(order, f.exact)
        if i <= p:
            acc = acc + theta_series(f.components[i], k - 2 * i)
        if 1 <= i <= p + 1:
            acc = acc + f.components[i - 1] * Fraction(k - i + 1, 12)
        if i + 1 <= p:
            acc = acc - e4 * f.components[i + 1] * Fraction(i + 1, 12)
        comps.append(acc)
    return QuasiModularForm(k + 2, comps)


def frak_d(f, m=1):
    """The lowering derivation applied m times (not divided by m!)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return f
    if m > f.depth:
        return QuasiModularForm(max(f.weight - 2 * m, 0), [PowerSeries.zero(f.order, f.exact)])
    scale = factorial(m) * 12 ** m
    comps = [f.components[i + m] * (scale * comb(i + m, m)) for i in range(f.depth - m + 1)]
    return QuasiModularForm(f.weight - 2 * m, comps)


def weight_op(f):
    return f * f.weight


# bases and linear algebra

@dataclass(frozen=True)
class FormSpaceBasis:
    weight: int
    max_depth: int
    exponents: tuple  # (a, b, c) for E4^a E6^b E2^c
    elements: tuple

    def __len__(self):
        return len(self.elements)


def basis(k, p, order=None):
    if k < 0 or k % 2:
        raise ValueError(f"weight must be even and non-negative, got {k}")
    order = order if order is not None else default_order(k)
    exps, elems = [], []
    for c in range(0, min(p, k // 2) + 1):
        for a, b in modular_exponents(k - 2 * c):
            comps = [PowerSeries.zero(order)] * c + [modular_monomial(a, b, order)]
            exps.append((a, b, c))
            elems.append(QuasiModularForm(k, comps))
    return FormSpaceBasis(k, p, tuple(exps), tuple(elems))


def solve_exact(matrix, rhs):
    """Solve a square system over the rationals; None if singular."""
    n = len(matrix)
    rows = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        pv = rows[col][col]
        rows[col] = [x / pv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                fac = rows[r][col]
                rows[r] = [x - fac * y for x, y in zip(rows[r], rows[col])]
    return [rows[r][n] for r in range(n)]


def _combine(elements, coeffs):
    total = None
    for e, c in zip(elements, coeffs):
        if c == 0:
            continue
        term = e * c
        total = term if total is None else total + term
    return total


def _solve_initial_pattern(k, targets, order):
    b = basis(k, 1, order)
    d = len(b)
    if d == 0:
        raise NoGapFormError(f"M~_{k}^(<=1) is trivial")
    if order < d:
        raise ValueError("truncation order too small for the vanishing conditions")
    matrix = [[e.expansion[n] for e in b.elements] for n in range(d)]
    x = solve_exact(matrix, targets(d))
    if x is None:
        raise NoGapFormError(f"the initial-coefficient system in weight {k} is singular")
    return _combine(b.elements, x), d


def gap_form(k, order=None):
    """Depth <= 1 form with expansion 1 + O(q^dim), dim = dim M~_k^(<=1)."""
    order = order if order is not None else default_order(k)
    form, _ = _solve_initial_pattern(k, lambda d: [1] + [0] * (d - 1), order)
    return form


def extremal_form(k, order=None):
    """Depth-1 form of weight k (k = 6n) with expansion q^(dim-1) + ..."""
    if k <= 0 or k % 6:
        raise ValueError("extremal forms are built for weights divisible by 6")
    order = order if order is not None else default_order(k)
    form, d = _solve_initial_pattern(k, lambda d: [0] * (d - 1) + [1], order)
    return form


def kaneko_zagier_residual(f):
    """f'' - (k/6) E2 f' + (k(k-1)/12) E2' f on the expansions."""
    k = f.weight
    s = f.expansion
    e2 = eisenstein_series(2, f.order)
    ds = d_operator(s)
    return d_operator(ds) - e2 * ds * Fraction(k, 6) + d_operator(e2) * s * Fraction(k * (k - 1), 12)


# j-polynomial factorization

_ELLIPTIC_SPLIT = {0: (0, 0), 2: (2, 1), 4: (1, 0), 6: (0, 1), 8: (2, 0), 10: (1, 1)}


@dataclass(frozen=True)
class JFactorization:
    """g = E4^e4 E6^e6 Delta^m P(j), P given by descending coefficients of formal degree m."""
    weight: int
    e4: int
    e6: int
    m: int
    poly: tuple

    @property
    def degree(self):
        for i, c in enumerate(self.poly):
            if c != 0:
                return len(self.poly) - 1 - i
        return None

    def root_multiplicity(self, value):
        coeffs = list(self.poly)
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
        mult = 0
        value = Fraction(value)
        while len(coeffs) > 1:
            # synthetic division
            out, acc = [], Fraction(0)
            for c in coeffs:
                acc = acc * value + c
                out.append(acc)
            if out[-1] != 0:
                break
            coeffs = out[:-1]
            mult += 1
        return mult

    @property
    def rho_order(self):
        return self.e4 + 3 * self.root_multiplicity(0)

    @property
    def i_order(self):
        return self.e6 + 2 * self.root_multiplicity(1728)

    @property
    def cusp_order(self):
        return self.m - self.degree

    def sympy_poly(self):
        import sympy
        jv = sympy.Symbol("j")
        return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in self.poly], jv, domain="QQ")

    def generic_part(self):
        """P with its roots at j = 0 and j = 1728 divided out (sympy Poly)."""
        import sympy
        poly = self.sympy_poly()
        jv = poly.gens[0]
        for root in (0, 1728):
            lin = sympy.Poly(jv - root, jv, domain="QQ")
            while poly.degree() > 0 and poly.eval(root) == 0:
                poly = poly.quo(lin)
        return poly

    def real_roots_between(self, lo, hi):
        """Real roots of P strictly between lo and hi (None for an infinite end), with multiplicity."""
        poly = self.generic_part()
        if poly.degree() <= 0:
            return []
        out = []
        for root, mult in _real_roots(poly):
            x = float(root)
            if (lo is None or x > lo) and (hi is None or x < hi):
                out.extend([x] * mult)
        return sorted(out)

    def roots(self, digits=30):
        """Complex roots of P (with multiplicity) to the given precision."""
        poly = self.sympy_poly()
        if poly.degree() <= 0:
            return []
        return [complex(r) for r in poly.nroots(n=digits)]


def _real_roots(poly):
    """(value, multiplicity) for the real roots, isolated exactly then refined."""
    import sympy
    out = []
    for factor, mult in sympy.factor_list(poly)[1]:
        for r in sympy.Poly(factor).real_roots():
            out.append((sympy.N(r, 30), mult))
    return out


def j_factorization(g_series, weight):
    if g_series.is_zero():
        raise ValueError("the zero form has no j-factorization")
    e4, e6 = _ELLIPTIC_SPLIT[weight % 12]
    if 4 * e4 + 6 * e6 > weight:
        raise NotModularError(f"weight {weight} carries no nonzero modular forms")
    m = (weight - 4 * e4 - 6 * e6) // 12
    order = g_series.order
    if order < m + 1:
        raise ValueError("truncation order too small for the j-factorization")
    rest = g_series * series_invert(modular_monomial(e4, e6, order))
    coeffs = []
    for i in range(m + 1):
        c = rest[i]
        coeffs.append(c)
        if c != 0:
            rest = rest - modular_monomial(3 * (m - i), 0, order) * _delta_power(i, order) * c
    if not rest.is_zero():
        raise NotModularError(f"series is not a modular form of weight {weight}")
    return JFactorization(weight, e4, e6, m, tuple(coeffs))


def factor_form(g):
    if g.depth != 0:
        raise DomainError("j-factorization applies to modular forms")
    return j_factorization(g.components[0], g.weight)


def check_components(f):
    """Raise unless every component lies in the right space of modular forms."""
    for j, comp in enumerate(f.components):
        if not comp.is_zero():
            j_factorization(comp, f.weight - 2 * j)
    return True


def is_irreducible_depth1(f):
    """True if f0, f1 share no zero in the upper half-plane or at the cusp."""
    if f.depth != 1:
        raise DomainError("irreducibility is defined here for depth-1 forms")
    f0, f1 = f.components
    if f0.is_zero():
        return f.weight == 2
    a = j_factorization(f0, f.weight)
    b = j_factorization(f1, f.weight - 2)
    if a.rho_order and b.rho_order:
        return False
    if a.i_order and b.i_order:
        return False
    if a.cusp_order and b.cusp_order:
        return False
    import sympy
    return sympy.gcd(a.generic_part(), b.generic_part()).degree() == 0
