import cmath
import math
from fractions import Fraction

import numpy as np
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from qmzeros.counting import count_zeros
from qmzeros.evaluate import eval_qm
from qmzeros.equivariant import h_depth1
from qmzeros.expressions import parse_form
from qmzeros.formulas import LambdaClass, n_depth1, n_infinity_depth1
from qmzeros.qseries import PowerSeries, series_invert
from qmzeros.rings import basis, d_form, e2_form, e4_form, e6_form, frak_d, weight_op
from qmzeros.verify import _rng, random_depth1, random_modular

ORDER = 20
slow = settings(max_examples=8, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def quasimodular(draw, max_weight=14, order=ORDER):
    k = draw(st.sampled_from(range(2, max_weight + 1, 2)))
    p = draw(st.integers(0, k // 2))
    elems = basis(k, p, order).elements
    coeffs = draw(st.lists(st.integers(-6, 6), min_size=len(elems), max_size=len(elems)))
    assume(any(coeffs))
    total = elems[0] * coeffs[0]
    for e, c in zip(elems[1:], coeffs[1:]):
        total = total + e * c
    assume(not total.is_zero())
    return total


coefficient = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 9))
series = st.lists(coefficient, min_size=ORDER, max_size=ORDER)
upper = st.tuples(st.floats(-0.5, 0.5), st.floats(1.0, 1.6)).map(lambda p: complex(*p)).filter(lambda t: abs(t) >= 1)


@given(series, series, series)
def test_series_ring_axioms(a, b, c):
    a, b, c = (PowerSeries(x) for x in (a, b, c))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(series)
def test_invert_two_sided(a):
    s = PowerSeries([a[0] or Fraction(1)] + a[1:])
    inv = series_invert(s)
    one = PowerSeries([1] + [0] * (ORDER - 1))
    assert s * inv == one and inv * s == one


@given(quasimodular(), quasimodular())
def test_derivation(f, g):
    assert d_form(f * g) == d_form(f) * g + f * d_form(g)
    assert frak_d(f * g) == frak_d(f) * g + f * frak_d(g)


@given(quasimodular())
def test_sl2_relations(f):
    assert frak_d(d_form(f)) - d_form(frak_d(f)) == weight_op(f)
    assert weight_op(d_form(f)) - d_form(weight_op(f)) == d_form(f) * 2
    if f.depth >= 1:
        assert weight_op(frak_d(f)) - frak_d(weight_op(f)) == -(frak_d(f) * 2)


@given(quasimodular(max_weight=10, order=None), upper)
@settings(max_examples=25, deadline=None)
def test_s_transformation(f, tau):
    # tau^-k f(-1/tau) = sum_m (lowering^m f / m!)(tau) (2 pi i tau)^-m
    lhs = tau ** (-f.weight) * eval_qm(f, -1 / tau)
    rhs, g = 0, f
    for m in range(f.depth + 1):
        rhs += eval_qm(g, tau) / math.factorial(m) / (2j * math.pi * tau) ** m
        g = frak_d(g)
    assert abs(lhs - rhs) < 1e-8 * max(1.0, abs(rhs))


@given(st.sampled_from(range(4, 27, 2)).filter(lambda k: k != 2), st.integers(0, 10 ** 6))
@slow
def test_valence(k, seed):
    f = random_modular(_rng(seed), k)
    assert count_zeros(f, math.inf).n_value == Fraction(k, 12)


def _depth1(k, seed):
    f = random_depth1(_rng(seed), k)
    assume(f is not None)
    return f


@given(st.sampled_from(range(6, 25, 2)), st.integers(0, 10 ** 6), st.lists(upper, min_size=3, max_size=3))
@slow
def test_h_symmetries(k, seed, taus):
    f = _depth1(k, seed)
    for tau in taus:
        fv = eval_qm(f, tau)
        assume(abs(fv) > 1e-6 * max(1.0, abs(eval_qm(frak_d(f), tau))))
        h = h_depth1(f, tau)
        assert abs(h_depth1(f, tau + 1) - (h + 1)) < 1e-7 * max(1.0, abs(h))
        assert abs(h_depth1(f, -1 / tau) + 1 / h) < 1e-7 * max(1.0, abs(1 / h))
        assert abs(h_depth1(f, -tau.conjugate()) + h.conjugate()) < 1e-7 * max(1.0, abs(h))
    edge = h_depth1(f, -0.5 + 1j * np.linspace(1.0, 2.5, 8))
    assert np.all(np.abs(edge.real + 0.5) < 1e-7 * np.maximum(1.0, np.abs(edge)))


@given(st.fractions().filter(lambda x: abs(x) not in (0, Fraction(1, 2), 1)))
def test_lambda_class_even(lam):
    assert LambdaClass.of(lam).tag == LambdaClass.of(-lam).tag


@given(st.sampled_from(range(6, 25, 2)), st.integers(0, 10 ** 6))
@slow
def test_depth1_counts(k, seed):
    f = _depth1(k, seed)
    outer = n_depth1(f, "outer")
    assert n_depth1(f, "mid") == k // 6 - outer
    assert count_zeros(f, math.inf).n_value == outer
    assert count_zeros(f, Fraction(3, 4)).n_value == n_depth1(f, "mid")
    assert count_zeros(f, Fraction(1, 5)).n_value == n_depth1(f, "inner")
    assert n_infinity_depth1(f) == outer


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))
def test_parser_matches_construction(a, b, c):
    assume(a or b or c)
    got = parse_form(f"({a})*E2^3 + ({b})*E2*E4 + ({c})*E6", ORDER)
    e2, e4, e6 = e2_form(ORDER), e4_form(ORDER), e6_form(ORDER)
    assert got == e2 ** 3 * a + e2 * e4 * b + e6 * c


def test_s_transformation_e2():
    tau = 0.2 + 1.1j
    want = eval_qm(e2_form(), tau) + 12 / (2j * math.pi * tau)
    assert abs(tau ** -2 * eval_qm(e2_form(), -1 / tau) - want) < 1e-10
    assert cmath.isclose(eval_qm(e2_form(), 1j), 3 / math.pi, rel_tol=1e-12)
