from fractions import Fraction

import pytest

from qmzeros.qseries import ModeMismatchError, NonUnitError, PowerSeries, d_operator, series_invert
from qmzeros.rings import delta, eisenstein_series

from oracles import eisenstein_coeffs, long_division


def ps(*c):
    return PowerSeries(list(c))


def test_add_cancels():
    assert ps(1, 1) + ps(1, -1) == ps(2, 0)


def test_additive_inverse():
    e4 = eisenstein_series(4, 10)
    assert (e4 + (-e4)).is_zero()


def test_e4_plus_e6_first_coefficient():
    s = eisenstein_series(4, 5) + eisenstein_series(6, 5)
    assert s[1] == eisenstein_coeffs(4, 1)[1] + eisenstein_coeffs(6, 1)[1] == -264


def test_e4_squared_is_e8():
    sq = eisenstein_series(4, 12) ** 2
    assert list(sq.coeffs) == eisenstein_coeffs(8, 12)
    assert sq[:3] == (1, 480, 61920)


def test_geometric_series():
    n = 12
    geo = PowerSeries([1] * (n + 1))
    assert ps(*([1, -1] + [0] * (n - 1))) * geo == PowerSeries.one(n)
    assert series_invert(PowerSeries([1, -1] + [0] * (n - 1))) == geo


def test_delta_times_e2():
    prod = delta(6) * eisenstein_series(2, 6)
    assert prod[1] == 1 and prod[2] == -48


def test_invert_is_two_sided():
    e4 = eisenstein_series(4, 15)
    inv = series_invert(e4)
    assert e4 * inv == PowerSeries.one(15) == inv * e4


def test_invert_delta_over_q():
    order = 8
    dq = delta(order + 1).shift_down(1)
    e4, e6 = eisenstein_coeffs(4, order + 1), eisenstein_coeffs(6, order + 1)
    from oracles import conv
    num = [x - y for x, y in zip(conv(conv(e4, e4, order + 1), e4, order + 1), conv(e6, e6, order + 1))]
    den_q = [Fraction(x, 1728) for x in num[1:]]
    want = long_division([1], den_q, order)
    got = series_invert(dq)
    assert list(got.coeffs) == want
    assert got[:3] == (1, 24, 324)


def test_invert_non_unit():
    with pytest.raises(NonUnitError):
        series_invert(ps(0, 1, 2))


def test_d_operator():
    assert d_operator(PowerSeries.one(5)).is_zero()
    assert d_operator(ps(0, 1, 0, 1)) == ps(0, 1, 0, 3)


def test_d_delta_equals_delta_e2():
    assert d_operator(delta(20)) == delta(20) * eisenstein_series(2, 20)


def test_truncation_is_min_of_operands():
    a, b = PowerSeries.one(4), PowerSeries.one(7)
    assert (a + b).order == 4 and (a * b).order == 4


def test_mode_mismatch():
    with pytest.raises(ModeMismatchError):
        PowerSeries.one(3) + PowerSeries.one(3, exact=False)


def test_exact_rejects_float_scalars():
    with pytest.raises(TypeError):
        PowerSeries.one(3) * 0.5


def test_float_mode_matches_exact():
    e4 = eisenstein_series(4, 10)
    f = e4.to_float() * e4.to_float()
    assert all(abs(x - complex(y)) < 1e-6 * max(1, abs(float(y))) for x, y in zip(f.coeffs, (e4 * e4).coeffs))


def test_json_round_trip():
    s = eisenstein_series(6, 8) / 7
    assert PowerSeries.from_json(s.to_json()) == s
    f = s.to_float()
    assert PowerSeries.from_json(f.to_json()) == f


def test_shift_down_requires_divisibility():
    with pytest.raises(ValueError):
        ps(1, 2, 3).shift_down(1)
    assert ps(0, 0, 3).shift_down(2) == ps(3)


def test_empty_series_rejected():
    with pytest.raises(ValueError):
        PowerSeries([])
