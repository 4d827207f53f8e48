import math
from fractions import Fraction

import numpy as np
import pytest

from qmzeros.counting import (ContourConfig, ZeroCountReport, count_series_zeros, count_zeros,
                              count_zeros_gamma02, gamma02_for, lambda_of, matrix_for, parse_lambda,
                              target_function, winding_number)
from qmzeros.evaluate import eval_qm
from qmzeros.rings import constant, delta_form, e2_form, e4_form, e6_form, gap_form
from qmzeros.verify import random_modular

INF = math.inf


def slash(f, gamma, tau):
    """(c tau + d)^(-k) f(gamma tau), evaluated directly."""
    a, b, c, d = gamma
    return (c * tau + d) ** (-f.weight) * eval_qm(f, (a * tau + b) / (c * tau + d))


def test_parse_lambda():
    assert parse_lambda("inf") == INF
    assert parse_lambda("2/3") == Fraction(2, 3)
    assert parse_lambda("0.75") == Fraction(3, 4)
    assert parse_lambda(3) == Fraction(3)
    assert parse_lambda(0.1) == 0.1


def test_lambda_and_matrix():
    for lam in (Fraction(0), Fraction(2, 3), Fraction(-7, 5), Fraction(4)):
        g = matrix_for(lam)
        assert lambda_of(g) == lam
    assert lambda_of((1, 0, 0, 1)) == INF
    with pytest.raises(ValueError):
        lambda_of((1, 1, 1, 1))


@pytest.mark.parametrize("lam", [Fraction(0), Fraction(1, 3), Fraction(-2), Fraction(5, 2)])
def test_target_function_is_the_slash_action(lam):
    gamma = matrix_for(lam)
    f = e2_form() * e4_form() + e6_form() * 2
    for tau in (complex(0.1, 1.3), complex(-0.3, 2.0)):
        z = (gamma[0] * tau + gamma[1]) / (gamma[2] * tau + gamma[3])
        if z.imag < 0.5:
            continue
        assert abs(target_function(f, lam, tau) - slash(f, gamma, tau)) < 1e-9 * abs(slash(f, gamma, tau))


def test_target_function_examples():
    f = e2_form()
    assert abs(target_function(f, INF, 1j) - eval_qm(f, 1j)) < 1e-14
    # tau^-2 E2(-1/tau) at the fixed point i
    assert abs(target_function(f, Fraction(0), 1j) - (-3 / math.pi)) < 1e-12
    g = e4_form() ** 3 * 2 + delta_form()
    for lam in (Fraction(0), Fraction(3, 4)):
        assert abs(target_function(g, lam, 1.2j + 0.1) - eval_qm(g, 1.2j + 0.1)) < 1e-12


def test_winding_number():
    square = [1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j]
    assert winding_number(square, lambda z: z) == 1
    assert winding_number(square, lambda z: z - 5) == 0
    assert winding_number(square[::-1], lambda z: z) == -1
    assert winding_number(square, lambda z: z ** 3) == 3


def test_delta_count():
    rep = count_zeros(delta_form(), INF)
    assert rep.n_value == 1 and rep.interior == 0 and rep.cusp == 1


def test_e2_counts():
    e2 = e2_form()
    assert count_zeros(e2, INF).n_value == 0
    assert count_zeros(e2, Fraction(1, 4)).n_value == 1
    assert count_zeros(e2, Fraction(2)).n_value == 0


@pytest.mark.parametrize("lam", [INF, Fraction(0), Fraction(3, 4), Fraction(5)])
def test_e4_counts(lam):
    rep = count_zeros(e4_form(), lam)
    assert rep.n_value == Fraction(1, 3) and rep.elliptic_rho == Fraction(1, 3)


def test_e2_squared_minus_e4():
    f = e2_form(60) ** 2 - e4_form(60)
    assert count_zeros(f, INF).n_value == 1
    assert count_zeros(f, Fraction(2)).n_value == 0
    assert count_zeros(f, Fraction(3, 10)).n_value == 1


def test_real_lambda_is_flagged():
    rep = count_zeros(e2_form(), 0.1)
    assert rep.n_value == 1 and rep.extended_lambda
    assert not count_zeros(e2_form(), Fraction(1, 10)).extended_lambda


def test_report_breakdown_sums():
    rng = np.random.default_rng(5)
    for _ in range(4):
        g = random_modular(rng, 24)
        rep = count_zeros(g, Fraction(2, 3))
        parts = (rep.interior + rep.arc + rep.line + rep.elliptic_rho + rep.elliptic_i
                 + rep.other_boundary + rep.cusp)
        assert rep.n_value == parts == 2
        assert (6 * rep.n_value).denominator == 1 and rep.n_value >= 0
    js = rep.to_json()
    assert js["n_value"] == "2" and js["lambda"] == "2/3"
    assert isinstance(js["breakdown"]["arc"], str)


def test_same_bottom_row_same_count():
    f = gap_form(24)
    g = matrix_for(Fraction(2, 3))
    a, b, c, d = g
    shifted = (a + 5 * c, b + 5 * d, c, d)
    assert lambda_of(shifted) == lambda_of(g)
    assert count_zeros(f, lambda_of(shifted)).n_value == count_zeros(f, "4/6").n_value


def test_stability_variants_agree():
    f = e2_form() * e4_form() + e6_form()
    base = count_zeros(f, Fraction(1, 5), ContourConfig(verify=False)).n_value
    for cfg in (ContourConfig(top_height=24.0, verify=False), ContourConfig(indent_radius=5e-4, verify=False)):
        assert count_zeros(f, Fraction(1, 5), cfg).n_value == base


def test_contour_config_validation():
    with pytest.raises(ValueError):
        ContourConfig(top_height=1.5)
    with pytest.raises(ValueError):
        ContourConfig(indent_radius=0.2)


def test_zero_form_rejected():
    with pytest.raises(ValueError):
        count_zeros(constant(0, 10) * e4_form(10), INF)


def test_series_count():
    # E4 + 1 has no zeros in F; E6 + E4 is checked by the mixed-form tests
    rep = count_series_zeros(e4_form(60).expansion + constant(1, 60).expansion)
    assert rep.n_value == 0


def test_gamma02_counts():
    f = e2_form(60) ** 2 - e4_form(60)
    for g in ((1, 0, 0, 1), (1, 0, 2, 1), (3, 1, 2, 1)):
        assert count_zeros_gamma02(f, g) == 1
    with pytest.raises(ValueError):
        count_zeros_gamma02(f, (1, 0, 1, 1))


@pytest.mark.parametrize("seed", range(3))
def test_gamma02_valence(seed):
    # Gamma_0(2) has index 3, so a weight-k form has k/4 zeros in its fundamental domain
    rng = np.random.default_rng(seed)
    k = int(rng.choice([4, 6, 12, 16]))
    g = random_modular(rng, k, 2 * k + 40)
    assert count_zeros_gamma02(g, (1, 0, 2, 1)) == Fraction(k, 4)


def test_gamma02_for():
    for lam in (Fraction(1), Fraction(1, 2), Fraction(-5, 3), Fraction(0), INF):
        a, b, c, d = gamma02_for(lam)
        assert a * d - b * c == 1 and c % 2 == 0


def test_report_defaults():
    rep = ZeroCountReport(INF, Fraction(0), 0)
    assert rep.to_json()["lambda"] == "inf"
