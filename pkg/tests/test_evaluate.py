import math

import mpmath as mp
import numpy as np
import pytest

from qmzeros.boundary import j_values
from qmzeros.evaluate import (RHO, EvalConfig, EvaluationDomainError, IndeterminateSignError, PrecisionError, eval_components,
                              eval_qm, hat_eval, hat_many, im_hat, rho_sign, s_value)
from qmzeros.rings import (DomainError, delta_form, e2_form, e4_form, e6_form, frak_d, gap_form, modular)


def test_e2_at_i():
    assert abs(eval_qm(e2_form(), 1j) - 3 / math.pi) < 1e-12


def test_delta_at_i_against_eta_product():
    q = mp.exp(-2 * mp.pi)
    want = complex(q * mp.qp(q) ** 24)
    assert abs(eval_qm(delta_form(), 1j) - want) < 1e-15


def test_e4_at_i_closed_form():
    want = float(3 * mp.gamma(0.25) ** 8 / (2 * mp.pi) ** 6)
    assert abs(eval_qm(e4_form(), 1j) - want) < 1e-12


@pytest.mark.parametrize("tau", [complex(-0.5, 1.2), complex(0.2, 0.95), complex(0.4, 2.0)])
def test_j_against_klein(tau):
    want = 1728 * complex(mp.kleinj(mp.mpc(tau.real, tau.imag)))
    assert abs(j_values(np.array([tau]))[0] - want) < 1e-8 * abs(want)


def test_j_on_the_boundary():
    assert abs(j_values(np.array([RHO]))[0]) < 1e-8
    th = np.linspace(math.pi / 2, 2 * math.pi / 3 - 1e-3, 30)
    j = j_values(np.exp(1j * th))
    assert np.all(np.abs(j.imag) < 1e-6) and np.all(j.real > -1e-6) and np.all(j.real < 1728 + 1e-6)


def test_delta_at_rho_negative():
    assert eval_qm(delta_form(), RHO).real < 0


def test_modular_hats_are_real():
    th = np.linspace(math.pi / 3, 2 * math.pi / 3, 100)
    for g in (e4_form(), e6_form(), delta_form(), e4_form() * delta_form()):
        assert np.max(np.abs(hat_many(g, th).imag)) < 1e-9


def test_im_hat_e2_constant():
    for th in np.linspace(math.pi / 3, 2 * math.pi / 3, 9):
        assert abs(hat_eval(e2_form(), th).imag - 3 / math.pi) < 1e-12
        assert abs(im_hat(e2_form(), th) - 3 / math.pi) < 1e-12


def test_hat_e4_at_i():
    assert abs(hat_eval(e4_form(), math.pi / 2) + eval_qm(e4_form(), 1j)) < 1e-12
    assert abs(hat_eval(e4_form(), math.pi / 2).real + 1.4557628922687) < 1e-9


def test_im_hat_depth1():
    f = e2_form() * e4_form() + e6_form()
    f1 = modular(4, f.components[1])
    for th in (1.2, 1.6, 1.9):
        assert abs(im_hat(f, th) - 3 / math.pi * hat_eval(f1, th).real) < 1e-10
        assert abs(im_hat(f, th) - hat_eval(f, th).imag) < 1e-10


def test_im_hat_e2_squared():
    f = e2_form() ** 2
    for th in (1.1, 1.5, 2.0):
        assert abs(im_hat(f, th) - 3 / math.pi * 2 * hat_eval(e2_form(), th).real) < 1e-10
        assert abs(im_hat(f, th) - hat_eval(f, th).imag) < 1e-10


def test_modular_im_hat_is_zero():
    assert im_hat(e6_form(), 1.3) == 0


def test_transformation_under_s():
    rng = np.random.default_rng(4)
    f = e2_form() * e4_form() * 3 + e6_form()
    k = f.weight
    for _ in range(20):
        tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(1.0, 1.6))
        left = (-tau) ** (-k) * eval_qm(f, -1 / tau)
        right = sum(eval_qm(frak_d(f, j), tau) / math.factorial(j) * (2j * math.pi * tau) ** (-j)
                    for j in range(f.depth + 1))
        assert abs(left - right) <= 1e-8 * abs(right)


def test_rho_signs():
    assert rho_sign(delta_form())[0] == -1
    assert rho_sign(e4_form()) == (1, 1)
    assert rho_sign(e6_form()) == (1, 0)


def test_s_values():
    assert s_value(e2_form()) == 1
    assert s_value(gap_form(36)) == 1
    # constant term cancels and f1 = E4 starts with 1
    assert s_value(e2_form() * e4_form() - e6_form()) == -1
    with pytest.raises(IndeterminateSignError):
        s_value(delta_form() * e2_form())
    with pytest.raises(DomainError):
        s_value(e4_form())


def test_evaluation_floor():
    with pytest.raises(EvaluationDomainError):
        eval_qm(e4_form(), complex(0, 0.1))


def test_precision_error_on_short_series():
    with pytest.raises(PrecisionError):
        eval_qm(e4_form(8), complex(0, 0.4))


def test_components():
    f = e2_form() * e4_form() + e6_form()
    rows = eval_components(f, [1j])
    assert abs(rows[0, 0] - eval_qm(e6_form(), 1j)) < 1e-12
    assert abs(rows[1, 0] - eval_qm(e4_form(), 1j)) < 1e-12


def test_config_validation():
    with pytest.raises(ValueError):
        EvalConfig(tolerance=0)
    with pytest.raises(ValueError):
        EvalConfig(order_a=10, order_b=5)


def test_tighter_tolerance_is_consistent():
    f = e4_form() * e2_form() + e6_form()
    tau = complex(0.1, 0.9)
    a = eval_qm(f, tau, EvalConfig(tolerance=1e-10))
    b = eval_qm(f, tau, EvalConfig(tolerance=1e-11))
    assert abs(a - b) < 1e-9 * abs(a)


def test_rho_sign_numeric_matches_exact():
    from qmzeros.evaluate import rho_sign, rho_sign_exact
    from qmzeros.verify import _rng, random_modular
    rng = _rng(11)
    for k in (4, 6, 8, 12, 16, 20, 24, 30):
        g = random_modular(rng, k)
        assert rho_sign(g) == rho_sign_exact(g)
