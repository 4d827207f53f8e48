import math
from fractions import Fraction

import numpy as np
import pytest

from qmzeros.boundary import CommonZeroError, NotIrreducibleError
from qmzeros.counting import count_series_zeros, count_zeros
from qmzeros.formulas import (BoundaryLambdaError, LambdaClass, chebyshev_counts, known_tables, n_crit,
                              n_depth1, n_depth1_all, n_infinity_depth1, n_mixed, pair_sum,
                              quasimodular_dimension, scan_e2_power, sign_changes, upper_bound)
from qmzeros.rings import (DomainError, constant, d_form, delta_form, e2_form, e4_form, e6_form,
                           eisenstein_form, extremal_form, gap_form)
from qmzeros.verify import random_depth1

REPS = {"outer": Fraction(3), "mid": Fraction(3, 4), "inner": Fraction(1, 5)}


def oracle_triple(f):
    return tuple(count_zeros(f, REPS[c]).n_value for c in ("outer", "mid", "inner"))


def test_lambda_classes():
    assert LambdaClass.of("inf").tag == "outer"
    assert LambdaClass.of(Fraction(-3, 4)).tag == "mid"
    assert LambdaClass.of(0).tag == "inner"
    assert LambdaClass.of("(1/2,1)").tag == "mid"
    assert LambdaClass.of(0.2).tag == "inner"
    for bad in (1, -1, Fraction(1, 2), Fraction(-1, 2)):
        with pytest.raises(BoundaryLambdaError):
            LambdaClass.of(bad)


@pytest.mark.parametrize("name,g,want", [
    ("Delta", delta_form(), (1, 1, 2)),
    ("E4", e4_form(), (1, 0, 0)),
    ("E14", eisenstein_form(14, 60), (Fraction(7, 3), Fraction(1, 3), Fraction(1, 3))),
])
def test_n_crit_examples(name, g, want):
    got = tuple(n_crit(g, c) for c in ("outer", "mid", "inner"))
    assert got == want
    assert oracle_triple(d_form(g)) == want


def test_n_depth1_examples():
    assert n_depth1_all(e2_form()) == (0, 0, 1) == oracle_triple(e2_form())
    assert n_depth1_all(gap_form(36)) == (1, 5, 6)
    assert n_depth1(extremal_form(12, 60), "outer") == 2


def test_mid_is_complement_of_outer():
    rng = np.random.default_rng(8)
    done = 0
    while done < 6:
        k = int(rng.choice([12, 18, 24, 30]))
        f = random_depth1(rng, k)
        if f is None:
            continue
        out, mid, _ = n_depth1_all(f)
        assert mid == k // 6 - out
        done += 1


def test_n_infinity_full_arc():
    assert n_infinity_depth1(e2_form()) == 0
    assert n_infinity_depth1(gap_form(36)) == 1
    for k in (6, 12, 18):
        f = extremal_form(k, 3 * k + 30)
        assert n_infinity_depth1(f) == k // 6 == count_zeros(f, math.inf).n_value


def test_reducible_rejected():
    f = e2_form() * e4_form() * e6_form() + e4_form() ** 3
    with pytest.raises(NotIrreducibleError):
        n_depth1(f, "outer")
    with pytest.raises(DomainError):
        n_depth1(e4_form(), "outer")


@pytest.mark.parametrize("top,low", [
    (e6_form(60), e4_form(60)),
    (delta_form(60), e4_form(60)),
    (delta_form(60), e6_form(60)),
    (e4_form(60) ** 3, e6_form(60)),
    (delta_form(60) * 2, e4_form(60) ** 2),
])
def test_n_mixed_against_oracle(top, low):
    assert n_mixed(top, low) == count_series_zeros(top.expansion + low.expansion).n_value


def test_n_mixed_constant_low():
    assert n_mixed(e4_form(60), constant(1, 60)) == 0


def test_n_mixed_common_zero():
    top = delta_form(60) * e4_form(60)
    low = e6_form(60) * e4_form(60) / 2
    with pytest.raises(CommonZeroError):
        n_mixed(top, low)


def test_pair_sum_examples():
    assert pair_sum(e2_form(), "mid") == 0
    assert pair_sum(e2_form(), "outer") == 1
    e2 = e2_form()
    assert count_zeros(e2, Fraction(3)).n_value + count_zeros(e2, Fraction(-1, 3)).n_value == 1
    assert pair_sum(gap_form(36), "mid") == 6


def test_tables():
    assert known_tables("DEk", 12, "outer") == 2
    assert known_tables("E2", 2, "inner") == 1
    for k in range(4, 17, 2):
        for c in ("outer", "mid", "inner"):
            assert known_tables("DEk", k, c) == n_crit(eisenstein_form(k), c)
    with pytest.raises(ValueError):
        known_tables("E2", 4, "outer")


def test_dimensions_and_bound():
    assert quasimodular_dimension(36) == 7
    assert upper_bound(36) == (6, 7)
    assert max(n_depth1_all(gap_form(36))) <= upper_bound(36)[1]


def test_chebyshev_examples():
    assert chebyshev_counts(1) == (1, 0)
    assert chebyshev_counts(2) == (0, 1)
    assert chebyshev_counts(6) == (2, 1)
    for n in (1, 2, 6, 11):
        assert scan_e2_power(n) == chebyshev_counts(n)


def test_sign_changes():
    assert sign_changes([1, -1, 0, -2, 3]) == 2
