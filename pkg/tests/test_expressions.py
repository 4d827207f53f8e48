from fractions import Fraction

import pytest

from qmzeros.expressions import FormParseError, parse_form, parse_linear_family
from qmzeros.rings import (d_form, delta_form, e2_form, e4_form, e6_form, eisenstein_form, extremal_form,
                           gap_form, serre_theta)

O = 30


def test_generators():
    assert parse_form("E2", O) == e2_form(O)
    assert parse_form("E4", O) == e4_form(O)
    assert parse_form("E10", O) == eisenstein_form(10, O)
    assert parse_form("Delta", O) == delta_form(O)


def test_arithmetic():
    got = parse_form("3*E2^2 - E4/2 + E2*E2", O)
    e2, e4 = e2_form(O), e4_form(O)
    assert got == e2 * e2 * 4 - e4 * Fraction(1, 2)
    assert parse_form("E2**3", O) == e2 ** 3
    assert parse_form("-(E6)", O) == -e6_form(O)
    assert parse_form("(1/3)*E4 + E4*2/3", O) == e4


def test_operators():
    assert parse_form("D(Delta)", O) == d_form(delta_form(O))
    assert parse_form("theta(E4)", O) == serre_theta(e4_form(O))
    assert list(parse_form("D(E2)", O).expansion.coeffs[:3]) == [0, -24, -144]


def test_j_cancels():
    assert parse_form("j*Delta", O) == e4_form(O) ** 3
    assert parse_form("j*Delta^2 - E4^3*Delta", O).is_zero()
    f = parse_form("(j - 744)*Delta*E4", O)
    assert f == e4_form(O) ** 4 - delta_form(O) * e4_form(O) * 744
    assert parse_form("Delta*(1 + j)", O) == delta_form(O) + e4_form(O) ** 3


def test_presets():
    assert parse_form("gap:36", 60) == gap_form(36, 60)
    assert parse_form("extremal:12", 40) == extremal_form(12, 40)
    with pytest.raises(FormParseError):
        parse_form("extremal:8", 40)
    assert parse_form("Ek':12", 40) == d_form(eisenstein_form(12, 40))
    assert parse_form("E_k':4", 40) == d_form(e4_form(40))


def test_default_order():
    f = parse_form("E2*E4")
    assert f.order >= 20


@pytest.mark.parametrize("text", ["E3", "E2 + 1", "j + 1", "E2 + E4", "E4/E2", "E4^(1/2)", "E4 + 0.5*E4", "foo", "j",
                                  "D(j)", "3", "E2(", "E4^-1", "Ek':3", "max(E4)"])
def test_errors(text):
    with pytest.raises(FormParseError):
        parse_form(text, O)


def test_error_position():
    with pytest.raises(FormParseError) as info:
        parse_form("E4 + foo", O)
    assert info.value.position == 5 and "column 5" in str(info.value)


def test_adding_zero_scalar():
    assert parse_form("E4 + 0", O) == e4_form(O)


def test_linear_family():
    base, direction = parse_linear_family("E4 - t*E2^2", O)
    assert base == e4_form(O) and direction == -(e2_form(O) ** 2)
    with pytest.raises(FormParseError, match="not linear"):
        parse_linear_family("E4 - t*t*E2^2", O)
