from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import ball_volume, monomial_moment, relative_error, sphere_volume
from valcalc.algebra import DoubleForm, space
from valcalc.forms import block
from valcalc.scalar import (
    I,
    ONE,
    PI,
    SQRT2,
    ExactScalar,
    as_scalar,
    binomial,
    parse_scalar,
    render_scalar,
    sphere_integral_monomial,
    sphere_integral_poly,
    trig_moment,
    unit_ball_volume,
    unit_sphere_volume,
)


def test_field_operations():
    assert SQRT2 * SQRT2 == 2
    assert (I * PI).conjugate() == -(I * PI)
    assert (I ** 2) * (2 ** (4 - 2)) == -4
    x = (as_scalar(3) + SQRT2) * PI
    assert x * x.inverse() == ONE


def test_inverse_of_mixed_pi_powers_is_refused():
    with pytest.raises(ValueError):
        (ONE + PI).inverse()


@pytest.mark.parametrize("n, expected", [(0, ONE), (2, PI), (3, PI * Fraction(4, 3))])
def test_ball_volume_values(n, expected):
    assert unit_ball_volume(n) == expected


@pytest.mark.parametrize("n, expected", [(0, as_scalar(2)), (1, 2 * PI), (3, 2 * PI * PI)])
def test_sphere_volume_values(n, expected):
    assert unit_sphere_volume(n) == expected


@pytest.mark.parametrize("n", range(0, 14))
def test_volumes_against_gamma(n):
    assert relative_error(complex(unit_ball_volume(n)), ball_volume(n)) < 1e-13
    assert relative_error(complex(unit_sphere_volume(n)), sphere_volume(n + 1)) < 1e-13


def test_volume_recurrence():
    for n in range(2, 12):
        assert unit_ball_volume(n) == unit_ball_volume(n - 2) * PI * Fraction(2, n)
        assert unit_sphere_volume(n) == unit_ball_volume(n + 1) * (n + 1)


@pytest.mark.parametrize("a, b, expected", [(0, 0, PI / 2), (2, 0, PI / 4), (1, 1, as_scalar(Fraction(1, 2)))])
def test_trig_moment_values(a, b, expected):
    assert trig_moment(a, b) == expected


def test_trig_moment_against_quadrature():
    from scipy.integrate import quad

    for a in range(6):
        for b in range(6):
            ref, _ = quad(lambda t: math.cos(t) ** a * math.sin(t) ** b, 0, math.pi / 2, epsabs=1e-14)
            assert relative_error(complex(trig_moment(a, b)), ref) < 1e-10


def test_sphere_monomials():
    assert sphere_integral_monomial((0, 0)) == 2 * PI
    assert sphere_integral_monomial((1, 2, 0)) == 0
    for n in range(2, 7):
        alpha = (2,) + (0,) * (n - 1)
        assert sphere_integral_monomial(alpha) == unit_sphere_volume(n - 1) / n


@pytest.mark.parametrize("alpha", [(2, 2), (4, 0, 2), (2, 2, 2, 0), (0, 4, 0, 2, 2), (2, 0, 2, 0, 2, 2)])
def test_sphere_monomials_against_quadrature(alpha):
    assert relative_error(complex(sphere_integral_monomial(alpha)), monomial_moment(alpha)) < 1e-9


def test_sphere_polynomials():
    for n in range(2, 7):
        sp = space(n)
        assert sphere_integral_poly(DoubleForm.one(sp)) == unit_sphere_volume(n - 1)
        assert sphere_integral_poly(block(sp, "nu", range(n))) == unit_sphere_volume(n - 1)
    sp = space(2)
    zz = DoubleForm.var(sp, sp.zeta_var(1)) * DoubleForm.var(sp, sp.zeta_var(0))
    assert sphere_integral_poly(zz) == PI


def test_binomial_convention():
    assert binomial(4, 2) == 6
    assert binomial(-1, 0) == 0
    assert binomial(2, 3) == 0
    assert binomial(3, -1) == 0
    assert binomial(0, 0) == 1


@pytest.mark.parametrize("x, text", [(PI, "pi"), (-PI * Fraction(3, 8), "-3/8*pi"), (I * SQRT2, "i*2^(1/2)")])
def test_render(x, text):
    assert render_scalar(x) == text
    assert parse_scalar(text) == x


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


@st.composite
def scalars(draw):
    out = ExactScalar()
    for _ in range(draw(st.integers(1, 3))):
        q0, q1 = draw(rationals), draw(rationals)
        out = out + ExactScalar.term(q0, q1, b=draw(st.integers(-3, 3)), c=draw(st.integers(-3, 3)))
    return out


@given(scalars())
def test_render_parse_round_trip(x):
    assert parse_scalar(render_scalar(x)) == x


@given(scalars(), scalars())
def test_ring_laws(x, y):
    assert x * y == y * x
    assert (x + y).conjugate() == x.conjugate() + y.conjugate()
    assert abs(complex(x * y) - complex(x) * complex(y)) <= 1e-9 * (1 + abs(complex(x)) * abs(complex(y)))


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_scalar("2*pie")
