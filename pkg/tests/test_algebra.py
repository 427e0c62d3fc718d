from __future__ import annotations

import pytest
from hypothesis import given

from conftest import double_forms, vector_fields
from properties import cartan, conjugation, d_squared_vanishes, divided_binomial, leibniz, sign_law
from valcalc.algebra import (
    DoubleForm,
    conjugate,
    divided_power,
    dress,
    exterior_d,
    extract,
    reduce_mod_sphere,
    space,
    sphere_equiv,
    wedge,
)
from valcalc.forms import block, building_block, theta1_word, theta2_word

DIMS = [2, 3, 4, 5]


@pytest.mark.parametrize("n", DIMS)
def test_d_squared(n):
    @given(double_forms(n))
    def check(w):
        assert d_squared_vanishes(w)

    check()


@pytest.mark.parametrize("n", DIMS)
def test_leibniz(n):
    @given(double_forms(n, 2, left_degree=1), double_forms(n, 2))
    def check(a, b):
        assert leibniz(a, b)

    check()


@pytest.mark.parametrize("n", DIMS)
def test_cartan_formula(n):
    @given(vector_fields(n), double_forms(n))
    def check(X, w):
        assert cartan(X, w)

    check()


@pytest.mark.parametrize("n", DIMS)
def test_sign_law(n):
    @given(double_forms(n, 2, 1, 0), double_forms(n, 2, 2, 1), double_forms(n, 2, 1, 1))
    def check(a, b, c):
        assert sign_law(a, b) and sign_law(b, c) and sign_law(a, c)

    check()


@pytest.mark.parametrize("n", DIMS)
def test_conjugation(n):
    @given(double_forms(n), double_forms(n))
    def check(a, b):
        assert conjugation(a, b)

    check()


@pytest.mark.parametrize("n", DIMS)
def test_divided_power_binomial(n):
    @given(double_forms(n, 3, 1, 1), double_forms(n, 3, 1, 1))
    def check(b1, b2):
        assert divided_binomial(b1, b2, 4)

    check()


@pytest.mark.parametrize("n", DIMS)
def test_wedge_associative(n):
    @given(double_forms(n, 2), double_forms(n, 2), double_forms(n, 2))
    def check(a, b, c):
        assert (a * b) * c == a * (b * c)

    check()


def test_odd_generators_square_to_zero():
    sp = space(3)
    dz = DoubleForm.left_gen(sp, sp.dz_gen(0))
    assert (dz * dz).is_zero()


def test_mixed_bidegree_signs():
    sp = space(4)
    J = [1, 2]
    zeta, dzeta, dz = block(sp, "zeta", J), block(sp, "dzeta", J), block(sp, "dz", J)
    assert zeta * dzeta == -(dzeta * zeta)
    assert dzeta * dz == dz * dzeta


def test_divided_power_edge_cases():
    sp = space(3)
    beta = block(sp, "dz", [0, 1])
    assert divided_power(beta, 0) == DoubleForm.one(sp)
    assert divided_power(beta, -1).is_zero()
    assert divided_power(beta, 3).is_zero()
    with pytest.raises(ValueError):
        divided_power(block(sp, "zeta", [0]), 1)


def test_conjugate_coordinates():
    sp = space(2)
    z1 = DoubleForm.var(sp, sp.zeta_var(0))
    assert conjugate(z1) == DoubleForm.var(sp, sp.zeta_var(1))


def test_conjugate_blocks():
    # (dzeta_Kb)^[k] conj(dz_K)^[k] = (-1)^k conj(dzeta_K)^[k] (dz_Kb)^[k]
    for n, K, Kb in [(2, [0], [1]), (4, [0, 2], [1, 3])]:
        sp = space(n)
        k = len(K)
        lhs = divided_power(block(sp, "dzeta", Kb), k) * divided_power(conjugate(block(sp, "dz", K)), k)
        rhs = divided_power(conjugate(block(sp, "dzeta", K)), k) * divided_power(block(sp, "dz", Kb), k)
        assert lhs == rhs.scale((-1) ** k)


def test_d_of_coordinate():
    sp = space(3)
    z = DoubleForm.var(sp, sp.z_var(0))
    assert exterior_d(z) == DoubleForm.left_gen(sp, sp.dz_gen(0))


def test_extract_example():
    sp = space(2)
    E = block(sp, "zeta", [1]) * divided_power(conjugate(block(sp, "dz", [0])), 1)
    expected = -(DoubleForm.var(sp, sp.zeta_var(1)) * DoubleForm.left_gen(sp, sp.dz_gen(1)))
    assert extract(E, theta1_word(sp)) == expected


def test_dress_extract_round_trip():
    sp = space(3)
    w = DoubleForm.var(sp, sp.zeta_var(2)) * DoubleForm.left_gen(sp, sp.dz_gen(1))
    assert extract(dress(w, theta1_word(sp)), theta1_word(sp)) == w
    full = theta1_word(sp) | theta2_word(sp)
    a = dress(w, theta1_word(sp))
    b = dress(DoubleForm.left_gen(sp, sp.dzeta_gen(0)), theta2_word(sp))
    assert extract(a * b, full) == w * DoubleForm.left_gen(sp, sp.dzeta_gen(0))


def test_sphere_reduction():
    for n in (2, 3, 4, 5):
        sp = space(n)
        nu = block(sp, "nu", range(n))
        assert reduce_mod_sphere(nu) == DoubleForm.one(sp)
        assert reduce_mod_sphere(nu * nu) == DoubleForm.one(sp)
        assert sphere_equiv(nu * block(sp, "dz", [0, 1]), block(sp, "dz", [0, 1]))
        assert not sphere_equiv(nu, nu.scale(2))


def test_sphere_reduction_is_idempotent():
    sp = space(4)
    w = (block(sp, "nu", [0, 1]) ** 2) * block(sp, "zeta", [2])
    r = reduce_mod_sphere(w)
    assert reduce_mod_sphere(r) == r


def test_building_block_matches_block():
    sp = space(3)
    assert building_block("alpha", [1, "1b", 2], 3) == block(sp, "alpha", [0, 1, 2])
    assert wedge(block(sp, "alpha", range(3)), DoubleForm.one(sp)) == block(sp, "alpha", range(3))
