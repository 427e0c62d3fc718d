from __future__ import annotations

import pytest

from valcalc.algebra import DoubleForm, VectorField, divided_power, lie_derivative, space
from valcalc.forms import HwvId, block, hwv_form, valid_ids
from valcalc.repn import (
    NotAnEigenvector,
    Weight,
    abs_weights,
    cartan_fields,
    certify_hwv,
    lambda_km,
    positive_root_fields,
    primitive_weights,
    weight_of,
)
from valcalc.repn import root_field_names


def W(*e):
    return Weight(e)


def test_root_fields():
    assert len(positive_root_fields(2)) == 0
    assert root_field_names(4) == ["e1-e2", "e1+e2"]
    assert root_field_names(5) == ["e1-e2", "e1+e2", "e1", "e2"]
    assert len(positive_root_fields(7)) == 9


def test_cartan_action():
    sp = space(3)
    H1 = cartan_fields(3)[0]
    z1b = DoubleForm.var(sp, sp.zeta_var(1))
    assert lie_derivative(H1, z1b) == z1b
    assert lie_derivative(H1, z1b ** 4) == (z1b ** 4).scale(4)
    dz1 = DoubleForm.left_gen(sp, sp.dz_gen(0))
    assert lie_derivative(H1, dz1) == -dz1


def test_weights_of_simple_forms():
    for n in (2, 3, 4, 5):
        sp = space(n)
        z1b = DoubleForm.var(sp, sp.zeta_var(1))
        assert weight_of(z1b ** 3) == Weight((3,) + (0,) * (n // 2 - 1))
        assert weight_of(block(sp, "gamma", range(n))) == Weight((0,) * (n // 2))
    sp = space(4)
    assert weight_of(DoubleForm.var(sp, sp.zeta_var(0))) == W(-1, 0)
    with pytest.raises(NotAnEigenvector):
        weight_of(DoubleForm.var(sp, sp.zeta_var(0)) + DoubleForm.var(sp, sp.zeta_var(1)))


def _shift_field(sp, a, b):
    """z_a d/dz_b + zeta_a d/dzeta_b."""
    return VectorField(sp, {sp.dz_gen(b): DoubleForm.var(sp, sp.z_var(a)),
                            sp.dzeta_gen(b): DoubleForm.var(sp, sp.zeta_var(a))})


@pytest.mark.parametrize("n, I", [(4, [0, 1, 2]), (5, [0, 3, 4]), (3, [1])])
def test_top_blocks_are_invariant(n, I):
    sp = space(n)
    q = len(I)
    blocks = [divided_power(block(sp, "dzeta", I), q), divided_power(block(sp, "dz", I), q),
              block(sp, "zeta", I) * divided_power(block(sp, "dzeta", I), q - 1)]
    assert all(not b.is_zero() for b in blocks)
    for a in I:
        for b in range(n):
            if a == b:
                continue
            Z = _shift_field(sp, a, b)
            for blk in blocks:
                assert lie_derivative(Z, blk).is_zero()


@pytest.mark.parametrize("id, expected", [
    ((2, 1, 1, 2), W(2)),
    ((4, 2, 2, 3), W(3, 2)),
    ((4, 2, -2, 2), W(2, -2)),
    ((5, 3, 2, 4), W(4, 2)),
    ((6, 3, -3, 2), W(2, 2, -2)),
])
def test_certified_weights(id, expected):
    assert certify_hwv(id) == expected
    assert lambda_km(id[0], id[2], id[3]) == expected


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_certify_grid(n):
    for i in valid_ids(n, range(2, 5)):
        assert certify_hwv(i) == lambda_km(n, i.k, i.m)
        assert certify_hwv(i).is_dominant(n) or n == 2


def test_non_highest_vector_is_rejected():
    sp = space(4)
    X = positive_root_fields(4)[0]
    # zeta_2b has weight e2, and e1 - e2 raises it to zeta_1b
    w = DoubleForm.var(sp, sp.zeta_var(3))
    assert weight_of(w) == W(0, 1)
    assert lie_derivative(X, w) == DoubleForm.var(sp, sp.zeta_var(1))


def test_abs_weights():
    assert abs_weights(4, 1, 3) == {W(0, 0), W(2, 0), W(3, 0)}
    assert abs_weights(4, 2, 2) == {W(0, 0), W(2, 0), W(2, 2), W(2, -2)}
    assert abs_weights(5, 2, 2) == {W(0, 0), W(2, 0), W(2, 2)}


def test_primitive_weights():
    assert primitive_weights(4, 2, 2) == {W(2, 2), W(2, -2)}
    assert primitive_weights(4, 1, 3) == {W(2, 0), W(3, 0)}
    assert primitive_weights(6, 3, 2) == {W(2, 2, 2), W(2, 2, -2)}


def test_dominance():
    assert W(3, 2).is_dominant(4) and W(2, -2).is_dominant(4)
    assert not W(2, -2).is_dominant(5)
    assert not W(2, 3).is_dominant(4)


def test_hwv_form_weight_matches_id():
    assert weight_of(hwv_form(HwvId(3, 1, 1, 4))) == W(4)
