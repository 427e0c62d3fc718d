from __future__ import annotations

from fractions import Fraction

import pytest

from valcalc.forms import HwvId, valid_ids
from valcalc.operators import (
    MultiplierTable,
    SolverError,
    fourier_closed_form,
    fourier_solver,
    growth_ratios,
    hl_closed_form,
    hl_eigenvalue,
    hodge_riemann_report,
    hodge_riemann_value,
    lefschetz_closed_form,
    lefschetz_coeff,
)
from valcalc.pairing import pairing_constant
from valcalc.scalar import I, PI, ZERO


@pytest.mark.parametrize("key, value", [
    ((2, 1, 1, 2), -1),
    ((4, 1, 1, 3), -I),
    ((4, 2, -2, 2), -1),
    ((5, 2, 2, 4), -1),
    ((6, 3, -3, 3), I),
])
def test_fourier_values(key, value):
    table = fourier_solver(7, key[3])
    assert table[key] == value
    assert table[key[:3]] == value


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_fourier_solver_determines_everything(m):
    table = fourier_solver(7, m)
    ids = [i for n in range(2, 8) for i in valid_ids(n, [m])]
    assert isinstance(table, MultiplierTable) and len(table) == len(ids)
    for i in ids:
        assert table[i] == fourier_closed_form(*i)
        dual = table[HwvId(i.n, i.n - i.r, i.k, m)]
        assert table[i] * dual == (-1) ** m
    assert table.provenance[HwvId(2, 1, 1, m)] == "base"
    assert {p for _, _, p in table.rows()} <= {"base", "dimension", "even dimension", "reflection", "plancherel"}


def test_fourier_solver_rejects_bad_input():
    with pytest.raises(ValueError):
        fourier_solver(1, 2)
    assert issubclass(SolverError, ValueError)


def test_lefschetz_values():
    assert lefschetz_coeff(HwvId(3, 2, 1, 2)) == PI / 2
    for m in (2, 3, 4):
        assert lefschetz_coeff(HwvId(4, 2, 2, m)) == ZERO
        assert lefschetz_coeff(HwvId(4, 2, -2, m)) == ZERO


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_lefschetz_kernel(n):
    for i in valid_ids(n, [2, 3, 4]):
        c = lefschetz_coeff(i)
        assert c == lefschetz_closed_form(*i)
        assert c.is_zero() == (i.k == i.r or i.k < 0)


@pytest.mark.parametrize("key, value", [((3, 1, 1, 2), -PI / 2), ((4, 1, 1, 2), -PI * Fraction(4, 3))])
def test_hard_lefschetz_eigenvalues(key, value):
    assert hl_eigenvalue(*key) == value


def test_hard_lefschetz_domain():
    with pytest.raises(ValueError):
        hl_eigenvalue(5, 3, 1, 2)
    with pytest.raises(ValueError):
        hl_eigenvalue(5, 1, 2, 2)


def test_hl_eigenvalues_nonzero():
    for n in range(2, 8):
        for r in range(1, n // 2 + 1):
            for i in valid_ids(n, range(2, 7), r=r):
                e = hl_eigenvalue(n, r, i.k, i.m)
                assert not e.is_zero() and e == hl_closed_form(n, r, i.k, i.m)


@pytest.mark.parametrize("key, value", [((2, 1, 1, 2), PI * Fraction(3, 8)), ((4, 2, 2, 2), 1), ((4, 2, -2, 2), 1)])
def test_hodge_riemann_values(key, value):
    assert hodge_riemann_value(*key) == value


def test_hodge_riemann_middle_degree():
    for n in (2, 4, 6):
        l = n // 2
        for m in (2, 3, 4):
            q = hodge_riemann_value(n, l, l, m)
            assert q == pairing_constant(HwvId(n, l, l, m)) * (-1) ** l
            if n >= 4:
                assert hodge_riemann_value(n, l, -l, m) == q


def test_hodge_riemann_rejects_non_primitive():
    with pytest.raises(ValueError):
        hodge_riemann_value(5, 2, 1, 2)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_hodge_riemann_reports(n):
    for r in range(1, n // 2 + 1):
        rep = hodge_riemann_report(n, r, 6)
        assert rep.ok, [(i.id, i.label, i.computed) for i in rep.failures()]
        assert any(i.label == "Q > 0" for i in rep.items)


def test_growth_ratios():
    for n, r, k in [(4, 1, 1), (7, 2, 2), (6, 3, 3), (5, 1, 1)]:
        ratios = growth_ratios(n, r, k)
        assert len(ratios) == 10
        assert max(abs(x - 1) for x in ratios) <= 0.05
