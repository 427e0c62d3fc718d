"""Acceptance run: one PASS/FAIL line per criterion, printed even under output capture."""

from __future__ import annotations

import time
from fractions import Fraction

import pytest

from oracles import quadrature_sphere_integral, relative_error
from properties import property_sweep
from valcalc.forms import HwvId, valid_ids
from valcalc.operators import (
    fourier_closed_form,
    fourier_solver,
    hodge_riemann_report,
    lefschetz_closed_form,
    lefschetz_coeff,
)
from valcalc.pairing import _raw_density, pairing_closed_form, pairing_integral
from valcalc.repn import certify_hwv, lambda_km
from valcalc.rumin import rumin_differential, rumin_residue, verify_rumin_ledger
from valcalc.scalar import PI, sphere_integral_poly
from valcalc.transfer import expected_pullback, expected_pushforward, pullback_transfer, pushforward_transfer


def grid(n_lo, n_hi, m_hi, positive=False):
    out = [i for n in range(n_lo, n_hi + 1) for i in valid_ids(n, range(2, m_hi + 1))]
    return [i for i in out if i.k > 0] if positive else out


@pytest.fixture
def report(capsys):
    def emit(number, title, failures, started, budget_s, extra=""):
        elapsed = time.perf_counter() - started
        ok = not failures and elapsed <= budget_s
        line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'}  {title}  [{elapsed:.1f}s / {budget_s}s]"
        if extra:
            line += f"  {extra}"
        if failures:
            line += f"  failures: {failures[:5]}"
        with capsys.disabled():
            print("\n" + line)
        assert not failures, failures[:10]
        assert elapsed <= budget_s

    return emit


def test_criterion_1_highest_weights(report):
    t0 = time.perf_counter()
    ids = grid(2, 7, 5)
    bad = []
    for i in ids:
        try:
            if certify_hwv(i) != lambda_km(i.n, i.k, i.m):
                bad.append(tuple(i))
        except ValueError as exc:
            bad.append((tuple(i), str(exc)))
    report(1, "highest weight certification", bad, t0, 120, f"{len(ids)} ids")


def test_criterion_2_rumin(report):
    t0 = time.perf_counter()
    bad = []
    triples = sorted({(i.n, i.r, i.k) for i in grid(2, 6, 2, positive=True)})
    for t in triples:
        bad += [(t, it.label) for it in verify_rumin_ledger(*t).failures()]
    ids = grid(2, 6, 5)
    for i in ids:
        try:
            rumin_differential(i)
        except ArithmeticError as exc:
            bad.append(str(exc))
        residue, predicted = rumin_residue(i)
        if residue != predicted:
            bad.append((tuple(i), "residue"))
    report(2, "Rumin ledger and closed form of D omega", bad, t0, 300,
           f"{len(triples)} (n,r,k), {len(ids)} ids")


def test_criterion_3_pairing(report):
    t0 = time.perf_counter()
    ids = grid(2, 6, 5)
    bad = [tuple(i) for i in ids if pairing_integral(i) != pairing_closed_form(*i)]
    spots = {HwvId(2, 1, 1, 2): -PI * Fraction(3, 8), HwvId(3, 1, 1, 2): Fraction(-16, 15), HwvId(4, 2, 2, 2): 1}
    bad += [("spot", tuple(i)) for i, v in spots.items() if pairing_integral(i) != v]
    report(3, "pairing integral equals closed form", bad, t0, 600, f"{len(ids)} ids, 3 spot values")


def test_criterion_4_quadrature(report):
    t0 = time.perf_counter()
    ids = grid(2, 6, 5)
    worst = 0.0
    bad = []
    for i in ids:
        X = _raw_density(i)
        err = relative_error(complex(sphere_integral_poly(X)), quadrature_sphere_integral(X))
        worst = max(worst, err)
        if err > 1e-9:
            bad.append((tuple(i), err))
    report(4, "exact sphere integrals against product quadrature", bad, t0, 600,
           f"{len(ids)} densities, worst relative error {worst:.1e}")


def test_criterion_5_transfer(report):
    t0 = time.perf_counter()
    ids = [i for i in grid(3, 6, 4, positive=True)]
    bad = []
    branches = set()
    for i in ids:
        for fn, exp, tag in ((pullback_transfer, expected_pullback, "pull"),
                             (pushforward_transfer, expected_pushforward, "push")):
            try:
                got = fn(i)
            except ArithmeticError as exc:
                bad.append(str(exc))
                continue
            if got != exp(i):
                bad.append((tag, tuple(i)))
            branches.add((tag, str(got.coefficient)))
    need = {("pull", "1"), ("pull", "1/2"), ("pull", "0"), ("push", "1"), ("push", "-1/2"), ("push", "0")}
    if not need <= branches:
        bad.append(("missing branches", sorted(need - branches)))
    report(5, "pullback and pushforward case values", bad, t0, 180, f"{len(ids)} ids, all 6 branches")


def test_criterion_6_fourier(report):
    t0 = time.perf_counter()
    bad = []
    count = 0
    for m in range(2, 9):
        table = fourier_solver(7, m)
        for i in grid(2, 7, m):
            if i.m != m:
                continue
            count += 1
            if table[i] != fourier_closed_form(*i):
                bad.append(tuple(i))
            if table[i] * table[HwvId(i.n, i.n - i.r, i.k, m)] != (-1) ** m:
                bad.append(("plancherel", tuple(i)))
    report(6, "Fourier multipliers determined by the functional equations", bad, t0, 60, f"{count} entries")


def test_criterion_7_lefschetz(report):
    t0 = time.perf_counter()
    ids = grid(2, 6, 5)
    bad = []
    for i in ids:
        try:
            c = lefschetz_coeff(i)
        except ArithmeticError as exc:
            bad.append(str(exc))
            continue
        if c != lefschetz_closed_form(*i) or c.is_zero() != (i.k == i.r or i.k < 0):
            bad.append(tuple(i))
    report(7, "Lambda via the Reeb Lie derivative", bad, t0, 300, f"{len(ids)} ids")


def test_criterion_8_hodge_riemann(report):
    t0 = time.perf_counter()
    bad = []
    count = 0
    for n in range(2, 8):
        for r in range(1, n // 2 + 1):
            rep = hodge_riemann_report(n, r, 8)
            count += len(rep.items)
            bad += [(it.id, it.label, it.computed) for it in rep.failures()]
    report(8, "hard Lefschetz eigenvalues, Q > 0, growth diagnostic", bad, t0, 60, f"{count} items")


def test_criterion_9_algebra_properties(report):
    t0 = time.perf_counter()
    bad = []
    for n in range(2, 6):
        for law, fails in property_sweep(n, count=50).items():
            if fails:
                bad.append((n, law, fails))
    report(9, "algebra laws on 50 seeded random inputs per n <= 5", bad, t0, 120)
