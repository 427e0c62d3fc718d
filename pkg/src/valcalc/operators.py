"""Fourier multipliers, the Lefschetz operator and the Hodge-Riemann form on highest weight vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import DoubleForm, VectorField, lie_derivative, sphere_equiv, space
from .forms import HwvId, valid_ids
from .pairing import normalization, pairing_constant
from .repn import abs_weights, lambda_km, primitive_weights
from .report import VerificationItem, VerificationReport
from .rumin import rumin_differential
from .scalar import ONE, ZERO, ExactScalar, I, as_scalar, unit_ball_volume

__all__ = [
    "MultiplierTable",
    "fourier_solver",
    "fourier_closed_form",
    "reeb_field",
    "lefschetz_coeff",
    "lefschetz_closed_form",
    "hl_eigenvalue",
    "hl_closed_form",
    "hodge_riemann_value",
    "hodge_riemann_report",
    "growth_ratios",
    "SolverError",
    "CertificationError",
]


class SolverError(ValueError):
    pass


class CertificationError(ArithmeticError):
    pass


# -- Fourier multipliers ---------------------------------------------------------------------


@dataclass
class MultiplierTable:
    m: int
    n_max: int
    entries: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def __getitem__(self, key) -> ExactScalar:
        if not isinstance(key, HwvId):
            key = HwvId(*key) if len(key) == 4 else HwvId(*key, self.m)
        return self.entries[key]

    def __contains__(self, key) -> bool:
        return key in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def rows(self) -> list[tuple[HwvId, ExactScalar, str]]:
        return [(i, self.entries[i], self.provenance[i]) for i in sorted(self.entries)]


def fourier_closed_form(n: int, r: int, k: int, m: int) -> ExactScalar:
    if k < 0:
        return (I ** m) * ((-1) ** (n // 2))
    return (I ** m) * ((-1) ** (k - 1))


def _ids_for(n_max: int, m: int) -> list[HwvId]:
    out = []
    for n in range(2, n_max + 1):
        out.extend(valid_ids(n, [m]))
    return out


def _constraints(n_max: int, m: int):
    """Each constraint is (name, target, source, factor) meaning f[target] = factor * f[source],
    or (name, target, source, "inverse") for the Plancherel relation f[target] f[source] = (-1)^m."""
    sign_m = (-1) ** m
    out = []
    for n in range(3, n_max + 1):
        for r in range(1, n - 1):
            for k in range(1, min(r, n - r - 1) + 1):
                a, b = HwvId(n, r, k, m), HwvId(n - 1, r, k, m)
                out.append(("dimension", a, b, ONE))
                out.append(("dimension", b, a, ONE))
        if n % 2 == 0:
            l = n // 2
            a, b = HwvId(n, l, l, m), HwvId(n - 1, l, l - 1, m)
            out.append(("even dimension", a, b, -ONE))
            out.append(("even dimension", b, a, -ONE))
            if l >= 2:
                c = HwvId(n, l, -l, m)
                out.append(("reflection", c, a, -ONE))
                out.append(("reflection", a, c, -ONE))
    for n in range(2, n_max + 1):
        for r in range(1, n):
            for k in range(1, min(r, n - r) + 1):
                out.append(("plancherel", HwvId(n, n - r, k, m), HwvId(n, r, k, m), as_scalar(sign_m)))
        if n % 2 == 0 and n >= 4:
            l = n // 2
            c = HwvId(n, l, -l, m)
            out.append(("plancherel", c, c, as_scalar(sign_m)))
    return out


@lru_cache(maxsize=None)
def fourier_solver(n_max: int, m: int) -> MultiplierTable:
    """Propagate the base value i^m through the functional equations until every id is fixed."""
    if n_max < 2 or m < 2:
        raise ValueError("need n_max >= 2 and m >= 2")
    table = MultiplierTable(m, n_max)
    base = HwvId(2, 1, 1, m)
    table.entries[base] = I ** m
    table.provenance[base] = "base"
    cons = _constraints(n_max, m)

    def value(name, source, factor):
        if name == "plancherel":
            return factor / table.entries[source]
        return factor * table.entries[source]

    changed = True
    while changed:
        changed = False
        for name, target, source, factor in cons:
            if source in table.entries and target not in table.entries:
                table.entries[target] = value(name, source, factor)
                table.provenance[target] = name
                changed = True
    missing = [i for i in _ids_for(n_max, m) if i not in table.entries]
    if missing:
        raise SolverError(f"undetermined ids: {[tuple(i) for i in missing]}")
    for name, target, source, factor in cons:
        if table.entries[target] != value(name, source, factor):
            raise SolverError(f"{name} constraint inconsistent at {tuple(target)}")
    for i, v in table.entries.items():
        if v != fourier_closed_form(*i):
            raise SolverError(f"{tuple(i)}: propagated {v} differs from the closed form")
    return table


# -- Lefschetz operator ------------------------------------------------------------------------


@lru_cache(maxsize=None)
def reeb_field(n: int) -> VectorField:
    """T = sum_i zeta_i d/dz_i."""
    sp = space(n)
    return VectorField(sp, {sp.dz_gen(p): DoubleForm.var(sp, sp.zeta_var(p)) for p in range(n)})


def lefschetz_closed_form(n: int, r: int, k: int, m: int) -> ExactScalar:
    if k < 0 or k >= r:
        return ZERO
    return unit_ball_volume(n + m - r - 1) / unit_ball_volume(n + m - r - 2) * (n - r - k + 1)


@lru_cache(maxsize=None)
def lefschetz_coeff(id) -> ExactScalar:
    """c with Lambda phi_{r,k,m} = c phi_{r-1,k,m}, certified through L_T D omega on the sphere bundle."""
    if not isinstance(id, HwvId):
        id = HwvId(*id)
    n, r, k, m = id
    lhs = lie_derivative(reeb_field(n), rumin_differential(id))
    if k < 0 or k == r:
        if not sphere_equiv(lhs, DoubleForm.zero(lhs.space)):
            raise CertificationError(f"{tuple(id)}: L_T D omega does not vanish")
        return ZERO
    c = Fraction((n + m - r - 2) * (n - r - k + 1), n + m - r - 1)
    lower = HwvId(n, r - 1, k, m)
    if not sphere_equiv(lhs, rumin_differential(lower).scale(c)):
        raise CertificationError(f"{tuple(id)}: L_T D omega is not {c} D omega{tuple(lower)}")
    value = normalization(n, r, m) * c / normalization(n, r - 1, m)
    if value != lefschetz_closed_form(*id):
        raise CertificationError(f"{tuple(id)}: coefficient {value} differs from the closed form")
    return value


def hl_closed_form(n: int, r: int, k: int, m: int) -> ExactScalar:
    if k < 0:
        return fourier_closed_form(n, r, k, m)
    ratio = Fraction(math.factorial(n - r - k), math.factorial(r - k))
    return fourier_closed_form(n, r, k, m) * ratio * unit_ball_volume(n + m - r - 2) / unit_ball_volume(m + r - 2)


def _lambda_product(n: int, r: int, k: int, m: int) -> ExactScalar:
    """Coefficient of Lambda^(n-2r) from degree n-r down to degree r."""
    out = ONE
    for j in range(n - r, r, -1):
        out = out * lefschetz_coeff(HwvId(n, j, k, m))
    return out


def hl_eigenvalue(n: int, r: int, k: int, m: int) -> ExactScalar:
    """Eigenvalue of Lambda^(n-2r) composed with the Fourier transform on phi_{r,k,m}."""
    if not 1 <= r <= n // 2:
        raise ValueError("hl_eigenvalue needs 1 <= r <= n/2")
    HwvId(n, r, k, m)
    if k > 0 and k > r:
        raise ValueError("lambda_{k,m} is not in Lambda_r")
    f = fourier_solver(n, m)[HwvId(n, r, k, m)]
    e = f if k < 0 else f * _lambda_product(n, r, k, m)
    if e.is_zero():
        raise CertificationError(f"({n},{r},{k},{m}): zero eigenvalue")
    if e != hl_closed_form(n, r, k, m):
        raise CertificationError(f"({n},{r},{k},{m}): eigenvalue {e} differs from the telescoped formula")
    return e


# -- Hodge-Riemann ------------------------------------------------------------------------------


def hodge_riemann_value(n: int, r: int, k: int, m: int) -> ExactScalar:
    """Q(phi_{n-r,k,m}, phi_{n-r,k,m}) = (-1)^r 2^-(n-2r) (Lambda^(n-2r) coefficient) (conj(phi_{r,k,m}) * phi_{n-r,k,m})."""
    if k > 0 and k != r:
        raise ValueError("only primitive highest weights (k = r or k = -l) are paired")
    P = ONE if k < 0 else _lambda_product(n, r, k, m)
    return pairing_constant(HwvId(n, r, k, m)) * P * Fraction((-1) ** r, 2 ** (n - 2 * r))


def growth_ratios(n: int, r: int, k: int, m_lo: int = 30, m_hi: int = 40) -> list[float]:
    """Ratios of |e_{r,k,m}| m^((n-2r)/2) at consecutive m."""
    vals = [abs(complex(hl_closed_form(n, r, k, m))) * m ** ((n - 2 * r) / 2) for m in range(m_lo, m_hi + 1)]
    return [b / a for a, b in zip(vals, vals[1:])]


def _primitive_ids(n: int, r: int, m_max: int) -> list[HwvId]:
    out = []
    for m in range(2, m_max + 1):
        out.append(HwvId(n, r, r, m))
        if n % 2 == 0 and n >= 4 and r == n // 2:
            out.append(HwvId(n, r, -r, m))
    return out


def hodge_riemann_report(n: int, r: int, m_max: int) -> VerificationReport:
    if not 1 <= r <= n // 2:
        raise ValueError("need 1 <= r <= n/2")
    rep = VerificationReport(command=f"hodge-riemann {n} {r} {m_max}", params={"n": n, "r": r, "m_max": m_max})
    prim = primitive_weights(n, r, m_max)
    for id in _primitive_ids(n, r, m_max):
        q = hodge_riemann_value(*id)
        ok = q.is_single_term() and q.is_real() and q.has_integer_pi_power() and q.is_positive_real()
        rep.add(VerificationItem.make(id, "hodge-riemann", "Q > 0", "positive", q, ok))
        lam = lambda_km(n, id.k, id.m)
        rep.add(VerificationItem.make(id, "hodge-riemann", "weight in Pi_r", "member",
                                      "member" if lam in prim else "missing", lam in prim))
    # hard Lefschetz injectivity on every highest weight of Lambda_r
    for w in sorted(abs_weights(n, r, m_max)):
        if not any(w):
            continue
        m = w[0]
        nz = sum(1 for e in w if e)
        k = -nz if (n % 2 == 0 and w[-1] < 0) else nz
        if m < 2 or (k < 0 and n < 4):
            continue
        e = hl_eigenvalue(n, r, k, m)
        rep.add(VerificationItem.make(HwvId(n, r, k, m), "hodge-riemann", "hard Lefschetz eigenvalue",
                                      hl_closed_form(n, r, k, m), e))
    for k in range(1, r + 1):
        ratios = growth_ratios(n, r, k)
        worst = max(abs(x - 1) for x in ratios)
        rep.add(VerificationItem.make({"n": n, "r": r, "k": k}, "hodge-riemann", "growth m=30..40",
                                      "within 5%", f"max deviation {worst:.4f}", worst <= 0.05))
    rep.sort()
    return rep
