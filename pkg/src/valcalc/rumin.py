"""Rumin differential of the highest weight forms and its supporting identities."""

from __future__ import annotations

from functools import lru_cache

from .algebra import DoubleForm, conjugate, divided_power, exterior_d, reduce_mod_sphere, sphere_equiv, space
from .forms import HwvId, block, hwv_form, index_sets, named_form, omega_display, reflect
from .report import VerificationItem, VerificationReport

__all__ = [
    "rumin_coefficient",
    "rumin_primitive",
    "rumin_rhs",
    "rumin_differential",
    "rumin_residue",
    "verify_rumin_ledger",
    "rumin_identities",
]


def rumin_coefficient(n: int, r: int, k: int, m: int) -> int:
    """c_{r,m} = (-1)^(n+1) (n+m-r-2); equals 2-l-m on the reflected family."""
    return (-1) ** (n + 1) * (n + m - r - 2)


def _zeta1b(sp, e: int) -> DoubleForm:
    return DoubleForm.basis(sp, mono=e * sp.unit(sp.zeta_var(1)))


def _alpha(sp) -> DoubleForm:
    return block(sp, "alpha", range(sp.n))


def rumin_primitive(id: HwvId) -> DoubleForm:
    """omega_{r,k,m} + c_{r,m} zeta_1b^(m-2) theta_{r,k} alpha, dressed by Theta_1."""
    n, r, k, m = id
    sp = space(n)
    c = rumin_coefficient(n, r, k, m)
    return hwv_form(id) + (_zeta1b(sp, m - 2) * named_form("theta", r, k, n) * _alpha(sp)).scale(c)


def rumin_rhs(id: HwvId) -> DoubleForm:
    """The closed form of D omega_{r,k,m}, dressed by Theta_1."""
    n, r, k, m = id
    sp = space(n)
    c = rumin_coefficient(n, r, k, m)
    if k < 0:
        l = n // 2
        a, b = m + l - 1, (-1) ** (l + 1)
    else:
        a, b = m + k - 1, (-1) ** (k + 1) * (n - r - k + 1)
    bracket = named_form("sigma", r, k, n).scale(a) + named_form("tau", r, k, n).scale(b)
    return (_zeta1b(sp, m - 2) * bracket * _alpha(sp)).scale(c)


def _delta(n: int, r: int, k: int) -> DoubleForm:
    if k < 0:
        return reflect(named_form("delta", r, -k, n))
    return named_form("delta", r, k, n)


def rumin_residue(id: HwvId) -> tuple[DoubleForm, DoubleForm]:
    """(exact residue times gamma, predicted value zeta_1b^(m-2)(n+m-r-2)(1-nu) delta gamma)."""
    n, r, k, m = id
    sp = space(n)
    gamma = block(sp, "gamma", range(n))
    nu = block(sp, "nu", range(n))
    residue = (exterior_d(rumin_primitive(id)) - rumin_rhs(id)) * gamma
    predicted = (_zeta1b(sp, m - 2) * (DoubleForm.one(sp) - nu) * _delta(n, r, k) * gamma).scale(n + m - r - 2)
    return residue, predicted


class RuminCertificationError(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def rumin_differential(id) -> DoubleForm:
    """D omega_{r,k,m} in closed form, after certifying it on the sphere bundle."""
    if not isinstance(id, HwvId):
        id = HwvId(*id)
    lhs = exterior_d(rumin_primitive(id))
    rhs = rumin_rhs(id)
    if not sphere_equiv(lhs, rhs):
        raise RuminCertificationError(f"{tuple(id)}: d(omega + c theta alpha) differs from the closed form")
    return rhs


# -- ledger --------------------------------------------------------------------------------


def rumin_identities(n: int, r: int, k: int) -> list[tuple[str, DoubleForm, DoubleForm, str]]:
    """(label, lhs, rhs, mode) for every identity; mode is 'exact' or 'sphere'."""
    if not (1 <= r <= n - 1 and 1 <= k <= min(r, n - r)):
        raise ValueError(f"({n},{r},{k}) outside the admissible range")
    sp = space(n)
    S = index_sets(n, k)
    dp = divided_power
    B = lambda tag, I: block(sp, tag, I)
    C = lambda tag, I: conjugate(block(sp, tag, I))
    sgn = lambda e: (-1) ** (e % 2)
    zero = DoubleForm.zero(sp)
    one = DoubleForm.one(sp)
    delta, theta = named_form("delta", r, k, n), named_form("theta", r, k, n)
    sigma, tau = named_form("sigma", r, k, n), named_form("tau", r, k, n)
    omega = omega_display(n, r, k)
    alpha, gamma, nu = (B(t, range(n)) for t in ("alpha", "gamma", "nu"))
    aK, aKb, aL = (B("alpha", I) for I in (S.K, S.Kbar, S.L))
    gK, gKb, gL = (B("gamma", I) for I in (S.K, S.Kbar, S.L))
    nK, nL = B("nu", S.K), B("nu", S.L)
    dzetaL, dzL, dzJ, dzKb = B("dzeta", S.L), B("dz", S.L), B("dz", S.J), B("dz", S.Kbar)
    cdzetaK = C("dzeta", S.K)
    czK = C("zeta", S.K)
    d = exterior_d
    dz1b = DoubleForm.left_gen(sp, sp.dzeta_gen(1))
    z1b = DoubleForm.var(sp, sp.zeta_var(1))
    out = []

    out.append(("RD01", czK * dp(cdzetaK, k - 1) * B("dzeta", S.Kbar),
                (dp(cdzetaK, k) * B("zeta", S.Kbar)).scale(sgn(k - 1)), "exact"))
    out.append(("RD02", czK * dp(cdzetaK, k - 1) * gKb,
                (dp(cdzetaK, k) * nK).scale(sgn(k - 1)), "exact"))
    out.append(("RD03", delta, (dp(cdzetaK, k) * dp(dzetaL, n - r - k) * dp(dzL, r - k)
                                * dp(dzKb, k)).scale(sgn(k)), "exact"))
    out.append(("RD04", sigma,
                dp(cdzetaK, k) * B("zeta", S.Kbar) * dp(dzetaL, n - r - k) * dp(dzL, r - k) * dp(dzKb, k - 1)
                + dp(cdzetaK, k) * B("zeta", S.L) * dp(dzetaL, n - r - k) * dp(dzL, r - k - 1) * dp(dzKb, k),
                "exact"))
    out.append(("RD05", dp(dzetaL, n - r - k) * dp(dzL, r - k) * aL,
                -(dp(dzetaL, n - r - k - 1) * dp(dzL, r - k + 1) * gL), "exact"))
    out.append(("RD06", B("zeta", S.L) * dp(dzetaL, n - r - k) * dp(dzL, r - k - 1) * aL,
                (dp(dzetaL, n - r - k) * dp(dzL, r - k) * nL).scale(sgn(n - 1))
                - B("zeta", S.L) * dp(dzetaL, n - r - k - 1) * dp(dzL, r - k) * gL, "exact"))
    out.append(("RD07", B("zeta", S.J) * dp(B("dzeta", S.J), n - r - k) * dp(dzJ, r - 1) * d(aL),
                (dp(B("dzeta", S.J), n - r - k) * dp(dzJ, r) * gL).scale(sgn(n - k)), "exact"))
    out.append(("RD08", theta * d(aKb),
                (czK * dp(cdzetaK, k - 1) * dp(dzetaL, n - r - k) * dp(dzJ, r) * gK).scale(sgn(n - k))
                + (dp(cdzetaK, k) * B("zeta", S.L) * dp(dzetaL, n - r - k - 1) * dp(dzJ, r) * gK).scale(sgn(n)),
                "exact"))

    sn = sgn(n)
    vanishing = {
        "a": -(theta * d(aK)) + (sigma * aK).scale(sn),
        "b": delta * nK + (sigma * aKb).scale(sn),
        "c": theta * d(aKb) * gK,
        "d": sigma * gKb,
        "e": delta * gKb,
        "f": delta * nK * gK - theta * d(aKb) * gKb,
        "g": delta * nL * gL + (sigma * aL * gL).scale(sn),
        "h": delta * nK * gL - theta * d(aL) * gKb,
        "i": theta * d(aL) * gL,
        "j": (delta * nL - theta * d(aL) + (sigma * aL).scale(sn)) * gK - theta * d(aKb) * gL,
    }
    for key, form in vanishing.items():
        out.append((f"L({key})", form, zero, "exact"))

    out.append(("RD1", theta * d(alpha), delta + (sigma * alpha).scale(sn), "sphere"))
    out.append(("RD1 off-sphere", (delta * nu - theta * d(alpha) + (sigma * alpha).scale(sn)) * gamma, zero,
                "exact"))
    out.append(("RD2", d(omega), delta.scale(n - r), "exact"))
    out.append(("RD3", dz1b * omega, z1b * delta, "exact"))
    out.append(("RD4", dz1b * theta, z1b * sigma, "exact"))
    out.append(("RD5", d(theta), sigma.scale(k) + tau.scale(sgn(k + 1) * (n - r - k + 1)), "exact"))

    out.append(("LM01", dz1b * sigma, zero, "exact"))
    out.append(("LM02", dz1b * d(theta), -(z1b * d(sigma)), "exact"))
    if k < r:
        for m in (2, 3):
            lhs = DoubleForm.basis(sp, mono=(m - 2) * sp.unit(sp.zeta_var(1))) * d(sigma)
            rhs = d(hwv_form(HwvId(n, r - 1, k, m))) * one
            out.append((f"LM03 m={m}", lhs.scale(n + m - r - 1), rhs.scale(n - r - k + 1), "exact"))
    if k == r:
        out.append(("LM04", d(sigma), zero, "exact"))
    return out


def verify_rumin_ledger(n: int, r: int, k: int) -> VerificationReport:
    rep = VerificationReport(command=f"rumin-ledger {n} {r} {k}", params={"n": n, "r": r, "k": k})
    for label, lhs, rhs, mode in rumin_identities(n, r, k):
        ok = (lhs == rhs) if mode == "exact" else sphere_equiv(lhs, rhs)
        rep.add(VerificationItem.make({"n": n, "r": r, "k": k}, "rumin-ledger", label,
                                      "holds", "holds" if ok else "fails", ok, detail=mode))
    return rep
