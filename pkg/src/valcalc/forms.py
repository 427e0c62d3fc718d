"""Catalog of the named double forms.

Index sets are lists of positions in the ordered index set 1, 1b, ..., l, lb
(, l+1).  Dressed forms carry the right word Theta_1 = Dz_1 ... Dz_n (or
Theta_2 = Dzeta_1 ... Dzeta_n); the plain form is recovered with
:func:`~valcalc.algebra.extract`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import (
    DoubleForm,
    Space,
    conjugate,
    divided_power,
    exterior_d,
    extract,
    space,
    swap_indices,
)

__all__ = [
    "HwvId",
    "IndexSets",
    "index_sets",
    "block",
    "building_block",
    "theta1_word",
    "theta2_word",
    "omega_display",
    "hwv_form",
    "hwv_plain",
    "hwv_split",
    "hwv_zero_witness",
    "valid_ids",
    "named_plain",
    "named_form",
    "reflect",
    "verify_dressings",
    "dressing_checks",
]


@dataclass(frozen=True, order=True)
class HwvId:
    """Parameters (n, r, k, m) of a highest weight form.

    Valid when 1 <= r <= n-1, 1 <= k <= min(r, n-r), m >= 2, or for the
    reflected family n = 2l >= 4, r = l, k = -l.
    """

    n: int
    r: int
    k: int
    m: int

    def __post_init__(self):
        if not HwvId.is_valid(self.n, self.r, self.k, self.m):
            raise ValueError(f"invalid highest weight id {tuple(self)}")

    def __iter__(self):
        return iter((self.n, self.r, self.k, self.m))

    @staticmethod
    def is_valid(n: int, r: int, k: int, m: int) -> bool:
        if n < 2 or m < 2:
            return False
        if n % 2 == 0 and n >= 4 and r == n // 2 and k == -(n // 2):
            return True
        return 1 <= r <= n - 1 and 1 <= k <= min(r, n - r)

    @property
    def reflected(self) -> bool:
        return self.k < 0

    @property
    def parity(self) -> int:
        return self.m % 2

    def as_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "k": self.k, "m": self.m}


def valid_ids(n: int, m_values: Iterable[int], r: int | None = None,
              k: int | None = None) -> list[HwvId]:
    out = []
    for m in m_values:
        for rr in range(1, n):
            for kk in list(range(1, min(rr, n - rr) + 1)) + ([-(n // 2)] if n % 2 == 0 and n >= 4 and rr == n // 2 else []):
                if (r is None or rr == r) and (k is None or kk == k) and HwvId.is_valid(n, rr, kk, m):
                    out.append(HwvId(n, rr, kk, m))
    return sorted(out)


@dataclass(frozen=True)
class IndexSets:
    n: int
    k: int
    K: tuple[int, ...]
    Kbar: tuple[int, ...]
    J: tuple[int, ...]
    L: tuple[int, ...]
    M: tuple[int, ...]
    Mbar: tuple[int, ...]
    all: tuple[int, ...]


@lru_cache(maxsize=None)
def index_sets(n: int, k: int) -> IndexSets:
    """K = {1..k}, J = complement of K, L = J minus Kbar; M = {1..l-1, lb}."""
    sp = space(n)
    l = n // 2
    if k < 0 or k > l:
        raise ValueError(f"k={k} needs 0 <= k <= {l}")
    K = tuple(2 * j for j in range(k))
    Kbar = tuple(sp.bar(p) for p in K)
    J = tuple(p for p in range(n) if p not in K)
    L = tuple(p for p in J if p not in Kbar)
    if n % 2 == 0 and l >= 1:
        M = tuple(2 * j for j in range(l - 1)) + (2 * l - 1,)
    else:
        M = ()
    Mbar = tuple(sp.bar(p) for p in M)
    return IndexSets(n, k, K, Kbar, J, L, M, Mbar, tuple(range(n)))


# -- building blocks -----------------------------------------------------------


def _var(sp: Space, v: int) -> DoubleForm:
    return DoubleForm.var(sp, v)


def block(sp: Space, tag: str, I: Sequence[int]) -> DoubleForm:
    """The literal defining sum of a building block over positions ``I``.

    Tags: ``alpha, gamma, nu`` (functions/1-forms), ``zeta, z, eta, w``
    (right degree one), ``dzeta, dz, deta, dw`` (their (1,1) differentials),
    ``Theta1, Theta2, Theta`` (left words).
    """
    out = DoubleForm.zero(sp)
    if tag == "alpha":
        for i in I:
            out = out + _var(sp, sp.zeta_var(sp.bar(i))) * DoubleForm.left_gen(sp, sp.dz_gen(i))
    elif tag == "gamma":
        for i in I:
            out = out + _var(sp, sp.zeta_var(sp.bar(i))) * DoubleForm.left_gen(sp, sp.dzeta_gen(i))
    elif tag == "nu":
        for i in I:
            out = out + _var(sp, sp.zeta_var(sp.bar(i))) * _var(sp, sp.zeta_var(i))
    elif tag in ("zeta", "z", "eta", "w"):
        v = sp.zeta_var if tag in ("zeta", "eta") else sp.z_var
        for i in I:
            h = i if tag in ("zeta", "z") else sp.n + i
            out = out + _var(sp, v(i)) * DoubleForm.right_gen(sp, h)
    elif tag in ("dzeta", "dz", "deta", "dw"):
        return exterior_d(block(sp, tag[1:], I))
    elif tag == "Theta1":
        return DoubleForm.left_word(sp, [sp.dz_gen(i) for i in sorted(I)])
    elif tag == "Theta2":
        return DoubleForm.left_word(sp, [sp.dzeta_gen(i) for i in sorted(I)])
    elif tag == "Theta":
        return block(sp, "Theta1", I) * block(sp, "Theta2", I)
    else:
        raise ValueError(f"unknown building block {tag!r}")
    return out


def building_block(tag: str, I: Iterable, n: int) -> DoubleForm:
    """Building block over an index set given by labels (``1``, ``"1b"``, ...)."""
    sp = space(n)
    positions = [sp.position(i) for i in I]
    return block(sp, tag, positions)


def theta1_word(sp: Space, I: Sequence[int] | None = None) -> int:
    """Right mask of Dz_i, i in I (default: all)."""
    I = range(sp.n) if I is None else I
    return sum(1 << i for i in I)


def theta2_word(sp: Space, I: Sequence[int] | None = None) -> int:
    I = range(sp.n) if I is None else I
    return sum(1 << (sp.n + i) for i in I)


def _cbar(sp: Space, tag: str, I) -> DoubleForm:
    return conjugate(block(sp, tag, I))


dp = divided_power


# -- highest weight forms ----------------------------------------------------------


@lru_cache(maxsize=None)
def omega_display(n: int, r: int, k: int) -> DoubleForm:
    """zeta_J (dzeta_J)^[n-r-1] (dz_J)^[r-k] (conj dz_K)^[k]; the k = -l display for k < 0.

    Any ``k >= 1`` is accepted; for ``k > n - r`` the result is zero.
    """
    sp = space(n)
    if k < 0:
        l = n // 2
        if n % 2 or r != l or k != -l:
            raise ValueError("the reflected display needs n = 2l, r = l, k = -l")
        S = index_sets(n, 0)
        return (block(sp, "zeta", S.Mbar) * dp(block(sp, "dzeta", S.Mbar), l - 1)
                * dp(_cbar(sp, "dz", S.M), l))
    S = index_sets(n, min(k, n // 2)) if k <= n // 2 else None
    if S is None:
        # K would exceed the available pairs; the display is zero for degree reasons
        return DoubleForm.zero(sp)
    return (block(sp, "zeta", S.J) * dp(block(sp, "dzeta", S.J), n - r - 1)
            * dp(block(sp, "dz", S.J), r - k) * dp(_cbar(sp, "dz", S.K), k))


def _zeta1b_power(sp: Space, e: int) -> DoubleForm:
    return DoubleForm.basis(sp, mono=e * sp.unit(sp.zeta_var(1)))


@lru_cache(maxsize=None)
def hwv_form(id: HwvId) -> DoubleForm:
    """Theta_1-dressed omega_{r,k,m} = zeta_1b^(m-2) omega_{r,k}."""
    if not isinstance(id, HwvId):
        id = HwvId(*id)
    sp = space(id.n)
    return _zeta1b_power(sp, id.m - 2) * omega_display(id.n, id.r, id.k)


def hwv_plain(id: HwvId) -> DoubleForm:
    sp = space(id.n)
    return extract(hwv_form(id), theta1_word(sp))


def hwv_zero_witness(n: int, r: int, k: int) -> DoubleForm:
    """The display for k > n - r, which vanishes identically."""
    if k <= n - r:
        raise ValueError("zero witness applies only when k > n - r")
    return omega_display(n, r, k)


def hwv_split(n: int, r: int, k: int) -> tuple[DoubleForm, DoubleForm]:
    """The two summands of omega_{r,k} (x) Theta_1 along J = Kbar + L."""
    sp = space(n)
    S = index_sets(n, k)
    dzL = dp(block(sp, "dz", S.L), r - k)
    cK = dp(_cbar(sp, "dz", S.K), k)
    first = (block(sp, "zeta", S.Kbar) * dp(block(sp, "dzeta", S.Kbar), k - 1)
             * dp(block(sp, "dzeta", S.L), n - r - k) * dzL * cK)
    second = (block(sp, "zeta", S.L) * dp(block(sp, "dzeta", S.Kbar), k)
              * dp(block(sp, "dzeta", S.L), n - r - k - 1) * dzL * cK)
    return first, second


# -- delta, theta, sigma, tau ------------------------------------------------------------


@lru_cache(maxsize=None)
def named_form(tag: str, r: int, k: int, n: int) -> DoubleForm:
    """Theta_1-dressed delta, theta, sigma or tau for (r, k); k = -l gives the reflected family."""
    sp = space(n)
    if k < 0:
        l = n // 2
        if n % 2 or r != l or k != -l:
            raise ValueError("reflected forms need n = 2l, r = l, k = -l")
        S = index_sets(n, 0)
        cz, cdz = _cbar(sp, "zeta", S.M), _cbar(sp, "dzeta", S.M)
        tail = dp(block(sp, "dz", S.Mbar), l - 1)
        if tag == "theta":
            return cz * dp(cdz, l - 1) * block(sp, "zeta", S.Mbar) * tail
        if tag == "sigma":
            return dp(cdz, l) * block(sp, "zeta", S.Mbar) * tail
        if tag == "tau":
            return cz * dp(cdz, l - 1) * block(sp, "dzeta", S.Mbar) * tail
        if tag == "omega":
            return omega_display(n, r, k)
        raise ValueError(f"no reflected form {tag!r}")
    if k > n // 2:
        return DoubleForm.zero(sp)
    S = index_sets(n, k)
    dzJ = block(sp, "dz", S.J)
    dzetaJ = block(sp, "dzeta", S.J)
    cz, cdz = _cbar(sp, "zeta", S.K), _cbar(sp, "dzeta", S.K)
    if tag == "delta":
        return dp(dzetaJ, n - r) * dp(dzJ, r - k) * dp(_cbar(sp, "dz", S.K), k)
    if tag == "theta":
        return cz * dp(cdz, k - 1) * block(sp, "zeta", S.J) * dp(dzetaJ, n - r - k) * dp(dzJ, r - 1)
    if tag == "sigma":
        return dp(cdz, k) * block(sp, "zeta", S.J) * dp(dzetaJ, n - r - k) * dp(dzJ, r - 1)
    if tag == "tau":
        return cz * dp(cdz, k - 1) * dp(dzetaJ, n - r - k + 1) * dp(dzJ, r - 1)
    if tag == "omega":
        return omega_display(n, r, k)
    raise ValueError(f"unknown named form {tag!r}")


def named_plain(tag: str, r: int, k: int, n: int) -> DoubleForm:
    sp = space(n)
    return extract(named_form(tag, r, k, n), theta1_word(sp))


# -- reflection ------------------------------------------------------------------


def reflect(w: DoubleForm) -> DoubleForm:
    """Pullback by the reflection x_n -> -x_n: swaps l and lb in every slot."""
    sp = w.space
    if sp.n % 2:
        raise ValueError("reflect needs even n")
    l = sp.n // 2
    return swap_indices(w, 2 * l - 2, 2 * l - 1)


# -- alternative dressings -----------------------------------------------------------


def _theta2_plain(expr: DoubleForm) -> DoubleForm:
    return extract(expr, theta2_word(expr.space))


def dressing_checks(n: int, r: int, k: int) -> dict[str, bool]:
    """Each alternative dressing against the defining one, by name."""
    sp = space(n)
    S = index_sets(n, k)
    W1 = theta1_word(sp)
    out: dict[str, bool] = {}

    first, second = hwv_split(n, r, k)
    out["omega split"] = first + second == omega_display(n, r, k)

    # conjugate omega, dressed by Theta_1
    cb = lambda tag, I: _cbar(sp, tag, I)
    dzK = dp(block(sp, "dz", S.K), k)
    rhs = (cb("zeta", S.Kbar) * dp(cb("dzeta", S.Kbar), k - 1) * dp(cb("dzeta", S.L), n - r - k)
           * dp(cb("dz", S.L), r - k) * dzK
           + cb("zeta", S.L) * dp(cb("dzeta", S.Kbar), k) * dp(cb("dzeta", S.L), n - r - k - 1)
           * dp(cb("dz", S.L), r - k) * dzK)
    out["conj omega dressing"] = extract(conjugate(omega_display(n, r, k)), W1) == extract(rhs, W1)

    # delta with the K-bar dressing
    rhs = (dp(cb("dzeta", S.K), k) * dp(block(sp, "dzeta", S.L), n - r - k)
           * dp(block(sp, "dz", S.L), r - k) * dp(block(sp, "dz", S.Kbar), k)).scale((-1) ** k)
    out["delta dressing"] = rhs == named_form("delta", r, k, n)

    # sigma split over Kbar and L
    rhs = (dp(cb("dzeta", S.K), k) * block(sp, "zeta", S.Kbar) * dp(block(sp, "dzeta", S.L), n - r - k)
           * dp(block(sp, "dz", S.L), r - k) * dp(block(sp, "dz", S.Kbar), k - 1)
           + dp(cb("dzeta", S.K), k) * block(sp, "zeta", S.L) * dp(block(sp, "dzeta", S.L), n - r - k)
           * dp(block(sp, "dz", S.L), r - k - 1) * dp(block(sp, "dz", S.Kbar), k))
    out["sigma split"] = rhs == named_form("sigma", r, k, n)

    # sigma_{n-r,k} and tau_{n-r,k} dressed by Theta_2 (eta / w blocks)
    s = n - r
    if 1 <= k <= min(s, n - s):
        deta_K = cb("deta", S.K)
        sig2 = (dp(deta_K, k) * block(sp, "eta", S.Kbar) * dp(block(sp, "deta", S.L), r - k)
                * dp(block(sp, "dw", S.Kbar), k - 1) * dp(block(sp, "dw", S.L), n - r - k)
                + dp(deta_K, k) * block(sp, "eta", S.L) * dp(block(sp, "deta", S.L), r - k)
                * dp(block(sp, "dw", S.Kbar), k) * dp(block(sp, "dw", S.L), n - r - k - 1))
        out["sigma Theta2 dressing"] = _theta2_plain(sig2) == named_plain("sigma", s, k, n)
        tau2 = (cb("eta", S.K) * dp(deta_K, k - 1) * dp(block(sp, "deta", S.L), r - k + 1)
                * dp(block(sp, "dw", S.Kbar), k) * dp(block(sp, "dw", S.L), n - r - k - 1)
                + (dp(deta_K, k) * block(sp, "eta", S.Kbar) * dp(block(sp, "deta", S.L), r - k)
                   * dp(block(sp, "dw", S.Kbar), k - 1) * dp(block(sp, "dw", S.L), n - r - k)).scale((-1) ** (k - 1)))
        out["tau Theta2 dressing"] = _theta2_plain(tau2) == named_plain("tau", s, k, n)
    return out


def verify_dressings(n: int, r: int, k: int) -> bool:
    return all(dressing_checks(n, r, k).values())
