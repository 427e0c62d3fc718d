"""Infinitesimal so(n) action on double forms: weights and highest weight vectors."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct

from .algebra import DoubleForm, Space, VectorField, lie_derivative, space
from .forms import HwvId, hwv_form
from .scalar import ExactScalar

__all__ = [
    "Weight",
    "lambda_km",
    "positive_root_fields",
    "cartan_fields",
    "weight_of",
    "certify_hwv",
    "abs_weights",
    "primitive_weights",
    "NotAnEigenvector",
]


class NotAnEigenvector(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Weight:
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __repr__(self):
        return "(" + ",".join(map(str, self.entries)) + ")"

    def is_dominant(self, n: int) -> bool:
        e = self.entries
        if len(e) != n // 2:
            return False
        if n % 2:
            return all(a >= b for a, b in zip(e, e[1:])) and (not e or e[-1] >= 0)
        if len(e) < 2:
            return True
        return all(a >= b for a, b in zip(e[:-2], e[1:-1])) and e[-2] >= abs(e[-1])


def lambda_km(n: int, k: int, m: int) -> Weight:
    """(m, 2, ..., 2, 0, ..., 0) with |k| nonzero entries; the last one is -2 when k < 0."""
    l = n // 2
    if k < 0:
        if n % 2 or k != -l:
            raise ValueError("negative k only as k = -l in even dimension")
        if l == 1:
            return Weight((-m,))
        return Weight((m,) + (2,) * (l - 2) + (-2,))
    if not 1 <= k <= l:
        raise ValueError(f"k={k} out of range for n={n}")
    return Weight((m,) + (2,) * (k - 1) + (0,) * (l - k))


# -- fundamental vector fields ----------------------------------------------------------


def _pair_field(sp: Space, a: int, b: int, c: int, d: int) -> VectorField:
    """z_a d/dz_b - z_c d/dz_d, and the same on zeta."""
    comps: dict[int, DoubleForm] = {}
    for var, gen in ((sp.z_var, sp.dz_gen), (sp.zeta_var, sp.dzeta_gen)):
        comps[gen(b)] = DoubleForm.var(sp, var(a))
        comps[gen(d)] = -DoubleForm.var(sp, var(c))
    return VectorField(sp, comps)


@lru_cache(maxsize=None)
def _root_fields(n: int) -> tuple[tuple[str, VectorField], ...]:
    if n < 2:
        raise ValueError("n must be at least 2")
    sp = space(n)
    l = sp.l
    pos = lambda i: 2 * (i - 1)
    bar = lambda i: 2 * (i - 1) + 1
    out = []
    for i in range(1, l + 1):
        for j in range(i + 1, l + 1):
            out.append((f"e{i}-e{j}", _pair_field(sp, bar(i), bar(j), pos(j), pos(i))))
            out.append((f"e{i}+e{j}", _pair_field(sp, bar(i), pos(j), bar(j), pos(i))))
    if n % 2:
        last = 2 * l
        for i in range(1, l + 1):
            out.append((f"e{i}", _pair_field(sp, bar(i), last, last, pos(i))))
    return tuple(out)


def positive_root_fields(n: int) -> list[VectorField]:
    return [X for _, X in _root_fields(n)]


def root_field_names(n: int) -> list[str]:
    return [name for name, _ in _root_fields(n)]


@lru_cache(maxsize=None)
def _cartan(n: int) -> tuple[VectorField, ...]:
    if n < 2:
        raise ValueError("n must be at least 2")
    sp = space(n)
    out = []
    for i in range(sp.l):
        p, q = 2 * i, 2 * i + 1
        out.append(_pair_field(sp, q, q, p, p))
    return tuple(out)


def cartan_fields(n: int) -> list[VectorField]:
    return list(_cartan(n))


# -- weights -------------------------------------------------------------------------------


def weight_of(w: DoubleForm, n: int | None = None) -> Weight:
    """Simultaneous eigenvalues of the Cartan fields on ``w``."""
    if w.is_zero():
        raise ValueError("the zero form has no weight")
    n = w.space.n if n is None else n
    if n != w.space.n:
        raise ValueError("dimension does not match the form")
    key, c = next(iter(w.terms.items()))
    entries = []
    for i, H in enumerate(_cartan(n)):
        image = lie_derivative(H, w)
        lam = image.terms.get(key, ExactScalar()) / c
        if not lam.is_rational() or lam.as_fraction().denominator != 1 or image != w.scale(lam):
            raise NotAnEigenvector(f"not an eigenvector of H{i + 1}")
        entries.append(int(lam.as_fraction()))
    return Weight(tuple(entries))


def certify_hwv(id) -> Weight:
    """Check that the form is killed by every positive root field and has weight lambda_{k,m}."""
    if not isinstance(id, HwvId):
        id = HwvId(*id)
    w = hwv_form(id)
    if w.is_zero():
        raise ValueError(f"{tuple(id)}: form vanishes")
    for name, X in _root_fields(id.n):
        if not lie_derivative(X, w).is_zero():
            raise ValueError(f"{tuple(id)}: not annihilated by X_{name}")
    lam = weight_of(w)
    expected = lambda_km(id.n, id.k, id.m)
    if lam != expected:
        raise ValueError(f"{tuple(id)}: weight {lam}, expected {expected}")
    return lam


def abs_weights(n: int, r: int, m_max: int) -> set[Weight]:
    """Highest weights of Val_r (and Val_{n-r}) with first entry bounded by m_max."""
    l = n // 2
    if not 0 <= r <= l:
        raise ValueError(f"r={r} out of range 0..{l}")
    rng = range(-m_max, m_max + 1)
    out = set()
    for e in iproduct(rng, repeat=l):
        if any(e[j] != 0 for j in range(r, l)):
            continue
        if any(abs(e[j]) == 1 for j in range(r)):
            continue
        if l >= 2 and abs(e[1]) > 2:
            continue
        w = Weight(e)
        if w.is_dominant(n):
            out.add(w)
    return out


def primitive_weights(n: int, r: int, m_max: int) -> set[Weight]:
    if r == 0:
        return set()
    return {w for w in abs_weights(n, r, m_max) if w[r - 1] != 0}
