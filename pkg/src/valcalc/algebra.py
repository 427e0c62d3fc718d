"""Double-form kernel.

A double form over dimension ``n`` is a finite sum of terms

    coefficient * monomial(z, zeta, c, s) * (left word) (x) (right word)

where the left word is an exterior word in ``dz_i, dzeta_i, dtheta`` and the
right word an exterior word in ``Dz_i, Dzeta_i`` (plus optional extra right
generators used when crossing dimensions).  Left and right words each carry
their own sign, which gives the bigraded rule
``w1 w2 = (-1)^(p p' + q q') w2 w1``.

Encoding
--------
* monomials are Python ints, eight bits of exponent per variable, so that a
  product of monomials is an integer sum;
* exterior words are bit masks; bit order is the canonical generator order;
* index positions ``0 .. n-1`` enumerate 1, 1b, 2, 2b, ..., l, lb (, l+1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

from .scalar import ONE, ZERO, ExactScalar, as_scalar, render_scalar

__all__ = [
    "Space",
    "space",
    "DoubleForm",
    "VectorField",
    "wedge",
    "divided_power",
    "conjugate",
    "exterior_d",
    "contract",
    "lie_derivative",
    "lie_derivative_cartan",
    "extract",
    "dress",
    "reduce_mod_sphere",
    "sphere_equiv",
    "substitute",
]

_BITS = 8
_MASK = (1 << _BITS) - 1


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


_sign_cache: dict[tuple[int, int], int] = {}


def word_sign(a: int, b: int) -> int:
    """Parity of the shuffle bringing word ``a`` followed by ``b`` into order.

    Returns 0 or 1; the words must be disjoint.
    """
    key = (a, b)
    s = _sign_cache.get(key)
    if s is None:
        s = 0
        bb = b
        while bb:
            low = bb & -bb
            y = low.bit_length() - 1
            s += _popcount(a >> (y + 1))
            bb ^= low
        s &= 1
        if len(_sign_cache) < 2_000_000:
            _sign_cache[key] = s
    return s


def _below(mask: int, g: int) -> int:
    """Parity of the number of generators of ``mask`` that precede ``g``."""
    return _popcount(mask & ((1 << g) - 1)) & 1


@dataclass(frozen=True)
class Space:
    """Generators and variables of one double-form algebra.

    ``trig`` adds the fibre coordinate theta with functions c = cos(theta),
    s = sin(theta) and the left generator dtheta.  ``extra_right`` names
    additional right generators appended after the Dz/Dzeta block.
    """

    n: int
    trig: bool = False
    extra_right: tuple[str, ...] = ()

    # -- index set -------------------------------------------------------
    @property
    def l(self) -> int:
        return self.n // 2

    @property
    def positions(self) -> range:
        return range(self.n)

    def bar(self, p: int) -> int:
        if not 0 <= p < self.n:
            raise IndexError(f"index position {p} outside dimension {self.n}")
        return p ^ 1 if p < 2 * self.l else p

    def label(self, p: int) -> str:
        if p < 2 * self.l:
            return f"{p // 2 + 1}{'b' if p % 2 else ''}"
        return str(self.l + 1)

    def position(self, label: str | int) -> int:
        """Position of an index given as ``3``, ``"3"`` or ``"3b"``."""
        if isinstance(label, int):
            j, barred = label, False
        else:
            barred = label.endswith("b")
            j = int(label[:-1] if barred else label)
        if 1 <= j <= self.l:
            return 2 * (j - 1) + (1 if barred else 0)
        if self.n % 2 and j == self.l + 1 and not barred:
            return self.n - 1
        raise IndexError(f"index {label!r} not in dimension {self.n}")

    # -- variables -------------------------------------------------------
    @property
    def nvars(self) -> int:
        return 2 * self.n + (2 if self.trig else 0)

    def z_var(self, p: int) -> int:
        return p

    def zeta_var(self, p: int) -> int:
        return self.n + p

    @property
    def c_var(self) -> int:
        if not self.trig:
            raise ValueError("space has no fibre coordinate")
        return 2 * self.n

    @property
    def s_var(self) -> int:
        if not self.trig:
            raise ValueError("space has no fibre coordinate")
        return 2 * self.n + 1

    @property
    def non_zeta_vars(self) -> list[int]:
        return [v for v in range(self.nvars) if not self.n <= v < 2 * self.n]

    def var_name(self, v: int) -> str:
        if v < self.n:
            return f"z{self.label(v)}"
        if v < 2 * self.n:
            return f"zeta{self.label(v - self.n)}"
        return "c" if v == 2 * self.n else "s"

    def unit(self, v: int) -> int:
        return 1 << (_BITS * v)

    def exponents(self, mono: int) -> list[int]:
        return [(mono >> (_BITS * v)) & _MASK for v in range(self.nvars)]

    def monomial(self, exps: Mapping[int, int]) -> int:
        out = 0
        for v, e in exps.items():
            if e < 0 or e > _MASK:
                raise ValueError("exponent out of range")
            out += e << (_BITS * v)
        return out

    # -- generators ------------------------------------------------------
    @property
    def nleft(self) -> int:
        return 2 * self.n + (1 if self.trig else 0)

    def dz_gen(self, p: int) -> int:
        return p

    def dzeta_gen(self, p: int) -> int:
        return self.n + p

    @property
    def dtheta_gen(self) -> int:
        if not self.trig:
            raise ValueError("space has no fibre coordinate")
        return 2 * self.n

    def left_name(self, g: int) -> str:
        if g < self.n:
            return f"dz{self.label(g)}"
        if g < 2 * self.n:
            return f"dzeta{self.label(g - self.n)}"
        return "dtheta"

    @property
    def nright(self) -> int:
        return 2 * self.n + len(self.extra_right)

    def right_name(self, h: int) -> str:
        if h < self.n:
            return f"Dz{self.label(h)}"
        if h < 2 * self.n:
            return f"Dzeta{self.label(h - self.n)}"
        return self.extra_right[h - 2 * self.n]

    def extra_right_gen(self, name: str) -> int:
        return 2 * self.n + self.extra_right.index(name)

    # d(v) as a list of (monomial, integer coefficient, left generator)
    def dvar(self, v: int) -> tuple[tuple[int, int, int], ...]:
        return _dvar_table(self)[v]


@lru_cache(maxsize=None)
def space(n: int, trig: bool = False, extra_right: tuple[str, ...] = ()) -> Space:
    """Return the (cached) algebra for dimension ``n``."""
    if n < 1:
        raise ValueError("dimension must be positive")
    return Space(n, trig, tuple(extra_right))


@lru_cache(maxsize=None)
def _dvar_table(sp: Space):
    table = []
    for v in range(sp.nvars):
        if v < 2 * sp.n:
            table.append(((0, 1, v),))
        elif v == 2 * sp.n:  # d(cos) = -sin dtheta
            table.append(((sp.unit(sp.s_var), -1, sp.dtheta_gen),))
        else:  # d(sin) = cos dtheta
            table.append(((sp.unit(sp.c_var), 1, sp.dtheta_gen),))
    return tuple(table)


Key = tuple  # (monomial, left mask, right mask)


class DoubleForm:
    """Sparse element of the double-form algebra of a :class:`Space`."""

    __slots__ = ("space", "terms")

    def __init__(self, sp: Space, terms: dict | None = None):
        self.space = sp
        self.terms: dict[Key, ExactScalar] = terms if terms is not None else {}

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, sp: Space) -> "DoubleForm":
        return cls(sp, {})

    @classmethod
    def basis(cls, sp: Space, mono: int = 0, left: int = 0, right: int = 0,
              coeff=ONE) -> "DoubleForm":
        coeff = as_scalar(coeff)
        if not coeff:
            return cls(sp)
        return cls(sp, {(mono, left, right): coeff})

    @classmethod
    def one(cls, sp: Space) -> "DoubleForm":
        return cls.basis(sp)

    @classmethod
    def constant(cls, sp: Space, c) -> "DoubleForm":
        return cls.basis(sp, coeff=c)

    @classmethod
    def var(cls, sp: Space, v: int) -> "DoubleForm":
        return cls.basis(sp, mono=sp.unit(v))

    @classmethod
    def left_gen(cls, sp: Space, g: int) -> "DoubleForm":
        return cls.basis(sp, left=1 << g)

    @classmethod
    def right_gen(cls, sp: Space, h: int) -> "DoubleForm":
        return cls.basis(sp, right=1 << h)

    @classmethod
    def left_word(cls, sp: Space, gens: Sequence[int]) -> "DoubleForm":
        out = cls.one(sp)
        for g in gens:
            out = out * cls.left_gen(sp, g)
        return out

    @classmethod
    def right_word(cls, sp: Space, gens: Sequence[int]) -> "DoubleForm":
        out = cls.one(sp)
        for h in gens:
            out = out * cls.right_gen(sp, h)
        return out

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(_popcount(l), _popcount(r)) for (_, l, r) in self.terms}

    def bidegree(self) -> tuple[int, int]:
        degs = self.bidegrees()
        if len(degs) != 1:
            raise ValueError(f"form is not homogeneous: bidegrees {sorted(degs)}")
        return degs.pop()

    def is_function(self) -> bool:
        return all(not l and not r for (_, l, r) in self.terms)

    def words(self) -> set[tuple[int, int]]:
        return {(l, r) for (_, l, r) in self.terms}

    def coefficient(self, left: int = 0, right: int = 0) -> "DoubleForm":
        """Polynomial coefficient of the basis word ``left (x) right``."""
        return DoubleForm(self.space, {(m, 0, 0): c for (m, l, r), c in self.terms.items()
                                       if l == left and r == right})

    def scalar_value(self) -> ExactScalar:
        """The value of a constant form."""
        if not self.terms:
            return ZERO
        if list(self.terms) != [(0, 0, 0)]:
            raise ValueError("form is not a constant")
        return self.terms[(0, 0, 0)]

    # -- ring operations --------------------------------------------------
    def _check(self, other: "DoubleForm") -> None:
        if other.space != self.space:
            raise ValueError(
                f"mismatched algebras: dimension {self.space.n} vs {other.space.n}")

    def __add__(self, other) -> "DoubleForm":
        if not isinstance(other, DoubleForm):
            other = DoubleForm.constant(self.space, other)
        self._check(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for k, c in b.items():
            old = out.get(k)
            if old is None:
                out[k] = c
            else:
                s = old + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return DoubleForm(self.space, out)

    __radd__ = __add__

    def __neg__(self) -> "DoubleForm":
        return DoubleForm(self.space, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "DoubleForm":
        if not isinstance(other, DoubleForm):
            other = DoubleForm.constant(self.space, other)
        return self + (-other)

    def __rsub__(self, other) -> "DoubleForm":
        return (-self) + other

    def scale(self, c) -> "DoubleForm":
        if isinstance(c, (int, Fraction)):
            if c == 1:
                return self
            if not c:
                return DoubleForm(self.space)
        else:
            c = as_scalar(c)
            if not c:
                return DoubleForm(self.space)
        return DoubleForm(self.space, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other) -> "DoubleForm":
        if isinstance(other, DoubleForm):
            return wedge(self, other)
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other) -> "DoubleForm":
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other) -> "DoubleForm":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1, 1) / other)
        return self.scale(as_scalar(other).inverse())

    def __pow__(self, e: int) -> "DoubleForm":
        if e < 0:
            raise ValueError("negative power of a double form")
        out = DoubleForm.one(self.space)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, ExactScalar)):
            other = DoubleForm.constant(self.space, other)
        if not isinstance(other, DoubleForm):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    __hash__ = None  # mutable-looking container; compare by value only

    # -- display ------------------------------------------------------------
    def _mono_str(self, mono: int) -> str:
        parts = []
        for v, e in enumerate(self.space.exponents(mono)):
            if e:
                parts.append(self.space.var_name(v) + (f"^{e}" if e > 1 else ""))
        return "*".join(parts)

    def term_str(self, key: Key) -> str:
        mono, left, right = key
        sp = self.space
        pieces = [self._mono_str(mono)]
        pieces.append("^".join(sp.left_name(g) for g in _bits(left)))
        body = "*".join(p for p in pieces if p) or "1"
        if right:
            body += " (x) " + "^".join(sp.right_name(h) for h in _bits(right))
        return body

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][2], kv[0][0]))
        shown = [f"({render_scalar(c)})*{self.term_str(k)}" for k, c in items[:12]]
        more = f" + ... ({len(items) - 12} more)" if len(items) > 12 else ""
        return " + ".join(shown) + more


def _accumulate(out: dict, key: Key, c: ExactScalar) -> None:
    old = out.get(key)
    out[key] = c if old is None else old + c


def _clean(sp: Space, out: dict) -> DoubleForm:
    return DoubleForm(sp, {k: v for k, v in out.items() if v})


def wedge(a: DoubleForm, b: DoubleForm) -> DoubleForm:
    """Product of double forms; left and right words are signed independently."""
    a._check(b)
    out: dict = {}
    bt = list(b.terms.items())
    for (m1, l1, r1), c1 in a.terms.items():
        for (m2, l2, r2), c2 in bt:
            if l1 & l2 or r1 & r2:
                continue
            c = c1 * c2
            if word_sign(l1, l2) ^ word_sign(r1, r2):
                c = -c
            _accumulate(out, (m1 + m2, l1 | l2, r1 | r2), c)
    return _clean(a.space, out)


def product(forms: Iterable[DoubleForm], sp: Space | None = None) -> DoubleForm:
    forms = list(forms)
    if not forms:
        if sp is None:
            raise ValueError("empty product needs a space")
        return DoubleForm.one(sp)
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def divided_power(beta: DoubleForm, j: int) -> DoubleForm:
    """beta^[j] = beta^j / j! for a (1,1) form; zero for j = -1."""
    for (_, l, r) in beta.terms:
        if _popcount(l) != 1 or _popcount(r) != 1:
            raise ValueError("divided powers are defined for (1,1) forms only")
    if j < -1:
        raise ValueError("divided power index must be >= -1")
    if j == -1:
        return DoubleForm.zero(beta.space)
    out = DoubleForm.one(beta.space)
    for t in range(1, j + 1):
        out = wedge(out, beta)
        if not out:
            return out
        out = out.scale(Fraction(1, t))
    return out


# -- maps permuting generators ------------------------------------------------


def _perm_word_sign(mask: int, perm: Sequence[int]) -> tuple[int, int]:
    images = [perm[g] for g in _bits(mask)]
    inv = 0
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            if images[i] > images[j]:
                inv += 1
    new = 0
    for x in images:
        new |= 1 << x
    return new, inv & 1


def _permute(w: DoubleForm, var_perm: Sequence[int], left_perm: Sequence[int],
             right_perm: Sequence[int], conj: bool) -> DoubleForm:
    sp = w.space
    mono_cache: dict[int, int] = {}
    left_cache: dict[int, tuple[int, int]] = {}
    right_cache: dict[int, tuple[int, int]] = {}
    out = {}
    for (mono, left, right), c in w.terms.items():
        nm = mono_cache.get(mono)
        if nm is None:
            nm = 0
            for v, e in enumerate(sp.exponents(mono)):
                if e:
                    nm += e << (_BITS * var_perm[v])
            mono_cache[mono] = nm
        lw = left_cache.get(left)
        if lw is None:
            lw = left_cache[left] = _perm_word_sign(left, left_perm)
        rw = right_cache.get(right)
        if rw is None:
            rw = right_cache[right] = _perm_word_sign(right, right_perm)
        if conj:
            c = c.conjugate()
        if lw[1] ^ rw[1]:
            c = -c
        out[(nm, lw[0], rw[0])] = c
    return DoubleForm(sp, out)


def _bar_perms(sp: Space):
    n = sp.n
    var_perm = [sp.bar(p) for p in range(n)] + [n + sp.bar(p) for p in range(n)]
    var_perm += list(range(2 * n, sp.nvars))
    left_perm = [sp.bar(p) for p in range(n)] + [n + sp.bar(p) for p in range(n)]
    left_perm += list(range(2 * n, sp.nleft))
    return var_perm, left_perm


def conjugate(w: DoubleForm) -> DoubleForm:
    """Complex conjugation: coefficients, variables and left generators.

    Right generators, the fibre functions and dtheta are fixed.
    """
    sp = w.space
    var_perm, left_perm = _bar_perms(sp)
    return _permute(w, var_perm, left_perm, list(range(sp.nright)), True)


def swap_indices(w: DoubleForm, p: int, q: int) -> DoubleForm:
    """Exchange index positions ``p`` and ``q`` in both slots (no conjugation)."""
    sp = w.space
    n = sp.n
    idx = list(range(n))
    idx[p], idx[q] = q, p
    var_perm = idx + [n + i for i in idx] + list(range(2 * n, sp.nvars))
    left_perm = idx + [n + i for i in idx] + list(range(2 * n, sp.nleft))
    right_perm = idx + [n + i for i in idx] + list(range(2 * n, sp.nright))
    return _permute(w, var_perm, left_perm, right_perm, False)


# -- calculus -------------------------------------------------------------------


def exterior_d(w: DoubleForm) -> DoubleForm:
    """Exterior derivative acting on the left slot."""
    sp = w.space
    table = _dvar_table(sp)
    out: dict = {}
    for (mono, left, right), c in w.terms.items():
        for v in range(sp.nvars):
            e = (mono >> (_BITS * v)) & _MASK
            if not e:
                continue
            base = mono - sp.unit(v)
            for pm, pc, g in table[v]:
                bit = 1 << g
                if left & bit:
                    continue
                f = e * pc
                if _below(left, g):
                    f = -f
                _accumulate(out, (base + pm, left | bit, right), c * f)
    return _clean(sp, out)


class VectorField:
    """Vector field sum_g X^g * d/d(coordinate g), indexed by left generators.

    Components are polynomial double forms.  Directions are left-generator
    indices: ``dz_gen(p)`` stands for d/dz_p, ``dzeta_gen(p)`` for d/dzeta_p and
    ``dtheta_gen`` for d/dtheta.
    """

    __slots__ = ("space", "components")

    def __init__(self, sp: Space, components: Mapping[int, DoubleForm] | None = None):
        self.space = sp
        comps: dict[int, DoubleForm] = {}
        for g, f in (components or {}).items():
            if not f.is_function():
                raise ValueError("vector field components must be functions")
            if f:
                comps[g] = comps[g] + f if g in comps else f
        self.components = comps

    @classmethod
    def from_pairs(cls, sp: Space, pairs: Iterable[tuple[DoubleForm, int]]) -> "VectorField":
        comps: dict[int, DoubleForm] = {}
        for coeff, g in pairs:
            if g in comps:
                raise ValueError(f"direction {sp.left_name(g)} repeated")
            comps[g] = coeff
        return cls(sp, comps)

    def __add__(self, other: "VectorField") -> "VectorField":
        comps = dict(self.components)
        for g, f in other.components.items():
            comps[g] = comps[g] + f if g in comps else f
        return VectorField(self.space, {g: f for g, f in comps.items() if f})

    def scale(self, c) -> "VectorField":
        return VectorField(self.space, {g: f.scale(c) for g, f in self.components.items()})

    def __neg__(self) -> "VectorField":
        return self.scale(-1)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-other)

    def __repr__(self) -> str:
        return " + ".join(f"({f!r})*d/d{self.space.left_name(g)[1:]}"
                          for g, f in sorted(self.components.items())) or "0"

    def apply(self, f: DoubleForm) -> DoubleForm:
        """Directional derivative of a function."""
        if not f.is_function():
            raise ValueError("apply expects a function")
        return lie_derivative(self, f)


def contract(X: VectorField, w: DoubleForm) -> DoubleForm:
    """Interior product i_X on the left slot."""
    sp = w.space
    if X.space != sp:
        raise ValueError("vector field and form live in different algebras")
    comps = {g: list(f.terms.items()) for g, f in X.components.items()}
    out: dict = {}
    for (mono, left, right), c in w.terms.items():
        for g, comp in comps.items():
            bit = 1 << g
            if not left & bit:
                continue
            nl = left ^ bit
            cc = -c if _below(left, g) else c
            for (pm, _, _), pc in comp:
                _accumulate(out, (mono + pm, nl, right), cc * pc)
    return _clean(sp, out)


def lie_derivative_cartan(X: VectorField, w: DoubleForm) -> DoubleForm:
    """L_X = i_X d + d i_X."""
    return contract(X, exterior_d(w)) + exterior_d(contract(X, w))


def lie_derivative(X: VectorField, w: DoubleForm) -> DoubleForm:
    """Lie derivative as the degree-zero derivation with L_X d(x) = d(X x)."""
    sp = w.space
    if X.space != sp:
        raise ValueError("vector field and form live in different algebras")
    table = _dvar_table(sp)
    # X applied to each variable, as polynomial term lists
    xvar: list[list] = []
    for v in range(sp.nvars):
        acc = DoubleForm.zero(sp)
        for pm, pc, g in table[v]:
            if g in X.components:
                acc = acc + DoubleForm.basis(sp, mono=pm, coeff=pc) * X.components[g]
        xvar.append(list(acc.terms.items()))
    dcomp = {g: list(exterior_d(f).terms.items()) for g, f in X.components.items()}
    out: dict = {}
    for (mono, left, right), c in w.terms.items():
        for v in range(sp.nvars):
            e = (mono >> (_BITS * v)) & _MASK
            if not e or not xvar[v]:
                continue
            base = mono - sp.unit(v)
            ce = c * e
            for (pm, _, _), pc in xvar[v]:
                _accumulate(out, (base + pm, left, right), ce * pc)
        for g, dterms in dcomp.items():
            bit = 1 << g
            if not left & bit:
                continue
            nl = left ^ bit
            cg = -c if _below(left, g) else c
            for (pm, hmask, _), pc in dterms:
                if nl & hmask:
                    continue
                h = hmask.bit_length() - 1
                cc = cg * pc
                if _below(nl, h):
                    cc = -cc
                _accumulate(out, (mono + pm, nl | hmask, right), cc)
    return _clean(sp, out)


# -- slots ----------------------------------------------------------------------


def _word_mask(W, sp: Space) -> tuple[int, ExactScalar]:
    if isinstance(W, int):
        return W, ONE
    if isinstance(W, DoubleForm):
        if len(W.terms) != 1:
            raise ValueError("right word must be a single term")
        ((mono, left, right), c), = W.terms.items()
        if mono or left:
            raise ValueError("right word must not carry a left part or coefficient function")
        return right, c
    raise TypeError("right word must be a mask or a DoubleForm")


def extract(E: DoubleForm, W) -> DoubleForm:
    """Plain form omega with E = omega (x) W."""
    mask, c = _word_mask(W, E.space)
    inv = c.inverse()
    out = {}
    for (mono, left, right), coeff in E.terms.items():
        if right != mask:
            raise ValueError(f"term {E.term_str((mono, left, right))} has a different right word")
        out[(mono, left, 0)] = coeff * inv if c != ONE else coeff
    return DoubleForm(E.space, out)


def dress(w: DoubleForm, W) -> DoubleForm:
    """omega (x) W for a plain form omega."""
    mask, c = _word_mask(W, w.space)
    out = {}
    for (mono, left, right), coeff in w.terms.items():
        if right:
            raise ValueError("dress expects a plain form")
        out[(mono, left, mask)] = coeff * c
    return DoubleForm(w.space, out)


# -- substitution -----------------------------------------------------------------


def substitute(w: DoubleForm, target: Space, var_images: Sequence[DoubleForm],
               left_images: Sequence[DoubleForm], right_images: Sequence[DoubleForm]) -> DoubleForm:
    """Algebra map defined on generators.

    Each variable, left generator and right generator of ``w.space`` is sent
    to the given image in ``target``; images of left generators are 1-forms
    and images of right generators have right degree one, so the map is
    multiplicative.
    """
    sp = w.space
    power_cache: dict[tuple[int, int], DoubleForm] = {}
    mono_cache: dict[int, DoubleForm] = {}
    left_cache: dict[int, DoubleForm] = {}
    right_cache: dict[int, DoubleForm] = {}

    def var_power(v: int, e: int) -> DoubleForm:
        key = (v, e)
        if key not in power_cache:
            power_cache[key] = (var_power(v, e - 1) * var_images[v]) if e > 1 else var_images[v]
        return power_cache[key]

    def mono_image(mono: int) -> DoubleForm:
        if mono not in mono_cache:
            out = DoubleForm.one(target)
            for v, e in enumerate(sp.exponents(mono)):
                if e:
                    out = out * var_power(v, e)
            mono_cache[mono] = out
        return mono_cache[mono]

    def word_image(mask: int, images, cache) -> DoubleForm:
        if mask not in cache:
            out = DoubleForm.one(target)
            for g in _bits(mask):
                out = out * images[g]
            cache[mask] = out
        return cache[mask]

    # group terms by word so each word image is multiplied once
    grouped: dict[tuple[int, int], DoubleForm] = {}
    for (mono, left, right), c in w.terms.items():
        piece = mono_image(mono).scale(c)
        key = (left, right)
        grouped[key] = grouped[key] + piece if key in grouped else piece
    result = DoubleForm.zero(target)
    for (left, right), poly in grouped.items():
        if not poly:
            continue
        result = result + poly * word_image(left, left_images, left_cache) \
            * word_image(right, right_images, right_cache)
    return result


# -- sphere restriction --------------------------------------------------------------


@lru_cache(maxsize=None)
def _sphere_rule(sp: Space, t: int) -> tuple:
    """((1 - R)/2)^t as a term list, R = nu - 2 zeta_1 zeta_1b."""
    rest = DoubleForm.zero(sp)
    for p in range(2, sp.n):
        rest = rest + DoubleForm.var(sp, sp.zeta_var(sp.bar(p))) * DoubleForm.var(sp, sp.zeta_var(p))
    half = (DoubleForm.one(sp) - rest).scale(Fraction(1, 2))
    return tuple((m, c) for (m, _, _), c in (half ** t).terms.items())


@lru_cache(maxsize=None)
def _trig_rule(sp: Space, t: int) -> tuple:
    """(1 - c^2)^t as a term list."""
    c = DoubleForm.var(sp, sp.c_var)
    base = DoubleForm.one(sp) - c * c
    return tuple((m, k) for (m, _, _), k in (base ** t).terms.items())


def reduce_mod_sphere(w: DoubleForm) -> DoubleForm:
    """Normal form modulo nu - 1 (and s^2 + c^2 - 1 when a fibre is present).

    The monomial order is degree-lexicographic with zeta_1 > zeta_1b > ...,
    so zeta_1 zeta_1b is the leading monomial of nu; the remainder has no
    monomial divisible by it, and no power of s above one.
    """
    sp = w.space
    if sp.n < 2:
        raise ValueError("sphere reduction needs n >= 2")
    v1, v1b = sp.zeta_var(0), sp.zeta_var(1)
    u1, u1b = sp.unit(v1), sp.unit(v1b)
    out: dict = {}
    for (mono, left, right), c in w.terms.items():
        pieces = [(mono, c)]
        if sp.trig:
            es = (mono >> (_BITS * sp.s_var)) & _MASK
            if es >= 2:
                t = es // 2
                base = mono - 2 * t * sp.unit(sp.s_var)
                pieces = [(base + m, c * k) for m, k in _trig_rule(sp, t)]
        for pm, pc in pieces:
            a = (pm >> (_BITS * v1)) & _MASK
            b = (pm >> (_BITS * v1b)) & _MASK
            t = min(a, b)
            if not t:
                _accumulate(out, (pm, left, right), pc)
                continue
            base = pm - t * (u1 + u1b)
            for m, k in _sphere_rule(sp, t):
                _accumulate(out, (base + m, left, right), pc * k)
    return _clean(sp, out)


@lru_cache(maxsize=None)
def _gamma_full(sp: Space) -> DoubleForm:
    out = DoubleForm.zero(sp)
    for p in range(sp.n):
        out = out + DoubleForm.var(sp, sp.zeta_var(sp.bar(p))) * DoubleForm.left_gen(sp, sp.dzeta_gen(p))
    return out


def sphere_equiv(A: DoubleForm, B: DoubleForm) -> bool:
    """True iff reduce((A - B) * gamma) vanishes, i.e. A and B agree on the sphere bundle."""
    return reduce_mod_sphere(wedge(A - B, _gamma_full(A.space))).is_zero()
