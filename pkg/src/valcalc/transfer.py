"""Pullback along R^(n-1) -> R^n and pushforward along R^n -> R^(n-1).

Both maps are generator substitutions into the algebra of dimension n-1.
The right slot is only re-expressed in the new basis: for odd n the unpaired
covector dz_(l+1) becomes dx_n, for even n the pair (l, lb) is split into the
unpaired index l of dimension n-1 and dx_n.  The pullback additionally lives
over the fibre coordinate theta with cos and sin as polynomial variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    DoubleForm,
    VectorField,
    contract,
    exterior_d,
    space,
    substitute,
)
from .forms import HwvId, hwv_form, hwv_plain, theta1_word
from .scalar import ONE, I, SQRT2, ExactScalar, as_scalar, trig_moment, unit_sphere_volume

__all__ = [
    "TransferResult",
    "TransferMismatch",
    "EXTRA_RIGHT",
    "fiber_pullback",
    "restrict",
    "dx_n_field",
    "theta1_image",
    "vol_dimension_factor",
    "pullback_form",
    "pushforward_form",
    "pullback_transfer",
    "pushforward_transfer",
    "expected_pullback",
    "expected_pushforward",
]

EXTRA_RIGHT = ("Dx_n", "Dxi_n")


class TransferMismatch(ArithmeticError):
    pass


@dataclass(frozen=True)
class TransferResult:
    coefficient: ExactScalar
    target: HwvId | None

    @property
    def is_zero(self) -> bool:
        return self.target is None

    def __str__(self) -> str:
        if self.target is None:
            return "0"
        return f"{self.coefficient} * phi{tuple(self.target)}"


def _normalization(n: int, r: int, m: int) -> ExactScalar:
    return (I ** (n // 2)) * (SQRT2 ** (m - 2)) / unit_sphere_volume(n + m - r - 3)


# -- substitution tables ---------------------------------------------------------------------


def _images(n: int, trig: bool):
    """Variable and right-generator images of the dimension-n algebra."""
    if n < 3:
        raise ValueError("transfer needs n >= 3")
    src = space(n)
    tgt = space(n - 1, trig=trig, extra_right=EXTRA_RIGHT)
    V = lambda v: DoubleForm.var(tgt, v)
    R = lambda h: DoubleForm.right_gen(tgt, h)
    zero = DoubleForm.zero(tgt)
    one = DoubleForm.one(tgt)
    c = V(tgt.c_var) if trig else one
    s = V(tgt.s_var) if trig else zero
    dx, dxi = tgt.extra_right_gen("Dx_n"), tgt.extra_right_gen("Dxi_n")
    var_images = [zero] * (2 * n)
    right_images = [zero] * (2 * n)
    l = src.l
    if n % 2:
        for p in range(2 * l):
            var_images[p] = V(tgt.z_var(p))
            var_images[n + p] = c * V(tgt.zeta_var(p))
            right_images[p] = R(p)
            right_images[n + p] = R(tgt.n + p)
        last = 2 * l
        var_images[last] = zero
        var_images[n + last] = s
        right_images[last] = R(dx)
        right_images[n + last] = R(dxi)
    else:
        for p in range(2 * l - 2):
            var_images[p] = V(tgt.z_var(p))
            var_images[n + p] = c * V(tgt.zeta_var(p))
            right_images[p] = R(p)
            right_images[n + p] = R(tgt.n + p)
        p, q, u = 2 * l - 2, 2 * l - 1, 2 * l - 2  # the pair (l, lb) and the unpaired index of dim n-1
        h = SQRT2.inverse()
        var_images[p] = V(tgt.z_var(u)).scale(h)
        var_images[q] = V(tgt.z_var(u)).scale(h)
        var_images[n + p] = (c * V(tgt.zeta_var(u)) + s.scale(I)).scale(h)
        var_images[n + q] = (c * V(tgt.zeta_var(u)) - s.scale(I)).scale(h)
        right_images[p] = (R(u) + R(dx).scale(I)).scale(h)
        right_images[q] = (R(u) - R(dx).scale(I)).scale(h)
        right_images[n + p] = (R(tgt.n + u) + R(dxi).scale(I)).scale(h)
        right_images[n + q] = (R(tgt.n + u) - R(dxi).scale(I)).scale(h)
    left_images = [zero] * src.nleft
    for p in range(n):
        left_images[src.dz_gen(p)] = exterior_d(var_images[p])
        left_images[src.dzeta_gen(p)] = exterior_d(var_images[n + p])
    return tgt, var_images, left_images, right_images


@lru_cache(maxsize=None)
def _tables(n: int, trig: bool):
    return _images(n, trig)


def fiber_pullback(w: DoubleForm) -> DoubleForm:
    """F^* w for F(x, u, theta) = (x, cos(theta) u + sin(theta) e_n)."""
    if w.space.trig or w.space.extra_right:
        raise ValueError("fiber_pullback expects a form of the plain dimension-n algebra")
    tgt, var_images, left_images, right_images = _tables(w.space.n, True)
    return substitute(w, tgt, var_images, left_images, right_images)


def restrict(w: DoubleForm) -> DoubleForm:
    """iota^* w along R^(n-1) x R^(n-1) -> R^n x R^n."""
    if w.space.trig or w.space.extra_right:
        raise ValueError("restrict expects a form of the plain dimension-n algebra")
    tgt, var_images, left_images, right_images = _tables(w.space.n, False)
    return substitute(w, tgt, var_images, left_images, right_images)


def dx_n_field(n: int) -> VectorField:
    """d/dx_n in complex coordinates."""
    sp = space(n)
    if n % 2:
        return VectorField(sp, {sp.dz_gen(n - 1): DoubleForm.one(sp)})
    l = sp.l
    c = I / SQRT2
    return VectorField(sp, {sp.dz_gen(2 * l - 2): DoubleForm.constant(sp, c),
                            sp.dz_gen(2 * l - 1): DoubleForm.constant(sp, -c)})


def theta1_image(n: int) -> DoubleForm:
    """Theta_1 of dimension n rewritten in the dimension-(n-1) basis plus dx_n."""
    sp = space(n)
    return restrict(DoubleForm.basis(sp, right=theta1_word(sp)))


def vol_dimension_factor(n: int) -> ExactScalar:
    """The constant c with Theta_1^(n) = c Theta_1^(n-1) dx_n."""
    img = theta1_image(n)
    tgt = img.space
    mask = theta1_word(tgt) | (1 << tgt.extra_right_gen("Dx_n"))
    if set(k[2] for k in img.terms) != {mask} or len(img.terms) != 1:
        raise TransferMismatch(f"n={n}: Theta_1 does not map to a multiple of Theta_1 dx_n")
    return img.terms[(0, 0, mask)]


# -- fibre integration --------------------------------------------------------------------------


def _integrate_fiber(w: DoubleForm) -> DoubleForm:
    """Integrate cos^a sin^b over [-pi/2, pi/2], landing in the non-trig algebra."""
    sp = w.space
    tgt = space(sp.n, trig=False, extra_right=sp.extra_right)
    cu, su = sp.unit(sp.c_var), sp.unit(sp.s_var)
    out: dict = {}
    for (mono, left, right), coeff in w.terms.items():
        if left >> sp.dtheta_gen & 1:
            raise ValueError("fibre integrand still contains dtheta")
        e = sp.exponents(mono)
        a, b = e[sp.c_var], e[sp.s_var]
        if b % 2:
            continue
        base = mono - a * cu - b * su
        key = (base, left, right)
        val = coeff * trig_moment(a, b) * 2
        out[key] = out.get(key, ExactScalar()) + val
    return DoubleForm(tgt, {k: v for k, v in out.items() if v})


def pullback_form(id: HwvId) -> DoubleForm:
    """(-1)^n times the fibre integral of i_(d/dtheta) F^* omega, still dressed by the image of Theta_1."""
    n = id.n
    E = fiber_pullback(hwv_form(id))
    sp = E.space
    dtheta = VectorField(sp, {sp.dtheta_gen: DoubleForm.one(sp)})
    return _integrate_fiber(contract(dtheta, E)).scale((-1) ** n)


def pushforward_form(id: HwvId) -> DoubleForm:
    """(-1)^n iota^*(i_(d/dx_n) omega), dressed by the image of Theta_1."""
    E = hwv_form(id)
    return restrict(contract(dx_n_field(id.n), E)).scale((-1) ** id.n)


# -- expected case values ----------------------------------------------------------------------


def expected_pullback(id: HwvId) -> TransferResult:
    n, r, k, m = id
    if r < n - 1 and 0 < k < n - r:
        return TransferResult(ONE, HwvId(n - 1, r, k, m))
    if n % 2 == 0 and k == n // 2:
        return TransferResult(as_scalar(Fraction(1, 2)), HwvId(n - 1, k, k - 1, m))
    return TransferResult(ExactScalar(), None)


def expected_pushforward(id: HwvId) -> TransferResult:
    n, r, k, m = id
    if 0 < k < r:
        return TransferResult(ONE, HwvId(n - 1, r - 1, k, m))
    if n % 2 == 0 and k == n // 2:
        return TransferResult(as_scalar(Fraction(-1, 2)), HwvId(n - 1, k - 1, k - 1, m))
    return TransferResult(ExactScalar(), None)


def _match(id: HwvId, form: DoubleForm, expected: TransferResult, kind: str) -> TransferResult:
    """Write form = kappa omega_target (x) image(Theta_1) and convert kappa to a valuation coefficient."""
    if expected.target is None:
        if not form.is_zero():
            raise TransferMismatch(f"{kind}{tuple(id)}: expected zero, got a nonzero form")
        return expected
    target = expected.target
    tgt = form.space
    img = theta1_image(id.n)
    ((_, _, wmask), wcoef), = img.terms.items()
    plain = hwv_plain(target)
    # embed the dimension-(n-1) form into the algebra carrying the extra right generators
    ref = DoubleForm(tgt, {(mono, left, wmask): c * wcoef for (mono, left, _), c in plain.terms.items()})
    if form.is_zero() or ref.is_zero():
        raise TransferMismatch(f"{kind}{tuple(id)}: vanishing form, expected a multiple of phi{tuple(target)}")
    key = next(iter(ref.terms))
    kappa = form.terms.get(key, ExactScalar()) / ref.terms[key]
    if form != ref.scale(kappa):
        raise TransferMismatch(f"{kind}{tuple(id)}: result is not a multiple of omega{tuple(target)}")
    coefficient = _normalization(id.n, id.r, id.m) * kappa / _normalization(target.n, target.r, target.m)
    return TransferResult(coefficient, target)


@lru_cache(maxsize=None)
def pullback_transfer(id) -> TransferResult:
    """iota^* phi_id as a multiple of a dimension-(n-1) highest weight valuation."""
    if not isinstance(id, HwvId):
        id = HwvId(*id)
    if id.n < 3 or id.k < 1:
        raise ValueError("pullback is computed for n >= 3 and k >= 1")
    expected = expected_pullback(id)
    got = _match(id, pullback_form(id), expected, "pullback")
    if got.coefficient != expected.coefficient:
        raise TransferMismatch(f"pullback{tuple(id)}: coefficient {got.coefficient}, expected {expected.coefficient}")
    return got


@lru_cache(maxsize=None)
def pushforward_transfer(id) -> TransferResult:
    """pi_* phi_id as a multiple of a dimension-(n-1) highest weight valuation."""
    if not isinstance(id, HwvId):
        id = HwvId(*id)
    if id.n < 3 or id.k < 1:
        raise ValueError("pushforward is computed for n >= 3 and k >= 1")
    expected = expected_pushforward(id)
    got = _match(id, pushforward_form(id), expected, "pushforward")
    if got.coefficient != expected.coefficient:
        raise TransferMismatch(f"pushforward{tuple(id)}: coefficient {got.coefficient}, "
                               f"expected {expected.coefficient}")
    return got
