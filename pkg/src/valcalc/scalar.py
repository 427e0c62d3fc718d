"""Exact scalars in Q(i)[2^(1/2), pi^(1/2), pi^(-1/2)] and sphere integration.

Every constant the engine reports (ball volumes, sphere areas, pairing
constants, Fourier multipliers, ...) lives in this ring.  A scalar is a
finite sum of terms ``(q0 + q1*i) * 2^(b/2) * pi^(c/2)``; the power of two
is normalised so that ``b`` is 0 or 1.
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

__all__ = [
    "ExactScalar",
    "ZERO",
    "ONE",
    "I",
    "SQRT2",
    "PI",
    "SQRT_PI",
    "as_scalar",
    "gamma_half",
    "unit_ball_volume",
    "unit_sphere_volume",
    "trig_moment",
    "sphere_integral_monomial",
    "sphere_integral_poly",
    "binomial",
    "render_scalar",
    "parse_scalar",
]

Number = Union[int, Fraction, "ExactScalar"]
_ZERO_Q = Fraction(0)


class ExactScalar:
    """Element of Q(i) * 2^(Z/2) * pi^(Z/2), stored as a sparse term map.

    ``terms`` maps ``(b, c)`` with ``b in {0, 1}`` to a pair ``(q0, q1)`` of
    Fractions meaning ``(q0 + q1*i) * 2^(b/2) * pi^(c/2)``.
    """

    __slots__ = ("terms",)

    def __init__(self, value: int | Fraction | dict | None = None):
        if value is None:
            self.terms = {}
        elif isinstance(value, dict):
            self.terms = value
        elif isinstance(value, (int, Fraction)):
            self.terms = {(0, 0): (Fraction(value), _ZERO_Q)} if value else {}
        else:
            raise TypeError(f"cannot build ExactScalar from {type(value).__name__}")

    # construction helpers -------------------------------------------------

    @classmethod
    def term(cls, q0=0, q1=0, b: int = 0, c: int = 0) -> "ExactScalar":
        q0, q1 = Fraction(q0), Fraction(q1)
        if b % 2:
            extra, b = Fraction(2) ** ((b - 1) // 2), 1
        else:
            extra, b = Fraction(2) ** (b // 2), 0
        q0, q1 = q0 * extra, q1 * extra
        if not q0 and not q1:
            return cls()
        return cls({(b, c): (q0, q1)})

    # predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_single_term(self) -> bool:
        return len(self.terms) == 1

    def is_real(self) -> bool:
        return all(not q1 for q0, q1 in self.terms.values())

    def is_rational(self) -> bool:
        return not self.terms or (
            list(self.terms) == [(0, 0)] and not self.terms[(0, 0)][1]
        )

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{render_scalar(self)} is not rational")
        return self.terms[(0, 0)][0] if self.terms else Fraction(0)

    def pi_power(self) -> Fraction:
        """Power of pi of a single-term scalar (may be a half-integer)."""
        if len(self.terms) != 1:
            raise ValueError("pi_power needs a single-term scalar")
        (_, c), = self.terms
        return Fraction(c, 2)

    def has_integer_pi_power(self) -> bool:
        return all(c % 2 == 0 for _, c in self.terms)

    def is_positive_real(self) -> bool:
        if len(self.terms) != 1:
            raise ValueError(f"is_positive_real needs a single term, got {render_scalar(self)}")
        (q0, q1), = self.terms.values()
        if q1:
            raise ValueError(f"{render_scalar(self)} is not real")
        return q0 > 0

    # arithmetic -----------------------------------------------------------

    def __neg__(self) -> "ExactScalar":
        return ExactScalar({k: (-a, -b) for k, (a, b) in self.terms.items()})

    def __pos__(self) -> "ExactScalar":
        return self

    def __add__(self, other: Number) -> "ExactScalar":
        other = as_scalar(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for key, (a, b) in other.terms.items():
            old = out.get(key)
            if old is None:
                out[key] = (a, b)
            else:
                na, nb = old[0] + a, old[1] + b
                if na or nb:
                    out[key] = (na, nb)
                else:
                    del out[key]
        return ExactScalar(out)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "ExactScalar":
        return self + (-as_scalar(other))

    def __rsub__(self, other: Number) -> "ExactScalar":
        return as_scalar(other) - self

    def __mul__(self, other: Number) -> "ExactScalar":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return ExactScalar({k: (a * other, b * other) for k, (a, b) in self.terms.items()})
        if not isinstance(other, ExactScalar):
            return NotImplemented
        out: dict = {}
        for (b1, c1), (x0, x1) in self.terms.items():
            for (b2, c2), (y0, y1) in other.terms.items():
                r0 = x0 * y0 - x1 * y1
                r1 = x0 * y1 + x1 * y0
                b = b1 + b2
                if b == 2:
                    r0, r1, b = 2 * r0, 2 * r1, 0
                key = (b, c1 + c2)
                old = out.get(key)
                if old is not None:
                    r0, r1 = old[0] + r0, old[1] + r1
                if r0 or r1:
                    out[key] = (r0, r1)
                elif old is not None:
                    del out[key]
        return ExactScalar(out)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if not self.terms:
            raise ZeroDivisionError("division by zero ExactScalar")
        cs = {c for _, c in self.terms}
        if len(cs) != 1:
            raise ValueError(
                f"{render_scalar(self)} mixes powers of pi and has no inverse in the ring"
            )
        (c,) = cs
        # self = (p + q*sqrt2) * pi^(c/2) with p, q Gaussian rationals
        p = self.terms.get((0, c), (_ZERO_Q, _ZERO_Q))
        q = self.terms.get((1, c), (_ZERO_Q, _ZERO_Q))
        # 1/(p + q sqrt2) = (p - q sqrt2)/(p^2 - 2 q^2)
        norm = _gmul(p, p)
        q2 = _gmul(q, q)
        norm = (norm[0] - 2 * q2[0], norm[1] - 2 * q2[1])
        inv_norm = _ginv(norm)
        out = {}
        a = _gmul(p, inv_norm)
        if a[0] or a[1]:
            out[(0, -c)] = a
        bq = _gmul(q, inv_norm)
        if bq[0] or bq[1]:
            out[(1, -c)] = (-bq[0], -bq[1])
        return ExactScalar(out)

    def __truediv__(self, other: Number) -> "ExactScalar":
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other: Number) -> "ExactScalar":
        return as_scalar(other) * self.inverse()

    def __pow__(self, e: int) -> "ExactScalar":
        if not isinstance(e, int):
            raise TypeError("ExactScalar powers must be integers")
        base = self if e >= 0 else self.inverse()
        out = ONE
        for _ in range(abs(e)):
            out = out * base
        return out

    def conjugate(self) -> "ExactScalar":
        return ExactScalar({k: (a, -b) for k, (a, b) in self.terms.items()})

    # comparison -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExactScalar(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __complex__(self) -> complex:
        total = 0j
        for (b, c), (q0, q1) in self.terms.items():
            total += complex(float(q0), float(q1)) * 2 ** (b / 2) * math.pi ** (c / 2)
        return total

    def __repr__(self) -> str:
        return f"ExactScalar({render_scalar(self)!r})"

    def __str__(self) -> str:
        return render_scalar(self)


def _gmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _ginv(x):
    d = x[0] * x[0] + x[1] * x[1]
    if not d:
        raise ZeroDivisionError("division by zero ExactScalar")
    return (x[0] / d, -x[1] / d)


def as_scalar(x: Number) -> ExactScalar:
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactScalar(x)
    raise TypeError(f"not a scalar: {x!r}")


ZERO = ExactScalar()
ONE = ExactScalar(1)
I = ExactScalar.term(0, 1)
SQRT2 = ExactScalar.term(1, 0, b=1)
PI = ExactScalar.term(1, 0, c=2)
SQRT_PI = ExactScalar.term(1, 0, c=1)


def binomial(a: int, b: int) -> int:
    """Binomial coefficient, zero when ``a < b`` or ``b < 0``."""
    if b < 0 or a < b:
        return 0
    return math.comb(a, b)


# volumes and moments -------------------------------------------------------


@lru_cache(maxsize=None)
def gamma_half(k: int) -> ExactScalar:
    """Gamma(k/2) for a positive integer ``k``."""
    if k <= 0:
        raise ValueError("gamma_half needs k >= 1")
    if k % 2 == 0:
        return ExactScalar(math.factorial(k // 2 - 1))
    value = SQRT_PI
    x = Fraction(1, 2)
    for _ in range((k - 1) // 2):
        value = value * x
        x += 1
    return value


@lru_cache(maxsize=None)
def unit_ball_volume(n: int) -> ExactScalar:
    """v_n = pi^(n/2) / Gamma(n/2 + 1)."""
    if n < 0:
        raise ValueError("dimension must be non-negative")
    return ExactScalar.term(1, 0, c=n) / gamma_half(n + 2)


@lru_cache(maxsize=None)
def unit_sphere_volume(n: int) -> ExactScalar:
    """s_n, the area of the unit sphere S^n, equal to (n+1) v_(n+1)."""
    if n < 0:
        raise ValueError("dimension must be non-negative")
    return unit_ball_volume(n + 1) * (n + 1)


@lru_cache(maxsize=None)
def trig_moment(a: int, b: int) -> ExactScalar:
    """Integral of cos^a * sin^b over [0, pi/2]."""
    if a < 0 or b < 0:
        raise ValueError("moments need non-negative exponents")
    return unit_sphere_volume(a + b + 1) / (unit_sphere_volume(a) * unit_sphere_volume(b))


@lru_cache(maxsize=None)
def _monomial_integral(alpha: tuple[int, ...]) -> ExactScalar:
    if any(a % 2 for a in alpha):
        return ZERO
    num = ExactScalar(2)
    for a in alpha:
        num = num * gamma_half(a + 1)
    return num / gamma_half(sum(alpha) + len(alpha))


def sphere_integral_monomial(alpha: Iterable[int]) -> ExactScalar:
    """Integral of prod xi_i^alpha_i over the unit sphere S^(n-1), n = len(alpha)."""
    alpha = tuple(int(a) for a in alpha)
    if not alpha:
        raise ValueError("empty exponent sequence")
    if any(a < 0 for a in alpha):
        raise ValueError("exponents must be non-negative")
    return _monomial_integral(alpha)


@lru_cache(maxsize=None)
def _pair_expansion(a: int, b: int) -> tuple:
    """Expand ((x+iy)/sqrt2)^a ((x-iy)/sqrt2)^b into ((p, q), coefficient) items."""
    out: dict[tuple[int, int], ExactScalar] = {}
    scale = ExactScalar.term(1, 0, b=-(a + b))
    for j in range(a + 1):
        for t in range(b + 1):
            # (x+iy)^a contributes C(a,j) x^(a-j) (iy)^j; (x-iy)^b likewise with -i
            coeff = I ** j * (-I) ** t * (math.comb(a, j) * math.comb(b, t))
            key = (a - j + b - t, j + t)
            out[key] = out.get(key, ZERO) + coeff
    return tuple((k, v * scale) for k, v in out.items() if v)


def sphere_integral_poly(p, n: int | None = None) -> ExactScalar:
    """Integrate a polynomial in the zeta variables over the unit sphere.

    ``p`` is a :class:`~valcalc.algebra.DoubleForm` of bidegree (0, 0) whose
    monomials only involve zeta variables.  The complex coordinates are
    expanded into real ones and each real monomial is integrated exactly.
    """
    space = p.space
    if n is not None and n != space.n:
        raise ValueError(f"polynomial lives in dimension {space.n}, not {n}")
    n = space.n
    l, odd = n // 2, n % 2
    total = ZERO
    for (mono, left, right), coeff in p.terms.items():
        if left or right:
            raise ValueError("sphere_integral_poly expects a function, not a form")
        exps = space.exponents(mono)
        if any(exps[v] for v in space.non_zeta_vars):
            raise ValueError("polynomial mentions z or trigonometric variables")
        factors = []
        for j in range(l):
            a = exps[space.zeta_var(2 * j)]
            b = exps[space.zeta_var(2 * j + 1)]
            factors.append(_pair_expansion(a, b))
        last = exps[space.zeta_var(n - 1)] if odd else 0
        acc = ZERO
        for combo in itertools.product(*factors):
            alpha = []
            c = coeff
            for (pq, v) in combo:
                alpha.extend(pq)
                c = c * v
            if odd:
                alpha.append(last)
            acc = acc + c * _monomial_integral(tuple(alpha))
        total = total + acc
    return total


# text form ------------------------------------------------------------------


def _render_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _render_exponent(e: Fraction) -> str:
    if e.denominator == 1 and e > 0:
        return str(e.numerator)
    return f"({_render_rational(e)})"


def _render_term(b: int, c: int, q0: Fraction, q1: Fraction) -> str:
    symbols = []
    if b:
        symbols.append("2^(1/2)")
    if c:
        e = Fraction(c, 2)
        symbols.append("pi" if e == 1 else f"pi^{_render_exponent(e)}")
    sym = "*".join(symbols)
    if q0 and q1:
        coeff = f"({_render_rational(q0)}{'+' if q1 > 0 else '-'}{_render_rational(abs(q1))}*i)"
        return f"{coeff}*{sym}" if sym else coeff
    imag = bool(q1)
    q = q1 if imag else q0
    sign = "-" if q < 0 else ""
    q = abs(q)
    unit = "i" if imag else ""
    body = "*".join(x for x in (unit, sym) if x)
    if not body:
        return sign + _render_rational(q)
    if q == 1:
        return sign + body
    if q.numerator == 1:
        return f"{sign}{body}/{q.denominator}"
    return f"{sign}{_render_rational(q)}*{body}"


def render_scalar(x: ExactScalar) -> str:
    """Canonical text form, e.g. ``pi``, ``-3/8*pi``, ``i*2^(1/2)``."""
    x = as_scalar(x)
    if not x.terms:
        return "0"
    out = ""
    for (b, c) in sorted(x.terms, key=lambda k: (k[1], k[0])):
        q0, q1 = x.terms[(b, c)]
        t = _render_term(b, c, q0, q1)
        if not out:
            out = t
        elif t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|(pi)|(i)|(\S))")


def parse_scalar(text: str) -> ExactScalar:
    """Inverse of :func:`render_scalar`; accepts + - * / ^ and parentheses."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad scalar text {text!r}")
        pos = m.end()
        num, pi, imag, sym = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif pi:
            tokens.append(("pi", None))
        elif imag:
            tokens.append(("i", None))
        elif sym in "+-*/^()":
            tokens.append((sym, None))
        else:
            raise ValueError(f"unexpected {sym!r} in {text!r}")
    parser = _Parser(tokens, text)
    value = parser.expr()
    if parser.pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return value


class _Parser:
    def __init__(self, tokens, text):
        self.tokens, self.pos, self.text = tokens, 0, text

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, kind=None):
        if self.pos >= len(self.tokens):
            raise ValueError(f"unexpected end of {self.text!r}")
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ValueError(f"expected {kind!r} in {self.text!r}")
        self.pos += 1
        return tok

    def expr(self) -> ExactScalar:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> ExactScalar:
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self) -> ExactScalar:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> ExactScalar:
        kind = self.peek()
        base = self.atom()
        if self.peek() != "^":
            return base
        self.take()
        if self.peek() == "(":
            self.take()
            e = self.expr()
            self.take(")")
        else:
            e = ExactScalar(self.take("num")[1])
        e = e.as_fraction()
        if e.denominator == 1:
            return base ** int(e)
        if e.denominator == 2 and kind == "pi":
            return SQRT_PI ** e.numerator
        if e.denominator == 2 and base == ExactScalar(2):
            return SQRT2 ** e.numerator
        raise ValueError(f"unsupported power in {self.text!r}")

    def atom(self) -> ExactScalar:
        kind, val = self.take()
        if kind == "num":
            return ExactScalar(val)
        if kind == "pi":
            return PI
        if kind == "i":
            return I
        if kind == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ValueError(f"unexpected {kind!r} in {self.text!r}")
