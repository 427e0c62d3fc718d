"""Floating point reference computations that share no code with the exact engine.

Sphere integrals use a product rule in hyperspherical coordinates: one
Gauss-Gegenbauer factor per polar angle and a uniform rule on the last circle.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import product

import numpy as np
from scipy.special import roots_gegenbauer


@lru_cache(maxsize=None)
def sphere_nodes(d: int, order: int = 8) -> tuple[np.ndarray, np.ndarray]:
    """Nodes (rows, points of S^(d-1) in R^d) and weights summing to |S^(d-1)|."""
    if d < 2:
        raise ValueError("need d >= 2")
    m = 2 * order + 2
    phi = 2 * math.pi * np.arange(m) / m
    pts = np.stack([np.cos(phi), np.sin(phi)], axis=1)
    wts = np.full(m, 2 * math.pi / m)
    for dim in range(3, d + 1):
        # x = (t, sqrt(1 - t^2) y), weight (1 - t^2)^((dim - 3)/2)
        t, w = roots_gegenbauer(order, (dim - 2) / 2)
        rad = np.sqrt(1 - t * t)
        pts = np.concatenate([np.column_stack([np.full(len(pts), ti), ri * pts]) for ti, ri in zip(t, rad)])
        wts = np.concatenate([wi * wts for wi in w])
    return pts, wts


def sphere_volume(d: int) -> float:
    """|S^(d-1)| from the Gamma function."""
    return 2 * math.pi ** (d / 2) / math.gamma(d / 2)


def complex_coordinates(x: np.ndarray) -> np.ndarray:
    """Columns zeta_1, zeta_1b, ..., (zeta_(l+1)) from real points x of R^n."""
    n = x.shape[1]
    cols = []
    for j in range(n // 2):
        a, b = x[:, 2 * j], x[:, 2 * j + 1]
        cols.append((a + 1j * b) / math.sqrt(2))
        cols.append((a - 1j * b) / math.sqrt(2))
    if n % 2:
        cols.append(x[:, n - 1].astype(complex))
    return np.stack(cols, axis=1)


def evaluate_zeta_polynomial(p, x: np.ndarray) -> np.ndarray:
    """Evaluate a function-valued DoubleForm in the zeta variables at real points."""
    sp = p.space
    zeta = complex_coordinates(x)
    out = np.zeros(len(x), dtype=complex)
    for (mono, left, right), c in p.terms.items():
        assert not left and not right
        e = sp.exponents(mono)
        term = np.full(len(x), complex(c))
        for q in range(sp.n):
            if e[sp.zeta_var(q)]:
                term = term * zeta[:, q] ** e[sp.zeta_var(q)]
        out += term
    return out


def quadrature_sphere_integral(p, order: int = 8) -> complex:
    pts, wts = sphere_nodes(p.space.n, order)
    return complex(np.dot(wts, evaluate_zeta_polynomial(p, pts)))


def monomial_moment(alpha: tuple[int, ...], order: int = 8) -> float:
    pts, wts = sphere_nodes(len(alpha), order)
    vals = np.prod([pts[:, i] ** a for i, a in enumerate(alpha)], axis=0)
    return float(np.dot(wts, vals))


def ball_volume(n: int) -> float:
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


def relative_error(a: complex, b: complex) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def all_exponents(d: int, top: int):
    return [a for a in product(range(top + 1), repeat=d) if sum(a) <= top]
