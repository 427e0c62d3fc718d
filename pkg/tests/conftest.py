from __future__ import annotations

import sys
from pathlib import Path

from hypothesis import settings
from hypothesis import strategies as st

from valcalc.algebra import DoubleForm, space
from valcalc.scalar import I, as_scalar

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("valcalc", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("valcalc")


@st.composite
def coefficients(draw):
    re = draw(st.integers(-3, 3))
    im = draw(st.integers(-2, 2))
    c = as_scalar(re) + I * im
    return c if c else as_scalar(1)


@st.composite
def monomials(draw, sp, max_vars: int = 3, max_exp: int = 2):
    chosen = draw(st.lists(st.integers(0, 2 * sp.n - 1), max_size=max_vars, unique=True))
    return sp.monomial({v: draw(st.integers(1, max_exp)) for v in chosen})


@st.composite
def double_forms(draw, n: int, max_terms: int = 4, left_degree=None, right_degree=None):
    """Random elements of the plain algebra of dimension n, optionally of fixed bidegree."""
    sp = space(n)

    def mask(width, degree):
        if degree is None:
            bits = draw(st.lists(st.integers(0, width - 1), max_size=3, unique=True))
        else:
            bits = draw(st.lists(st.integers(0, width - 1), min_size=degree, max_size=degree, unique=True))
        return sum(1 << b for b in bits)

    out = DoubleForm.zero(sp)
    for _ in range(draw(st.integers(1, max_terms))):
        out = out + DoubleForm.basis(sp, draw(monomials(sp)), mask(sp.nleft, left_degree),
                                     mask(sp.nright, right_degree), draw(coefficients()))
    return out


@st.composite
def vector_fields(draw, n: int):
    from valcalc.algebra import VectorField

    sp = space(n)
    gens = draw(st.lists(st.integers(0, sp.nleft - 1), min_size=1, max_size=3, unique=True))
    comps = {}
    for g in gens:
        comps[g] = DoubleForm.basis(sp, draw(monomials(sp, 2, 2)), coeff=draw(coefficients()))
    return VectorField(sp, comps)
