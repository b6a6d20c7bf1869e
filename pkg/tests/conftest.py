from fractions import Fraction
from itertools import combinations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from poisstab.multivector import MultiVector
from poisstab.polynomial import Polynomial, monomials

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)
small_ints = st.integers(min_value=-3, max_value=3).map(Fraction)


@st.composite
def polynomials(draw, n, max_degree=2, coeffs=small_ints, max_terms=4):
    monos = [m for d in range(max_degree + 1) for m in monomials(n, d)]
    picked = draw(st.lists(st.sampled_from(monos), max_size=max_terms, unique=True))
    return Polynomial(n, {m: draw(coeffs) for m in picked})


@st.composite
def homogeneous_polynomials(draw, n, degree, coeffs=small_ints, max_terms=4):
    monos = monomials(n, degree)
    picked = draw(st.lists(st.sampled_from(monos), max_size=max_terms, unique=True))
    return Polynomial(n, {m: draw(coeffs) for m in picked})


@st.composite
def multivectors(draw, n, r, max_degree=2, max_slots=3):
    slots = list(combinations(range(1, n + 1), r))
    picked = draw(st.lists(st.sampled_from(slots), max_size=max_slots, unique=True)) if slots else []
    return MultiVector(n, r, {idx: draw(polynomials(n, max_degree)) for idx in picked})


@st.composite
def points(draw, n):
    return [draw(small_rationals) for _ in range(n)]
