import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import homogeneous_polynomials
from poisstab import linalg
from poisstab.cohomology import (NotHomogeneous, NotPoisson, antisymmetric_from_upper, basis,
                                 basis_dimension, differential_matrix, lemma32_criterion,
                                 lp_cohomology, quadratic_diagonal, stability_certificate)
from poisstab.multivector import MultiVector, OneForm, bivector_from_form, jacobiator, schouten
from poisstab.polynomial import Polynomial, variables

x2, y2 = variables(2)
x, y, z = variables(3)
REMARK = MultiVector(2, 2, {(1, 2): x2 * y2})


def test_basis_examples():
    b = basis(2, 2, 0)
    assert len(b) == 1 and b.element(0) == MultiVector.basis_element(2, (1, 2))
    assert basis(3, 2, 1).dim == 9
    assert basis(3, 1, -1).dim == 0
    assert basis(2, 3, 0).dim == 0


@pytest.mark.parametrize("n,r,s", [(2, 1, 2), (3, 2, 2), (3, 3, 1), (4, 2, 0)])
def test_basis_dimension_formula(n, r, s):
    assert len(basis(n, r, s)) == basis_dimension(n, r, s)


def test_basis_order_index_major():
    els = basis(2, 1, 1).elements
    assert els == (((1,), (1, 0)), ((1,), (0, 1)), ((2,), (1, 0)), ((2,), (0, 1)))


def test_differential_matrix_examples():
    m = differential_matrix(REMARK, 2, 0)
    assert m.shape == (0, 1)
    pi = MultiVector(2, 2, {(1, 2): x2})
    d = differential_matrix(pi, 1, 0)
    # image of d/dx is -e[1,2]
    assert d.shape == (1, 2) and d.column(0) == [-1]
    assert linalg.rank(d) == 1
    zero = differential_matrix(MultiVector.zero(3, 2), 1, 1, k=2)
    assert zero.is_zero()


def test_lp_cohomology_examples():
    rep = lp_cohomology(REMARK, 0)
    assert rep.dim_cohomology == 1
    assert rep.witness == MultiVector.basis_element(2, (1, 2))
    assert lp_cohomology(MultiVector(2, 2, {(1, 2): x2}), 0).dim_cohomology == 0
    qd = quadratic_diagonal(antisymmetric_from_upper(3, [1, 2, 4]))
    assert [lp_cohomology(qd, s).dim_cohomology for s in (0, 1)] == [0, 0]


def test_not_poisson_rejected():
    with pytest.raises(NotPoisson):
        lp_cohomology(MultiVector(3, 2, {(1, 2): x, (2, 3): y}), 0)


def test_mixed_degree_rejected():
    with pytest.raises(NotHomogeneous):
        stability_certificate(MultiVector(2, 2, {(1, 2): x2 + x2 * y2}))
    with pytest.raises(NotHomogeneous):
        stability_certificate(MultiVector.zero(2, 2))


def test_certificate_examples():
    assert stability_certificate(MultiVector(2, 2, {(1, 2): x2})).verdict == "Certified"
    cert = stability_certificate(REMARK)
    assert cert.verdict == "NotCertified"
    assert cert.witness == MultiVector.basis_element(2, (1, 2))


def test_quadratic_diagonal_examples():
    assert quadratic_diagonal([[0, 1], [-1, 0]]) == REMARK
    assert quadratic_diagonal([[0] * 3] * 3).is_zero()
    qd = quadratic_diagonal(antisymmetric_from_upper(3, [1, 2, 4]))
    assert qd == MultiVector(3, 2, {(1, 2): x * y, (1, 3): 2 * x * z, (2, 3): 4 * y * z})
    with pytest.raises(ValueError):
        quadratic_diagonal([[0, 1], [1, 0]])


def test_lambda_criterion_examples():
    ok = lemma32_criterion(antisymmetric_from_upper(3, [1, 2, 4]))
    assert ok.satisfied and ok.lambdas == (3, 3, -6)
    bad = lemma32_criterion(antisymmetric_from_upper(3, [1, 1, 1]))
    assert not bad.satisfied and "lambda_2" in bad.reason
    assert not lemma32_criterion(antisymmetric_from_upper(3, [0, 0, 0])).satisfied


def test_lambda_criterion_on_random_samples():
    rng = random.Random(7)
    hits = 0
    while hits < 25:
        upper = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(3)]
        a = antisymmetric_from_upper(3, upper)
        if not lemma32_criterion(a).satisfied:
            continue
        hits += 1
        pi = quadratic_diagonal(a)
        assert [lp_cohomology(pi, s).dim_cohomology for s in (0, 1)] == [0, 0], upper


def test_witness_is_cocycle_outside_image():
    for pi in (REMARK, MultiVector(3, 2, {(1, 2): x * y, (1, 3): x * z, (2, 3): y * z})):
        k = 2
        for s in range(k):
            rep = lp_cohomology(pi, s)
            if rep.witness is None:
                assert rep.dim_cohomology == 0
                continue
            assert schouten(pi, rep.witness).is_zero()
            d_in = differential_matrix(pi, 1, s - k + 1)
            image = linalg.column_space_basis(d_in)
            w = basis(pi.n, 2, s).coordinates(rep.witness)
            assert not linalg.in_span(image, w)


# random homogeneous Poisson structures


@st.composite
def poisson_3d(draw, k):
    # f * dg is integrable; coefficients have degree deg f + deg g - 1
    a = draw(st.integers(0, k - 1))
    f = draw(homogeneous_polynomials(3, a, max_terms=2))
    g = draw(homogeneous_polynomials(3, k - a + 1, max_terms=3))
    return bivector_from_form(OneForm([g.diff(i) * f for i in range(3)]))


@st.composite
def poisson_2d(draw, k):
    return MultiVector(2, 2, {(1, 2): draw(homogeneous_polynomials(2, k))})


@settings(max_examples=30)
@given(st.data())
def test_differential_squares_to_zero(data):
    k = data.draw(st.integers(1, 3))
    pi = data.draw(st.one_of(poisson_2d(k), poisson_3d(k)))
    assert jacobiator(pi).is_zero()
    s = data.draw(st.integers(0, 2))
    for r in range(0, pi.n):
        d1 = differential_matrix(pi, r, s, k)
        d2 = differential_matrix(pi, r + 1, s + k - 1, k)
        if d1.cols and d2.rows:
            assert (d2 @ d1).is_zero()


@settings(max_examples=30)
@given(st.data())
def test_report_is_rank_nullity_consistent(data):
    k = data.draw(st.integers(1, 3))
    pi = data.draw(poisson_3d(k))
    if pi.is_zero():
        return
    s = data.draw(st.integers(0, k))
    rep = lp_cohomology(pi, s)
    assert rep.dim_space == basis_dimension(3, 2, s)
    assert 0 <= rep.dim_image <= rep.dim_kernel <= rep.dim_space
    assert (rep.witness is not None) == (rep.dim_cohomology > 0)


def _sym(mv):
    xs = oracles.symbols(mv.n)
    return {idx: sp.sympify(p.to_str([str(v) for v in xs]).replace("^", "**")) for idx, p in mv.items()}


@pytest.mark.parametrize("pi,k", [
    (REMARK, 2),
    (MultiVector(2, 2, {(1, 2): x2}), 1),
    (quadratic_diagonal(antisymmetric_from_upper(3, [1, 2, 4])), 2),
    (MultiVector(3, 2, {(1, 2): z, (2, 3): x, (3, 1): y}), 1),
    (MultiVector(3, 2, {(1, 2): x * y**2 - y * x**2, (2, 3): y * z**2 - z * y**2,
                        (3, 1): z * x**2 - x * z**2}), 3),
])
def test_dimensions_match_sympy_oracle(pi, k):
    for s in range(k + 1):
        assert lp_cohomology(pi, s).dim_cohomology == oracles.lp_h2_dimension(_sym(pi), pi.n, k, s)
