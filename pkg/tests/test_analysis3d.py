from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import homogeneous_polynomials
from poisstab.analysis3d import (algebraically_isolated, default_bound, example_pi_k,
                                 lemma33_certificate, liouville_decomposition_check,
                                 modular_vector_field)
from poisstab.cohomology import NotHomogeneous, NotPoisson, lp_cohomology, stability_certificate
from poisstab.multivector import (MultiVector, OneForm, bivector_from_form, jacobiator,
                                  liouville_field, vector_field, wedge)
from poisstab.polynomial import Polynomial, variables

x, y, z = variables(3)
ZERO = Polynomial.zero(3)


def test_modular_field_examples():
    assert modular_vector_field(MultiVector.basis_element(2, (1, 2))).is_zero()
    x2, y2 = variables(2)
    X = modular_vector_field(MultiVector(2, 2, {(1, 2): x2}))
    assert X == vector_field([Polynomial.zero(2), Polynomial.constant(2, 1)])


def test_modular_field_is_divergence_of_hamiltonians():
    # X(f) = div H_f with H_f = pi(., df), i.e. H_f^i = sum_j pi^{ij} d_j f
    pi = MultiVector(3, 2, {(1, 2): x * y * z, (1, 3): y * y, (2, 3): x + z})
    X = modular_vector_field(pi)
    f = x * x * y + z
    M = [[pi.coefficient(tuple(sorted((i + 1, j + 1)))) * (1 if i < j else -1) if i != j else ZERO
          for j in range(3)] for i in range(3)]
    H = [sum((M[i][j] * f.diff(j) for j in range(3)), ZERO) for i in range(3)]
    div = sum((H[i].diff(i) for i in range(3)), ZERO)
    Xf = sum((X.coefficient((i + 1,)) * f.diff(i) for i in range(3)), ZERO)
    assert div == Xf


def test_isolation_examples():
    v = algebraically_isolated(liouville_field(3))
    assert v.isolated and v.outcome == "Isolated(1)"
    und = algebraically_isolated(vector_field([x, y, ZERO]), bound=5)
    assert not und.isolated and und.outcome == "Undecided(5)"
    assert all(und.codimension(d) == 1 for d in range(1, 6))


def test_isolation_rejects_bad_input():
    with pytest.raises(NotHomogeneous):
        algebraically_isolated(vector_field([x, y * y, z]))
    with pytest.raises(ValueError):
        algebraically_isolated(MultiVector.basis_element(3, (1, 2)))
    with pytest.raises(ValueError):
        algebraically_isolated(liouville_field(3), bound=0)


def test_isolation_of_zero_field_is_undecided():
    v = algebraically_isolated(MultiVector.zero(3, 1), bound=3)
    assert v.outcome == "Undecided(3)"


def test_default_bound():
    assert default_bound(2) == 7


def test_example_family():
    p3 = example_pi_k(3)
    assert p3.coefficient((1, 2)) == x * y * y - y * x * x
    assert p3.coefficient((1, 3)) == -(z * x * x - x * z * z)
    assert jacobiator(p3).is_zero()
    with pytest.warns(UserWarning):
        assert example_pi_k(2).is_zero()
    with pytest.raises(ValueError):
        example_pi_k(1)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_liouville_decomposition_of_family(k):
    pi = example_pi_k(k)
    X = modular_vector_field(pi)
    assert X.is_homogeneous(k - 1)
    assert liouville_decomposition_check(pi, X, k)
    assert not liouville_decomposition_check(pi, X.scale(-1), k)


def test_liouville_check_examples():
    assert not liouville_decomposition_check(MultiVector.basis_element(3, (1, 2)), liouville_field(3), 3)
    X = vector_field([z * z, ZERO, ZERO])
    pi = wedge(liouville_field(3), X).scale(Fraction(1, 4))
    assert liouville_decomposition_check(pi, X, 3)


def test_family_k3_modular_field_is_not_isolated():
    X = modular_vector_field(example_pi_k(3))
    assert X == vector_field([(x * x - x * y - x * z) * 2, (y * y - x * y - y * z) * 2,
                              (z * z - x * z - y * z) * 2])
    v = algebraically_isolated(X, 6)
    # the components vanish on the three lines (0,t,t), (t,0,t), (t,t,0)
    for d in range(2, 7):
        assert v.codimension(d) == 3
    for pt in ([0, 1, 1], [1, 0, 1], [1, 1, 0]):
        assert all(X.coefficient((i,))(pt) == 0 for i in (1, 2, 3))


def test_family_k4_certifies_both_ways():
    pi = example_pi_k(4)
    res = lemma33_certificate(pi)
    assert res.verdict == "CertifiedViaModular" and res.isolation.outcome == "Isolated(7)"
    assert stability_certificate(pi).verdict == "Certified"


def test_modular_certificate_edge_cases():
    # constant modular field: the ideal is everything, but the origin is not a zero
    pi = MultiVector(3, 2, {(1, 2): x})
    res = lemma33_certificate(pi)
    assert res.isolation.outcome == "Isolated(0)"
    assert res.verdict == "Inconclusive"
    assert lp_cohomology(pi, 0).dim_cohomology == 1
    # unimodular: the modular field vanishes identically
    assert lemma33_certificate(MultiVector(3, 2, {(1, 2): z, (2, 3): x, (3, 1): y})).verdict == "Inconclusive"
    with pytest.raises(NotHomogeneous):
        lemma33_certificate(MultiVector.zero(3, 2))
    with pytest.raises(NotPoisson):
        lemma33_certificate(MultiVector(3, 2, {(1, 2): x, (2, 3): y}))


@settings(max_examples=40)
@given(st.data())
def test_modular_field_linear_and_degree_drop(data):
    k = data.draw(st.integers(1, 3))
    a = MultiVector(3, 2, {idx: data.draw(homogeneous_polynomials(3, k)) for idx in ((1, 2), (1, 3), (2, 3))})
    b = MultiVector(3, 2, {(1, 2): data.draw(homogeneous_polynomials(3, k))})
    c = data.draw(st.integers(-3, 3))
    assert modular_vector_field(a + b.scale(c)) == modular_vector_field(a) + modular_vector_field(b).scale(c)
    X = modular_vector_field(a)
    assert X.is_zero() or X.is_homogeneous(k - 1)


def _pushforward(pi, A):
    """A_* pi for the linear map x -> A x."""
    Ai = [[Fraction(int(v.p), int(v.q)) for v in row] for row in sp.Matrix(A).inv().tolist()]
    sub = [sum((variables(3)[j] * Ai[i][j] for j in range(3)), ZERO) for i in range(3)]
    M = [[ZERO] * 3 for _ in range(3)]
    for (a, b), c in pi.items():
        c2 = c.substitute(sub)
        M[a - 1][b - 1], M[b - 1][a - 1] = c2, -c2
    return MultiVector(3, 2, {(i + 1, j + 1): sum((M[a][b] * (A[i][a] * A[j][b])
                                                   for a in range(3) for b in range(3)), ZERO)
                              for i in range(3) for j in range(i + 1, 3)})


invertible = st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=3, max_size=3).filter(
    lambda A: sp.Matrix(A).det() != 0)


@settings(max_examples=25)
@given(invertible, st.sampled_from([3, 4]))
def test_modular_certificate_implies_full_certificate(A, k):
    # random linear images of the family; k = 3 exercises the Inconclusive branch
    pi = _pushforward(example_pi_k(k), A)
    assert jacobiator(pi).is_zero()
    res = lemma33_certificate(pi)
    assert res.certified == (k == 4)
    if res.certified:
        assert stability_certificate(pi).verdict == "Certified"


def test_isolation_fullness_propagates():
    v = algebraically_isolated(modular_vector_field(example_pi_k(4)))
    d = v.degree
    assert v.codimension(d) == 0 and v.codimension(d + 1) == 0
