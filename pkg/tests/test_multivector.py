from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import multivectors, points, polynomials
from poisstab.multivector import (DimensionError, MultiVector, OneForm, bivector_from_form,
                                  contract_with_volume, homogeneous_decomposition,
                                  homogeneous_part, integrability_check, is_poisson, jacobiator,
                                  liouville_field, recenter, schouten, sort_indices, vector_field,
                                  wedge)
from poisstab.polynomial import Polynomial, variables

x2, y2 = variables(2)
x, y, z = variables(3)


def _sign(e):
    return -1 if e % 2 else 1


def e(n, *idx, c=None):
    return MultiVector.basis_element(n, idx, c)


def test_unsorted_indices_flip_sign():
    assert MultiVector(2, 2, {(2, 1): x2}) == MultiVector(2, 2, {(1, 2): -x2})
    assert sort_indices((3, 1, 2)) == (1, (1, 2, 3))
    assert sort_indices((1, 1))[0] == 0


def test_out_of_range_index():
    with pytest.raises(IndexError):
        MultiVector(2, 2, {(1, 3): x2})
    with pytest.raises(DimensionError):
        wedge(e(2, 1), e(3, 1))


def test_wedge_examples():
    assert wedge(e(2, 1), e(2, 2)) == e(2, 1, 2)
    assert wedge(e(2, 1), e(2, 1)).is_zero()
    A = vector_field([x, Polynomial.zero(3), Polynomial.zero(3)])
    B = vector_field([Polynomial.zero(3), y, Polynomial.constant(3, 1)])
    assert wedge(A, B) == MultiVector(3, 2, {(1, 2): x * y, (1, 3): x})


def test_wedge_overflow_is_zero():
    assert wedge(e(2, 1, 2), e(2, 1)).is_zero()


def test_schouten_examples():
    assert schouten(e(2, 1, 2), e(2, 1, 2)).is_zero()
    X = vector_field([Polynomial.zero(2), x2])
    Y = vector_field([y2, Polynomial.zero(2)])
    assert schouten(X, Y) == vector_field([x2, -y2])
    assert schouten(e(2, 1), e(2, 1, 2, c=x2)) == e(2, 1, 2)


def test_bracket_with_function_is_derivative():
    X = vector_field([y2, x2 * x2])
    f = MultiVector.function(x2 * y2)
    assert schouten(X, f) == MultiVector.function(y2 * y2 + x2**3)


def test_jacobiator_examples():
    assert jacobiator(e(2, 1, 2)).is_zero()
    assert jacobiator(e(2, 1, 2, c=x2 * y2)).is_zero()
    pi = MultiVector(3, 2, {(1, 2): x, (2, 3): y})
    assert not jacobiator(pi).is_zero()
    with pytest.raises(ValueError):
        jacobiator(e(3, 1))


def test_lie_poisson_so3_is_poisson():
    pi = MultiVector(3, 2, {(1, 2): z, (2, 3): x, (3, 1): y})
    assert is_poisson(pi)


def test_homogeneous_part_examples():
    A = e(2, 1, 2, c=1 + x2 + x2**2)
    assert homogeneous_part(A, 1) == e(2, 1, 2, c=x2)
    B = e(2, 1, 2, c=x2 * y2)
    assert homogeneous_part(B, 0).is_zero()
    assert homogeneous_part(B, 2) == B


def test_recenter_examples():
    assert recenter(e(2, 1, 2, c=x2), [1, 0]) == e(2, 1, 2, c=x2 + 1)
    A = e(2, 1, 2, c=x2 * y2)
    assert recenter(A, [1, 2]) == e(2, 1, 2, c=2 + 2 * x2 + y2 + x2 * y2)
    assert recenter(recenter(A, [1, 2]), [-1, -2]) == A


def test_liouville_field():
    assert liouville_field(3) == vector_field([x, y, z])
    assert liouville_field(1) == vector_field([variables(1)[0]])
    assert liouville_field(2) == vector_field([x2, y2])


def test_volume_contraction_anchors():
    one, zero = Polynomial.constant(3, 1), Polynomial.zero(3)
    assert contract_with_volume(e(3, 1, 2)) == OneForm([zero, zero, one])
    assert contract_with_volume(e(3, 2, 3)) == OneForm([one, zero, zero])
    P, Q, R = x, y * y, z + 1
    pi = MultiVector(3, 2, {(1, 2): P, (2, 3): Q, (3, 1): R})
    assert contract_with_volume(pi) == OneForm([Q, R, P])
    assert bivector_from_form(contract_with_volume(pi)) == pi


def test_integrability_examples():
    zero = Polynomial.zero(3)
    assert integrability_check(OneForm([zero, zero, Polynomial.constant(3, 1)])).is_zero()
    assert integrability_check(contract_with_volume(e(3, 1, 2, c=x * y))).is_zero()
    # z dx + x dy + y dz:  alpha ^ d alpha = (x + y + z) dx^dy^dz
    assert integrability_check(OneForm([z, x, y])) == x + y + z


# structural properties

@settings(max_examples=120)
@given(st.data())
def test_graded_antisymmetry(data):
    n = data.draw(st.integers(min_value=1, max_value=3))
    a = data.draw(st.integers(min_value=0, max_value=n))
    b = data.draw(st.integers(min_value=0, max_value=n))
    A = data.draw(multivectors(n, a))
    B = data.draw(multivectors(n, b))
    sign = _sign((a - 1) * (b - 1))
    lhs = schouten(A, B)
    rhs = schouten(B, A).scale(-sign)
    assert lhs == rhs


@settings(max_examples=120)
@given(st.data())
def test_graded_leibniz(data):
    n = 3
    a, b, c = (data.draw(st.integers(min_value=0, max_value=2)) for _ in range(3))
    A = data.draw(multivectors(n, a))
    B = data.draw(multivectors(n, b, max_slots=2))
    C = data.draw(multivectors(n, c, max_slots=2))
    lhs = schouten(A, wedge(B, C))
    rhs = wedge(schouten(A, B), C) + wedge(B, schouten(A, C)).scale(_sign((a - 1) * b))
    assert lhs == rhs


@settings(max_examples=120)
@given(st.data())
def test_graded_jacobi(data):
    n = 3
    a, b, c = data.draw(st.sampled_from([(1, 1, 2), (1, 2, 2), (2, 1, 2), (2, 2, 1)]))
    A = data.draw(multivectors(n, a, max_degree=2, max_slots=2))
    B = data.draw(multivectors(n, b, max_degree=2, max_slots=2))
    C = data.draw(multivectors(n, c, max_degree=2, max_slots=2))
    lhs = schouten(A, schouten(B, C))
    rhs = schouten(schouten(A, B), C) + schouten(B, schouten(A, C)).scale(_sign((a - 1) * (b - 1)))
    assert lhs == rhs


def _random_integrable(data):
    # f * dg is integrable, so its bivector is Poisson
    f = data.draw(polynomials(3, 1))
    g = data.draw(polynomials(3, 2))
    alpha = OneForm([g.diff(0) * f, g.diff(1) * f, g.diff(2) * f])
    return bivector_from_form(alpha)


@settings(max_examples=60)
@given(st.data())
def test_jacobi_iff_integrable(data):
    pi = _random_integrable(data) if data.draw(st.booleans()) else data.draw(multivectors(3, 2))
    J = jacobiator(pi)
    residual = integrability_check(contract_with_volume(pi))
    assert J.coefficient((1, 2, 3)) == residual * -2
    assert J.is_zero() == residual.is_zero()


@given(multivectors(3, 2), points(3), points(3))
def test_recenter_is_a_group_action(A, p, q):
    assert recenter(A, [a + b for a, b in zip(p, q)]) == recenter(recenter(A, p), q)


@given(multivectors(3, 2))
def test_homogeneous_decomposition_sums_back(A):
    parts = homogeneous_decomposition(A)
    total = MultiVector.zero(3, 2)
    for part in parts.values():
        total = total + part
    assert total == A


@given(multivectors(2, 1), multivectors(2, 1))
def test_vector_field_bracket_matches_commutator(X, Y):
    f = x2**2 * y2 + Fraction(1, 2) * y2
    F = MultiVector.function(f)
    lhs = schouten(schouten(X, Y), F)
    rhs = schouten(X, schouten(Y, F)) - schouten(Y, schouten(X, F))
    assert lhs == rhs
