import random
from fractions import Fraction

import numpy as np
import pytest

from poisstab.analysis3d import example_pi_k
from poisstab.cohomology import basis
from poisstab.multivector import (MultiVector, OneForm, bivector_from_form, contract_with_volume,
                                  homogeneous_part, integrability_check, jacobiator, schouten)
from poisstab.perturb import (JetVector, TruncationTooLow, find_singularity, jet_extension,
                              obstruction_map, perturb_2d, perturb_3d, random_polynomial,
                              stability_experiment)
from poisstab.polynomial import Polynomial, variables
from samples import random_poisson

x2, y2 = variables(2)
x, y, z = variables(3)


# jets


def test_jet_examples():
    J = jet_extension(MultiVector.basis_element(2, (1, 2)), [5, -1], 1)
    assert J.components == ((1,),)
    J = jet_extension(MultiVector(2, 2, {(1, 2): x2 * y2}), [1, 2], 2)
    assert J.components == ((2,), (2, 1))
    assert J.multivectors()[1] == MultiVector(2, 2, {(1, 2): 2 * x2 + y2})
    assert jet_extension(example_pi_k(3), [0, 0, 0], 3).is_zero()


def test_jet_float_point():
    J = jet_extension(MultiVector(2, 2, {(1, 2): x2 * y2}), [0.5, 0.25], 1)
    assert J.components[0][0] == pytest.approx(0.125)


def test_jet_rejects_bad_shapes():
    with pytest.raises(ValueError):
        jet_extension(MultiVector.basis_element(2, (1, 2)), [0], 1)
    with pytest.raises(ValueError):
        jet_extension(MultiVector.basis_element(2, (1, 2)), [0, 0], 0)
    with pytest.raises(ValueError):
        JetVector(2, 1, (0, 0), ((1,), (1, 2)))


@pytest.mark.parametrize("pi,k", [
    (MultiVector(2, 2, {(1, 2): x2}), 1),
    (MultiVector(2, 2, {(1, 2): x2 * y2}), 2),
    (example_pi_k(3), 3),
    (example_pi_k(4), 4),
])
def test_jet_of_order_k_singularity(pi, k):
    assert jet_extension(pi, [0] * pi.n, k).is_zero()
    assert not jet_extension(pi, [0] * pi.n, k + 1).components[k] == tuple([0] * len(basis(pi.n, 2, k)))


# obstruction map


def test_obstruction_of_zero_is_zero():
    pi = example_pi_k(3)
    v = [MultiVector.zero(3, 2)] * 3
    assert obstruction_map(pi, [1, 2, 3], 3, v).is_zero()


def test_obstruction_k1_is_single_bracket():
    so3 = MultiVector(3, 2, {(1, 2): z, (2, 3): x, (3, 1): y})
    v0 = MultiVector.basis_element(3, (1, 3), 2)
    F = obstruction_map(so3, [0, 0, 0], 1, [v0])
    assert F.multivectors()[0] == schouten(v0, so3)


def test_obstruction_shape_errors():
    pi = example_pi_k(3)
    with pytest.raises(ValueError):
        obstruction_map(pi, [0, 0, 0], 3, [MultiVector.zero(3, 2)] * 2)
    with pytest.raises(ValueError):
        obstruction_map(pi, [0, 0, 0], 2, [MultiVector.zero(3, 2), MultiVector.basis_element(3, (1, 2))])
    with pytest.raises(ValueError):
        obstruction_map(pi, [0, 0, 0], 2, jet_extension(pi, [0, 0, 0], 3))


def test_obstruction_vanishes_on_jets():
    rng = random.Random(13)
    checked = 0
    while checked < 24:
        n = rng.choice([2, 3])
        L = random_poisson(rng, n)
        if L.is_zero():
            continue
        assert jacobiator(L).is_zero()
        k = rng.randint(1, 3)
        p = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
        assert obstruction_map(L, p, k, jet_extension(L, p, k)).is_zero(), (L, p, k)
        checked += 1


def test_obstruction_detects_non_poisson():
    L = MultiVector(3, 2, {(1, 2): x, (2, 3): y})
    assert not obstruction_map(L, [1, 1, 1], 1, jet_extension(L, [1, 1, 1], 1)).is_zero()


# perturbations


def test_random_polynomial_coefficients():
    p = random_polynomial(2, 2, np.random.default_rng(1))
    assert all(abs(c) <= 1 and (c * 10**6).denominator == 1 for c in p.terms.values())


def test_perturb_2d():
    pi = MultiVector(2, 2, {(1, 2): x2})
    assert perturb_2d(pi, 0, 3) == pi
    assert perturb_2d(pi, 0.001, 3) == perturb_2d(pi, Fraction(1, 1000), 3)
    assert perturb_2d(pi, 0.001, 3) != perturb_2d(pi, 0.001, 4)
    with pytest.raises(ValueError):
        perturb_2d(example_pi_k(3), 0.1, 0)


def test_perturb_3d_examples():
    pi = example_pi_k(3)
    assert perturb_3d(pi, 0, 1) == pi
    P = perturb_3d(pi, Fraction(1, 100), 1, truncation_degree=6, shift=False)
    assert P == perturb_3d(pi, Fraction(1, 100), 1, truncation_degree=6, shift=False)
    J = jacobiator(P)
    assert all(homogeneous_part(J, s).is_zero() for s in range(6))
    # the shift moves the truncation error into low degrees, far below the search tolerance
    Js = jacobiator(perturb_3d(pi, Fraction(1, 100), 1, truncation_degree=6))
    low = [float(c) for s in range(6) for _, p in homogeneous_part(Js, s).items() for c in p.terms.values()]
    assert max(map(abs, low), default=0) < 1e-9
    with pytest.raises(TruncationTooLow):
        perturb_3d(pi, Fraction(1, 100), 1, truncation_degree=5)
    with pytest.raises(ValueError):
        perturb_3d(MultiVector(3, 2, {(1, 2): x, (2, 3): y}), 0.1, 0)


def test_linear_structure_perturbation_keeps_low_order_jacobi():
    so3 = MultiVector(3, 2, {(1, 2): z, (2, 3): x, (3, 1): y})
    P = perturb_3d(so3, Fraction(1, 10), 7, shift=False)
    J = jacobiator(P)
    assert all(homogeneous_part(J, s).is_zero() for s in range(4))


def test_conformal_change_preserves_integrability():
    rng = np.random.default_rng(0)
    pi = example_pi_k(3)
    f = random_polynomial(3, 2, rng) * Fraction(1, 10) + 1
    P = MultiVector(3, 2, {i: c * f for i, c in pi.items()})
    assert jacobiator(P).is_zero()
    assert integrability_check(contract_with_volume(P)).is_zero()


# singular point search


def test_find_singularity_on_a_line():
    pi = MultiVector(2, 2, {(1, 2): x2 - Fraction(3, 10)})
    res = find_singularity(pi, 1, [0, 0])
    assert res.found and res.label == "Found"
    assert abs(res.point[0] - 0.3) < 1e-8


def test_find_singularity_none():
    res = find_singularity(MultiVector.basis_element(2, (1, 2)), 1)
    assert not res.found and res.label == "NotFound"


def test_find_singularity_at_high_order_zero():
    res = find_singularity(example_pi_k(3), 3, [0, 0, 0])
    assert res.found and max(abs(v) for v in res.point) < 1e-6


def test_found_residual_reverified():
    pi = MultiVector(2, 2, {(1, 2): x2 * x2 + y2 - 1})
    res = find_singularity(pi, 1, [0.2, 0.1])
    assert res.found
    J = jet_extension(pi, list(res.point), 1)
    assert float(np.linalg.norm([float(v) for v in J.flat()])) < 1e-9


def test_find_singularity_respects_radius():
    pi = MultiVector(2, 2, {(1, 2): x2 - 3})
    assert not find_singularity(pi, 1, [0, 0], radius=1.0).found


# experiments


def test_experiment_reproducible():
    pi = MultiVector(2, 2, {(1, 2): x2})
    a = stability_experiment(pi, 1, trials=10, seed=4)
    b = stability_experiment(pi, 1, trials=10, seed=4)
    assert a.as_dict() == b.as_dict()
    assert a.successes <= a.trials
    assert all(r.residual < a.tolerance for r in a.results if r.found)


def test_experiment_zero_eps():
    pi = MultiVector(2, 2, {(1, 2): x2})
    rep = stability_experiment(pi, 1, trials=5, eps=0)
    assert rep.successes == 5
    assert all(r.distance == 0 for r in rep.results)


def test_experiment_rejects_wrong_order():
    with pytest.raises(ValueError):
        stability_experiment(MultiVector.basis_element(2, (1, 2)), 1, trials=1)
    with pytest.raises(ValueError):
        stability_experiment(MultiVector(3, 2, {(1, 2): x, (2, 3): y}), 1, trials=1)


def test_experiment_report_only_for_uncertified_point():
    rep = stability_experiment(MultiVector(2, 2, {(1, 2): x2 * y2}), 2, trials=5)
    assert 0 <= rep.successes <= 5


def test_experiment_3d():
    rep = stability_experiment(example_pi_k(3), 3, trials=2, eps=Fraction(1, 1000), seed=1)
    assert rep.trials == 2 and len(rep.results) == 2
