"""Perturbation experiments: jets, the obstruction map and a singular-point search.

Everything that builds a perturbed structure is exact (rational); floating
point enters only in :func:`find_singularity`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Sequence

import numpy as np

from .cohomology import basis
from .multivector import (MultiVector, bivector_matrix, homogeneous_part, jacobiator,
                          lowest_order, recenter, schouten)
from .polynomial import Polynomial, monomials, variables


class TruncationTooLow(ValueError):
    pass


# jets


@dataclass(frozen=True)
class JetVector:
    """(k-1)-jet of a bivector at ``point``: component s lists the coordinates
    of the s-homogeneous part in the canonical basis of 2-vectors."""

    n: int
    k: int
    point: tuple
    components: tuple[tuple, ...]

    def __post_init__(self):
        if len(self.components) != self.k:
            raise ValueError(f"expected {self.k} components, got {len(self.components)}")
        for s, comp in enumerate(self.components):
            if len(comp) != len(basis(self.n, 2, s)):
                raise ValueError(f"component {s} has the wrong length")

    def multivectors(self) -> list[MultiVector]:
        return [basis(self.n, 2, s).combine(c) for s, c in enumerate(self.components)]

    def is_zero(self) -> bool:
        return not any(v for comp in self.components for v in comp)

    def flat(self) -> list:
        return [v for comp in self.components for v in comp]


def _exact_point(p: Sequence) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in p)


def _homogeneous_parts(L: MultiVector, p: Sequence, upto: int) -> list[MultiVector]:
    shifted = recenter(L, list(p))
    return [homogeneous_part(shifted, s) for s in range(upto)]


def jet_extension(L: MultiVector, p: Sequence, k: int) -> JetVector:
    """J^{k-1}(p) = (L^(0)_p, ..., L^(k-1)_p), exact when p is rational."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if L.r != 2:
        raise ValueError("jets are taken of bivectors")
    if len(p) != L.n:
        raise ValueError(f"point has {len(p)} coordinates, expected {L.n}")
    pt = tuple(Fraction(v) if isinstance(v, int) else v for v in p)
    parts = _homogeneous_parts(L, pt, k)
    comps = []
    for s, part in enumerate(parts):
        comps.append(tuple(basis(L.n, 2, s).coordinates(part)))
    return JetVector(L.n, k, pt, tuple(comps))


@dataclass(frozen=True)
class ObstructionVector:
    """Components l = k..2k-1, each a coordinate vector of 3-vectors of degree l-1."""

    n: int
    k: int
    components: tuple[tuple, ...]

    def multivectors(self) -> list[MultiVector]:
        return [basis(self.n, 3, l - 1).combine(c)
                for l, c in zip(range(self.k, 2 * self.k), self.components)]

    def is_zero(self) -> bool:
        return not any(v for comp in self.components for v in comp)


def obstruction_map(L: MultiVector, p: Sequence, k: int, v) -> ObstructionVector:
    """F^l = sum_{i <= l-k} [v_i, L^(l-i)_p] + 1/2 sum_{l-k < i,j <= k-1, i+j=l} [v_i, v_j]."""
    if isinstance(v, JetVector):
        if v.n != L.n or v.k != k:
            raise ValueError("jet shape does not match (n, k)")
        vs = v.multivectors()
    else:
        if len(v) != k:
            raise ValueError(f"need {k} components, got {len(v)}")
        vs = []
        for s, comp in enumerate(v):
            if isinstance(comp, MultiVector):
                if comp.n != L.n or not (comp.is_zero() or (comp.r == 2 and comp.is_homogeneous(s))):
                    raise ValueError(f"component {s} is not an {s}-homogeneous bivector")
                vs.append(comp if not comp.is_zero() else MultiVector.zero(L.n, 2))
            else:
                if len(comp) != len(basis(L.n, 2, s)):
                    raise ValueError(f"component {s} has the wrong length")
                vs.append(basis(L.n, 2, s).combine(comp))
    lam = _homogeneous_parts(L, list(p), 2 * k)
    half = Fraction(1, 2)
    out = []
    for l in range(k, 2 * k):
        acc = MultiVector.zero(L.n, 3)
        for i in range(0, l - k + 1):
            acc = acc + schouten(vs[i], lam[l - i])
        for i in range(l - k + 1, k):
            j = l - i
            if l - k < j <= k - 1:
                acc = acc + schouten(vs[i], vs[j]).scale(half)
        out.append(tuple(basis(L.n, 3, l - 1).coordinates(acc)))
    return ObstructionVector(L.n, k, tuple(out))


# random structure-preserving perturbations

COEFF_DENOMINATOR = 10**6


def _rng(seed):
    return np.random.default_rng(seed)


def _as_fraction(eps) -> Fraction:
    if isinstance(eps, float):
        return Fraction(repr(eps))
    return Fraction(eps)


def random_polynomial(n: int, max_degree: int, rng, min_degree: int = 0) -> Polynomial:
    """Coefficients uniform in [-1, 1], rounded to multiples of 1e-6."""
    terms = {}
    for d in range(min_degree, max_degree + 1):
        for m in monomials(n, d):
            c = int(rng.integers(-COEFF_DENOMINATOR, COEFF_DENOMINATOR + 1))
            terms[m] = Fraction(c, COEFF_DENOMINATOR)
    return Polynomial(n, terms)


def perturb_2d(pi: MultiVector, eps, seed) -> MultiVector:
    """pi + eps * g dx^dy with g a seeded random polynomial of degree <= 2."""
    if pi.n != 2 or pi.r != 2:
        raise ValueError("perturb_2d needs a bivector on R^2")
    e = _as_fraction(eps)
    g = random_polynomial(2, 2, _rng(seed))
    return pi + MultiVector(2, 2, {(1, 2): g * e})


def _inverse_map(quad: list[Polynomial], eps: Fraction, D: int) -> list[Polynomial]:
    """Formal inverse of y = x + eps * quad(x), truncated at degree D.

    Each fixed-point step psi <- y - eps * quad(psi) fixes one more degree.
    """
    n = len(quad)
    ys = variables(n)
    psi = list(ys)
    for _ in range(D - 1):
        psi = [(ys[i] - q.substitute(psi, max_degree=D) * eps).truncate(D)
               for i, q in enumerate(quad)]
    return psi


def perturb_3d(pi: MultiVector, eps, seed, truncation_degree: int | None = None,
               shift: bool = True) -> MultiVector:
    """Conformal change of a polynomial pushforward, truncated at degree D.

    Returns f * (phi_* pi) with phi(x) = x + eps h(x), h homogeneous
    quadratic, and f = 1 + eps g with deg g <= 2.  The homogeneous parts of [result, result] of degree < D
    vanish (checked).  With ``shift`` the result is also translated by a
    random point of size eps, so the singular point leaves the origin.
    """
    if pi.n != 3 or pi.r != 2:
        raise ValueError("perturb_3d needs a bivector on R^3")
    if not jacobiator(pi).is_zero():
        raise ValueError("perturb_3d needs a Poisson bivector")
    k = lowest_order(pi)
    if k is None:
        return pi
    D = 2 * k + 2 if truncation_degree is None else truncation_degree
    if D < 2 * k:
        raise TruncationTooLow(f"truncation degree {D} < 2k = {2 * k}")
    e = _as_fraction(eps)
    if e == 0:
        return pi
    rng = _rng(seed)
    n = 3
    # a linear part in h would put det(I + eps L) into every denominator
    h = [random_polynomial(n, 2, rng, min_degree=2) for _ in range(n)]
    g = random_polynomial(n, 2, rng)
    u = [Fraction(int(rng.integers(-COEFF_DENOMINATOR, COEFF_DENOMINATOR + 1)), COEFF_DENOMINATOR)
         for _ in range(n)]

    xs = variables(n)
    phi = [xs[i] + h[i] * e for i in range(n)]
    jac = [[phi[a].diff(i) for i in range(n)] for a in range(n)]
    psi = _inverse_map(h, e, D)

    M = bivector_matrix(pi)
    terms = {}
    for a, b in combinations(range(n), 2):
        c = Polynomial.zero(n)
        for i in range(n):
            for j in range(n):
                if M[i][j]:
                    c = c + jac[a][i] * jac[b][j] * M[i][j]
        c = c.truncate(D).substitute(psi, max_degree=D)
        c = (c * (g * e + 1)).truncate(D)
        if c:
            terms[(a + 1, b + 1)] = c
    out = MultiVector(n, 2, terms)
    J = jacobiator(out)
    low = [s for s in J.degrees() if s < D]
    if low:
        raise AssertionError(f"jacobiator has nonzero parts in degrees {low} < {D}")
    if shift:
        out = recenter(out, [-e * v for v in u])
    return out


# singular point search


class _JetEvaluator:
    """Fast float evaluation of the stacked (k-1)-jet coordinates."""

    def __init__(self, L: MultiVector, k: int):
        n = L.n
        self.n = n
        rows = []
        for s in range(k):
            for idx, mono in basis(n, 2, s).elements:
                q = L.coefficient(idx)
                for i, e in enumerate(mono):
                    for _ in range(e):
                        q = q.diff(i)
                denom = 1
                for e in mono:
                    denom *= factorial(e)
                items = list(q.terms.items())
                exps = np.array([m for m, _ in items], dtype=float).reshape(len(items), n)
                coeffs = np.array([float(c) / denom for _, c in items], dtype=float)
                rows.append((exps, coeffs))
        self.rows = rows

    def __call__(self, p: np.ndarray) -> np.ndarray:
        out = np.empty(len(self.rows))
        for r, (exps, coeffs) in enumerate(self.rows):
            if coeffs.size == 0:
                out[r] = 0.0
            else:
                out[r] = coeffs @ np.prod(p ** exps, axis=1)
        return out


@dataclass(frozen=True)
class SingularityResult:
    found: bool
    point: tuple[float, ...]
    residual: float
    iterations: int

    @property
    def label(self) -> str:
        return "Found" if self.found else "NotFound"


FD_STEP = 1e-6
MAX_ITER = 100


def find_singularity(L: MultiVector, k: int, x0: Sequence[float] | None = None,
                     radius: float = 1.0, tol: float = 1e-9) -> SingularityResult:
    """Gauss-Newton on the stacked jet coordinates with a central-difference Jacobian."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = L.n
    x0 = np.zeros(n) if x0 is None else np.asarray(x0, dtype=float)
    F = _JetEvaluator(L, k)
    p = x0.copy()
    r = F(p)
    res = float(np.linalg.norm(r))
    it = 0
    # polish below tol so the verdict is not decided by a hair
    while it < MAX_ITER and res >= tol * 1e-3:
        it += 1
        Jm = np.empty((r.size, n))
        for i in range(n):
            d = np.zeros(n)
            d[i] = FD_STEP
            Jm[:, i] = (F(p + d) - F(p - d)) / (2 * FD_STEP)
        step = -np.linalg.lstsq(Jm, r, rcond=None)[0]
        t = 1.0
        improved = False
        while t > 1e-12:
            q = p + t * step
            rq = F(q)
            rn = float(np.linalg.norm(rq))
            if rn < res:
                p, r, res = q, rq, rn
                improved = True
                break
            t /= 2
        if not improved:
            break
    res = float(np.linalg.norm(F(p)))
    inside = float(np.linalg.norm(p - x0)) <= radius
    return SingularityResult(res < tol and inside, tuple(float(v) for v in p), res, it)


# experiments


@dataclass(frozen=True)
class TrialResult:
    trial: int
    found: bool
    point: tuple[float, ...]
    residual: float
    distance: float


@dataclass
class ExperimentReport:
    k: int
    trials: int
    epsilon: str
    seed: int
    tolerance: float
    radius: float
    results: list[TrialResult] = field(default_factory=list)

    @property
    def successes(self) -> int:
        return sum(r.found for r in self.results)

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "trials": self.trials,
            "successes": self.successes,
            "epsilon": self.epsilon,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "radius": self.radius,
            "results": [{"trial": r.trial, "found": r.found, "point": list(r.point),
                         "residual": r.residual, "distance": r.distance} for r in self.results],
        }


def _check_order(pi: MultiVector, k: int) -> None:
    jet = jet_extension(pi, [0] * pi.n, k)
    if not jet.is_zero():
        raise ValueError(f"the origin is not a singular point of order {k}")


def stability_experiment(pi: MultiVector, k: int, trials: int = 100, eps=Fraction(1, 1000),
                         seed: int = 0, radius: float = 0.1, tol: float = 1e-9,
                         truncation_degree: int | None = None) -> ExperimentReport:
    """Perturb ``trials`` times and search for a nearby order-k singular point."""
    if not jacobiator(pi).is_zero():
        raise ValueError("stability_experiment needs a Poisson bivector")
    _check_order(pi, k)
    if trials < 0:
        raise ValueError("trials must be >= 0")
    e = _as_fraction(eps)
    report = ExperimentReport(k, trials, str(e), seed, tol, radius)
    origin = np.zeros(pi.n)
    for t in range(trials):
        sub = [seed, t]
        if pi.n == 2:
            P = perturb_2d(pi, e, sub)
        elif pi.n == 3:
            P = perturb_3d(pi, e, sub, truncation_degree)
        else:
            raise ValueError("experiments are implemented on R^2 and R^3")
        res = find_singularity(P, k, origin, radius, tol)
        dist = float(np.linalg.norm(np.asarray(res.point)))
        report.results.append(TrialResult(t, res.found, res.point, res.residual, dist))
    return report
