"""Homogeneous Lichnerowicz-Poisson cohomology of a homogeneous Poisson bivector.

For ``pi_k`` homogeneous of degree ``k`` the differential ``A -> [pi_k, A]``
maps s-homogeneous r-vectors to (s+k-1)-homogeneous (r+1)-vectors.  All
matrices are built column by column by bracketing ``pi_k`` with basis elements.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Sequence

from . import linalg
from .linalg import RationalMatrix
from .multivector import MultiVector, jacobiator, schouten
from .polynomial import Monomial, Polynomial, count_monomials, monomials


class NotPoisson(ValueError):
    """The bivector fails the Jacobi identity [pi, pi] = 0."""


class NotHomogeneous(ValueError):
    pass


@dataclass(frozen=True)
class GradedBasis:
    """Ordered basis of a space of homogeneous multivectors.

    Elements are ``(indices, monomial)`` pairs meaning ``x^monomial e[indices]``.
    Index tuples vary slowest (lexicographic), monomials fastest (grlex).
    """

    n: int
    r: int
    s: int
    elements: tuple[tuple[tuple[int, ...], Monomial], ...]
    _position: dict = field(default=None, repr=False, compare=False)  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "_position", {e: i for i, e in enumerate(self.elements)})

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return len(self.elements)

    def element(self, i: int) -> MultiVector:
        idx, mono = self.elements[i]
        return MultiVector(self.n, self.r, {idx: Polynomial(self.n, {mono: 1})})

    def __iter__(self):
        return (self.element(i) for i in range(len(self)))

    def coordinates(self, mv: MultiVector) -> list[Fraction]:
        """Coordinate vector of ``mv``; raises KeyError if it leaves the span."""
        v = [Fraction(0)] * len(self)
        if mv.is_zero():
            return v
        if mv.r != self.r or mv.n != self.n:
            raise ValueError(f"multivector of degree {mv.r} on R^{mv.n} is not in this space")
        for idx, p in mv.terms.items():
            for mono, c in p.terms.items():
                pos = self._position.get((idx, mono))
                if pos is None:
                    raise KeyError((idx, mono))
                v[pos] = c
        return v

    def combine(self, vec: Sequence) -> MultiVector:
        terms: dict[tuple[int, ...], dict] = {}
        for (idx, mono), c in zip(self.elements, vec):
            if c:
                terms.setdefault(idx, {})[mono] = c
        return MultiVector(self.n, self.r, {i: Polynomial(self.n, t) for i, t in terms.items()})

    def contains(self, mv: MultiVector) -> bool:
        try:
            self.coordinates(mv)
        except (KeyError, ValueError):
            return False
        return True


def basis(n: int, r: int, s: int) -> GradedBasis:
    """Canonical basis of s-homogeneous r-vector fields on R^n."""
    if n < 1 or r < 0:
        raise ValueError(f"invalid (n, r) = ({n}, {r})")
    if s < 0 or r > n:
        return GradedBasis(n, r, s, ())
    monos = monomials(n, s)
    elems = tuple((idx, m) for idx in combinations(range(1, n + 1), r) for m in monos)
    return GradedBasis(n, r, s, elems)


def basis_dimension(n: int, r: int, s: int) -> int:
    if s < 0 or r > n:
        return 0
    return comb(n, r) * count_monomials(n, s)


def polynomial_degree(pi_k: MultiVector) -> int:
    d = pi_k.degrees()
    if not d:
        raise NotHomogeneous("the zero bivector has no polynomial degree")
    if len(d) > 1:
        raise NotHomogeneous(f"bivector mixes polynomial degrees {d}")
    return d[0]


def matrix_of(op: Callable[[MultiVector], MultiVector], domain: GradedBasis,
              codomain: GradedBasis) -> RationalMatrix:
    """Matrix of a linear map, columns indexed by ``domain``."""
    cols = []
    for e in domain:
        image = op(e)
        try:
            cols.append(codomain.coordinates(image))
        except KeyError as exc:
            raise ValueError(f"image of {e} leaves the codomain basis: {exc}") from None
    return RationalMatrix.from_columns(len(codomain), cols)


def differential_matrix(pi_k: MultiVector, r: int, s: int, k: int | None = None) -> RationalMatrix:
    """Matrix of A -> [pi_k, A] from V_r^(s) to V_{r+1}^(s+k-1)."""
    if pi_k.r != 2:
        raise ValueError(f"expected a bivector, got degree {pi_k.r}")
    if k is None:
        k = 1 if pi_k.is_zero() else polynomial_degree(pi_k)
    elif not pi_k.is_homogeneous(k):
        raise NotHomogeneous(f"bivector is not {k}-homogeneous")
    n = pi_k.n
    if not 0 <= r <= n:
        raise ValueError(f"multivector degree {r} out of range for n={n}")
    return matrix_of(lambda A: schouten(pi_k, A), basis(n, r, s), basis(n, r + 1, s + k - 1))


@dataclass
class CohomologyReport:
    """Dimensions of one cohomology group Ker(d_out) / Im(d_in).

    ``s`` is the homogeneity for the graded complexes and ``None`` for
    Chevalley-Eilenberg cohomology.  ``witness`` is a cocycle that is not a
    coboundary (a MultiVector, or a coefficient vector for CE cochains).
    """

    degree: int
    s: int | None
    dim_previous: int
    dim_space: int
    dim_next: int
    dim_kernel: int
    dim_image: int
    witness: object = None

    @property
    def dim_cohomology(self) -> int:
        return self.dim_kernel - self.dim_image

    @property
    def vanishes(self) -> bool:
        return self.dim_cohomology == 0

    def as_dict(self) -> dict:
        w = self.witness
        if isinstance(w, MultiVector):
            w = w.to_str()
        elif w is not None:
            w = [str(c) for c in getattr(w, "coeffs", w)]
        return {
            "degree": self.degree,
            "s": self.s,
            "dim_previous": self.dim_previous,
            "dim_space": self.dim_space,
            "dim_next": self.dim_next,
            "dim_kernel": self.dim_kernel,
            "dim_image": self.dim_image,
            "dim_cohomology": self.dim_cohomology,
            "witness": w,
        }


def graded_cohomology(d_in: RationalMatrix, d_out: RationalMatrix, space: GradedBasis | None,
                      degree: int, s: int | None) -> CohomologyReport:
    """Cohomology at the middle of ``. --d_in--> space --d_out--> .``."""
    if d_in.rows != d_out.cols:
        raise ValueError("differentials do not compose")
    if d_in.cols and d_out.rows and not (d_out @ d_in).is_zero():
        raise ValueError("d_out . d_in != 0; not a complex")
    rank_out = linalg.rank(d_out)
    rank_in = linalg.rank(d_in)
    report = CohomologyReport(
        degree=degree, s=s,
        dim_previous=d_in.cols, dim_space=d_out.cols, dim_next=d_out.rows,
        dim_kernel=d_out.cols - rank_out, dim_image=rank_in,
    )
    if report.dim_cohomology > 0:
        image = linalg.column_space_basis(d_in)
        for v in linalg.nullspace(d_out):
            if not linalg.in_span(image, v):
                report.witness = space.combine(v) if space is not None else v
                break
    return report


def lp_cohomology(pi_k: MultiVector, s: int) -> CohomologyReport:
    """dim H^{2,s}_LP(pi_k) = dim Ker d_2^s - dim Im d_1^{s-k+1}."""
    k = polynomial_degree(pi_k)
    if k < 1:
        raise NotHomogeneous("the polynomial degree k must be at least 1")
    if not jacobiator(pi_k).is_zero():
        raise NotPoisson("[pi, pi] != 0")
    n = pi_k.n
    d_out = differential_matrix(pi_k, 2, s, k)
    d_in = differential_matrix(pi_k, 1, s - k + 1, k)
    return graded_cohomology(d_in, d_out, basis(n, 2, s), 2, s)


@dataclass
class StabilityCertificate:
    k: int
    certified: bool
    reports: list[CohomologyReport]
    jacobi: bool = True
    kind: str = "poisson"

    @property
    def verdict(self) -> str:
        return "Certified" if self.certified else "NotCertified"

    @property
    def witness(self):
        for rep in self.reports:
            if rep.witness is not None:
                return rep.witness
        return None

    def as_dict(self) -> dict:
        w = self.witness
        return {
            "kind": self.kind,
            "k": self.k,
            "verdict": self.verdict,
            "jacobi": self.jacobi,
            "reports": [r.as_dict() for r in self.reports],
            "witness": w.to_str() if isinstance(w, MultiVector) else w,
        }


def stability_certificate(pi_k: MultiVector) -> StabilityCertificate:
    """Check H^{2,s}_LP(pi_k) = 0 for s = 0..k-1 (sufficient for k-stability)."""
    k = polynomial_degree(pi_k)
    if k < 1:
        raise NotHomogeneous("constant bivectors have no singular point")
    if not jacobiator(pi_k).is_zero():
        raise NotPoisson("[pi, pi] != 0")
    reports = [lp_cohomology(pi_k, s) for s in range(k)]
    return StabilityCertificate(k=k, certified=all(r.vanishes for r in reports), reports=reports)


# quadratic structures with diagonal form


def _check_antisymmetric(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(v) for v in row] for row in a]
    if any(len(row) != n for row in m):
        raise ValueError("coefficient array must be square")
    for i in range(n):
        for j in range(n):
            if m[i][j] != -m[j][i]:
                raise ValueError(f"array is not antisymmetric at ({i + 1},{j + 1})")
    return m


def antisymmetric_from_upper(n: int, upper: Sequence) -> list[list[Fraction]]:
    """Build the n x n antisymmetric array from a_{12}, a_{13}, ..., a_{n-1,n}."""
    if len(upper) != n * (n - 1) // 2:
        raise ValueError(f"need {n * (n - 1) // 2} entries for n={n}")
    a = [[Fraction(0)] * n for _ in range(n)]
    it = iter(upper)
    for i in range(n):
        for j in range(i + 1, n):
            v = Fraction(next(it))
            a[i][j], a[j][i] = v, -v
    return a


def quadratic_diagonal(a: Sequence[Sequence]) -> MultiVector:
    """sum_{i<j} a_ij x_i x_j d/dx_i ^ d/dx_j."""
    m = _check_antisymmetric(a)
    n = len(m)
    terms = {}
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j]:
                e = [0] * n
                e[i] += 1
                e[j] += 1
                terms[(i + 1, j + 1)] = Polynomial(n, {tuple(e): m[i][j]})
    return MultiVector(n, 2, terms)


@dataclass(frozen=True)
class Lemma32Result:
    satisfied: bool
    lambdas: tuple[Fraction, ...]
    reason: str = ""


def lemma32_criterion(a: Sequence[Sequence]) -> Lemma32Result:
    """lambda_i = sum_{j != i} a_ij; need lambda_i != 0 and lambda_i + lambda_j != 0."""
    m = _check_antisymmetric(a)
    n = len(m)
    lam = tuple(sum(m[i], Fraction(0)) for i in range(n))
    for i in range(n):
        if lam[i] == 0:
            return Lemma32Result(False, lam, f"lambda_{i + 1} = 0")
    for i in range(n):
        for j in range(i + 1, n):
            if lam[i] + lam[j] == 0:
                return Lemma32Result(False, lam, f"lambda_{i + 1} + lambda_{j + 1} = 0")
    return Lemma32Result(True, lam)
