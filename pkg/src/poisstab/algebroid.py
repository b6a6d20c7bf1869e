"""Fiber-wise linear Poisson structures, deformation cohomology and CE cohomology.

Coordinates on the total space are ordered ``x_1..x_d`` (base) then
``y_1..y_rf`` (fiber), so wedge index ``d + u`` means ``d/dy_u``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from . import linalg
from .cohomology import (CohomologyReport, GradedBasis, NotHomogeneous, NotPoisson,
                         StabilityCertificate, basis, graded_cohomology, matrix_of,
                         polynomial_degree)
from .linalg import RationalMatrix
from .multivector import MultiVector, jacobiator, schouten, sort_indices
from .polynomial import Polynomial, variables


class NotFiberwiseLinear(ValueError):
    pass


class ClosureViolation(ValueError):
    """[Pi_k, B] left the linear subcomplex."""


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class FiberedSpace:
    d: int
    rf: int

    def __post_init__(self):
        if self.d < 0 or self.rf < 0 or self.d + self.rf < 1:
            raise ValueError(f"invalid fibered space d={self.d}, rf={self.rf}")

    @property
    def n(self) -> int:
        return self.d + self.rf

    def is_base(self, index: int) -> bool:
        """Whether the 1-based wedge/coordinate index is a base direction."""
        return index <= self.d

    def x(self, t: int) -> int:
        return t

    def y(self, u: int) -> int:
        return self.d + u

    def split_degree(self, mono: Sequence[int]) -> tuple[int, int]:
        return sum(mono[: self.d]), sum(mono[self.d:])

    def names(self) -> list[str]:
        return [f"x{i + 1}" for i in range(self.d)] + [f"y{u + 1}" for u in range(self.rf)]


# fiber-wise linearity


@dataclass
class LinearityCheck:
    ok: bool
    problems: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _linearity_problems(mv: MultiVector, fs: FiberedSpace) -> list[str]:
    problems = []
    for idx, p in mv.items():
        nx = sum(1 for i in idx if fs.is_base(i))
        label = f"e[{','.join(map(str, idx))}]"
        if nx >= 2:
            problems.append(f"{label}: two or more base directions")
            continue
        for mono in p.terms:
            _, ydeg = fs.split_degree(mono)
            if nx == 1 and ydeg != 0:
                problems.append(f"{label}: coefficient depends on the fiber coordinates")
                break
            if nx == 0 and ydeg != 1:
                problems.append(f"{label}: coefficient is not linear in the fiber coordinates")
                break
    return problems


def is_fiberwise_linear(mv: MultiVector, fs: FiberedSpace) -> bool:
    if mv.n != fs.n:
        return False
    return not _linearity_problems(mv, fs)


def fiberwise_linear_check(Pi: MultiVector, fs: FiberedSpace) -> LinearityCheck:
    """Does ``Pi`` have the local form sum f(x) y d/dy^d/dy + sum g(x) d/dy^d/dx?"""
    if Pi.r != 2:
        raise ValueError(f"expected a bivector, got degree {Pi.r}")
    if Pi.n != fs.n:
        return LinearityCheck(False, [f"bivector lives on R^{Pi.n}, fibered space has dimension {fs.n}"])
    problems = _linearity_problems(Pi, fs)
    return LinearityCheck(not problems, problems)


def lin_basis(fs: FiberedSpace, r: int, s: int) -> GradedBasis:
    """Basis of the s-homogeneous r-vectors in the linear subcomplex.

    Ordered as a subsequence of the full basis on R^{d+rf}.
    """
    full = basis(fs.n, r, s)
    keep = []
    for idx, mono in full.elements:
        nx = sum(1 for i in idx if fs.is_base(i))
        _, ydeg = fs.split_degree(mono)
        if (nx == 0 and ydeg == 1) or (nx == 1 and ydeg == 0):
            keep.append((idx, mono))
    return GradedBasis(fs.n, r, s, tuple(keep))


def lin_dimension(fs: FiberedSpace, r: int, s: int) -> int:
    d, rf = fs.d, fs.rf
    if s < 0 or r < 0:
        return 0

    def nmono(deg: int) -> int:
        if deg < 0:
            return 0
        if d == 0:
            return 1 if deg == 0 else 0
        return comb(d + deg - 1, d - 1)

    a = comb(rf, r) * rf * nmono(s - 1)
    b = comb(rf, r - 1) * d * nmono(s) if r >= 1 else 0
    return a + b


def _lin_degree(Pi_k: MultiVector, fs: FiberedSpace) -> int:
    check = fiberwise_linear_check(Pi_k, fs)
    if not check:
        raise NotFiberwiseLinear("; ".join(check.problems))
    if Pi_k.is_zero():
        return 1
    return polynomial_degree(Pi_k)


def lin_differential_matrix(Pi_k: MultiVector, fs: FiberedSpace, r: int, s: int,
                            k: int | None = None) -> RationalMatrix:
    """Matrix of [Pi_k, .] restricted to the linear subcomplex."""
    kk = _lin_degree(Pi_k, fs)
    k = kk if k is None else k
    if not Pi_k.is_homogeneous(k):
        raise NotHomogeneous(f"bivector is not {k}-homogeneous")
    dom = lin_basis(fs, r, s)
    cod = lin_basis(fs, r + 1, s + k - 1)
    try:
        return matrix_of(lambda B: schouten(Pi_k, B), dom, cod)
    except ValueError as exc:
        raise ClosureViolation(str(exc)) from None


def lin_cohomology(Pi_k: MultiVector, fs: FiberedSpace, s: int, k: int | None = None) -> CohomologyReport:
    """dim H^{2,s}_lin(Pi_k)."""
    kk = _lin_degree(Pi_k, fs)
    k = kk if k is None else k
    if not jacobiator(Pi_k).is_zero():
        raise NotPoisson("[Pi, Pi] != 0")
    d_out = lin_differential_matrix(Pi_k, fs, 2, s, k)
    d_in = lin_differential_matrix(Pi_k, fs, 1, s - k + 1, k)
    return graded_cohomology(d_in, d_out, lin_basis(fs, 2, s), 2, s)


def algebroid_certificate(Pi_k: MultiVector, fs: FiberedSpace) -> StabilityCertificate:
    """Check H^{2,s}_lin(Pi_k) = 0 for s = 0..k-1."""
    if Pi_k.is_zero():
        k = 1
    else:
        k = _lin_degree(Pi_k, fs)
    if k < 1:
        raise NotHomogeneous("the homogeneous degree k must be at least 1")
    if not jacobiator(Pi_k).is_zero():
        raise NotPoisson("[Pi, Pi] != 0")
    reports = [lin_cohomology(Pi_k, fs, s, k) for s in range(k)]
    return StabilityCertificate(k=k, certified=all(r.vanishes for r in reports), reports=reports,
                                kind="algebroid")


# Lie algebras and representations


Matrix = list[list[Fraction]]


def _mat(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(v) for v in r] for r in rows]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
            for i in range(len(a))]


def _commutator(a: Matrix, b: Matrix) -> Matrix:
    ab, ba = _matmul(a, b), _matmul(b, a)
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


def _zeros(n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(n)]


def _transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)] if a else []


class LieAlgebra:
    """Structure constants ``c[i][j][k]``: [e_i, e_j] = sum_k c[i][j][k] e_k (0-based)."""

    def __init__(self, dim: int, brackets: dict[tuple[int, int], Sequence] | None = None,
                 name: str = ""):
        self.dim = dim
        self.name = name
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), coeffs in (brackets or {}).items():
            if len(coeffs) != dim:
                raise ValueError(f"bracket [{i},{j}] needs {dim} coefficients")
            if i == j:
                if any(coeffs):
                    raise ValueError("[e_i, e_i] must vanish")
                continue
            for k, v in enumerate(coeffs):
                v = Fraction(v)
                c[i][j][k] += v
                c[j][i][k] -= v
        # inconsistent double entries show up here
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    if c[i][j][k] != -c[j][i][k]:
                        raise ValueError("structure constants are not antisymmetric")
        self.c = c
        if not self.satisfies_jacobi():
            raise ValueError("structure constants violate the Jacobi identity")

    def bracket_basis(self, i: int, j: int) -> list[Fraction]:
        return list(self.c[i][j])

    def bracket(self, u: Sequence, v: Sequence) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k in range(self.dim):
                    out[k] += a * b * self.c[i][j][k]
        return out

    def satisfies_jacobi(self) -> bool:
        n = self.dim
        e = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    t1 = self.bracket(e[i], self.bracket(e[j], e[k]))
                    t2 = self.bracket(e[j], self.bracket(e[k], e[i]))
                    t3 = self.bracket(e[k], self.bracket(e[i], e[j]))
                    if any(a + b + c for a, b, c in zip(t1, t2, t3)):
                        return False
        return True

    def brackets(self) -> dict[tuple[int, int], list[Fraction]]:
        return {(i, j): list(self.c[i][j]) for i in range(self.dim) for j in range(i + 1, self.dim)
                if any(self.c[i][j])}

    def change_basis(self, P: Sequence[Sequence]) -> "LieAlgebra":
        """New basis f_j = sum_i P[i][j] e_i (P invertible)."""
        n = self.dim
        Pm = _mat(P)
        Pinv = _inverse(Pm)
        cols = [[Pm[i][j] for i in range(n)] for j in range(n)]
        br = {}
        for a in range(n):
            for b in range(a + 1, n):
                v = self.bracket(cols[a], cols[b])
                br[(a, b)] = [sum((Pinv[k][i] * v[i] for i in range(n)), Fraction(0)) for k in range(n)]
        return LieAlgebra(n, br, name=self.name)

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name or self.dim})"


def _inverse(a: Matrix) -> Matrix:
    n = len(a)
    m = RationalMatrix(n, 2 * n, [list(r) + [Fraction(int(i == j)) for j in range(n)]
                                   for i, r in enumerate(a)])
    red, piv = linalg.rref(m)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


class Representation:
    """A linear action rho(e_i) as dim x dim matrices (columns are images of basis vectors)."""

    def __init__(self, algebra: LieAlgebra, dim: int, matrices: Sequence[Sequence[Sequence]],
                 name: str = ""):
        if len(matrices) != algebra.dim:
            raise RepresentationError(f"need {algebra.dim} matrices, got {len(matrices)}")
        mats = [_mat(m) for m in matrices]
        for m in mats:
            if len(m) != dim or any(len(r) != dim for r in m):
                raise RepresentationError(f"matrices must be {dim}x{dim}")
        self.algebra = algebra
        self.dim = dim
        self.matrices = mats
        self.name = name
        bad = self.axiom_failure()
        if bad is not None:
            raise RepresentationError(f"rho([e_{bad[0] + 1}, e_{bad[1] + 1}]) != [rho(e_{bad[0] + 1}), rho(e_{bad[1] + 1})]")

    def act(self, i: int, v: Sequence) -> list[Fraction]:
        m = self.matrices[i]
        return [sum((m[a][b] * v[b] for b in range(self.dim)), Fraction(0)) for a in range(self.dim)]

    def of(self, u: Sequence) -> Matrix:
        out = _zeros(self.dim)
        for i, a in enumerate(u):
            if a:
                for r in range(self.dim):
                    for c in range(self.dim):
                        out[r][c] += a * self.matrices[i][r][c]
        return out

    def axiom_failure(self) -> tuple[int, int] | None:
        g = self.algebra
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                if self.of(g.bracket_basis(i, j)) != _commutator(self.matrices[i], self.matrices[j]):
                    return (i, j)
        return None

    def dual(self) -> "Representation":
        return Representation(self.algebra, self.dim,
                              [[[-v for v in r] for r in _transpose(m)] for m in self.matrices],
                              name=f"{self.name}*" if self.name else "")

    def conjugate(self, P: Sequence[Sequence]) -> "Representation":
        """The isomorphic representation P rho P^{-1}."""
        Pm = _mat(P)
        Pi = _inverse(Pm)
        return Representation(self.algebra, self.dim,
                              [_matmul(_matmul(Pm, m), Pi) for m in self.matrices], name=self.name)

    def direct_sum(self, other: "Representation") -> "Representation":
        if other.algebra is not self.algebra and other.algebra.c != self.algebra.c:
            raise RepresentationError("representations of different algebras")
        d = self.dim + other.dim
        mats = []
        for a, b in zip(self.matrices, other.matrices):
            m = _zeros(d)
            for i in range(self.dim):
                for j in range(self.dim):
                    m[i][j] = a[i][j]
            for i in range(other.dim):
                for j in range(other.dim):
                    m[self.dim + i][self.dim + j] = b[i][j]
            mats.append(m)
        return Representation(self.algebra, d, mats)

    def __repr__(self) -> str:
        return f"Representation({self.algebra!r}, dim={self.dim})"


def trivial(g: LieAlgebra, dim: int = 1) -> Representation:
    return Representation(g, dim, [_zeros(dim) for _ in range(g.dim)], name="trivial")


def adjoint(g: LieAlgebra) -> Representation:
    n = g.dim
    mats = []
    for i in range(n):
        m = _zeros(n)
        for j in range(n):
            for k in range(n):
                m[k][j] = g.c[i][j][k]
        mats.append(m)
    return Representation(g, n, mats, name="adjoint")


def coadjoint(g: LieAlgebra) -> Representation:
    rep = adjoint(g).dual()
    rep.name = "coadjoint"
    return rep


# standard algebras


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {}, name=f"abelian({n})")


def aff1() -> LieAlgebra:
    """[e1, e2] = e2."""
    return LieAlgebra(2, {(0, 1): [0, 1]}, name="aff(1)")


def heisenberg() -> LieAlgebra:
    return LieAlgebra(3, {(0, 1): [0, 0, 1]}, name="heisenberg")


def sl2() -> LieAlgebra:
    """Basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    return LieAlgebra(3, {(0, 1): [0, 2, 0], (0, 2): [0, 0, -2], (1, 2): [1, 0, 0]}, name="sl(2)")


def so3() -> LieAlgebra:
    return LieAlgebra(3, {(0, 1): [0, 0, 1], (1, 2): [1, 0, 0], (2, 0): [0, 1, 0]}, name="so(3)")


def sl2_irreducible(m: int) -> Representation:
    """The (m+1)-dimensional irreducible representation of sl(2), basis v_0..v_m."""
    g = sl2()
    d = m + 1
    h, e, f = _zeros(d), _zeros(d), _zeros(d)
    for k in range(d):
        h[k][k] = Fraction(m - 2 * k)
        if k >= 1:
            e[k - 1][k] = Fraction(k * (m - k + 1))
        if k + 1 < d:
            f[k + 1][k] = Fraction(1)
    return Representation(g, d, [h, e, f], name=f"V_{m}")


# Chevalley-Eilenberg cohomology


@dataclass(frozen=True)
class CochainVector:
    """Coefficients of a p-cochain in Hom(Lambda^p g, V).

    Ordering: p-subsets of the algebra basis in lexicographic order, module
    basis index fastest.
    """

    p: int
    g_dim: int
    v_dim: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != comb(self.g_dim, self.p) * self.v_dim:
            raise ValueError("cochain vector has the wrong length")

    def value(self, subset: Sequence[int]) -> list[Fraction]:
        subsets = list(combinations(range(self.g_dim), self.p))
        pos = subsets.index(tuple(subset))
        return list(self.coeffs[pos * self.v_dim:(pos + 1) * self.v_dim])


def ce_differential(g: LieAlgebra, rep: Representation, p: int) -> RationalMatrix:
    """d: C^p -> C^{p+1} with

    dxi(x_0..x_p) = sum_i (-1)^i rho(x_i) xi(..^x_i..)
                    + sum_{i<j} (-1)^{i+j} xi([x_i, x_j], ..^x_i..^x_j..).
    """
    n, dv = g.dim, rep.dim
    src = list(combinations(range(n), p)) if 0 <= p <= n else []
    dst = list(combinations(range(n), p + 1)) if 0 <= p + 1 <= n else []
    src_pos = {S: i for i, S in enumerate(src)}
    m = RationalMatrix(len(dst) * dv, len(src) * dv)
    for ti, T in enumerate(dst):
        for i, t in enumerate(T):
            rest = T[:i] + T[i + 1:]
            sgn = -1 if i % 2 else 1
            si = src_pos[rest]
            mat = rep.matrices[t]
            for a in range(dv):
                for b in range(dv):
                    if mat[a][b]:
                        m.data[ti * dv + a][si * dv + b] += sgn * mat[a][b]
        for i in range(len(T)):
            for j in range(i + 1, len(T)):
                sgn = -1 if (i + j) % 2 else 1
                rest = T[:i] + T[i + 1:j] + T[j + 1:]
                for k, ck in enumerate(g.c[T[i]][T[j]]):
                    if not ck:
                        continue
                    s2, S = sort_indices((k,) + rest) if k not in rest else (0, ())
                    if not s2:
                        continue
                    si = src_pos[S]
                    for a in range(dv):
                        m.data[ti * dv + a][si * dv + a] += sgn * s2 * ck
    return m


def ce_cohomology(g: LieAlgebra, rep: Representation | None, p: int) -> CohomologyReport:
    """dim H^p(g, V); ``rep=None`` means trivial coefficients R."""
    if not 0 <= p <= g.dim:
        raise ValueError(f"p must be in 0..{g.dim}")
    rep = rep if rep is not None else trivial(g)
    d_out = ce_differential(g, rep, p)
    if p == 0:
        d_in = RationalMatrix(rep.dim, 0)
    else:
        d_in = ce_differential(g, rep, p - 1)
    report = graded_cohomology(d_in, d_out, None, p, None)
    if report.witness is not None:
        report.witness = CochainVector(p, g.dim, rep.dim, tuple(report.witness))
    return report


# action algebroids


def action_algebroid(g: LieAlgebra, rho_dual: Representation) -> tuple[MultiVector, FiberedSpace]:
    """Pi^(1) = sum a_ij^l y_l dy_i^dy_j + sum b_ij^l x_l dy_i^dx_j.

    ``rho_dual`` acts on V* = span(d/dx_j); b is read off from
    rho(y_i)(d/dx_j) = -sum_v b_{i,v}^j d/dx_v.
    """
    if rho_dual.algebra is not g and rho_dual.algebra.c != g.c:
        raise RepresentationError("representation belongs to another algebra")
    if rho_dual.axiom_failure() is not None:
        raise RepresentationError("representation axiom fails")
    d, r = rho_dual.dim, g.dim
    fs = FiberedSpace(d, r)
    n = fs.n
    z = variables(n)
    terms: dict[tuple[int, int], Polynomial] = {}
    for i in range(r):
        for j in range(i + 1, r):
            p = Polynomial.zero(n)
            for l, a in enumerate(g.c[i][j]):
                if a:
                    p = p + z[fs.y(l + 1) - 1] * a
            if p:
                terms[(fs.y(i + 1), fs.y(j + 1))] = p
    b = action_constants(rho_dual)
    for i in range(r):
        for j in range(d):
            p = Polynomial.zero(n)
            for l in range(d):
                if b[i][j][l]:
                    p = p + z[fs.x(l + 1) - 1] * b[i][j][l]
            if p:
                key = (fs.y(i + 1), fs.x(j + 1))
                terms[key] = terms.get(key, Polynomial.zero(n)) + p
    return MultiVector(n, 2, terms), fs


def action_constants(rho_dual: Representation) -> list[list[list[Fraction]]]:
    """b[i][q][l] = b_{i,q}^l with b_{i,v}^j = -(matrix of rho(e_i))[v][j]."""
    r, d = rho_dual.algebra.dim, rho_dual.dim
    b = [[[Fraction(0)] * d for _ in range(d)] for _ in range(r)]
    for i in range(r):
        m = rho_dual.matrices[i]
        for v in range(d):
            for j in range(d):
                b[i][v][j] = -m[v][j]
    return b


def lie_poisson(g: LieAlgebra) -> MultiVector:
    """Linear Poisson structure on g*: sum_{i<j} c_ij^k x_k dx_i^dx_j."""
    n = g.dim
    x = variables(n)
    terms = {}
    for i in range(n):
        for j in range(i + 1, n):
            p = Polynomial.zero(n)
            for k, c in enumerate(g.c[i][j]):
                if c:
                    p = p + x[k] * c
            if p:
                terms[(i + 1, j + 1)] = p
    return MultiVector(n, 2, terms)


def mu_bivector(mu: Sequence[Sequence], fs: FiberedSpace) -> MultiVector:
    """sum mu[u][v] dy_u ^ dx_v (constant coefficients)."""
    terms: dict[tuple[int, int], Polynomial] = {}
    for u, row in enumerate(mu):
        for v, val in enumerate(row):
            if val:
                terms[(fs.y(u + 1), fs.x(v + 1))] = Polynomial.constant(fs.n, val)
    return MultiVector(fs.n, 2, terms)


def mu_cochain(mu: Sequence[Sequence], g_dim: int, v_dim: int) -> CochainVector:
    """The 1-cochain e_u -> sum_v mu[u][v] d/dx_v."""
    coeffs = [Fraction(mu[u][v]) for u in range(g_dim) for v in range(v_dim)]
    return CochainVector(1, g_dim, v_dim, tuple(coeffs))


def cocycle_residual(g: LieAlgebra, b, mu: Sequence[Sequence]) -> dict[tuple[int, int, int], Fraction]:
    """sum_v (mu_iv b_jq^v - mu_jv b_iq^v) - sum_u a_ij^u mu_uq for i < j, all q."""
    r = g.dim
    d = len(b[0]) if r else 0
    out = {}
    for i in range(r):
        for j in range(i + 1, r):
            for q in range(d):
                s = sum((Fraction(mu[i][v]) * b[j][q][v] - Fraction(mu[j][v]) * b[i][q][v]
                         for v in range(d)), Fraction(0))
                s -= sum((g.c[i][j][u] * Fraction(mu[u][q]) for u in range(r)), Fraction(0))
                out[(i, j, q)] = s
    return out


def is_ce_cocycle(g: LieAlgebra, rep: Representation, xi: CochainVector) -> bool:
    d1 = ce_differential(g, rep, xi.p)
    return not any(linalg.apply(d1, xi.coeffs))


@dataclass
class IsoCheck:
    equal: bool
    dim_lin: int
    dim_ce: int
    cocycle_consistent: bool
    coboundaries_match: bool

    def __bool__(self) -> bool:
        return self.equal and self.cocycle_consistent and self.coboundaries_match


def _mu_from_lin_vector(vec: Sequence, space: GradedBasis, fs: FiberedSpace) -> list[list[Fraction]]:
    mv = space.combine(vec)
    return [[mv.coefficient((fs.y(u + 1), fs.x(v + 1)))(
        [0] * fs.n) for v in range(fs.d)] for u in range(fs.rf)]


def iso_check_h2lin_h1(g: LieAlgebra, rho_dual: Representation) -> IsoCheck:
    """Compare dim H^{2,0}_lin(Pi^(1)) with dim H^1(g, V*) and match the cocycle spaces."""
    Pi, fs = action_algebroid(g, rho_dual)
    rep_lin = lin_cohomology(Pi, fs, 0, k=1)
    rep_ce = ce_cohomology(g, rho_dual, 1)
    space = lin_basis(fs, 2, 0)
    b = action_constants(rho_dual)

    # cocycles: kernel of [Pi, .] on constants vs the cocycle equation vs CE cocycles
    d_out = lin_differential_matrix(Pi, fs, 2, 0, k=1)
    lin_cocycles = [_mu_from_lin_vector(v, space, fs) for v in linalg.nullspace(d_out)]
    ce_d1 = ce_differential(g, rho_dual, 1)
    ce_cocycles = linalg.nullspace(ce_d1)
    eq_ok = True
    for mu in lin_cocycles:
        if any(cocycle_residual(g, b, mu).values()):
            eq_ok = False
        if not is_ce_cocycle(g, rho_dual, mu_cochain(mu, g.dim, fs.d)):
            eq_ok = False
    lin_as_ce = [list(mu_cochain(mu, g.dim, fs.d).coeffs) for mu in lin_cocycles]
    eq_ok = eq_ok and _same_span(lin_as_ce, ce_cocycles)

    # coboundaries: image of [Pi, .] on constant vector fields vs image of d^0
    d_in = lin_differential_matrix(Pi, fs, 1, 0, k=1)
    lin_cob = [list(mu_cochain(_mu_from_lin_vector(v, space, fs), g.dim, fs.d).coeffs)
               for v in linalg.column_space_basis(d_in)]
    ce_cob = linalg.column_space_basis(ce_differential(g, rho_dual, 0))
    cob_ok = _same_span(lin_cob, ce_cob)
    return IsoCheck(equal=rep_lin.dim_cohomology == rep_ce.dim_cohomology,
                    dim_lin=rep_lin.dim_cohomology, dim_ce=rep_ce.dim_cohomology,
                    cocycle_consistent=eq_ok, coboundaries_match=cob_ok)


def _same_span(a: list, b: list) -> bool:
    if not a and not b:
        return True
    if not a or not b:
        return not any(any(v) for v in a + b)
    n = len((a or b)[0])
    ma = RationalMatrix.from_columns(n, a)
    mb = RationalMatrix.from_columns(n, b)
    ra, rb = linalg.rank(ma), linalg.rank(mb)
    return ra == rb == linalg.rank(ma.hstack(mb))


# Monnier's sphere algebroid


def monnier_algebroid(n: int, corrected: bool = False) -> tuple[MultiVector, FiberedSpace]:
    """(rho - 1) sum_i dx_i^dy_i + c sum_{i<j} (x_i y_j - x_j y_i) dy_i^dy_j on R^{2n+2}.

    ``rho = x_0^2 + ... + x_n^2``.  With ``corrected=False`` the fiber part has
    ``c = 1`` as usually displayed; that bivector satisfies Jacobi only on the
    unit sphere ([Pi, Pi] is a multiple of rho - 1).  ``corrected=True`` uses
    ``c = -2`` (the factor d(rho)/dx_i = 2 x_i), which is Poisson everywhere.

    Base coordinates x_0..x_n are indices 1..n+1, fiber y_0..y_n are n+2..2n+2.
    """
    if n <= 1:
        raise ValueError("the sphere algebroid is defined for n > 1")
    fs = FiberedSpace(n + 1, n + 1)
    z = variables(fs.n)
    xs = z[: n + 1]
    ys = z[n + 1:]
    rho = Polynomial.zero(fs.n)
    for xi in xs:
        rho = rho + xi * xi
    c = -2 if corrected else 1
    terms = {}
    for i in range(n + 1):
        terms[(fs.x(i + 1), fs.y(i + 1))] = rho - 1
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            terms[(fs.y(i + 1), fs.y(j + 1))] = (xs[i] * ys[j] - xs[j] * ys[i]) * c
    return MultiVector(fs.n, 2, terms), fs
