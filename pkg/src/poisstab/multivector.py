"""Polynomial multivector fields on R^n and the Schouten-Nijenhuis bracket.

A degree-``r`` multivector is stored as a map from strictly increasing 1-based
index tuples ``(i_1 < ... < i_r)`` to coefficient polynomials; the key ``I``
stands for ``d/dx_{i_1} ^ ... ^ d/dx_{i_r}``.

The bracket is computed in the odd-variable picture (``xi_i = d/dx_i``)::

    [A, B] = sum_i (A <- d/dxi_i) (d/dx_i B)
             - (-1)^{(a-1)(b-1)} sum_i (B <- d/dxi_i) (d/dx_i A)

with ``<-`` the right derivative.  This gives ``[X, f] = X(f)``, the Lie bracket
on vector fields, graded antisymmetry and the graded Leibniz rule
``[A, B^C] = [A, B]^C + (-1)^{(a-1)b} B^[A, C]``.
"""
from __future__ import annotations

from typing import Iterator, Mapping, Sequence

from .polynomial import Polynomial, variables

Index = tuple[int, ...]


class DimensionError(ValueError):
    pass


def sort_indices(indices: Sequence[int]) -> tuple[int, Index]:
    """Sort a wedge index list, returning (sign, sorted tuple); sign 0 on repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


def _merge_sign(left: Index, right: Index) -> tuple[int, Index]:
    if set(left) & set(right):
        return 0, ()
    inversions = sum(1 for i in left for j in right if i > j)
    merged = tuple(sorted(left + right))
    return (-1 if inversions % 2 else 1), merged


class MultiVector:
    """Immutable degree-``r`` multivector field with polynomial coefficients."""

    __slots__ = ("n", "r", "_terms")

    def __init__(self, n: int, r: int, terms: Mapping[Sequence[int], Polynomial] | None = None):
        if not 0 <= r:
            raise ValueError(f"negative multivector degree {r}")
        self.n = n
        self.r = r
        clean: dict[Index, Polynomial] = {}
        for idx, p in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != r:
                raise ValueError(f"index tuple {idx} does not have length {r}")
            if any(not 1 <= i <= n for i in idx):
                raise IndexError(f"wedge index out of range 1..{n} in {idx}")
            if not isinstance(p, Polynomial):
                p = Polynomial.constant(n, p)
            if p.n != n:
                raise DimensionError(f"coefficient lives in dimension {p.n}, expected {n}")
            sign, key = sort_indices(idx)
            if sign == 0 or p.is_zero():
                continue
            acc = clean.get(key)
            q = p if sign > 0 else -p
            q = q if acc is None else acc + q
            if q.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = q
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, r: int, terms: dict[Index, Polynomial]) -> "MultiVector":
        mv = object.__new__(cls)
        mv.n, mv.r, mv._terms = n, r, terms
        return mv

    # constructors

    @classmethod
    def zero(cls, n: int, r: int) -> "MultiVector":
        return cls._raw(n, r, {})

    @classmethod
    def function(cls, p: Polynomial) -> "MultiVector":
        return cls._raw(p.n, 0, {(): p} if p else {})

    @classmethod
    def basis_element(cls, n: int, indices: Sequence[int], coeff: Polynomial | None = None) -> "MultiVector":
        """``coeff * e[indices]`` (indices 1-based, any order)."""
        coeff = Polynomial.constant(n, 1) if coeff is None else coeff
        return cls(n, len(indices), {tuple(indices): coeff})

    # inspection

    @property
    def terms(self) -> Mapping[Index, Polynomial]:
        return self._terms

    def items(self) -> Iterator[tuple[Index, Polynomial]]:
        for idx in sorted(self._terms):
            yield idx, self._terms[idx]

    def coefficient(self, indices: Sequence[int]) -> Polynomial:
        sign, key = sort_indices(indices)
        p = self._terms.get(key)
        if p is None or sign == 0:
            return Polynomial.zero(self.n)
        return p if sign > 0 else -p

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degrees(self) -> list[int]:
        """Sorted polynomial degrees occurring in the coefficients."""
        out: set[int] = set()
        for p in self._terms.values():
            out.update(p.degrees())
        return sorted(out)

    def homogeneous_degree(self) -> int | None:
        """The common polynomial degree of all coefficients, or None if mixed/zero."""
        d = self.degrees()
        return d[0] if len(d) == 1 else None

    def is_homogeneous(self, s: int | None = None) -> bool:
        d = self.degrees()
        if s is None:
            return len(d) <= 1
        return set(d) <= {s}

    def is_exact(self) -> bool:
        return all(p.is_exact() for p in self._terms.values())

    # arithmetic

    def _check(self, other: "MultiVector") -> None:
        if self.n != other.n:
            raise DimensionError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "MultiVector") -> "MultiVector":
        self._check(other)
        if other.r != self.r:
            if other.is_zero():
                return self
            if self.is_zero():
                return other
            raise ValueError(f"cannot add multivectors of degrees {self.r} and {other.r}")
        out = dict(self._terms)
        for idx, p in other._terms.items():
            q = out[idx] + p if idx in out else p
            if q.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = q
        return MultiVector._raw(self.n, self.r, out)

    def __neg__(self) -> "MultiVector":
        return MultiVector._raw(self.n, self.r, {i: -p for i, p in self._terms.items()})

    def __sub__(self, other: "MultiVector") -> "MultiVector":
        return self + (-other)

    def scale(self, c) -> "MultiVector":
        """Multiply every coefficient by a scalar or a polynomial."""
        out = {}
        for idx, p in self._terms.items():
            q = p * c
            if not q.is_zero():
                out[idx] = q
        return MultiVector._raw(self.n, self.r, out)

    def __mul__(self, c) -> "MultiVector":
        if isinstance(c, MultiVector):
            return wedge(self, c)
        return self.scale(c)

    def __rmul__(self, c) -> "MultiVector":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiVector):
            return NotImplemented
        if self.n != other.n:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.r == other.r and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, self.r, frozenset(self._terms.items())))

    def map_coefficients(self, f) -> "MultiVector":
        return MultiVector(self.n, self.r, {i: f(p) for i, p in self._terms.items()})

    # structure

    def homogeneous_part(self, s: int) -> "MultiVector":
        return homogeneous_part(self, s)

    def recenter(self, point: Sequence) -> "MultiVector":
        return recenter(self, point)

    def diff(self, i: int) -> "MultiVector":
        """Coefficient-wise partial derivative in x_i (0-based)."""
        out = {}
        for idx, p in self._terms.items():
            q = p.diff(i)
            if q:
                out[idx] = q
        return MultiVector._raw(self.n, self.r, out)

    def right_derivative(self, i: int) -> "MultiVector":
        """Right derivative with respect to the odd variable d/dx_i (1-based)."""
        out = {}
        if self.r == 0:
            return MultiVector.zero(self.n, 0)
        for idx, p in self._terms.items():
            if i in idx:
                pos = idx.index(i)
                sign = -1 if (self.r - 1 - pos) % 2 else 1
                key = idx[:pos] + idx[pos + 1:]
                out[key] = p if sign > 0 else -p
        return MultiVector._raw(self.n, self.r - 1, out)

    # display

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        parts = []
        for idx, p in self.items():
            coeff = p.to_str(names)
            basis = f"e[{','.join(map(str, idx))}]" if idx else ""
            if not basis:
                parts.append(f"({coeff})")
            elif coeff == "1":
                parts.append(basis)
            else:
                parts.append(f"({coeff})*{basis}")
        return " + ".join(parts)

    __str__ = to_str

    def __repr__(self) -> str:
        return f"MultiVector(n={self.n}, r={self.r}, {self.to_str()!r})"


def _as_mv(x) -> MultiVector:
    if isinstance(x, Polynomial):
        return MultiVector.function(x)
    return x


def wedge(A: MultiVector, B: MultiVector) -> MultiVector:
    """Exterior product; ``wedge(A, B) = (-1)^{ab} wedge(B, A)``."""
    A, B = _as_mv(A), _as_mv(B)
    if A.n != B.n:
        raise DimensionError(f"dimension mismatch: {A.n} vs {B.n}")
    r = A.r + B.r
    if r > A.n:
        return MultiVector.zero(A.n, r)
    out: dict[Index, Polynomial] = {}
    for i1, p1 in A.terms.items():
        for i2, p2 in B.terms.items():
            sign, key = _merge_sign(i1, i2)
            if not sign:
                continue
            q = p1 * p2
            if sign < 0:
                q = -q
            q = out[key] + q if key in out else q
            if q.is_zero():
                out.pop(key, None)
            else:
                out[key] = q
    return MultiVector._raw(A.n, r, out)


def schouten(A: MultiVector, B: MultiVector) -> MultiVector:
    """Schouten-Nijenhuis bracket [A, B], of degree a + b - 1."""
    A, B = _as_mv(A), _as_mv(B)
    if A.n != B.n:
        raise DimensionError(f"dimension mismatch: {A.n} vs {B.n}")
    n, a, b = A.n, A.r, B.r
    r = a + b - 1
    if r < 0 or r > n:
        return MultiVector.zero(n, max(r, 0))
    sign = -1 if ((a - 1) * (b - 1)) % 2 else 1
    out = MultiVector.zero(n, r)
    for i in range(1, n + 1):
        if a:
            dA = A.right_derivative(i)
            if dA:
                out = out + wedge(dA, B.diff(i - 1))
        if b:
            dB = B.right_derivative(i)
            if dB:
                term = wedge(dB, A.diff(i - 1))
                out = out - term if sign > 0 else out + term
    if out.r != r:
        out = MultiVector.zero(n, r)
    return out


def jacobiator(pi: MultiVector) -> MultiVector:
    """[pi, pi]; zero iff the bivector ``pi`` is Poisson."""
    if pi.r != 2:
        raise ValueError(f"jacobiator expects a bivector, got degree {pi.r}")
    return schouten(pi, pi)


def is_poisson(pi: MultiVector) -> bool:
    return jacobiator(pi).is_zero()


def homogeneous_part(A: MultiVector, s: int) -> MultiVector:
    """Keep exactly the coefficient monomials of total degree ``s``."""
    if s < 0:
        return MultiVector.zero(A.n, A.r)
    out = {}
    for idx, p in A.terms.items():
        q = p.homogeneous_part(s)
        if q:
            out[idx] = q
    return MultiVector._raw(A.n, A.r, out)


def homogeneous_decomposition(A: MultiVector) -> dict[int, MultiVector]:
    return {s: homogeneous_part(A, s) for s in A.degrees()}


def lowest_order(A: MultiVector) -> int | None:
    """Degree of the first non-vanishing Taylor term at the origin."""
    d = A.degrees()
    return d[0] if d else None


def recenter(A: MultiVector, point: Sequence) -> MultiVector:
    """Substitute x <- x + point in every coefficient."""
    if len(point) != A.n:
        raise DimensionError(f"point has {len(point)} coordinates, expected {A.n}")
    return MultiVector(A.n, A.r, {idx: p.shift(point) for idx, p in A.terms.items()})


def liouville_field(n: int) -> MultiVector:
    """The Euler vector field sum_i x_i d/dx_i."""
    if n < 1:
        raise ValueError("n must be >= 1")
    xs = variables(n)
    return MultiVector(n, 1, {(i + 1,): xs[i] for i in range(n)})


def vector_field(components: Sequence[Polynomial]) -> MultiVector:
    n = len(components)
    return MultiVector(n, 1, {(i + 1,): c for i, c in enumerate(components)})


def components(X: MultiVector) -> list[Polynomial]:
    if X.r != 1:
        raise ValueError(f"expected a vector field, got degree {X.r}")
    return [X.coefficient((i + 1,)) for i in range(X.n)]


def bivector_matrix(pi: MultiVector) -> list[list[Polynomial]]:
    """Antisymmetric coefficient matrix pi^{ij} (0-based)."""
    if pi.r != 2:
        raise ValueError(f"expected a bivector, got degree {pi.r}")
    n = pi.n
    zero = Polynomial.zero(n)
    M = [[zero] * n for _ in range(n)]
    for (i, j), p in pi.terms.items():
        M[i - 1][j - 1] = p
        M[j - 1][i - 1] = -p
    return M


# three-dimensional forms


class OneForm:
    """A 1-form P dx + Q dy + R dz with polynomial coefficients on R^3."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Polynomial]):
        if len(coeffs) != 3 or any(c.n != 3 for c in coeffs):
            raise DimensionError("one-forms are supported on R^3 only")
        self.coeffs = tuple(coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, OneForm) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def scale(self, f) -> "OneForm":
        return OneForm([c * f for c in self.coeffs])

    def d(self) -> tuple[Polynomial, Polynomial, Polynomial]:
        """Exterior derivative, as coefficients of (dy^dz, dz^dx, dx^dy)."""
        P, Q, R = self.coeffs
        return (R.diff(1) - Q.diff(2), P.diff(2) - R.diff(0), Q.diff(0) - P.diff(1))

    def __repr__(self) -> str:
        P, Q, R = self.coeffs
        return f"OneForm(({P}) dx + ({Q}) dy + ({R}) dz)"


def contract_with_volume(A: MultiVector) -> OneForm:
    """i_A(dx^dy^dz) with i_{dy^dz} = dx, i_{dz^dx} = dy, i_{dx^dy} = dz."""
    if A.n != 3 or A.r != 2:
        raise DimensionError("contract_with_volume needs a bivector on R^3")
    return OneForm([A.coefficient((2, 3)), A.coefficient((3, 1)), A.coefficient((1, 2))])


def integrability_check(alpha: OneForm) -> Polynomial:
    """Coefficient of dx^dy^dz in alpha ^ d(alpha); zero iff integrable."""
    P, Q, R = alpha.coeffs
    a, b, c = alpha.d()
    return P * a + Q * b + R * c


def bivector_from_form(alpha: OneForm) -> MultiVector:
    """Inverse of :func:`contract_with_volume`."""
    P, Q, R = alpha.coeffs
    return MultiVector(3, 2, {(2, 3): P, (3, 1): Q, (1, 2): R})

