"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a tuple of non-negative exponents of length ``n``.  Coefficients
are :class:`fractions.Fraction`; ``int`` inputs are promoted.  Float
coefficients are tolerated so that the perturbation harness can recenter at
floating points, but nothing in the exact pipeline produces them.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, factorial, lcm
from numbers import Number
from typing import Iterable, Iterator, Mapping, Sequence

Monomial = tuple[int, ...]
Coeff = Fraction | float


def _coerce(c) -> Coeff:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Number):
        return Fraction(c)  # type: ignore[arg-type]
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def grlex_key(m: Monomial) -> tuple:
    """Sort key for the graded-lex order: by degree, then x1^a > x2^b > ..."""
    return (sum(m), tuple(-e for e in m))


def monomials(n: int, s: int) -> list[Monomial]:
    """All exponent vectors of total degree ``s`` in ``n`` variables, grlex order."""
    if s < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(n), s):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grlex_key)
    return out


def count_monomials(n: int, s: int) -> int:
    if s < 0:
        return 0
    return comb(n + s - 1, n - 1)


class Polynomial:
    """Immutable sparse polynomial in ``n`` variables."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Monomial, object] | None = None):
        self.n = n
        clean: dict[Monomial, Coeff] = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n:
                    raise ValueError(f"monomial {m} has length {len(m)}, expected {n}")
                if any(e < 0 for e in m):
                    raise ValueError(f"negative exponent in {m}")
                c = _coerce(c)
                if c != 0:
                    clean[m] = clean.get(m, 0) + c
                    if clean[m] == 0:
                        del clean[m]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict[Monomial, Coeff]) -> "Polynomial":
        # terms must already be normalized (no zeros, right length)
        p = object.__new__(cls)
        p.n = n
        p._terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        c = _coerce(c)
        return cls._raw(n, {(0,) * n: c} if c != 0 else {})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        """The coordinate function x_i (0-based index)."""
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for n={n}")
        e = [0] * n
        e[i] = 1
        return cls._raw(n, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): c})

    # inspection

    @property
    def terms(self) -> Mapping[Monomial, Coeff]:
        return self._terms

    def items(self) -> Iterator[tuple[Monomial, Coeff]]:
        """Terms in grlex order."""
        for m in sorted(self._terms, key=grlex_key):
            yield m, self._terms[m]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self, s: int | None = None) -> bool:
        degs = {sum(m) for m in self._terms}
        if s is None:
            return len(degs) <= 1
        return degs <= {s}

    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self._terms.values())

    def coeff(self, m: Monomial) -> Coeff:
        return self._terms.get(tuple(m), Fraction(0))

    # arithmetic

    def _check(self, other: "Polynomial") -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.n, other)

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
        return Polynomial._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = _coerce(other)
            if c == 0:
                return Polynomial.zero(self.n)
            return Polynomial._raw(self.n, {m: v * c for m, v in self._terms.items()})
        self._check(other)
        return _multiply(self, other, None)

    def mul_truncated(self, other: "Polynomial", max_degree: int) -> "Polynomial":
        """Product with every term of degree > ``max_degree`` dropped."""
        self._check(other)
        return _multiply(self, other, max_degree)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Polynomial":
        c = _coerce(other)
        return self * (1 / c)

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.n, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction, float)):
            return self == Polynomial.constant(self.n, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # calculus and structure

    def diff(self, i: int) -> "Polynomial":
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1:]
                out[mm] = c * e
        return Polynomial._raw(self.n, out)

    def homogeneous_part(self, s: int) -> "Polynomial":
        return Polynomial._raw(self.n, {m: c for m, c in self._terms.items() if sum(m) == s})

    def truncate(self, max_degree: int) -> "Polynomial":
        """Drop every term of total degree > ``max_degree``."""
        return Polynomial._raw(self.n, {m: c for m, c in self._terms.items() if sum(m) <= max_degree})

    def degrees(self) -> list[int]:
        return sorted({sum(m) for m in self._terms})

    def substitute(self, images: Sequence["Polynomial"], max_degree: int | None = None) -> "Polynomial":
        """Compose: replace x_i by ``images[i]`` (polynomials in a common ring).

        With ``max_degree`` every intermediate product is truncated, which is
        exact up to that degree only when no image has a constant term.
        """
        if len(images) != self.n:
            raise ValueError("need one image per variable")
        m_out = images[0].n if images else self.n
        if max_degree is None:
            mul = Polynomial.__mul__
        else:
            def mul(a: Polynomial, b: Polynomial) -> Polynomial:
                return a.mul_truncated(b, max_degree)
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i: int, e: int) -> Polynomial:
            key = (i, e)
            if key not in powers:
                if e == 0:
                    powers[key] = Polynomial.constant(m_out, 1)
                else:
                    powers[key] = mul(power(i, e - 1), images[i])
            return powers[key]

        out = Polynomial.zero(m_out)
        for m, c in self._terms.items():
            term = Polynomial.constant(m_out, c)
            for i, e in enumerate(m):
                if e:
                    term = mul(term, power(i, e))
            out = out + term
        return out

    def shift(self, point: Sequence) -> "Polynomial":
        """Return p(x + point), expanded by the binomial theorem."""
        if len(point) != self.n:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.n}")
        pt = [_coerce(v) for v in point]
        out: dict[Monomial, Coeff] = {}
        for m, c in self._terms.items():
            # product over variables of (x_i + p_i)^{e_i}
            partial: dict[Monomial, Coeff] = {(): c}
            for i, e in enumerate(m):
                nxt: dict[Monomial, Coeff] = {}
                for j in range(e + 1):
                    f = comb(e, j) * (pt[i] ** (e - j)) if (e - j) else comb(e, j)
                    if f == 0:
                        continue
                    for mm, v in partial.items():
                        key = mm + (j,)
                        nxt[key] = nxt.get(key, 0) + v * f
                partial = nxt
            for mm, v in partial.items():
                out[mm] = out.get(mm, 0) + v
        return Polynomial(self.n, out)

    def __call__(self, point: Sequence):
        """Evaluate at a point (exact if the point and coefficients are)."""
        if len(point) != self.n:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.n}")
        total = 0
        for m, c in self._terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * x**e
            total = total + v
        return total

    def taylor_coefficient(self, alpha: Monomial, point: Sequence):
        """Coefficient of x^alpha in the expansion of p around ``point``."""
        q = self
        for i, e in enumerate(alpha):
            for _ in range(e):
                q = q.diff(i)
        denom = 1
        for e in alpha:
            denom *= factorial(e)
        val = q(point)
        if isinstance(val, float):
            return val / denom
        return Fraction(val) / denom

    # display

    def __repr__(self) -> str:
        return f"Polynomial({self.n}, {self.to_str()!r})"

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or default_names(self.n)
        parts = []
        for m, c in self.items():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            )
            neg = c < 0
            a = -c if neg else c
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{_fmt(a)}*{mono}"
            else:
                body = _fmt(a)
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    __str__ = to_str


def _integer_form(p: Polynomial):
    """(integer terms, common denominator), or None if a coefficient is a float."""
    den = 1
    for c in p._terms.values():
        if not isinstance(c, Fraction):
            return None
        den = lcm(den, c.denominator)
    return [(m, (c.numerator * den) // c.denominator, sum(m)) for m, c in p._terms.items()], den


def _multiply(p: Polynomial, q: Polynomial, max_degree: int | None) -> Polynomial:
    cap = max_degree if max_degree is not None else float("inf")
    ip, iq = _integer_form(p), _integer_form(q)
    if ip is not None and iq is not None:
        # clear denominators once so the inner loop is integer arithmetic
        (tp, dp), (tq, dq) = ip, iq
        acc: dict[Monomial, int] = {}
        for m1, c1, d1 in tp:
            for m2, c2, d2 in tq:
                if d1 + d2 > cap:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        den = dp * dq
        return Polynomial._raw(p.n, {m: Fraction(v, den) for m, v in acc.items() if v})
    out: dict[Monomial, Coeff] = {}
    for m1, c1 in p._terms.items():
        for m2, c2 in q._terms.items():
            if sum(m1) + sum(m2) > cap:
                continue
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return Polynomial._raw(p.n, {m: c for m, c in out.items() if c != 0})


def _fmt(c: Coeff) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return repr(c)


def default_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


def poly_arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    """Binary arithmetic by name (``add``, ``sub`` or ``mul``)."""
    if p.n != q.n:
        raise ValueError(f"dimension mismatch: {p.n} vs {q.n}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def variables(n: int) -> list[Polynomial]:
    return [Polynomial.variable(n, i) for i in range(n)]


def from_terms(n: int, terms: Iterable[tuple[object, Sequence[int]]]) -> Polynomial:
    out: dict[Monomial, Coeff] = {}
    for c, e in terms:
        e = tuple(e)
        out[e] = out.get(e, 0) + _coerce(c)
    return Polynomial(n, out)
