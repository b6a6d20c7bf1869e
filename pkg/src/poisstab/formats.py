"""Input formats: the multivector expression language and the JSON document.

Expression language::

    doc    := assign+
    assign := NAME "=" expr ";"
    expr   := ["-"] term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := RATIONAL | VAR | VAR "^" INT | "e[" INT ("," INT)* "]"
            | "(" expr ")" | "(" expr ")" "^" INT

RATIONAL is ``p`` or ``p/q``; decimals are rejected.  ``e[i,j]`` is the
1-based wedge d/dx_i ^ d/dx_j.  Both ``-`` and the unicode minus sign are
accepted.  Variables are ``x1, x2, ...``; ``x, y, z`` alias ``x1, x2, x3``
when n <= 3, and juxtaposed aliases multiply (``xy^2`` is ``x*y^2``).  On a
fibered space R^d x R^r the variables are ``x1..xd, y1..yr``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebroid import FiberedSpace, LieAlgebra, Representation
from .multivector import DimensionError, MultiVector, sort_indices
from .polynomial import Polynomial

FORMAT_VERSION = "poisstab/1"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


# tokenizer

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<decimal>\d+\.\d*|\.\d+)
  | (?P<rational>\d+(?:\s*/\s*\d+)?)
  | (?P<basis>e\[)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^=;(),\]])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    text = text.replace("−", "-")
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "decimal":
            raise ParseError(f"decimal literal {m.group()!r}; write rationals as p/q", line, col)
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, col))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# variable naming


def variable_names(n: int, fibered: FiberedSpace | None = None) -> dict[str, int]:
    """Map accepted variable names to 0-based coordinate indices."""
    if fibered is not None:
        names = {f"x{t + 1}": t for t in range(fibered.d)}
        names.update({f"y{u + 1}": fibered.d + u for u in range(fibered.rf)})
        return names
    names = {f"x{i + 1}": i for i in range(n)}
    if n <= 3:
        names.update({a: i for i, a in enumerate("xyz"[:n])})
    return names


def _infer_dimension(tokens: list[Token]) -> int:
    n = 1
    alias = {"x": 1, "y": 2, "z": 3}
    for i, t in enumerate(tokens):
        if t.kind == "name":
            if t.text and all(ch in alias for ch in t.text):
                n = max(n, max(alias[ch] for ch in t.text))
            elif re.fullmatch(r"x\d+", t.text):
                n = max(n, int(t.text[1:]))
        elif t.kind == "basis":
            j = i + 1
            while j < len(tokens) and tokens[j].text != "]":
                if tokens[j].kind == "rational" and "/" not in tokens[j].text:
                    n = max(n, int(tokens[j].text))
                j += 1
    return n


# recursive-descent parser


class _Parser:
    def __init__(self, tokens: list[Token], n: int, names: dict[str, int]):
        self.toks = tokens
        self.i = 0
        self.n = n
        self.names = names

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        t = tok or self.tok
        return ParseError(msg, t.line, t.column)

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def integer(self) -> int:
        t = self.tok
        if t.kind != "rational" or "/" in t.text:
            raise self.error("expected an integer")
        self.advance()
        return int(t.text)

    # values are Polynomial (a 0-vector) or MultiVector

    def expr(self):
        neg = False
        if self.tok.kind == "op" and self.tok.text in ("+", "-"):
            neg = self.advance().text == "-"
        acc = self.term()
        if neg:
            acc = -acc
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            op = self.advance()
            rhs = self.term()
            acc = self.combine(acc, rhs if op.text == "+" else -rhs, op)
        return acc

    def combine(self, a, b, at: Token):
        if isinstance(a, Polynomial) and isinstance(b, Polynomial):
            return a + b
        a = a if isinstance(a, MultiVector) else MultiVector.function(a)
        b = b if isinstance(b, MultiVector) else MultiVector.function(b)
        if a.is_zero():
            return b
        if b.is_zero():
            return a
        if a.r != b.r:
            raise self.error(f"cannot add a {a.r}-vector and a {b.r}-vector", at)
        return a + b

    def term(self):
        acc = self.factor()
        while self.tok.text == "*":
            self.advance()
            rhs = self.factor()
            if isinstance(acc, Polynomial) and isinstance(rhs, Polynomial):
                acc = acc * rhs
            elif isinstance(acc, Polynomial):
                acc = rhs.scale(acc)
            elif isinstance(rhs, Polynomial):
                acc = acc.scale(rhs)
            else:
                acc = acc * rhs  # wedge
        return acc

    def power(self, base, at: Token):
        if self.tok.text != "^":
            return base
        self.advance()
        e = self.integer()
        if not isinstance(base, Polynomial):
            raise self.error("only polynomials can be raised to a power", at)
        return base ** e

    def factor(self):
        t = self.tok
        if t.kind == "rational":
            self.advance()
            p, _, q = t.text.partition("/")
            if q and int(q) == 0:
                raise self.error("division by zero", t)
            return Polynomial.constant(self.n, Fraction(int(p), int(q) if q else 1))
        if t.kind == "name":
            self.advance()
            if t.text in self.names:
                return self.power(Polynomial.variable(self.n, self.names[t.text]), t)
            if self.n <= 3 and all(ch in "xyz"[:self.n] for ch in t.text):
                # juxtaposed aliases: xy^2 means x * y^2
                head = Polynomial.constant(self.n, 1)
                for ch in t.text[:-1]:
                    head = head * Polynomial.variable(self.n, self.names[ch])
                last = Polynomial.variable(self.n, self.names[t.text[-1]])
                return head * self.power(last, t)
            raise self.error(f"unknown variable {t.text!r}", t)
        if t.kind == "basis":
            self.advance()
            idx = []
            while True:
                at = self.tok
                i = self.integer()
                if not 1 <= i <= self.n:
                    raise self.error(f"index {i} out of range 1..{self.n}", at)
                idx.append(i)
                if self.tok.text != ",":
                    break
                self.advance()
            self.expect("]")
            sign, key = sort_indices(idx)
            if sign == 0:
                return MultiVector.zero(self.n, len(idx))
            return MultiVector.basis_element(self.n, key, Polynomial.constant(self.n, sign))
        if t.text == "(":
            self.advance()
            v = self.expr()
            self.expect(")")
            return self.power(v, t)
        found = t.text or "end of input"
        raise self.error(f"unexpected {found!r}")


def _as_multivector(v, n: int) -> MultiVector:
    return v if isinstance(v, MultiVector) else MultiVector.function(v)


def parse_mvf(text: str, n: int | None = None, fibered: FiberedSpace | None = None) -> MultiVector:
    """Parse a single expression (an optional trailing ';' is allowed)."""
    tokens = tokenize(text)
    if fibered is not None:
        n = fibered.n
    elif n is None:
        n = _infer_dimension(tokens)
    p = _Parser(tokens, n, variable_names(n, fibered))
    if p.tok.kind == "eof":
        raise p.error("empty expression")
    v = p.expr()
    if p.tok.text == ";":
        p.advance()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return _as_multivector(v, n)


def parse_assignments(text: str, n: int | None = None,
                      fibered: FiberedSpace | None = None) -> dict[str, MultiVector]:
    """Parse ``name = expr;`` statements, in order."""
    tokens = tokenize(text)
    if fibered is not None:
        n = fibered.n
    elif n is None:
        n = _infer_dimension(tokens)
    p = _Parser(tokens, n, variable_names(n, fibered))
    out: dict[str, MultiVector] = {}
    if p.tok.kind == "eof":
        raise p.error("expected at least one assignment")
    while p.tok.kind != "eof":
        name = p.tok
        if name.kind != "name":
            raise p.error("expected a name")
        p.advance()
        p.expect("=")
        if name.text in out:
            raise p.error(f"{name.text!r} assigned twice", name)
        out[name.text] = _as_multivector(p.expr(), n)
        p.expect(";")
    return out


def format_mvf(mv: MultiVector, fibered: FiberedSpace | None = None) -> str:
    """Inverse of :func:`parse_mvf` (with explicit x1.. names)."""
    names = fibered.names() if fibered is not None else [f"x{i + 1}" for i in range(mv.n)]
    return mv.to_str(names)


# structured document


def _frac_str(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _parse_frac(s, where: str) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ValueError(f"{where}: expected a rational written as a string 'p/q' or an integer")
    if isinstance(s, str) and not re.fullmatch(r"\s*[-−]?\d+(\s*/\s*\d+)?\s*", s):
        raise ValueError(f"{where}: {s!r} is not of the form p/q")
    try:
        return Fraction(s.replace("−", "-").replace(" ", "") if isinstance(s, str) else s)
    except ZeroDivisionError:
        raise ValueError(f"{where}: zero denominator") from None


def _mv_to_json(name: str, mv: MultiVector) -> dict:
    return {
        "name": name,
        "degree": mv.r,
        "terms": [{"indices": list(idx),
                   "poly": [{"coeff": _frac_str(c), "exps": list(m)} for m, c in p.items()]}
                  for idx, p in mv.items()],
    }


def _mv_from_json(obj: dict, n: int) -> tuple[str, MultiVector]:
    name = obj.get("name")
    if not isinstance(name, str):
        raise ValueError("each multivector needs a string 'name'")
    where = f"multivector {name!r}"
    terms = obj.get("terms", [])
    r = obj.get("degree")
    if r is None:
        if not terms:
            raise ValueError(f"{where}: 'degree' is required when there are no terms")
        r = len(terms[0]["indices"])
    acc = MultiVector.zero(n, r)
    for t in terms:
        idx = t.get("indices")
        if not isinstance(idx, list) or len(idx) != r:
            raise ValueError(f"{where}: every term needs {r} indices")
        poly = {}
        for mono in t.get("poly", []):
            exps = mono.get("exps")
            if not isinstance(exps, list) or len(exps) != n:
                raise ValueError(f"{where}: exponent vectors must have length {n}")
            key = tuple(int(e) for e in exps)
            poly[key] = poly.get(key, 0) + _parse_frac(mono.get("coeff"), where)
        try:
            acc = acc + MultiVector(n, r, {tuple(idx): Polynomial(n, poly)})
        except DimensionError as exc:
            raise ValueError(f"{where}: {exc}") from None
    return name, acc


@dataclass
class InputDocument:
    dimension: int
    multivectors: dict[str, MultiVector] = field(default_factory=dict)
    fibered: FiberedSpace | None = None
    lie_algebra: LieAlgebra | None = None
    representation: Representation | None = None
    version: str = FORMAT_VERSION

    def __post_init__(self):
        if self.fibered is not None and self.fibered.n != self.dimension:
            raise ValueError("fibered split does not add up to the dimension")
        for name, mv in self.multivectors.items():
            if mv.n != self.dimension:
                raise ValueError(f"{name!r} lives on R^{mv.n}, not R^{self.dimension}")

    def to_dict(self) -> dict:
        out: dict = {"format": self.version, "dimension": self.dimension}
        if self.fibered is not None:
            out["fibered"] = {"base": self.fibered.d, "fiber": self.fibered.rf}
        out["multivectors"] = [_mv_to_json(k, v) for k, v in self.multivectors.items()]
        if self.lie_algebra is not None:
            g = self.lie_algebra
            out["lie_algebra"] = {
                "dim": g.dim,
                "name": g.name,
                "brackets": [{"i": i + 1, "j": j + 1, "coeffs": [_frac_str(c) for c in v]}
                             for (i, j), v in sorted(g.brackets().items())],
            }
        if self.representation is not None:
            rep = self.representation
            out["representation"] = {
                "dim": rep.dim,
                "name": rep.name,
                "matrices": [[_frac_str(v) for row in m for v in row] for m in rep.matrices],
            }
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def __eq__(self, other) -> bool:
        return isinstance(other, InputDocument) and self.to_dict() == other.to_dict()

    @classmethod
    def from_dict(cls, obj: dict) -> "InputDocument":
        if not isinstance(obj, dict):
            raise ValueError("document must be a JSON object")
        version = obj.get("format", FORMAT_VERSION)
        if version != FORMAT_VERSION:
            raise ValueError(f"unsupported format {version!r}; expected {FORMAT_VERSION!r}")
        n = obj.get("dimension")
        fib = obj.get("fibered")
        fibered = None
        if fib is not None:
            fibered = FiberedSpace(int(fib["base"]), int(fib["fiber"]))
            n = fibered.n if n is None else n
        if not isinstance(n, int) or n < 1:
            raise ValueError("'dimension' must be a positive integer")
        mvs = {}
        for m in obj.get("multivectors", []):
            name, mv = _mv_from_json(m, n)
            if name in mvs:
                raise ValueError(f"duplicate multivector name {name!r}")
            mvs[name] = mv
        g = None
        if "lie_algebra" in obj:
            la = obj["lie_algebra"]
            dim = int(la["dim"])
            br = {}
            for b in la.get("brackets", []):
                i, j = int(b["i"]) - 1, int(b["j"]) - 1
                if not (0 <= i < dim and 0 <= j < dim):
                    raise ValueError(f"bracket index out of range 1..{dim}")
                br[(i, j)] = [_parse_frac(c, "lie_algebra") for c in b["coeffs"]]
            g = LieAlgebra(dim, br, name=la.get("name", ""))
        rep = None
        if "representation" in obj:
            if g is None:
                raise ValueError("a representation needs a lie_algebra block")
            rb = obj["representation"]
            dim = int(rb["dim"])
            mats = []
            for flat in rb["matrices"]:
                if len(flat) != dim * dim:
                    raise ValueError(f"representation matrices need {dim * dim} entries")
                vals = [_parse_frac(v, "representation") for v in flat]
                mats.append([vals[r * dim:(r + 1) * dim] for r in range(dim)])
            rep = Representation(g, dim, mats, name=rb.get("name", ""))
        return cls(n, mvs, fibered, g, rep, version)

    @classmethod
    def loads(cls, text: str) -> "InputDocument":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        return cls.from_dict(obj)


def load_text(text: str, n: int | None = None, fibered: FiberedSpace | None = None) -> InputDocument:
    """Read either format: JSON if it starts with '{', else assignments or a bare expression."""
    if text.lstrip().startswith("{"):
        return InputDocument.loads(text)
    if "=" in text:
        mvs = parse_assignments(text, n, fibered)
    else:
        mvs = {"pi": parse_mvf(text, n, fibered)}
    dim = next(iter(mvs.values())).n
    return InputDocument(dim, mvs, fibered)

