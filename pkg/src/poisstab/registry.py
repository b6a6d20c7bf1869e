"""Named built-in examples, addressable from the command line as ``name`` or ``name:args``."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import algebroid as alg
from .analysis3d import example_pi_k
from .cohomology import antisymmetric_from_upper, quadratic_diagonal
from .multivector import MultiVector
from .polynomial import variables


@dataclass
class Example:
    name: str
    description: str
    claim: str
    pi: MultiVector | None = None
    fibered: alg.FiberedSpace | None = None
    lie_algebra: alg.LieAlgebra | None = None
    representation: alg.Representation | None = None


def _rationals(arg: str) -> list[Fraction]:
    try:
        return [Fraction(a.strip().replace("−", "-")) for a in arg.split(",")]
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot read rationals from {arg!r}") from None


def _quadratic_diagonal(arg: str | None) -> Example:
    if not arg:
        raise ValueError("usage: quadratic-diagonal:a12,a13,a23[,...]")
    upper = _rationals(arg)
    n = 2
    while n * (n - 1) // 2 < len(upper):
        n += 1
    if n * (n - 1) // 2 != len(upper):
        raise ValueError(f"{len(upper)} coefficients do not fill the upper triangle of any n x n array")
    pi = quadratic_diagonal(antisymmetric_from_upper(n, upper))
    return Example(f"quadratic-diagonal:{arg}", f"sum a_ij x_i x_j e[i,j] on R^{n}",
                   "certified at k=2 when every lambda_i and lambda_i + lambda_j is nonzero", pi)


def _xy_plane(arg: str | None) -> Example:
    x, y = variables(2)
    return Example("xy-plane", "xy e[1,2] on R^2",
                   "dim H^{2,0} = 1 with witness e[1,2]; not certified at k=2 (yet 2-stable)",
                   MultiVector(2, 2, {(1, 2): x * y}))


def _cubic_family(arg: str | None) -> Example:
    k = int(arg) if arg else 3
    return Example(f"cubic-family:{k}",
                   "(xy^{k-1} - yx^{k-1}) e[1,2] + (yz^{k-1} - zy^{k-1}) e[2,3] + (zx^{k-1} - xz^{k-1}) e[3,1]",
                   "Poisson; pi = I ^ X_mod / (k+1); stability via the modular field when its zero is isolated",
                   example_pi_k(k))


def _aff1(arg: str | None) -> Example:
    g = alg.aff1()
    return Example("aff1", "aff(1): [e1, e2] = e2, with its Lie-Poisson bivector",
                   "H^2(aff(1), R) = 0 so the Lie-Poisson origin is certified at k=1; "
                   "H^1(aff(1), aff(1)*) = 1",
                   alg.lie_poisson(g), None, g, alg.coadjoint(g))


def _action(name: str, g: alg.LieAlgebra, rep: alg.Representation, claim: str) -> Example:
    Pi, fs = alg.action_algebroid(g, rep)
    return Example(name, f"action algebroid of {g.name or 'g'} on R^{rep.dim}", claim, Pi, fs, g, rep)


def _aff1_action(arg: str | None) -> Example:
    g = alg.aff1()
    return _action("aff1-action", g, alg.coadjoint(g),
                   "dim H^{2,0}_lin = 1: the algebroid is not certified at k=1")


def _sl2_action(arg: str | None) -> Example:
    g = alg.sl2()
    return _action("sl2-action", g, alg.sl2_irreducible(1).dual(),
                   "H^1(sl2, V*) = 0 for the standard representation, so certified at k=1")


def _scaling(arg: str | None) -> Example:
    g = alg.abelian(1)
    rep = alg.Representation(g, 1, [[[1]]], name="scaling")
    return _action("scaling", g, rep, "R acting on R by scaling; H^{2,0}_lin = H^1(R, R*) = 0")


def _monnier(arg: str | None) -> Example:
    n = int(arg) if arg else 2
    Pi, fs = alg.monnier_algebroid(n)
    return Example(f"monnier:{n}", "sphere algebroid as displayed (fiber coefficient +1)",
                   "fiber-wise linear; satisfies Jacobi only on the unit sphere", Pi, fs)


def _monnier_corrected(arg: str | None) -> Example:
    n = int(arg) if arg else 2
    Pi, fs = alg.monnier_algebroid(n, corrected=True)
    return Example(f"monnier-corrected:{n}", "sphere algebroid with fiber coefficient -2 (Poisson)",
                   "Poisson; singular along the unit sphere (use --at 1,0,...)", Pi, fs)


def _lie(name: str, build: Callable[[], alg.LieAlgebra], claim: str):
    def make(arg: str | None) -> Example:
        g = build()
        return Example(name, f"{name} with its Lie-Poisson bivector", claim, alg.lie_poisson(g), None, g,
                       alg.coadjoint(g))
    return make


REGISTRY: dict[str, Callable[[str | None], Example]] = {
    "quadratic-diagonal": _quadratic_diagonal,
    "xy-plane": _xy_plane,
    "cubic-family": _cubic_family,
    "aff1": _aff1,
    "aff1-action": _aff1_action,
    "sl2-action": _sl2_action,
    "scaling": _scaling,
    "monnier": _monnier,
    "monnier-corrected": _monnier_corrected,
    "so3": _lie("so3", alg.so3, "semisimple: H^2(so3, R) = 0"),
    "heisenberg": _lie("heisenberg", alg.heisenberg, "H^2(heisenberg, R) has dimension 2"),
}

USAGE = {
    "quadratic-diagonal": "quadratic-diagonal:a12,a13,a23",
    "cubic-family": "cubic-family:k",
    "monnier": "monnier:n",
    "monnier-corrected": "monnier-corrected:n",
}


def resolve(spec: str) -> Example:
    name, _, arg = spec.partition(":")
    if name not in REGISTRY:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(sorted(REGISTRY))}")
    return REGISTRY[name](arg or None)


def names() -> list[str]:
    return [USAGE.get(k, k) for k in REGISTRY]
