"""Command-line front end.

Exit codes: 0 certified / success, 1 not certified / undecided / not found,
2 input or precondition error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import algebroid as alg
from . import analysis3d, cohomology, perturb, registry
from .formats import load_text, parse_mvf
from .multivector import MultiVector, homogeneous_part, jacobiator, lowest_order, recenter

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


@dataclass
class Subject:
    label: str
    pi: MultiVector | None
    fibered: alg.FiberedSpace | None = None
    lie_algebra: alg.LieAlgebra | None = None
    representation: alg.Representation | None = None


# argument helpers


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip().replace("−", "-"))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _exact_rational(text: str) -> Fraction:
    if "." in text or "e" in text.lower():
        raise argparse.ArgumentTypeError(f"write exact values as p/q, got {text!r}")
    return _rational(text)


def _point(text: str) -> list[Fraction]:
    return [_exact_rational(t) for t in text.split(",")]


def _s_range(text: str) -> tuple[int, int]:
    a, sep, b = text.partition("..")
    try:
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if not sep or lo > hi:
        raise argparse.ArgumentTypeError(f"expected A..B with A <= B, got {text!r}")
    return lo, hi


def resolve_subject(args) -> Subject:
    given = [a for a in ("input", "expr", "example") if getattr(args, a, None)]
    if len(given) != 1:
        raise InputError("give exactly one of --input, --expr, --example")
    fib = None
    if args.base is not None or args.fiber is not None:
        if args.base is None or args.fiber is None:
            raise InputError("--base and --fiber go together")
        fib = alg.FiberedSpace(args.base, args.fiber)
    if args.example:
        try:
            ex = registry.resolve(args.example)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
        return Subject(ex.name, ex.pi, fib or ex.fibered, ex.lie_algebra, ex.representation)
    if args.expr:
        pi = parse_mvf(args.expr, args.dim, fib)
        return Subject(args.expr, pi, fib)
    path = Path(args.input)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    doc = load_text(text, args.dim, fib)
    if args.name:
        if args.name not in doc.multivectors:
            raise InputError(f"no multivector named {args.name!r} in {path}")
        name = args.name
    elif "pi" in doc.multivectors:
        name = "pi"
    elif doc.multivectors:
        name = next(iter(doc.multivectors))
    else:
        name = None
    pi = doc.multivectors[name] if name else None
    return Subject(f"{path.name}:{name}" if name else path.name, pi, fib or doc.fibered,
                   doc.lie_algebra, doc.representation)


def _require_bivector(sub: Subject) -> MultiVector:
    if sub.pi is None:
        raise InputError(f"{sub.label} has no bivector")
    if sub.pi.r != 2 and not sub.pi.is_zero():
        raise InputError(f"expected a bivector, got a {sub.pi.r}-vector")
    return sub.pi


def homogeneous_at(pi: MultiVector, at: Sequence[Fraction] | None, k: int | None) -> tuple[MultiVector, int]:
    """The lowest-order part pi^(k) at ``at`` (default the origin)."""
    if not jacobiator(pi).is_zero():
        raise InputError("the bivector is not Poisson ([pi, pi] != 0)")
    if at is not None:
        if len(at) != pi.n:
            raise InputError(f"--at has {len(at)} coordinates, expected {pi.n}")
        pi = recenter(pi, at)
    order = lowest_order(pi)
    if order is None:
        raise InputError("the bivector vanishes identically")
    if order == 0:
        raise InputError("the point is not a singular point (pi does not vanish there)")
    if k is not None and k != order:
        raise InputError(f"the point is a singularity of order {order}, not {k}")
    return homogeneous_part(pi, order), order


# output


def emit(args, result: dict, lines: list[str]) -> None:
    body = json.dumps(result, indent=2, sort_keys=True) + "\n"
    if args.report:
        Path(args.report).write_text(body, encoding="utf-8")
    if args.format == "machine":
        sys.stdout.write(body)
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _table(header: Sequence[str], rows: Sequence[Sequence]) -> list[str]:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]


def _report_rows(reports) -> list[list]:
    return [[r.s, r.dim_space, r.dim_kernel, r.dim_image, r.dim_cohomology] for r in reports]


_REPORT_HEADER = ("s", "dim V", "dim ker", "dim im", "dim H^{2,s}")


# commands


def cmd_certify(args) -> int:
    sub = resolve_subject(args)
    pi_k, k = homogeneous_at(_require_bivector(sub), args.at, args.k)
    cert = cohomology.stability_certificate(pi_k)
    lines = [f"input: {sub.label}", f"pi^({k}) = {pi_k}", f"k = {k}"]
    lines += _table(_REPORT_HEADER, _report_rows(cert.reports))
    lines.append(f"verdict: {cert.verdict}")
    if cert.witness is not None:
        lines.append(f"witness: {cert.witness}")
    emit(args, {"command": "certify", "input": sub.label, "pi_k": str(pi_k), **cert.as_dict()}, lines)
    return EXIT_OK if cert.certified else EXIT_NEGATIVE


def cmd_cohomology(args) -> int:
    sub = resolve_subject(args)
    pi_k, k = homogeneous_at(_require_bivector(sub), args.at, args.k)
    lo, hi = args.s_range if args.s_range else (0, k - 1)
    if lo < 0:
        raise InputError("homogeneity s must be >= 0")
    fib = sub.fibered if args.lin else None
    if args.lin and fib is None:
        raise InputError("--lin needs a fibered space (--base/--fiber or a fibered input)")
    reports = []
    for s in range(lo, hi + 1):
        reports.append(alg.lin_cohomology(pi_k, fib, s, k) if fib else cohomology.lp_cohomology(pi_k, s))
    name = "H^{2,s}_lin" if fib else "H^{2,s}_LP"
    lines = [f"input: {sub.label}", f"k = {k}", f"complex: {name}"]
    lines += _table(_REPORT_HEADER, _report_rows(reports))
    emit(args, {"command": "cohomology", "input": sub.label, "k": k, "complex": name,
                "reports": [r.as_dict() for r in reports]}, lines)
    return EXIT_OK


def cmd_algebroid_certify(args) -> int:
    sub = resolve_subject(args)
    if sub.fibered is None:
        raise InputError("algebroid-certify needs a fibered space (--base/--fiber or a fibered input)")
    Pi = _require_bivector(sub)
    check = alg.fiberwise_linear_check(Pi, sub.fibered)
    if not check:
        raise InputError("not fiber-wise linear: " + "; ".join(check.problems))
    Pi_k, k = homogeneous_at(Pi, args.at, args.k)
    cert = alg.algebroid_certificate(Pi_k, sub.fibered)
    lines = [f"input: {sub.label}", f"fibered: base {sub.fibered.d}, fiber {sub.fibered.rf}",
             f"Pi^({k}) = {Pi_k}", f"k = {k}"]
    lines += _table(_REPORT_HEADER, _report_rows(cert.reports))
    result = {"command": "algebroid-certify", "input": sub.label, "pi_k": str(Pi_k), **cert.as_dict()}
    if k == 1 and args.at is None and sub.lie_algebra is not None and sub.representation is not None:
        iso = alg.iso_check_h2lin_h1(sub.lie_algebra, sub.representation)
        lines.append(f"dim H^1(g, V*) = {iso.dim_ce}  (isomorphism check: {'ok' if iso else 'FAILED'})")
        result["h1_g_vdual"] = iso.dim_ce
        result["isomorphism_check"] = bool(iso)
    lines.append(f"verdict: {cert.verdict}")
    if cert.witness is not None:
        lines.append(f"witness: {cert.witness}")
    emit(args, result, lines)
    return EXIT_OK if cert.certified else EXIT_NEGATIVE


def cmd_ce(args) -> int:
    sub = resolve_subject(args)
    g = sub.lie_algebra
    if g is None:
        raise InputError(f"{sub.label} has no Lie algebra")
    if args.coefficients == "representation":
        if sub.representation is None:
            raise InputError(f"{sub.label} has no representation")
        rep, coeff = sub.representation, sub.representation.name or f"R^{sub.representation.dim}"
    else:
        rep, coeff = None, "R"
    report = alg.ce_cohomology(g, rep, args.p)
    lines = [f"input: {sub.label}", f"dim H^{args.p}(g, {coeff}) = {report.dim_cohomology}",
             f"  cochains {report.dim_space}, cocycles {report.dim_kernel}, coboundaries {report.dim_image}"]
    emit(args, {"command": "ce", "input": sub.label, "p": args.p, "coefficients": coeff,
                **report.as_dict()}, lines)
    return EXIT_OK if report.vanishes else EXIT_NEGATIVE


def cmd_modular(args) -> int:
    sub = resolve_subject(args)
    pi = _require_bivector(sub)
    if pi.n != 3:
        raise InputError("the modular field analysis is on R^3")
    if args.at is not None or not pi.is_homogeneous():
        pi, k = homogeneous_at(pi, args.at, args.k)
    else:
        k = cohomology.polynomial_degree(pi)
    X = analysis3d.modular_vector_field(pi)
    liouville = analysis3d.liouville_decomposition_check(pi, X, k)
    lines = [f"input: {sub.label}", f"k = {k}", f"X_mod = {X}",
             f"pi = I ^ X_mod / {k + 1}: {'holds' if liouville else 'fails'}"]
    emit(args, {"command": "modular", "input": sub.label, "k": k, "modular_field": str(X),
                "liouville_identity": liouville}, lines)
    return EXIT_OK


def cmd_isolated(args) -> int:
    sub = resolve_subject(args)
    if sub.pi is None:
        raise InputError(f"{sub.label} has no multivector")
    if sub.pi.r == 1:
        verdict = analysis3d.algebraically_isolated(sub.pi, args.bound)
        X, label = sub.pi, verdict.outcome
        certified = verdict.isolated
        result = {"command": "isolated", "input": sub.label, **verdict.as_dict()}
    else:
        pi = _require_bivector(sub)
        if args.at is not None or not pi.is_homogeneous():
            pi, _ = homogeneous_at(pi, args.at, args.k)
        res = analysis3d.lemma33_certificate(pi, args.bound)
        verdict, X, label, certified = res.isolation, res.modular_field, res.verdict, res.certified
        result = {"command": "isolated", "input": sub.label, **res.as_dict()}
    lines = [f"input: {sub.label}", f"X = {X}"]
    lines += _table(("degree", "ideal slice", "all", "codim"),
                    [[d, a, b, b - a] for d, (a, b) in sorted(verdict.table.items())])
    lines.append(f"outcome: {verdict.outcome}")
    if label != verdict.outcome:
        lines.append(f"verdict: {label}")
    emit(args, result, lines)
    return EXIT_OK if certified else EXIT_NEGATIVE


def cmd_perturb(args) -> int:
    sub = resolve_subject(args)
    pi = _require_bivector(sub)
    if args.at is not None:
        pi = recenter(pi, args.at)
    k = args.k if args.k is not None else lowest_order(pi)
    if not k:
        raise InputError("the origin is not a singular point")
    rep = perturb.stability_experiment(pi, k, args.trials, args.eps, args.seed, args.radius, args.tol,
                                       args.truncation)
    lines = [f"input: {sub.label}", f"k = {k}, eps = {rep.epsilon}, seed = {rep.seed}, "
             f"radius = {rep.radius}, tol = {rep.tolerance}",
             f"found: {rep.successes}/{rep.trials}"]
    if args.verbose:
        lines += _table(("trial", "found", "residual", "distance"),
                        [[t.trial, t.found, f"{t.residual:.3e}", f"{t.distance:.3e}"] for t in rep.results])
    emit(args, {"command": "perturb", "input": sub.label, **rep.as_dict()}, lines)
    return EXIT_OK if rep.successes == rep.trials else EXIT_NEGATIVE


def cmd_examples(args) -> int:
    if args.example_name:
        try:
            ex = registry.resolve(args.example_name)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
        result = {"command": "examples", "name": ex.name, "description": ex.description,
                  "claim": ex.claim, "pi": str(ex.pi) if ex.pi is not None else None,
                  "fibered": [ex.fibered.d, ex.fibered.rf] if ex.fibered else None}
        lines = [f"{ex.name}: {ex.description}", f"  claim: {ex.claim}"]
        if ex.pi is not None:
            lines.append(f"  pi = {ex.pi}")
        if ex.fibered is not None:
            lines.append(f"  fibered: base {ex.fibered.d}, fiber {ex.fibered.rf}")
    else:
        result = {"command": "examples", "names": registry.names()}
        lines = registry.names()
    emit(args, result, lines)
    return EXIT_OK


# parser


def _common(p: argparse.ArgumentParser, source: bool = True) -> None:
    if source:
        src = p.add_argument_group("input")
        src.add_argument("--input", metavar="FILE", help="JSON document or 'name = expr;' file")
        src.add_argument("--expr", metavar="STRING", help="multivector expression, e.g. 'x*y*e[1,2]'")
        src.add_argument("--example", metavar="NAME", help="built-in example (see 'examples')")
        src.add_argument("--name", help="which multivector of the input document to use")
        src.add_argument("--dim", type=int, help="ambient dimension for --expr (default: inferred)")
        src.add_argument("--base", type=int, help="fibered space: base dimension d")
        src.add_argument("--fiber", type=int, help="fibered space: fiber dimension r")
        src.add_argument("--at", type=_point, metavar="POINT",
                         help="recenter at this point, e.g. 1,0,1/2")
    p.add_argument("--report", metavar="FILE", help="also write the machine-readable report here")
    p.add_argument("--format", choices=("table", "machine"), default="table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="poisstab",
                                     description="Exact stability certificates for singular points "
                                                 "of Poisson structures and Lie algebroids.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="H^{2,s}_LP = 0 for s < k")
    _common(p)
    p.add_argument("--k", type=int, help="expected order of the singular point")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("cohomology", help="table of dim H^{2,s}")
    _common(p)
    p.add_argument("--k", type=int)
    p.add_argument("--s-range", type=_s_range, metavar="A..B", help="default 0..k-1")
    p.add_argument("--lin", action="store_true", help="use the fiber-wise linear subcomplex")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("algebroid-certify", help="H^{2,s}_lin = 0 for s < k")
    _common(p)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_algebroid_certify)

    p = sub.add_parser("ce", help="Chevalley-Eilenberg cohomology")
    _common(p)
    p.add_argument("--p", type=int, default=2, help="cochain degree (default 2)")
    p.add_argument("--coefficients", choices=("trivial", "representation"), default="trivial")
    p.set_defaults(func=cmd_ce)

    p = sub.add_parser("modular", help="modular vector field on R^3")
    _common(p)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_modular)

    p = sub.add_parser("isolated", help="isolated-zero test of the modular field")
    _common(p)
    p.add_argument("--k", type=int)
    p.add_argument("--bound", type=int, help="highest degree to test (default 2e+3 where e is the field degree)")
    p.set_defaults(func=cmd_isolated)

    p = sub.add_parser("perturb", help="perturbation experiment")
    _common(p)
    p.add_argument("--k", type=int)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--eps", type=_rational, default=Fraction(1, 1000))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", type=float, default=0.1)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--truncation", type=int, help="3D truncation degree (default 2k+2)")
    p.add_argument("--verbose", action="store_true", help="list every trial")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("examples", help="list or describe built-in examples")
    p.add_argument("example_name", nargs="?", metavar="NAME")
    _common(p, source=False)
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else exc.__class__.__name__
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
