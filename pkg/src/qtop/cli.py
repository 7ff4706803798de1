"""Command-line front end.

Exit status: 0 on success, 1 when a verifier finds a violation, 2 on misuse
(bad flags, malformed input, out-of-range parameters).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import continuum as C
from .braid import BraidWord, fixed_points
from .finite import (
    BoundExceededError,
    FiniteQuandle,
    are_isomorphic,
    check_quandle,
    inner_group,
    make_alexander,
    make_conj,
    make_core,
    make_dihedral,
    make_trivial,
)
from .groups import InvalidGroupError, group_by_name
from .polyrack import RationalBivariatePoly, check_polynomial_quandle, check_polynomial_rack
from .verify import (
    DEFAULT_TOL,
    max_displacement,
    nonisomorphism_certificate,
    trivial_locus,
    verify_closure,
    verify_distributivity,
    verify_homeomorphism,
    verify_idempotency,
)


class UsageError(Exception):
    pass


def _params(text: str) -> tuple[str, list[str]]:
    name, _, rest = text.partition(":")
    return name.strip(), [p.strip() for p in rest.split(",")] if rest else []


def parse_quandle(text: str) -> FiniteQuandle:
    """``trivial:n``, ``dihedral:n``, ``alexander:n,t``, ``conj:G``, ``core:G`` or a JSON file."""
    if text.endswith(".json"):
        return FiniteQuandle.from_json(json.loads(Path(text).read_text()))
    name, params = _params(text)
    try:
        if name == "trivial":
            return make_trivial(int(params[0]))
        if name == "dihedral":
            return make_dihedral(int(params[0]))
        if name == "alexander":
            return make_alexander(int(params[0]), int(params[1]))
        if name == "conj":
            return make_conj(group_by_name(params[0]))
        if name == "core":
            return make_core(group_by_name(params[0]))
    except IndexError:
        raise UsageError(f"missing parameters in quandle {text!r}") from None
    raise UsageError(f"unknown quandle {text!r}")


def parse_spec(text: str, family_n: int | None = None) -> C.ContinuumSpec:
    if text.endswith(".json"):
        return C.spec_from_json(json.loads(Path(text).read_text()))
    name, params = _params(text)
    n = int(params[0]) if params and name in ("family-fn", "family-omega") else family_n
    if name == "unit-interval":
        return C.UnitInterval()
    if name == "closed-interval":
        if len(params) != 2:
            raise UsageError("closed-interval needs bounds, e.g. closed-interval:0,2")
        return C.ClosedInterval(float(params[0]), float(params[1]))
    if name == "trivial":
        return C.TrivialSpace(*(float(p) for p in params)) if params else C.TrivialSpace()
    if name == "open-interval-g":
        return C.OpenIntervalG()
    if name == "ball":
        dim = int(params[0]) if params else 2
        variant = params[1] if len(params) > 1 else "paper-faithful"
        return C.BallOmega(dim, variant)
    if name == "family-fn":
        if n is None:
            raise UsageError("family-fn needs --family-n or family-fn:n")
        a, b = (float(params[1]), float(params[2])) if len(params) >= 3 else (0.0, 1.0)
        return C.FamilyFn(n, a, b)
    if name == "family-omega":
        if n is None:
            raise UsageError("family-omega needs --family-n or family-omega:n")
        dim = int(params[1]) if len(params) > 1 else 2
        variant = params[2] if len(params) > 2 else "paper-faithful"
        return C.FamilyOmegaN(n, dim, variant)
    if name == "real-line-arctan":
        return C.RealLineArctan()
    if name == "chart-arctan":
        return C.arctan_chart_spec()
    if name == "affine":
        if not params:
            raise UsageError("affine needs t, e.g. affine:2")
        return C.AffineLine(float(params[0]))
    raise UsageError(f"unknown spec {text!r}")


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _default_grid(spec: C.ContinuumSpec, grid: int | None, line: int, ball: int) -> int:
    if grid is not None:
        return grid
    return ball if spec.vector else line


# -- subcommands ------------------------------------------------------------


def cmd_finite(args) -> int:
    q = parse_quandle(args.quandle)
    report = check_quandle(q)
    out = {"quandle": q.label, "n": q.size, "check": report.to_dict()}
    if report["right_invertibility"].passed:
        inn = inner_group(q)
        out["inner_group"] = {"order": inn.order, "orbits": [list(o) for o in inn.orbits]}
        out["connected"] = len(inn.orbits) == 1
    if args.iso:
        other = parse_quandle(args.iso)
        phi = are_isomorphic(q, other, bound=args.iso_bound)
        out["isomorphism"] = {"other": other.label, "map": list(phi) if phi is not None else None}
    if args.table_out:
        Path(args.table_out).write_text(_dump(q.to_json()))
    _emit(_dump(out), args.out)
    return 0 if report.passed else 1


def cmd_verify(args) -> int:
    spec = parse_spec(args.spec, args.family_n)
    grid = _default_grid(spec, args.grid, 101, 21)
    if spec.vector and grid > 31:
        raise UsageError("ball-type specs are limited to 31 grid points per axis")
    samples = args.samples or (grid if spec.vector else 10_000)
    ys = spec.sample(5 if not spec.vector else 7)
    reports = [
        verify_idempotency(spec, grid, args.tol),
        verify_distributivity(spec, grid, args.tol),
        *(verify_homeomorphism(spec, y, samples, args.tol) for y in ys),
        verify_closure(spec, min(grid, 21) if spec.vector else grid),
    ]
    passed = all(r.passed for r in reports)
    out = {
        "spec": spec.to_json(),
        "passed": passed,
        "reports": [r.to_dict() for r in reports],
    }
    _emit(_dump(out), args.out)
    return 0 if passed else 1


def cmd_locus(args) -> int:
    spec = parse_spec(args.spec, args.family_n)
    grid = _default_grid(spec, args.grid, 2001, 21)
    if args.csv:
        if spec.vector:
            raise UsageError("CSV locus output is only available for one-dimensional specs")
        xs = np.sort(spec.sample(grid))
        moves = max_displacement(spec, xs, xs)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "max_move", "trivial"])
        for x, m in zip(xs, moves):
            writer.writerow([repr(float(x)), repr(float(m)), int(m <= args.tol)])
        _emit(buf.getvalue(), args.out)
        return 0
    report = trivial_locus(spec, grid, args.tol)
    out = {"spec": spec.to_json(), "locus": report.to_dict()}
    if args.against:
        other = parse_spec(args.against, args.family_n)
        out["certificate"] = nonisomorphism_certificate(spec, other, grid, args.tol).to_dict()
    _emit(_dump(out), args.out)
    return 0


def cmd_braid(args) -> int:
    q = parse_quandle(args.quandle)
    word = BraidWord.parse(args.word, args.strands)
    result = fixed_points(q, word, keep_tuples=True)
    out = {"quandle": q.label, "strands": word.strands, "word": list(word.letters)}
    out.update(result.to_json(limit=args.max_tuples))
    _emit(_dump(out), args.out)
    return 0


def cmd_poly(args) -> int:
    text = args.poly
    raw = Path(text).read_text() if text.endswith(".json") else text
    p = RationalBivariatePoly.from_json(json.loads(raw))
    verdict = check_polynomial_rack(p) if args.rack else check_polynomial_quandle(p)
    out = {"polynomial": str(p), "mode": "rack" if args.rack else "quandle", "verdict": verdict.to_dict()}
    _emit(_dump(out), args.out)
    return 0


def cmd_curves(args) -> int:
    eps = _parse_floats(args.epsilons)
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    rows = C.right_mul_curves(eps, args.samples)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "epsilon", "value"])
    for x, e, v in rows:
        writer.writerow([repr(x), repr(e), repr(v)])
    _emit(buf.getvalue(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qtop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("finite", help="build a finite quandle and check its axioms")
    p.add_argument("--quandle", required=True, help="name:params (e.g. dihedral:5, conj:S3) or file.json")
    p.add_argument("--iso", help="second quandle to test for isomorphism")
    p.add_argument("--iso-bound", type=int, default=16)
    p.add_argument("--table-out", help="write the operation table as JSON")
    p.add_argument("--out")
    p.set_defaults(func=cmd_finite)

    p = sub.add_parser("verify", help="grid-check the axioms of a continuum construction")
    p.add_argument("--spec", required=True)
    p.add_argument("--family-n", type=int)
    p.add_argument("--grid", type=int)
    p.add_argument("--samples", type=int, help="samples per line for the homeomorphism check")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("locus", help="trivial locus of a continuum construction")
    p.add_argument("--spec", required=True)
    p.add_argument("--family-n", type=int)
    p.add_argument("--grid", type=int)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--against", help="second spec for the nonisomorphism certificate")
    p.add_argument("--csv", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_locus)

    p = sub.add_parser("braid", help="count tuples fixed by a braid word")
    p.add_argument("--quandle", required=True)
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--word", required=True, help="comma-separated signed generators, e.g. 1,1,1")
    p.add_argument("--max-tuples", type=int, default=1000, help="omit tuples when there are more than this")
    p.add_argument("--out")
    p.set_defaults(func=cmd_braid)

    p = sub.add_parser("poly", help="exact polynomial quandle/rack check")
    p.add_argument("--poly", required=True, help='JSON term list or file, e.g. [{"i":1,"j":0,"num":1,"den":1}]')
    p.add_argument("--rack", action="store_true", help="check the rack variant instead")
    p.add_argument("--out")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("curves", help="CSV of R_y(x) on the unit interval for y = 1/2 + eps")
    p.add_argument("--epsilons", required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--out")
    p.set_defaults(func=cmd_curves)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except (
        UsageError,
        ValueError,  # includes DomainError, InvalidGroupError, JSONDecodeError
        BoundExceededError,
        InvalidGroupError,
        OSError,
        KeyError,
    ) as exc:
        print(f"qtop {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
