"""Command-line front end.

Subcommands:

* ``validate <model>``          - run every model invariant check
* ``cone <model>``              - cone generators and nef-cone inequalities
* ``classify <model> --class``  - locate one class and certify it
* ``bounds <model>``            - the derived bound constants
* ``verify <model> --box N``    - exhaustive box verification with report

Exit codes: 0 success / no violations, 1 violations found, 2 invalid
model or unparsable input. All input and output rationals are exact
("p/q" strings or integers); decimals appear only as parenthesized
6-significant-digit approximations in text output.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .bounds import BoundConstants, c_of_x
from .cones import is_big, is_nef, nef_cone, position
from .lattice import (
    DivisorClass,
    ModelFormatError,
    SurfaceModel,
    emit_model,
    fraction_str,
    load_model,
    pair,
    self_int,
    to_fraction,
)
from .riemann_roch import euler_char, l_value
from .verify import (
    certificate_to_dict,
    certify,
    constants_to_dict,
    report_to_csv,
    report_to_dict,
    report_to_json,
    verify_box,
)

import json


def _fmt(x: Fraction) -> str:
    """Exact rational, with an advisory decimal for non-integers."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{fraction_str(x)} (~{float(x):.6g})"


def _emit(args, payload: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _load(args) -> SurfaceModel:
    return load_model(args.model)


def _reject_invalid(model: SurfaceModel) -> None:
    report = model.validation
    if not report.ok:
        first = report.failures[0]
        raise ModelFormatError(f"invalid model: check '{first.name}' failed ({first.detail})")


def cmd_validate(args) -> int:
    model = _load(args)
    report = model.validation
    if args.echo:
        _emit(args, emit_model(model))
        return 0 if report.ok else 2
    if args.format == "json":
        doc = {"ok": report.ok,
               "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                          for c in report.checks]}
        _emit(args, json.dumps(doc, indent=2) + "\n")
    else:
        lines = []
        for c in report.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}")
        lines.append(f"model is {'VALID' if report.ok else 'INVALID'}")
        _emit(args, "\n".join(lines) + "\n")
    if not report.ok:
        first = report.failures[0]
        print(f"invalid model: check '{first.name}' failed ({first.detail})", file=sys.stderr)
        return 2
    return 0


def cmd_cone(args) -> int:
    model = _load(args)
    _reject_invalid(model)
    desc = nef_cone(model)
    if args.format == "json":
        doc = {
            "gen1": [fraction_str(c) for c in model.gen1.coords],
            "gen2": [fraction_str(c) for c in model.gen2.coords],
            "nef_cone": {
                "ineq1": [fraction_str(c) for c in desc.ineq1],
                "ineq2": [fraction_str(c) for c in desc.ineq2],
            },
        }
        _emit(args, json.dumps(doc, indent=2) + "\n")
    else:
        lines = [
            f"curve cone generators (lattice coordinates):",
            f"  gen1 = ({fraction_str(model.gen1.coords[0])}, {fraction_str(model.gen1.coords[1])})",
            f"  gen2 = ({fraction_str(model.gen2.coords[0])}, {fraction_str(model.gen2.coords[1])})",
            f"nef cone in generator coordinates (a1, a2):",
            f"  ({_fmt(desc.ineq1[0])})*a1 + ({_fmt(desc.ineq1[1])})*a2 >= 0",
            f"  ({_fmt(desc.ineq2[0])})*a1 + ({_fmt(desc.ineq2[1])})*a2 >= 0",
        ]
        _emit(args, "\n".join(lines) + "\n")
    return 0


def _parse_class(text: str) -> DivisorClass:
    parts = text.split(",")
    if len(parts) != 2:
        raise ModelFormatError(f"--class expects 'a,b' with exact rationals, got {text!r}")
    return DivisorClass(to_fraction(parts[0].strip()), to_fraction(parts[1].strip()))


def cmd_classify(args) -> int:
    model = _load(args)
    _reject_invalid(model)
    d = _parse_class(args.cls)
    pos = position(model, d)
    d2 = self_int(model, d)
    kd = pair(model, model.canonical, d)
    facts = {
        "class": [fraction_str(c) for c in d.coords],
        "position": pos.value,
        "nef": is_nef(model, d),
        "big": is_big(model, d),
        "self_intersection": fraction_str(d2),
        "canonical_degree": fraction_str(kd),
        "l_value": fraction_str(l_value(model, d)),
        "euler_characteristic": fraction_str(euler_char(model, d)),
    }
    cert = None
    if d.is_integral and not d.is_zero:
        cert = certify(model, d)
    if args.format == "json":
        doc = dict(facts)
        doc["certificate"] = None if cert is None else certificate_to_dict(cert)
        _emit(args, json.dumps(doc, indent=2) + "\n")
        return 0
    lines = [
        f"class ({fraction_str(d.coords[0])}, {fraction_str(d.coords[1])})",
        f"  position: {pos.value}",
        f"  nef: {is_nef(model, d)}   big: {is_big(model, d)}",
        f"  D^2 = {_fmt(d2)}",
        f"  K.D = {_fmt(kd)}",
        f"  l-value = {_fmt(l_value(model, d))}",
        f"  chi(D) = {_fmt(euler_char(model, d))}",
    ]
    if cert is None:
        lines.append("  certificate: only nonzero integral classes are certified")
    else:
        lines.append(f"  certificate: case {cert.proof_case.value}")
        for s in cert.hypothesis_slacks:
            lines.append(f"    slack {s.label} = {_fmt(s.value)}  (require {s.require})")
        if cert.dichotomy_branch is not None:
            br = cert.dichotomy_branch
            defs = ", ".join(f"{lbl} = {_fmt(val)}" for lbl, val in br.defining)
            lines.append(f"    branch {br.label} ({defs})")
            lines.append(f"    conclusion {br.conclusion.label} = {_fmt(br.conclusion.value)}"
                         f"  (require {br.conclusion.require})")
        if cert.bound_form is not None:
            f = cert.bound_form
            h0max = "" if f.h0_max is None else f", h0 <= {fraction_str(f.h0_max)}"
            lines.append(f"    h1 <= ({_fmt(f.alpha)})*h0 + ({_fmt(f.beta)})"
                         f" for h0 >= {fraction_str(f.h0_min)}{h0max}")
        lines.append(f"    entailed by c_X = {_fmt(cert.c_x)}: {cert.entailed}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _constants_text(constants: BoundConstants) -> str:
    floor = constants.coeff_floor
    if isinstance(floor, tuple):
        floor_line = (f"  coordinate floors: a2 >= {_fmt(floor[0])}, "
                      f"a1 >= ({_fmt(floor[1])})*a2")
    else:
        floor_line = f"  coordinate floor: c = {_fmt(floor)}"
    lines = [
        f"  b(X)  = {_fmt(constants.b_x)}",
        floor_line,
        f"  m(X)  = {_fmt(constants.m_x)}",
        "  case values: [" + ", ".join(_fmt(v) for v in constants.case_values) + "]",
        f"  c_X   = {_fmt(constants.c_x)}" + ("  (floored at 1)" if constants.floored else ""),
    ]
    return "\n".join(lines)


def cmd_bounds(args) -> int:
    model = _load(args)
    _reject_invalid(model)
    constants = c_of_x(model)
    if args.format == "json":
        _emit(args, json.dumps(constants_to_dict(constants), indent=2) + "\n")
    else:
        _emit(args, "bound constants:\n" + _constants_text(constants) + "\n")
    return 0


def _resolve_jobs(args) -> int:
    if args.jobs is not None:
        return max(1, args.jobs)
    env = os.environ.get("PICARD2_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ModelFormatError(f"PICARD2_JOBS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def cmd_verify(args) -> int:
    model = _load(args)
    _reject_invalid(model)
    if args.box < 1:
        raise ModelFormatError("--box must be >= 1")
    report = verify_box(model, args.box, jobs=_resolve_jobs(args))
    if args.format == "json":
        _emit(args, report_to_json(report))
    elif args.format == "csv":
        _emit(args, report_to_csv(report))
    else:
        doc = report_to_dict(report)
        lines = [
            f"verified box [-{report.box}, {report.box}]^2 on a {model.kind.value} model",
            "constants:",
            _constants_text(report.constants),
            "counts per case:",
        ]
        lines += [f"  {case}: {count}" for case, count in doc["counts"].items()]
        if report.attained_extremes:
            coords = ", ".join(
                f"({fraction_str(d.coords[0])}, {fraction_str(d.coords[1])})"
                for d in report.attained_extremes)
            lines.append(f"slope bound attained with zero slack at: {coords}")
        if report.ok:
            lines.append("violations: none")
        else:
            lines.append(f"violations: {len(report.violations)}")
            for v in report.violations[:10]:
                cls = v.certificate.divisor.coords
                where = f"({fraction_str(cls[0])}, {fraction_str(cls[1])})"
                for reason in v.reasons:
                    lines.append(f"  {where}: {reason}")
            if len(report.violations) > 10:
                lines.append(f"  ... and {len(report.violations) - 10} more")
        lines.append(f"wall time: {report.wall_time_s:.3f}s")
        _emit(args, "\n".join(lines) + "\n")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="picard2",
        description="Exact cone geometry, bound constants, and certificate "
                    "verification for rank-2 surface lattices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, formats=("text", "json")):
        p.add_argument("model", help="path to a model JSON file")
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--output", help="write output to this path instead of stdout")

    p = sub.add_parser("validate", help="check every model invariant")
    add_common(p)
    p.add_argument("--echo", action="store_true",
                   help="re-emit the model as canonical JSON instead of a report")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cone", help="print cone generators and nef-cone inequalities")
    add_common(p)
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("classify", help="locate and certify a single class")
    add_common(p)
    p.add_argument("--class", dest="cls", required=True, metavar="A,B",
                   help="class coordinates, exact rationals, e.g. '2,1' or '1/2,3'")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bounds", help="print the derived bound constants")
    add_common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="certify every integral class in a box")
    add_common(p, formats=("text", "json", "csv"))
    p.add_argument("--box", type=int, default=50, metavar="N",
                   help="box radius (default 50)")
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: PICARD2_JOBS or all cores)")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ModelFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
