"""Certificate construction and exhaustive box verification.

For each nonzero integral class the harness builds a certificate tracing
which case of the bound argument applies and the exact slack of every
inequality used:

* classes outside the curve cone are recorded and otherwise ignored;
* classes failing the curve-candidate hypotheses of their case are
  counted as skipped (interior candidates must pair correctly against
  the generators; ray classes must respect the slope bound m(X) and the
  negativity bound b(X), the standing hypotheses of the ray cases);
* for the rest, the coordinate floors, the slope bound, the dichotomy
  branch with its conclusion, the h1 bound form, and the entailment
  h1 <= c_X * h0 are all evaluated exactly.

`oracle_certify` re-derives the same certificate as one straight-line
computation from the gram matrix, sharing nothing with the library
implementation beyond rational arithmetic and the output dataclasses;
tests compare the two structurally. `verify_box` sweeps all integral
classes with coordinates in [-n, n]^2, optionally in parallel, and
reports violations (there should be none on a valid model).
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt
from multiprocessing import Pool

from .bounds import BoundConstants, c_of_x
from .cones import ConePosition, position
from .lattice import (
    DivisorClass,
    IntersectionForm,
    ModelKind,
    SurfaceModel,
    fraction_str,
    generator_coords,
    model_to_dict,
    pair,
    require_valid,
    self_int,
)
from .riemann_roch import BoundForm, entails, h1_bound_form, l_value

GE = ">=0"
GT = ">0"


class ProofCase(Enum):
    BIG_CLASS = "big_class"
    ZERO_SQUARE = "zero_square"
    NEGATIVE_RAY = "negative_ray"
    SKIPPED_HYPOTHESIS = "skipped_hypothesis"
    OUTSIDE_CONE = "outside_cone"


@dataclass(frozen=True)
class Slack:
    """A named exact inequality margin with its required sign."""

    label: str
    value: Fraction
    require: str  # GE or GT

    @property
    def holds(self) -> bool:
        return self.value > 0 if self.require == GT else self.value >= 0


@dataclass(frozen=True)
class DichotomyBranch:
    """Which branch of the case split fired, why, and its conclusion.

    `defining` records the branch predicate values (signs select the
    branch, so they carry no required sign themselves); `conclusion` is
    the inequality the branch must deliver.
    """

    label: str  # "nef-side" | "small-area"
    defining: tuple[tuple[str, Fraction], ...]
    conclusion: Slack


@dataclass(frozen=True)
class Certificate:
    divisor: DivisorClass
    position: ConePosition
    proof_case: ProofCase
    hypothesis_slacks: tuple[Slack, ...]
    dichotomy_branch: DichotomyBranch | None
    l_value: Fraction
    bound_form: BoundForm | None
    c_x: Fraction
    entailed: bool | None

    def failed_slacks(self) -> tuple[Slack, ...]:
        failed = tuple(s for s in self.hypothesis_slacks if not s.holds)
        if self.dichotomy_branch is not None and not self.dichotomy_branch.conclusion.holds:
            failed += (self.dichotomy_branch.conclusion,)
        return failed


@dataclass(frozen=True)
class Violation:
    reasons: tuple[str, ...]
    certificate: Certificate


@dataclass(frozen=True)
class VerificationReport:
    model: SurfaceModel
    box: int
    constants: BoundConstants
    counts: dict[str, int]
    violations: tuple[Violation, ...]
    attained_extremes: tuple[DivisorClass, ...]
    wall_time_s: float

    @property
    def ok(self) -> bool:
        return not self.violations


def certify(model: SurfaceModel, d: DivisorClass,
            constants: BoundConstants | None = None) -> Certificate:
    """Build the proof-chain certificate of a nonzero integral class.

    `constants` may be supplied to avoid recomputing them per class (or
    to test entailment against doctored values).
    """
    if d.is_zero:
        raise ValueError("the zero class has no certificate")
    consts = c_of_x(model) if constants is None else constants
    pos = position(model, d)
    l = l_value(model, d)
    if pos is ConePosition.OUTSIDE:
        return Certificate(d, pos, ProofCase.OUTSIDE_CONE, (), None, l, None, consts.c_x, None)

    a1, a2 = generator_coords(model, d)
    d2 = self_int(model, d)
    kd = pair(model, model.canonical, d)
    kodaira = model.kind is ModelKind.KODAIRA_ONE

    if pos is ConePosition.INTERIOR:
        case = ProofCase.BIG_CLASS
        if kodaira:
            hyps = [Slack("F.D - 1", pair(model, d, model.gen1) - 1, GE),
                    Slack("C.D", pair(model, d, model.gen2), GE)]
        else:
            hyps = [Slack("D.C1", pair(model, d, model.gen1), GE),
                    Slack("D.C2", pair(model, d, model.gen2), GE)]
    else:
        case = ProofCase.ZERO_SQUARE if d2 == 0 else ProofCase.NEGATIVE_RAY
        hyps = [Slack("m(X) - l_D", consts.m_x - l, GE),
                Slack("D^2 + b(X)", d2 + consts.b_x, GE)]

    if not all(s.holds for s in hyps):
        return Certificate(d, pos, ProofCase.SKIPPED_HYPOTHESIS, tuple(hyps),
                           None, l, None, consts.c_x, None)

    form = h1_bound_form(model, d)
    branch = None
    if case is ProofCase.BIG_CLASS:
        # coordinate floors, then the slope bound, both conclusions of the
        # candidate hypotheses
        if kodaira:
            a2_floor, a1_ratio = consts.coeff_floor
            hyps.append(Slack("a2 - 1/(F.C)", a2 - a2_floor, GE))
            hyps.append(Slack("a1 - a2*(-C^2)/(F.C)", a1 - a2 * a1_ratio, GE))
        else:
            c = consts.coeff_floor
            hyps.append(Slack("a1 - c", a1 - c, GE))
            hyps.append(Slack("a2 - c", a2 - c, GE))
        hyps.append(Slack("m(X) - l_D", consts.m_x - l, GE))
        if l > 1:
            # second clause of the slope condition, with the certified
            # lower bound standing in for the unknowable h0
            hyps.append(Slack("m(X)*h0_min - D^2", consts.m_x * form.h0_min - d2, GE))

        if kodaira:
            defining = (("m*a1 - 1", model.iitaka_m * a1 - 1),)
            if defining[0][1] >= 0:
                branch = DichotomyBranch("nef-side", defining,
                                         Slack("(D - K).D", d2 - kd, GE))
            else:
                s2 = pair(model, model.gen2, model.gen2)
                w = pair(model, model.gen1, model.gen2)
                area = 2 * w * w / (model.iitaka_m ** 2 * (-s2))
                branch = DichotomyBranch("small-area", defining,
                                         Slack("area bound - D^2", area - d2, GT))
        else:
            a, b = generator_coords(model, model.canonical)
            defining = (("a1 - a", a1 - a), ("a2 - b", a2 - b))
            if a1 > a and a2 > b:
                branch = DichotomyBranch("nef-side", defining,
                                         Slack("(D - K).D", d2 - kd, GE))
            else:
                s1 = pair(model, model.gen1, model.gen1)
                s2 = pair(model, model.gen2, model.gen2)
                w = pair(model, model.gen1, model.gen2)
                area = max(2 * a * a * w * w / (-s2), 2 * b * b * w * w / (-s1))
                branch = DichotomyBranch("small-area", defining,
                                         Slack("area bound - D^2", area - d2, GE))

    return Certificate(d, pos, case, tuple(hyps), branch, l, form,
                       consts.c_x, entails(form, consts.c_x))


def oracle_certify(model: SurfaceModel, d: DivisorClass) -> Certificate:
    """Independent straight-line re-derivation of `certify`.

    Everything is evaluated inline from the raw model data with plain
    Fraction arithmetic; no library operation is reused. Intended for
    cross-checking in tests only.
    """
    x, y = d.coords
    if x == 0 and y == 0:
        raise ValueError("the zero class has no certificate")
    g = model.form.gram

    def prod(p, r):
        return (p[0] * (g[0][0] * r[0] + g[0][1] * r[1])
                + p[1] * (g[1][0] * r[0] + g[1][1] * r[1]))

    g1, g2 = model.gen1.coords, model.gen2.coords
    k = model.canonical.coords
    s1, s2, w = prod(g1, g1), prod(g2, g2), prod(g1, g2)
    q = Fraction(model.q)
    kodaira = model.kind is ModelKind.KODAIRA_ONE

    # constants
    if kodaira:
        mi = model.iitaka_m
        b_x = -s2
        m_x = max(w * w / (mi * (-s2)), 2 * w * w / (mi * mi * (-s2)))
    else:
        b_x = max(-s1, -s2)
        t1 = 1 / (s1 + w * w / (-s2))
        t2 = 1 / (s2 + w * w / (-s1))
        floor_c = min(t1, t2, (-s2 / w) * t1, (-s1 / w) * t2)
        gdet = g1[0] * g2[1] - g1[1] * g2[0]
        ka = (k[0] * g2[1] - k[1] * g2[0]) / gdet
        kb = (k[1] * g1[0] - k[0] * g1[1]) / gdet
        m_x = max(ka / floor_c, kb / floor_c,
                  2 * ka * ka * w * w / (-s2), 2 * kb * kb * w * w / (-s1))
    c_x = max(Fraction(1), q, (m_x * m_x - m_x + 2 * q) / 2,
              (m_x + 2 * q) / 2, (2 * q + m_x + b_x) / 2)

    # generator coordinates and position
    gdet = g1[0] * g2[1] - g1[1] * g2[0]
    a1 = (x * g2[1] - y * g2[0]) / gdet
    a2 = (y * g1[0] - x * g1[1]) / gdet
    d2 = prod((x, y), (x, y))
    kd = prod(k, (x, y))
    l = kd / max(Fraction(1), d2) if d2 != 0 else kd

    if a1 > 0 and a2 > 0:
        pos = ConePosition.INTERIOR
    elif a1 > 0 and a2 == 0:
        pos = ConePosition.RAY1
    elif a1 == 0 and a2 > 0:
        pos = ConePosition.RAY2
    else:
        pos = ConePosition.OUTSIDE
    if pos is ConePosition.OUTSIDE:
        return Certificate(d, pos, ProofCase.OUTSIDE_CONE, (), None, l, None, c_x, None)

    if pos is ConePosition.INTERIOR:
        case = ProofCase.BIG_CLASS
        if kodaira:
            hyps = [Slack("F.D - 1", prod((x, y), g1) - 1, GE),
                    Slack("C.D", prod((x, y), g2), GE)]
        else:
            hyps = [Slack("D.C1", prod((x, y), g1), GE),
                    Slack("D.C2", prod((x, y), g2), GE)]
    else:
        case = ProofCase.ZERO_SQUARE if d2 == 0 else ProofCase.NEGATIVE_RAY
        hyps = [Slack("m(X) - l_D", m_x - l, GE),
                Slack("D^2 + b(X)", d2 + b_x, GE)]
    if not all(s.holds for s in hyps):
        return Certificate(d, pos, ProofCase.SKIPPED_HYPOTHESIS, tuple(hyps),
                           None, l, None, c_x, None)

    # bound form by the sign of d^2
    chi_d = model.chi + (d2 - kd) / 2
    if d2 > 0:
        form = BoundForm(alpha=Fraction(1), beta=(q - 1) + d2 * (l - 1) / 2,
                         h0_min=max(Fraction(1), chi_d - model.pg))
    elif d2 == 0:
        form = BoundForm(alpha=Fraction(1), beta=(q - 1) + kd / 2)
    else:
        form = BoundForm(alpha=Fraction(0), beta=q + (kd - d2) / 2,
                         h0_max=Fraction(1))

    branch = None
    if case is ProofCase.BIG_CLASS:
        if kodaira:
            hyps.append(Slack("a2 - 1/(F.C)", a2 - 1 / w, GE))
            hyps.append(Slack("a1 - a2*(-C^2)/(F.C)", a1 - a2 * (-s2) / w, GE))
        else:
            hyps.append(Slack("a1 - c", a1 - floor_c, GE))
            hyps.append(Slack("a2 - c", a2 - floor_c, GE))
        hyps.append(Slack("m(X) - l_D", m_x - l, GE))
        if l > 1:
            hyps.append(Slack("m(X)*h0_min - D^2", m_x * form.h0_min - d2, GE))
        if kodaira:
            defining = (("m*a1 - 1", mi * a1 - 1),)
            if defining[0][1] >= 0:
                branch = DichotomyBranch("nef-side", defining,
                                         Slack("(D - K).D", d2 - kd, GE))
            else:
                branch = DichotomyBranch(
                    "small-area", defining,
                    Slack("area bound - D^2", 2 * w * w / (mi * mi * (-s2)) - d2, GT))
        else:
            defining = (("a1 - a", a1 - ka), ("a2 - b", a2 - kb))
            if a1 > ka and a2 > kb:
                branch = DichotomyBranch("nef-side", defining,
                                         Slack("(D - K).D", d2 - kd, GE))
            else:
                area = max(2 * ka * ka * w * w / (-s2), 2 * kb * kb * w * w / (-s1))
                branch = DichotomyBranch("small-area", defining,
                                         Slack("area bound - D^2", area - d2, GE))

    ent = (c_x >= form.alpha and (c_x - form.alpha) * form.h0_min >= form.beta)
    return Certificate(d, pos, case, tuple(hyps), branch, l, form, c_x, ent)


# ---------------------------------------------------------------------------
# Box sweep
# ---------------------------------------------------------------------------

_CHECKED_CASES = (ProofCase.BIG_CLASS, ProofCase.ZERO_SQUARE, ProofCase.NEGATIVE_RAY)


def _class_reasons(model: SurfaceModel, constants: BoundConstants,
                   cert: Certificate) -> tuple[str, ...]:
    """Everything wrong with one certificate (empty on a sound model)."""
    reasons: list[str] = []
    if cert.proof_case in _CHECKED_CASES:
        for s in cert.failed_slacks():
            reasons.append(f"slack '{s.label}' = {fraction_str(s.value)} violates '{s.require}'")
        if cert.entailed is not True:
            reasons.append(f"bound form not entailed by c_X = {fraction_str(cert.c_x)}")
    d2 = self_int(model, cert.divisor)
    if cert.proof_case is ProofCase.BIG_CLASS and d2 <= 0:
        reasons.append(f"interior curve candidate with D^2 = {fraction_str(d2)} <= 0")
    if (model.kind is ModelKind.TWO_NEGATIVE and d2 == 0
            and cert.position is not ConePosition.OUTSIDE):
        reasons.append("isotropic class inside the curve cone of a two-negative model")
    return tuple(reasons)


def _sweep_rows(model: SurfaceModel, constants: BoundConstants, n: int,
                x_lo: int, x_hi: int):
    """Certify all integral classes with x in [x_lo, x_hi), y in [-n, n]."""
    out = []
    m_x = constants.m_x
    for x in range(x_lo, x_hi):
        for y in range(-n, n + 1):
            if x == 0 and y == 0:
                continue
            d = DivisorClass(x, y)
            cert = certify(model, d, constants)
            reasons = _class_reasons(model, constants, cert)
            extreme = (cert.proof_case is ProofCase.BIG_CLASS
                       and m_x - cert.l_value == 0)
            out.append(((x, y), cert, reasons, extreme))
    return out


def verify_box(model: SurfaceModel, n: int, jobs: int = 1) -> VerificationReport:
    """Certify every nonzero integral class in [-n, n]^2.

    The sweep may be partitioned across `jobs` worker processes; results
    are merged and sorted by coordinates, so the report is deterministic
    regardless of evaluation order (the wall-time field aside).
    """
    if n < 1:
        raise ValueError("box radius must be >= 1")
    require_valid(model)
    start = time.monotonic()
    constants = c_of_x(model)

    if jobs <= 1:
        results = _sweep_rows(model, constants, n, -n, n + 1)
    else:
        edges = [-n + round(i * (2 * n + 1) / jobs) for i in range(jobs)] + [n + 1]
        chunks = [(model, constants, n, lo, hi)
                  for lo, hi in zip(edges, edges[1:]) if lo < hi]
        with Pool(processes=len(chunks)) as pool:
            parts = pool.starmap(_sweep_rows, chunks)
        results = [item for part in parts for item in part]

    results.sort(key=lambda item: item[0])
    counts = {case.value: 0 for case in ProofCase}
    violations = []
    extremes = []
    for _, cert, reasons, extreme in results:
        counts[cert.proof_case.value] += 1
        if reasons:
            violations.append(Violation(reasons, cert))
        if extreme:
            extremes.append(cert.divisor)

    return VerificationReport(
        model=model,
        box=n,
        constants=constants,
        counts=counts,
        violations=tuple(violations),
        attained_extremes=tuple(extremes),
        wall_time_s=time.monotonic() - start,
    )


# ---------------------------------------------------------------------------
# Random valid models for fuzzing
# ---------------------------------------------------------------------------

def random_model(rng: random.Random, kind: ModelKind | None = None) -> SurfaceModel:
    """Sample a valid model with small integer gram entries.

    Two-negative grams additionally avoid discriminants w^2 - u*v that are
    perfect squares: those lattices contain nonzero integral isotropic
    classes inside the curve cone, which no surface with two negative
    curves can carry. Canonical coefficients are small nonnegative
    rationals, not both zero.
    """
    if kind is None:
        kind = rng.choice((ModelKind.KODAIRA_ONE, ModelKind.TWO_NEGATIVE))
    q = rng.randint(0, 3)
    pg = rng.randint(0, 3)
    chi = 1 - q + pg
    if kind is ModelKind.KODAIRA_ONE:
        w = rng.randint(1, 9)
        v = rng.randint(1, 9)
        mi = 12 * rng.randint(8, 16)
        return SurfaceModel(
            form=IntersectionForm([[0, w], [w, -v]]),
            canonical=DivisorClass(Fraction(1, mi), 0),
            q=q, pg=pg, chi=chi, kind=kind,
            gen1=DivisorClass(1, 0), gen2=DivisorClass(0, 1), iitaka_m=mi)
    while True:
        u = rng.randint(1, 9)
        v = rng.randint(1, 9)
        w = rng.randint(1, 9)
        disc = w * w - u * v
        if disc > 0 and isqrt(disc) ** 2 != disc:
            break
    while True:
        a = Fraction(rng.randint(0, 4), rng.randint(1, 3))
        b = Fraction(rng.randint(0, 4), rng.randint(1, 3))
        if a != 0 or b != 0:
            break
    return SurfaceModel(
        form=IntersectionForm([[-u, w], [w, -v]]),
        canonical=DivisorClass(a, b),
        q=q, pg=pg, chi=chi, kind=kind,
        gen1=DivisorClass(1, 0), gen2=DivisorClass(0, 1))


# ---------------------------------------------------------------------------
# Report serialization
# ---------------------------------------------------------------------------

def _class_json(d: DivisorClass) -> list:
    return [x.numerator if x.denominator == 1 else fraction_str(x) for x in d.coords]


def slack_to_dict(s: Slack) -> dict:
    return {"label": s.label, "value": fraction_str(s.value), "require": s.require}


def bound_form_to_dict(form: BoundForm) -> dict:
    doc = {"alpha": fraction_str(form.alpha), "beta": fraction_str(form.beta),
           "h0_min": fraction_str(form.h0_min)}
    if form.h0_max is not None:
        doc["h0_max"] = fraction_str(form.h0_max)
    return doc


def certificate_to_dict(cert: Certificate) -> dict:
    branch = None
    if cert.dichotomy_branch is not None:
        branch = {
            "label": cert.dichotomy_branch.label,
            "defining": [{"label": lbl, "value": fraction_str(val)}
                         for lbl, val in cert.dichotomy_branch.defining],
            "conclusion": slack_to_dict(cert.dichotomy_branch.conclusion),
        }
    return {
        "class": _class_json(cert.divisor),
        "position": cert.position.value,
        "proof_case": cert.proof_case.value,
        "hypothesis_slacks": [slack_to_dict(s) for s in cert.hypothesis_slacks],
        "dichotomy_branch": branch,
        "l_value": fraction_str(cert.l_value),
        "bound_form": None if cert.bound_form is None else bound_form_to_dict(cert.bound_form),
        "c_x": fraction_str(cert.c_x),
        "entailed": cert.entailed,
    }


def constants_to_dict(constants: BoundConstants) -> dict:
    floor = constants.coeff_floor
    return {
        "b_x": fraction_str(constants.b_x),
        "coeff_floor": ([fraction_str(f) for f in floor] if isinstance(floor, tuple)
                        else fraction_str(floor)),
        "m_x": fraction_str(constants.m_x),
        "c_x": fraction_str(constants.c_x),
        "case_values": [fraction_str(v) for v in constants.case_values],
        "floored": constants.floored,
    }


def report_to_dict(report: VerificationReport) -> dict:
    return {
        "model": model_to_dict(report.model),
        "box": report.box,
        "constants": constants_to_dict(report.constants),
        "counts": dict(report.counts),
        "violations": [
            {**certificate_to_dict(v.certificate), "reasons": list(v.reasons)}
            for v in report.violations
        ],
        "attained_extremes": [_class_json(d) for d in report.attained_extremes],
        "wall_time_s": report.wall_time_s,
    }


def report_to_json(report: VerificationReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def report_to_csv(report: VerificationReport) -> str:
    lines = ["proof_case,count"]
    lines += [f"{case.value},{report.counts[case.value]}" for case in ProofCase]
    return "\n".join(lines) + "\n"
