"""Exact rational arithmetic on a rank-2 intersection lattice.

Everything downstream works with the numerical shadow of a surface of
Picard number 2: a rank-2 lattice with a symmetric bilinear form of
signature (1,1), a distinguished canonical class, two cone generators,
and the integer invariants q (irregularity), pg (geometric genus) and
chi. All scalars are `fractions.Fraction`; there is no floating point
anywhere in this package.

Models come in two kinds:

* ``KODAIRA_ONE``: one generator is an elliptic-fibration fiber class F
  with F^2 = 0 and canonical class K = F / iitaka_m; the other is the
  unique negative curve.
* ``TWO_NEGATIVE``: both generators are negative curves and K is a
  nonnegative combination of them.

Validation never raises; it returns a report listing every invariant
with its pass/fail status and the offending value, so that a broken
model file can be diagnosed in one pass.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Union

Scalar = Union[int, str, Fraction]


class ModelFormatError(ValueError):
    """A model document is malformed (JSON, schema, or scalar syntax)."""


class ModelValidationError(ValueError):
    """An operation requiring a valid model was given an invalid one."""


def to_fraction(value: Scalar) -> Fraction:
    """Coerce an int, Fraction, or exact "p/q" string to a Fraction.

    Floats are rejected: exactness is the core guarantee of this package.
    """
    if isinstance(value, bool):
        raise ModelFormatError(f"expected a rational scalar, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ModelFormatError(f"cannot parse rational scalar {value!r}: {exc}") from exc
    raise ModelFormatError(f"expected a rational scalar, got {value!r}")


def fraction_str(x: Fraction) -> str:
    """Canonical "p/q" encoding; bare "p" when the denominator is 1."""
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class DivisorClass:
    """A divisor class as an exact coordinate pair in the fixed lattice basis."""

    coords: tuple[Fraction, Fraction]

    def __init__(self, a: Scalar, b: Scalar | None = None):
        if b is None:
            a, b = a  # accept a single (a, b) iterable
        object.__setattr__(self, "coords", (to_fraction(a), to_fraction(b)))

    @property
    def is_zero(self) -> bool:
        return self.coords == (0, 0)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.coords[0] + other.coords[0], self.coords[1] + other.coords[1])

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.coords[0] - other.coords[0], self.coords[1] - other.coords[1])

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.coords[0], -self.coords[1])

    def __rmul__(self, scalar: Scalar) -> "DivisorClass":
        s = to_fraction(scalar)
        return DivisorClass(s * self.coords[0], s * self.coords[1])

    def __repr__(self) -> str:
        return f"DivisorClass({fraction_str(self.coords[0])}, {fraction_str(self.coords[1])})"


@dataclass(frozen=True)
class IntersectionForm:
    """Symmetric 2x2 gram matrix of the intersection pairing.

    Hodge index on a surface with Picard number 2 forces signature (1,1),
    i.e. det < 0; this is checked by `validate`, not by the constructor.
    """

    gram: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]

    def __init__(self, gram: Iterable[Iterable[Scalar]]):
        rows = [tuple(to_fraction(x) for x in row) for row in gram]
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ModelFormatError("gram matrix must be 2x2")
        object.__setattr__(self, "gram", (rows[0], rows[1]))

    @property
    def det(self) -> Fraction:
        g = self.gram
        return g[0][0] * g[1][1] - g[0][1] * g[1][0]


class ModelKind(Enum):
    KODAIRA_ONE = "kodaira_one"
    TWO_NEGATIVE = "two_negative"


@dataclass(frozen=True)
class SurfaceModel:
    """Numerical model of a smooth projective surface with Picard number 2.

    `gen1` and `gen2` span the cone of curve classes; they need not be the
    lattice basis (coordinates of arbitrary classes are converted by an
    exact linear solve). `iitaka_m` is required exactly for KODAIRA_ONE
    models, where the fiber class satisfies gen1 = iitaka_m * canonical.
    """

    form: IntersectionForm
    canonical: DivisorClass
    q: int
    pg: int
    chi: int
    kind: ModelKind
    gen1: DivisorClass
    gen2: DivisorClass
    iitaka_m: int | None = None

    @cached_property
    def validation(self) -> "ValidationReport":
        return validate(self)

    @property
    def is_valid(self) -> bool:
        return self.validation.ok


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of every model invariant check; never aborts on failure."""

    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def failed_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.failures)


def pair(model: SurfaceModel, d1: DivisorClass, d2: DivisorClass) -> Fraction:
    """Intersection product of two classes: coords(d1)^T . gram . coords(d2)."""
    g = model.form.gram
    a, b = d1.coords
    c, d = d2.coords
    return a * (g[0][0] * c + g[0][1] * d) + b * (g[1][0] * c + g[1][1] * d)


def self_int(model: SurfaceModel, d: DivisorClass) -> Fraction:
    """Self-intersection d^2 = pair(d, d)."""
    return pair(model, d, d)


def _solve_in_generators(model: SurfaceModel, d: DivisorClass) -> tuple[Fraction, Fraction] | None:
    """Solve d = a1*gen1 + a2*gen2 exactly; None when the generators are dependent."""
    (g11, g12), (g21, g22) = model.gen1.coords, model.gen2.coords
    det = g11 * g22 - g12 * g21
    if det == 0:
        return None
    x, y = d.coords
    a1 = (x * g22 - y * g21) / det
    a2 = (y * g11 - x * g12) / det
    return a1, a2


def require_valid(model: SurfaceModel) -> None:
    """Raise ModelValidationError unless the model passes validation."""
    if not model.is_valid:
        raise ModelValidationError(
            "model failed validation: " + ", ".join(model.validation.failed_names()))


def generator_coords(model: SurfaceModel, d: DivisorClass) -> tuple[Fraction, Fraction]:
    """Coordinates (a1, a2) of d in the cone-generator frame.

    Raises ModelValidationError when the model fails validation (in
    particular when gen1, gen2 are linearly dependent).
    """
    require_valid(model)
    coords = _solve_in_generators(model, d)
    assert coords is not None  # independence is part of validation
    return coords


def validate(model: SurfaceModel) -> ValidationReport:
    """Check every model invariant; collect all failures rather than aborting."""
    checks: list[CheckResult] = []

    def check(name: str, passed: bool, detail: str) -> None:
        checks.append(CheckResult(name, bool(passed), detail))

    g = model.form.gram
    check("symmetry", g[0][1] == g[1][0],
          f"gram[0][1] = {fraction_str(g[0][1])}, gram[1][0] = {fraction_str(g[1][0])}")
    det = model.form.det
    check("signature", det < 0, f"det(gram) = {fraction_str(det)} (signature (1,1) needs det < 0)")
    check("invariant ranges", model.q >= 0 and model.pg >= 0,
          f"q = {model.q}, pg = {model.pg} (both must be >= 0)")
    check("chi consistency", model.chi == 1 - model.q + model.pg,
          f"chi = {model.chi}, 1 - q + pg = {1 - model.q + model.pg}")

    (g11, g12), (g21, g22) = model.gen1.coords, model.gen2.coords
    gen_det = g11 * g22 - g12 * g21
    independent = gen_det != 0
    check("generator independence", independent,
          f"det of generator coordinates = {fraction_str(gen_det)}")

    s1 = pair(model, model.gen1, model.gen1)
    s2 = pair(model, model.gen2, model.gen2)
    w = pair(model, model.gen1, model.gen2)
    check("gen1 square", s1 <= 0, f"gen1^2 = {fraction_str(s1)} (must be <= 0)")
    check("gen2 square", s2 <= 0, f"gen2^2 = {fraction_str(s2)} (must be <= 0)")
    check("generator pairing", w > 0, f"gen1.gen2 = {fraction_str(w)} (must be > 0)")

    if model.kind is ModelKind.KODAIRA_ONE:
        check("fiber square", s1 == 0, f"gen1^2 = {fraction_str(s1)} (fiber class needs square 0)")
        check("negative curve square", s2 < 0, f"gen2^2 = {fraction_str(s2)} (must be < 0)")
        m = model.iitaka_m
        if m is None:
            check("iitaka multiple", False, "iitaka_m missing for a kodaira_one model")
        else:
            check("iitaka multiple", m >= 86 and m % 12 == 0,
                  f"iitaka_m = {m} (must be divisible by 12 and >= 86)")
            expected = Fraction(1, m) * model.gen1
            check("canonical on fiber ray", model.canonical == expected,
                  f"canonical = {model.canonical!r}, gen1/iitaka_m = {expected!r}")
    else:
        check("negative square gen1", s1 < 0, f"gen1^2 = {fraction_str(s1)} (must be < 0)")
        check("negative square gen2", s2 < 0, f"gen2^2 = {fraction_str(s2)} (must be < 0)")
        check("no iitaka multiple", model.iitaka_m is None,
              f"iitaka_m = {model.iitaka_m} (only kodaira_one models carry one)")
        if independent:
            a, b = _solve_in_generators(model, model.canonical)
            check("canonical coefficients", a >= 0 and b >= 0,
                  f"canonical = {fraction_str(a)}*gen1 + {fraction_str(b)}*gen2 "
                  "(both coefficients must be >= 0)")
        else:
            check("canonical coefficients", False,
                  "cannot decompose canonical: generators are dependent")

    return ValidationReport(tuple(checks))


# ---------------------------------------------------------------------------
# Model document I/O. A model is a single JSON object; rationals are encoded
# as integers or exact "p/q" strings, never floats.
# ---------------------------------------------------------------------------

_REQUIRED_FIELDS = ("gram", "kind", "gen1", "gen2", "canonical", "q", "pg", "chi")


def _class_from_json(value: object, where: str) -> DivisorClass:
    if not isinstance(value, list) or len(value) != 2:
        raise ModelFormatError(f"field '{where}' must be a 2-element array")
    return DivisorClass(to_fraction(value[0]), to_fraction(value[1]))


def _int_from_json(value: object, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ModelFormatError(f"field '{where}' must be an integer, got {value!r}")
    return value


def model_from_dict(doc: dict) -> SurfaceModel:
    """Build a SurfaceModel from a parsed JSON document. Schema errors raise
    ModelFormatError; semantic problems are left to `validate`."""
    if not isinstance(doc, dict):
        raise ModelFormatError("model document must be a JSON object")
    missing = [f for f in _REQUIRED_FIELDS if f not in doc]
    if missing:
        raise ModelFormatError(f"missing field(s): {', '.join(missing)}")

    kind_raw = doc["kind"]
    try:
        kind = ModelKind(kind_raw)
    except ValueError:
        raise ModelFormatError(
            f"field 'kind' must be 'kodaira_one' or 'two_negative', got {kind_raw!r}") from None

    gram = doc["gram"]
    if not isinstance(gram, list) or len(gram) != 2 or any(
            not isinstance(r, list) or len(r) != 2 for r in gram):
        raise ModelFormatError("field 'gram' must be a 2x2 array")

    iitaka_m: int | None = None
    if kind is ModelKind.KODAIRA_ONE:
        if "iitaka_m" not in doc:
            raise ModelFormatError("field 'iitaka_m' is required for kind 'kodaira_one'")
        iitaka_m = _int_from_json(doc["iitaka_m"], "iitaka_m")
    elif "iitaka_m" in doc:
        raise ModelFormatError("field 'iitaka_m' is only allowed for kind 'kodaira_one'")

    known = set(_REQUIRED_FIELDS) | {"iitaka_m"}
    unknown = sorted(set(doc) - known)
    if unknown:
        raise ModelFormatError(f"unknown field(s): {', '.join(unknown)}")

    return SurfaceModel(
        form=IntersectionForm(gram),
        canonical=_class_from_json(doc["canonical"], "canonical"),
        q=_int_from_json(doc["q"], "q"),
        pg=_int_from_json(doc["pg"], "pg"),
        chi=_int_from_json(doc["chi"], "chi"),
        kind=kind,
        gen1=_class_from_json(doc["gen1"], "gen1"),
        gen2=_class_from_json(doc["gen2"], "gen2"),
        iitaka_m=iitaka_m,
    )


def parse_model(text: str) -> SurfaceModel:
    """Parse a model JSON document from a string."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return model_from_dict(doc)


def load_model(path: str) -> SurfaceModel:
    """Read and parse a model JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_model(text)


def _scalar_to_json(x: Fraction) -> int | str:
    return x.numerator if x.denominator == 1 else fraction_str(x)


def model_to_dict(model: SurfaceModel) -> dict:
    """Canonical JSON-ready document; re-parsing yields an equal model."""
    doc: dict = {
        "kind": model.kind.value,
        "gram": [[_scalar_to_json(x) for x in row] for row in model.form.gram],
        "gen1": [_scalar_to_json(x) for x in model.gen1.coords],
        "gen2": [_scalar_to_json(x) for x in model.gen2.coords],
        "canonical": [_scalar_to_json(x) for x in model.canonical.coords],
        "q": model.q,
        "pg": model.pg,
        "chi": model.chi,
    }
    if model.iitaka_m is not None:
        doc["iitaka_m"] = model.iitaka_m
    return doc


def emit_model(model: SurfaceModel) -> str:
    return json.dumps(model_to_dict(model), indent=2) + "\n"
