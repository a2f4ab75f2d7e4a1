"""Synthesis of the model's bound constants.

Four quantities drive the certificate checks:

* ``b_x``    - the negativity bound: every curve class has square >= -b_x.
* ``coeff_floor`` - lower bound(s) on the generator coordinates of an
  interior curve candidate. Two-negative models get a single floor c for
  both coordinates; fiber models get the pair (floor on a2, floor on a1
  per unit of a2).
* ``m_x``    - the slope/area bound: the smallest constant that the
  model's own inequalities certify as covering both the slope values of
  curve candidates and the squares of candidates on the non-nef side of
  the dichotomy.
* ``c_x``    - the cohomology-ratio constant: the largest of the four
  per-case candidate values, floored at 1 so that the h0 >= 1 entailment
  is meaningful even when every case value vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import ModelKind, SurfaceModel, generator_coords, pair, require_valid

CoeffFloor = Fraction | tuple[Fraction, Fraction]


@dataclass(frozen=True)
class BoundConstants:
    b_x: Fraction
    coeff_floor: CoeffFloor
    m_x: Fraction
    c_x: Fraction
    case_values: tuple[Fraction, Fraction, Fraction, Fraction]
    floored: bool  # True when max(case_values) < 1 and the floor at 1 applied


def _gen_products(model: SurfaceModel) -> tuple[Fraction, Fraction, Fraction]:
    s1 = pair(model, model.gen1, model.gen1)
    s2 = pair(model, model.gen2, model.gen2)
    w = pair(model, model.gen1, model.gen2)
    return s1, s2, w


def b_of_x(model: SurfaceModel) -> Fraction:
    """Negativity bound: -gen2^2 for a fiber model (the unique negative
    curve), max of both -gen_i^2 for a two-negative model."""
    require_valid(model)
    s1, s2, _ = _gen_products(model)
    if model.kind is ModelKind.KODAIRA_ONE:
        return -s2
    return max(-s1, -s2)


def coeff_floor(model: SurfaceModel) -> CoeffFloor:
    """Generator-coordinate floors for interior curve candidates.

    Two-negative: the single constant
        c = min over i != j of { (Ci^2 + w^2/(-Cj^2))^-1,
                                 (-Cj^2)/w * (Ci^2 + w^2/(-Cj^2))^-1 }
    with w = C1.C2; the bracket is positive because the form has
    signature (1,1). Fiber models: the pair (1/(F.C), (-C^2)/(F.C)),
    meaning a2 >= 1/(F.C) and a1 >= a2*(-C^2)/(F.C).
    """
    require_valid(model)
    s1, s2, w = _gen_products(model)
    if model.kind is ModelKind.KODAIRA_ONE:
        return (1 / w, -s2 / w)
    t1 = 1 / (s1 + w * w / (-s2))
    t2 = 1 / (s2 + w * w / (-s1))
    return min(t1, t2, (-s2 / w) * t1, (-s1 / w) * t2)


def m_of_x(model: SurfaceModel) -> Fraction:
    """Smallest constant covering every slope and area bound the model's
    inequalities produce for curve candidates."""
    require_valid(model)
    s1, s2, w = _gen_products(model)
    if model.kind is ModelKind.KODAIRA_ONE:
        m = model.iitaka_m
        slope = w * w / (m * (-s2))
        area = 2 * w * w / (m * m * (-s2))
        return max(slope, area)
    c = coeff_floor(model)
    a, b = generator_coords(model, model.canonical)
    return max(a / c, b / c, 2 * a * a * w * w / (-s2), 2 * b * b * w * w / (-s1))


def c_of_x(model: SurfaceModel) -> BoundConstants:
    """Assemble all bound constants; c_x = max(1, four case values)."""
    m = m_of_x(model)
    b = b_of_x(model)
    q = model.q
    case_values = (
        Fraction(q),
        (m * m - m + 2 * q) / 2,
        (m + 2 * q) / 2,
        (2 * q + m + b) / 2,
    )
    best = max(case_values)
    return BoundConstants(
        b_x=b,
        coeff_floor=coeff_floor(model),
        m_x=m,
        c_x=max(Fraction(1), best),
        case_values=case_values,
        floored=best < 1,
    )
