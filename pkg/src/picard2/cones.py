"""Curve-cone and nef-cone geometry in rank 2.

The cone of curve classes is spanned by the two model generators; a class
is located by its exact generator coordinates. The nef cone is cut out by
two half-plane inequalities in those coordinates, obtained by pairing
against the generators, and membership in that description agrees with
the direct definition (nonnegative product against both generators) for
every class, by bilinearity.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .lattice import DivisorClass, SurfaceModel, fraction_str, generator_coords, pair


class ConePosition(Enum):
    ZERO = "zero"
    RAY1 = "ray1"
    RAY2 = "ray2"
    INTERIOR = "interior"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class NefConeDescription:
    """Two inequalities c1*a1 + c2*a2 >= 0 in generator coordinates.

    Each inequality is stored as its coefficient pair (c1, c2). For a
    two-negative model these are exactly a1*(C1.C2) - a2*(-C2^2) >= 0 and
    a2*(C1.C2) - a1*(-C1^2) >= 0; when gen1 is a fiber class (square 0)
    the second degenerates to a2*(F.C) >= 0.
    """

    ineq1: tuple[Fraction, Fraction]
    ineq2: tuple[Fraction, Fraction]

    def satisfied_by(self, a1: Fraction, a2: Fraction) -> bool:
        return (self.ineq1[0] * a1 + self.ineq1[1] * a2 >= 0
                and self.ineq2[0] * a1 + self.ineq2[1] * a2 >= 0)

    def __str__(self) -> str:
        def fmt(ineq: tuple[Fraction, Fraction]) -> str:
            return f"({fraction_str(ineq[0])})*a1 + ({fraction_str(ineq[1])})*a2 >= 0"
        return f"{fmt(self.ineq1)}, {fmt(self.ineq2)}"


def position(model: SurfaceModel, d: DivisorClass) -> ConePosition:
    """Locate d relative to the cone spanned by gen1 and gen2."""
    a1, a2 = generator_coords(model, d)
    if a1 == 0 and a2 == 0:
        return ConePosition.ZERO
    if a1 > 0 and a2 == 0:
        return ConePosition.RAY1
    if a1 == 0 and a2 > 0:
        return ConePosition.RAY2
    if a1 > 0 and a2 > 0:
        return ConePosition.INTERIOR
    return ConePosition.OUTSIDE


def is_nef(model: SurfaceModel, d: DivisorClass) -> bool:
    """Nonnegative intersection with both cone generators."""
    return pair(model, d, model.gen1) >= 0 and pair(model, d, model.gen2) >= 0


def is_big(model: SurfaceModel, d: DivisorClass) -> bool:
    """Interior of the curve cone: strictly positive generator coordinates."""
    return position(model, d) is ConePosition.INTERIOR


def nef_cone(model: SurfaceModel) -> NefConeDescription:
    """Half-plane description of the nef cone in generator coordinates.

    The inequality coefficients are intersection numbers of the generators,
    so `satisfied_by(generator_coords(d))` is literally d.gen2 >= 0 and
    d.gen1 >= 0; agreement with `is_nef` is exact for every class.
    """
    s1 = pair(model, model.gen1, model.gen1)
    s2 = pair(model, model.gen2, model.gen2)
    w = pair(model, model.gen1, model.gen2)
    return NefConeDescription(ineq1=(w, s2), ineq2=(s1, w))
