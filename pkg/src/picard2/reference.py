"""The two reference models used throughout the test suite and docs."""

from __future__ import annotations

from fractions import Fraction

from .lattice import DivisorClass, IntersectionForm, ModelKind, SurfaceModel


def model_a() -> SurfaceModel:
    """Two negative curves of square -1 meeting twice; K = C1 + C2."""
    return SurfaceModel(
        form=IntersectionForm([[-1, 2], [2, -1]]),
        canonical=DivisorClass(1, 1),
        q=0, pg=0, chi=1,
        kind=ModelKind.TWO_NEGATIVE,
        gen1=DivisorClass(1, 0),
        gen2=DivisorClass(0, 1),
    )


def model_b() -> SurfaceModel:
    """Elliptic-fibration model: fiber F (F^2 = 0), negative curve C of
    square -2, F.C = 1, and K = F/96."""
    return SurfaceModel(
        form=IntersectionForm([[0, 1], [1, -2]]),
        canonical=DivisorClass(Fraction(1, 96), 0),
        q=1, pg=1, chi=1,
        kind=ModelKind.KODAIRA_ONE,
        gen1=DivisorClass(1, 0),
        gen2=DivisorClass(0, 1),
        iitaka_m=96,
    )
