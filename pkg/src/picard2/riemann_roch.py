"""Numerical Riemann-Roch and the linear cohomology bound forms.

For a class d the Euler characteristic is chi(O) + (d^2 - K.d)/2. Since
h^2 of a divisor is bounded by pg (Serre duality), every choice of
cohomology values consistent with Riemann-Roch obeys a linear bound
h1 <= alpha*h0 + beta whose coefficients depend only on the sign of d^2:

* d^2 > 0: alpha = 1, beta = (q - 1) + d^2*(l - 1)/2 with l the slope
  value of d; h0 is at least max(1, chi(d) - pg).
* d^2 = 0: alpha = 1, beta = (q - 1) + (K.d)/2. The slope value of a
  square-zero class depends on h0, which the lattice cannot see; the
  substitution h0*(l + 2) = K.d + 2*h0 removes that dependence.
* d^2 < 0: alpha = 0, beta = q + (K.d - d^2)/2, valid for classes with a
  one-dimensional space of sections (h0 pinned to 1, the value an
  irreducible negative curve has).

`entails` decides whether such a form forces h1 <= c*h0 for every h0 the
form covers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cones import ConePosition, position
from .lattice import DivisorClass, SurfaceModel, pair, self_int

ONE = Fraction(1)


@dataclass(frozen=True)
class BoundForm:
    """The statement "h1 <= alpha*h0 + beta for every admissible h0".

    Admissible h0 are those with h0 >= h0_min and, when h0_max is set,
    h0 <= h0_max (the negative-square case pins h0 to exactly 1).
    """

    alpha: Fraction
    beta: Fraction
    h0_min: Fraction = ONE
    h0_max: Fraction | None = None


def euler_char(model: SurfaceModel, d: DivisorClass) -> Fraction:
    """chi(d) = chi(O) + (d^2 - K.d)/2."""
    return model.chi + (self_int(model, d) - pair(model, model.canonical, d)) / 2


def serre_h2_bound(model: SurfaceModel) -> Fraction:
    """Upper bound on h^2 of any divisor: pg, via Serre duality."""
    return Fraction(model.pg)


def l_value(model: SurfaceModel, d: DivisorClass, h0_hint: int | None = None) -> Fraction:
    """Slope value of d: K.d divided by max(1, d^2), or by max(1, h0_hint)
    when d^2 = 0 (hint defaults to 1, the conservative choice)."""
    kd = pair(model, model.canonical, d)
    d2 = self_int(model, d)
    if d2 != 0:
        return kd / max(ONE, d2)
    hint = 1 if h0_hint is None else h0_hint
    return kd / max(1, hint)


def h1_bound_form(model: SurfaceModel, d: DivisorClass) -> BoundForm:
    """Linear h1-bound for a nonzero integral class inside the curve cone."""
    if d.is_zero:
        raise ValueError("no bound form for the zero class")
    if position(model, d) is ConePosition.OUTSIDE:
        raise ValueError("no bound form for a class outside the curve cone")
    d2 = self_int(model, d)
    kd = pair(model, model.canonical, d)
    q = model.q
    if d2 > 0:
        l = l_value(model, d)
        h0_min = max(ONE, euler_char(model, d) - model.pg)
        return BoundForm(alpha=ONE, beta=(q - 1) + d2 * (l - 1) / 2, h0_min=h0_min)
    if d2 == 0:
        return BoundForm(alpha=ONE, beta=(q - 1) + kd / 2)
    return BoundForm(alpha=Fraction(0), beta=q + (kd - d2) / 2, h0_max=ONE)


def entails(form: BoundForm, c: Fraction) -> bool:
    """Does the form force h1 <= c*h0 for every admissible h0?

    True iff c >= alpha and (c - alpha)*h0_min >= beta: the gap between
    c*h0 and alpha*h0 + beta is smallest at h0 = h0_min.
    """
    return c >= form.alpha and (c - form.alpha) * form.h0_min >= form.beta
