"""Closed-form real-root solvers for the model's characteristic equations.

The manifold characteristic equation mu^3 + x1 mu^2 + x2 mu + x3 = 0 always
has three real roots here (the manifold Hamiltonian is Hermitian), so the
trigonometric form applies. The same solver doubles as the eigenvalue
routine for the rank-3 atomic density matrix. A quadratic companion covers
the 2-state blocks of low-photon initial components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Below this relative margin x1^2 - 3*x2 carries no usable angle information
# and the triple root -x1/3 is returned instead.
_DEGENERATE_EPS = 1e-12

# Slack on the arccos argument before declaring a complex-root regime.
_ACOS_SLACK = 1e-6


class ComplexRootsError(ValueError):
    """The cubic (or quadratic) left the all-real-roots regime."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class CubicRoots:
    """Three real roots, ascending, plus the margin x1^2 - 3*x2."""

    mu: tuple[float, float, float]
    discriminant_margin: float


def _poly(x1: float, x2: float, x3: float, mu: float) -> float:
    return ((mu + x1) * mu + x2) * mu + x3


def _newton_refine(x1: float, x2: float, x3: float, mu: float) -> float:
    # One Newton step recovers a few digits near close roots at no real cost.
    deriv = (3.0 * mu + 2.0 * x1) * mu + x2
    if deriv == 0.0:
        return mu
    return mu - _poly(x1, x2, x3, mu) / deriv


def solve_cubic(x1: float, x2: float, x3: float) -> CubicRoots:
    """All three real roots of mu^3 + x1 mu^2 + x2 mu + x3 = 0.

    Uses the trigonometric evaluation
        mu_m = -x1/3 + (2/3) sqrt(x1^2 - 3 x2) cos(phi + 2 pi (m-1)/3)
        phi  = (1/3) arccos[(9 x1 x2 - 2 x1^3 - 27 x3) / (2 (x1^2 - 3 x2)^{3/2})]
    followed by one Newton step per root. Roots are returned ascending;
    the labelling of the three branches is immaterial downstream because
    the amplitude formulas are symmetric under root relabelling.

    Raises ComplexRootsError when the coefficients are inconsistent with
    three real roots beyond tolerance.
    """
    margin = x1 * x1 - 3.0 * x2
    scale = max(1.0, x1 * x1)
    if margin <= _DEGENERATE_EPS * scale:
        if margin < -_DEGENERATE_EPS * scale:
            raise ComplexRootsError(
                "negative discriminant margin: cubic has complex roots", residual=-margin
            )
        mu = -x1 / 3.0
        return CubicRoots(mu=(mu, mu, mu), discriminant_margin=margin)

    arg = (9.0 * x1 * x2 - 2.0 * x1**3 - 27.0 * x3) / (2.0 * margin**1.5)
    if abs(arg) > 1.0 + _ACOS_SLACK:
        raise ComplexRootsError(
            "arccos argument outside [-1, 1]: cubic has complex roots",
            residual=abs(arg) - 1.0,
        )
    arg = min(1.0, max(-1.0, arg))
    phi = math.acos(arg) / 3.0

    offset = -x1 / 3.0
    radius = (2.0 / 3.0) * math.sqrt(margin)
    roots = [
        _newton_refine(x1, x2, x3, offset + radius * math.cos(phi + 2.0 * math.pi * m / 3.0))
        for m in range(3)
    ]
    roots.sort()
    return CubicRoots(mu=tuple(roots), discriminant_margin=margin)


def solve_quadratic(a: float, b: float, c: float) -> tuple[float, float]:
    """Both real roots of a x^2 + b x + c = 0, ascending, sign-aware.

    A slightly negative discriminant (roundoff) is clamped to zero; a
    genuinely negative one raises ComplexRootsError.
    """
    if a == 0.0:
        raise ValueError("leading coefficient must be nonzero")
    disc = b * b - 4.0 * a * c
    scale = max(b * b, abs(4.0 * a * c))
    if disc < -1e-9 * scale:
        raise ComplexRootsError("negative discriminant: complex root pair", residual=-disc)
    disc = max(disc, 0.0)
    sq = math.sqrt(disc)
    # q = -(b + sign(b) sqrt(disc))/2 avoids cancellation in the small root.
    q = -0.5 * (b + math.copysign(sq, b)) if b != 0.0 else 0.5 * sq
    if q == 0.0:
        return (0.0, 0.0)
    r1, r2 = q / a, c / q
    return (r1, r2) if r1 <= r2 else (r2, r1)
