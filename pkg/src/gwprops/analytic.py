"""Closed-form reference curves for the Poisson Galton-Watson tree.

The survival probability s(lam) = P(the tree is infinite) satisfies

    s = 1 - exp(-lam * s),

whose relevant solution is s = 0 for lam <= 1 and, for lam > 1, the unique
positive root.  Equivalently s = 1 + W0(-lam * e^-lam) / lam with W0 the
principal branch of the Lambert W function (the real solution of
w * e^w = x with w >= -1).  Both routes are implemented and returned side
by side so they can check each other.

The probability that the root has exactly one child is lam * e^-lam, a
function with no phase transition anywhere on (0, inf).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_BRANCH_POINT = -math.exp(-1.0)


def lambert_w0(x: float) -> float:
    """Principal branch of Lambert W via Halley iteration.

    Accepts x >= -1/e (a hair of rounding slack below is clamped to the
    branch point).  The returned w satisfies w >= -1 and
    |w * e^w - x| <= 1e-14 * max(1, |x|).
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"lambert_w0 needs a finite argument, got {x}")
    if x < _BRANCH_POINT:
        if x > _BRANCH_POINT * (1.0 + 1e-12):
            x = _BRANCH_POINT
        else:
            raise ValueError(f"lambert_w0 defined for x >= -1/e, got {x}")
    if x == 0.0:
        return 0.0

    # Branch-aware starting point.
    p2 = 2.0 * (math.e * x + 1.0)
    if p2 <= 0.0:
        return -1.0
    if p2 < 1e-6:
        # So close to the branch point that the iteration is ill-conditioned
        # (double root); the series w = -1 + p - p^2/3 + 11 p^3/72 is already
        # beyond machine precision in the residual here.
        p = math.sqrt(p2)
        return -1.0 + p - p2 / 3.0 + 11.0 * p * p2 / 72.0
    if x < 1.1:
        p = math.sqrt(p2)
        w = -1.0 + p - p2 / 3.0 + 11.0 * p * p2 / 72.0
    else:
        # Asymptotic start for large arguments.
        l1 = math.log(x)
        l2 = math.log(l1) if l1 > 0 else 0.0
        w = l1 - l2

    for _ in range(50):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            w += 1e-12
            continue
        delta = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= delta
        if abs(delta) <= 1e-16 * (2.0 + abs(w)):
            break
    if w < -1.0:
        w = -1.0
    return w


@dataclass(frozen=True)
class SurvivalResult:
    """Survival probability computed two ways, with the fixed-point residual."""

    lam: float
    s_fixed_point: float
    s_lambert: float
    residual: float


def _positive_root(lam: float) -> float:
    """Positive solution of s = 1 - exp(-lam*s) for lam > 1.

    g(s) = s + expm1(-lam*s) is negative just right of 0 and e^-lam at 1,
    so bisection brackets the root; expm1 keeps g exact near 0, where the
    root sits for lam just above 1.  A few Newton steps polish the result
    away from the ill-conditioned lam ~ 1 regime.
    """

    def g(s: float) -> float:
        return s + math.expm1(-lam * s)

    lo, hi = 5e-324, 1.0
    if g(lo) >= 0.0:  # lam so close to 1 the root underflows
        return 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-14 * hi:
            break
    s = 0.5 * (lo + hi)
    for _ in range(4):
        gp = 1.0 - lam * math.exp(-lam * s)
        if abs(gp) < 1e-3:
            break
        s_next = s - g(s) / gp
        if 0.0 < s_next < 1.0:
            s = s_next
    return s


def survival_prob(lam: float) -> SurvivalResult:
    """Probability that the tree is infinite, by fixed point and by Lambert W.

    Exactly 0 for lam <= 1; for lam > 1 the two routes agree to ~1e-12 and
    the fixed-point residual |s - 1 + exp(-lam*s)| stays below 1e-12.
    """
    lam = float(lam)
    if not (lam > 0.0) or not math.isfinite(lam):
        raise ValueError(f"lam must be a positive finite real, got {lam}")
    if lam <= 1.0:
        return SurvivalResult(lam, 0.0, 0.0, 0.0)
    s_fp = _positive_root(lam)
    arg = -lam * math.exp(-lam)
    s_lw = 1.0 + lambert_w0(arg) / lam
    if s_lw < 0.0:
        s_lw = 0.0
    residual = abs(s_fp + math.expm1(-lam * s_fp))
    return SurvivalResult(lam, s_fp, s_lw, residual)


def one_child_prob(lam: float) -> float:
    """Probability the root has exactly one child: lam * e^-lam."""
    lam = float(lam)
    if not (lam > 0.0) or not math.isfinite(lam):
        raise ValueError(f"lam must be a positive finite real, got {lam}")
    return lam * math.exp(-lam)


def extinction_by_generation(lam: float, generations: int) -> list[float]:
    """P(the tree dies within g generations) for g = 0..generations.

    Iterates the offspring generating function phi(s) = exp(lam*(s-1))
    from 0; the sequence increases to the extinction probability
    1 - survival_prob(lam).
    """
    lam = float(lam)
    if not (lam > 0.0) or not math.isfinite(lam):
        raise ValueError(f"lam must be a positive finite real, got {lam}")
    out = [0.0]
    s = 0.0
    for _ in range(generations):
        s = math.exp(lam * (s - 1.0))
        out.append(s)
    return out
