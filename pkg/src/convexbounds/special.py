"""Special functions and elementary inequalities used by the bound right-hand sides."""

from __future__ import annotations

import math

__all__ = [
    "DomainError",
    "beta",
    "log_mean",
    "weighted_am_gm_gap",
    "power_split_check",
    "rearrangement_gap",
    "safe_pow",
]

# below this |log u - log v| the difference quotient loses too many digits
_LOG_MEAN_SWITCH = 1e-8


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


def safe_pow(x: float, y: float) -> float:
    """``x ** y`` with ``0 ** 0 == 1``."""
    if y == 0.0:
        return 1.0
    return x**y


def beta(x: float, y: float) -> float:
    """Euler Beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y).

    The gamma ratio is used directly while it stays finite; large arguments
    fall back to log-gamma.
    """
    if not (x > 0 and y > 0):
        raise DomainError(f"beta requires positive arguments, got ({x}, {y})")
    if x + y < 170.0:
        try:
            gx, gy, gxy = math.gamma(x), math.gamma(y), math.gamma(x + y)
        except OverflowError:
            pass
        else:
            if math.isfinite(gx) and math.isfinite(gy):
                return gx * gy / gxy
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


def log_mean(u: float, v: float) -> float:
    """Logarithmic mean (u - v) / (log u - log v), equal to u on the diagonal."""
    if not (u > 0 and v > 0):
        raise DomainError(f"log_mean requires positive arguments, got ({u}, {v})")
    # log1p of the exact difference keeps d accurate when u and v are close
    d = math.log1p((u - v) / v) if 0.5 <= u / v <= 2.0 else math.log(u) - math.log(v)
    if abs(d) < _LOG_MEAN_SWITCH:
        # L = sqrt(uv) * sinh(d/2) / (d/2), expanded to second order
        return math.sqrt(u * v) * (1.0 + d * d / 24.0)
    return (u - v) / d


def weighted_am_gm_gap(alpha: float, x: float, y: float) -> float:
    """alpha*x + (1-alpha)*y - x**alpha * y**(1-alpha).

    Nonnegative up to rounding for alpha in [0, 1] and x, y >= 0.
    """
    w = 1.0 - alpha
    return alpha * x + w * y - safe_pow(x, alpha) * safe_pow(y, w)


def power_split_check(e: float, f: float, p: float) -> float:
    """2**(p-1) * (e**p + f**p) - (e + f)**p, nonnegative for p >= 1."""
    if p < 1:
        raise DomainError(f"power_split_check requires p >= 1, got {p}")
    return 2.0 ** (p - 1.0) * (e**p + f**p) - (e + f) ** p


def rearrangement_gap(e: float, f: float, p: float, r: float) -> float:
    """(e*p + f*r) - (e*r + f*p) = (f - e)(r - p); nonnegative when e <= f, p <= r."""
    return (e * p + f * r) - (e * r + f * p)
