"""Evaluators for each integral inequality: both sides, slack and a verdict.

Every evaluator returns a :class:`BoundReport`.  The verdict tolerance is
driven by the quadrature error estimates that fed each side plus a small
relative rounding budget, never by a fixed absolute threshold.

Where the typeset statement of an inequality and the integration carried out
in its derivation disagree, the evaluator takes a :class:`Variant` and both
forms are available side by side.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .funclib import (
    CERT_GRID,
    CertifiedFunction,
    ClassTag,
    FunctionSpec,
    check_class,
    evaluate,
    is_nondecreasing,
)
from .quad import DEFAULT_ATOL, DEFAULT_RTOL, AccuracyError, Interval, integrate
from .special import DomainError, beta, log_mean

__all__ = [
    "HypothesisError",
    "Variant",
    "BoundReport",
    "RatioBounds",
    "ROUNDING_RTOL",
    "hermite_hadamard_s",
    "minkowski",
    "reverse_minkowski",
    "estimate_ratio_bounds",
    "thm3_exponent_product",
    "thm4_weighted_product",
    "thm5_minkowski_mconvex",
    "thm6_s_exponent_product",
    "thm7_s_cauchy_product",
    "thm8_log_cauchy_product",
    "thm9_alpha_m_exponent_product",
    "thm10_alpha_m_weighted_product",
    "corollary_preset",
    "COROLLARIES",
]

ROUNDING_RTOL = 1e-10
RATIO_GUARD = 1e-6
RATIO_GRID = 257

Func = Union[FunctionSpec, CertifiedFunction]


class HypothesisError(ValueError):
    """The inputs do not satisfy the hypotheses of the inequality."""


class Variant(str, enum.Enum):
    AS_PRINTED = "as-printed"
    AS_DERIVED = "as-derived"

    @classmethod
    def parse(cls, value) -> "Variant":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {"asprinted": "as-printed", "printed": "as-printed", "asderived": "as-derived", "derived": "as-derived"}
        return cls(aliases.get(key.replace("-", ""), key))


@dataclass(frozen=True)
class BoundReport:
    lhs: float
    rhs: float
    slack: float
    tol: float
    verdict: str  # "Holds" | "ViolatedBy" | "Inconclusive"
    violation: float = 0.0
    evaluations: int = 0
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.verdict == "Holds"

    @property
    def violated(self) -> bool:
        return self.verdict == "ViolatedBy"

    def scaled(self, factor: float) -> "BoundReport":
        """Both sides multiplied by a positive constant."""
        return _report(
            self.lhs * factor,
            self.rhs * factor,
            (self.tol - ROUNDING_RTOL * max(abs(self.lhs), abs(self.rhs))) * factor,
            self.evaluations,
            note=self.note,
            inconclusive=self.verdict == "Inconclusive",
        )

    def __str__(self):
        head = self.verdict if not self.violated else f"ViolatedBy({self.violation:.6g})"
        return f"{head}: lhs={self.lhs:.12g} rhs={self.rhs:.12g} slack={self.slack:.3g} tol={self.tol:.3g}"


def _report(lhs, rhs, err, evaluations, note="", inconclusive=False) -> BoundReport:
    lhs, rhs = float(lhs), float(rhs)
    slack = rhs - lhs
    tol = float(err) + ROUNDING_RTOL * max(abs(lhs), abs(rhs))
    if inconclusive or not (math.isfinite(lhs) and math.isfinite(rhs)):
        return BoundReport(lhs, rhs, slack, tol, "Inconclusive", 0.0, evaluations, note)
    if slack >= -tol:
        return BoundReport(lhs, rhs, slack, tol, "Holds", 0.0, evaluations, note)
    return BoundReport(lhs, rhs, slack, tol, "ViolatedBy", -slack, evaluations, note)


@dataclass(frozen=True)
class RatioBounds:
    """Bounds ``m_lo <= f/g <= M_hi`` on the interval."""

    m_lo: float
    M_hi: float

    def __post_init__(self):
        if not (0 < self.m_lo <= self.M_hi):
            raise ValueError(f"need 0 < m_lo <= M_hi, got ({self.m_lo}, {self.M_hi})")

    @property
    def c(self) -> float:
        m, M = self.m_lo, self.M_hi
        return (M * (m + 1) + (M + 1)) / ((m + 1) * (M + 1))


# ---------------------------------------------------------------------------
# plumbing


class _Integrals:
    """Collects quadrature results; records the first non-converged one."""

    def __init__(self, interval: Interval, rtol: float, atol: float):
        self.interval = interval
        self.rtol = rtol
        self.atol = atol
        self.evaluations = 0
        self.failed = ""

    def __call__(self, integrand):
        try:
            res = integrate(integrand, self.interval, self.rtol, self.atol)
        except AccuracyError as exc:
            res = exc.result
            self.failed = self.failed or str(exc)
        self.evaluations += res.evaluations
        return res.value, res.err_est

    def report(self, lhs, rhs, err, note=""):
        if self.failed:
            note = "; ".join(n for n in (note, self.failed) if n)
        return _report(lhs, rhs, err, self.evaluations, note, inconclusive=bool(self.failed))


def _spec(fn: Func) -> FunctionSpec:
    return fn.spec if isinstance(fn, CertifiedFunction) else fn


def _interval(interval) -> Interval:
    if isinstance(interval, Interval):
        return interval
    a, b = interval
    return Interval(float(a), float(b))


def _require(fn: Func, tag: Optional[ClassTag], upper: float, name: str) -> FunctionSpec:
    """Check domain coverage and class membership of ``fn`` on ``[0, upper]``."""
    spec = _spec(fn)
    if upper > spec.domain_upper * (1 + 1e-12):
        raise HypothesisError(
            f"{name}: domain [0, {spec.domain_upper:g}] does not cover the evaluation point {upper:g}"
        )
    if tag is None:
        return spec
    if isinstance(fn, CertifiedFunction) and tag in fn.tags:
        return spec
    verdict = check_class(spec, tag, upper, CERT_GRID)
    if not verdict:
        raise HypothesisError(
            f"{name}={spec.family} is not {tag} on [0, {upper:g}] "
            f"(x={verdict.x:g}, y={verdict.y:g}, t={verdict.t:g}, gap={verdict.gap:.3g})"
        )
    return spec


def _check_unit_param(name, v, closed_zero=False):
    ok = (0.0 <= v <= 1.0) if closed_zero else (0.0 < v <= 1.0)
    if not ok:
        raise HypothesisError(f"{name}={v} outside {'[0, 1]' if closed_zero else '(0, 1]'}")


def _check_p(p):
    if not p >= 1:
        raise DomainError(f"p must be >= 1, got {p}")


def _root_err(value, err, p):
    """Error bound on value**(1/p) from an error bound on value."""
    if p == 1:
        return err
    hi = (value + err) ** (1.0 / p)
    lo = max(value - err, 0.0) ** (1.0 / p)
    return max(hi - max(value, 0.0) ** (1.0 / p), max(value, 0.0) ** (1.0 / p) - lo)


def _weights(interval: Interval):
    a, L = interval.a, interval.length

    def up(x):
        return (x - a) / L

    return up


def _ext_point(a, m):
    return a / m


# ---------------------------------------------------------------------------
# Hermite-Hadamard, Minkowski, reverse Minkowski


def hermite_hadamard_s(f: Func, s: float, interval, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL):
    """Both Hermite-Hadamard inequalities for an s-convex (second sense) f.

    Returns ``(left, right)`` for
    ``2**(s-1) f((a+b)/2) <= mean(f) <= (f(a) + f(b)) / (s + 1)``.
    """
    _check_unit_param("s", s)
    iv = _interval(interval)
    spec = _require(f, ClassTag.s_convex(s), iv.b, "f")
    ints = _Integrals(iv, rtol, atol)
    val, err = ints(spec.family.values)
    L = iv.length
    mean, mean_err = val / L, err / L
    mid = evaluate(spec, 0.5 * (iv.a + iv.b))
    left = ints.report(2.0 ** (s - 1.0) * mid, mean, mean_err)
    right = ints.report(mean, (evaluate(spec, iv.a) + evaluate(spec, iv.b)) / (s + 1.0), mean_err)
    return left, right


def _pnorms(ints: _Integrals, f: FunctionSpec, g: FunctionSpec, p: float):
    F = ints(lambda x: np.power(f.family.values(x), p))
    G = ints(lambda x: np.power(g.family.values(x), p))
    S = ints(lambda x: np.power(f.family.values(x) + g.family.values(x), p))
    return [(v ** (1.0 / p), _root_err(v, e, p)) for v, e in (F, G, S)]


def minkowski(f: Func, g: Func, p: float, interval, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL):
    """(int (f+g)^p)^(1/p) <= (int f^p)^(1/p) + (int g^p)^(1/p)."""
    _check_p(p)
    iv = _interval(interval)
    fs, gs = _require(f, None, iv.b, "f"), _require(g, None, iv.b, "g")
    ints = _Integrals(iv, rtol, atol)
    (nf, ef), (ng, eg), (ns, es) = _pnorms(ints, fs, gs, p)
    return ints.report(ns, nf + ng, es + ef + eg)


def estimate_ratio_bounds(f: Func, g: Func, interval, grid_density: int = RATIO_GRID) -> RatioBounds:
    """Grid min/max of f/g on the interval, widened by a relative guard band."""
    iv = _interval(interval)
    xs = np.linspace(iv.a, iv.b, int(grid_density))
    fv, gv = evaluate(_spec(f), xs), evaluate(_spec(g), xs)
    if np.any(gv <= 0):
        x0 = xs[np.argmax(gv <= 0)]
        raise HypothesisError(f"g vanishes at x={x0:g}; the ratio f/g is unbounded")
    r = fv / gv
    lo, hi = float(np.min(r)), float(np.max(r))
    if lo <= 0:
        raise HypothesisError("f/g reaches 0 on the interval; a positive lower ratio bound is required")
    return RatioBounds(lo * (1 - RATIO_GUARD), hi * (1 + RATIO_GUARD))


def _check_ratio(fs, gs, iv: Interval, ratio: RatioBounds):
    xs = np.linspace(iv.a, iv.b, RATIO_GRID)
    fv, gv = evaluate(fs, xs), evaluate(gs, xs)
    slack = 1e-12 * (1 + np.abs(fv))
    if np.any(fv < ratio.m_lo * gv - slack) or np.any(fv > ratio.M_hi * gv + slack):
        raise HypothesisError(f"f/g leaves [{ratio.m_lo:g}, {ratio.M_hi:g}] on [{iv.a:g}, {iv.b:g}]")


def reverse_minkowski(
    f: Func, g: Func, p: float, interval, ratio: Optional[RatioBounds] = None, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL
):
    """(int f^p)^(1/p) + (int g^p)^(1/p) <= c (int (f+g)^p)^(1/p) under m <= f/g <= M."""
    _check_p(p)
    iv = _interval(interval)
    fs, gs = _require(f, None, iv.b, "f"), _require(g, None, iv.b, "g")
    if ratio is None:
        ratio = estimate_ratio_bounds(fs, gs, iv)
    _check_ratio(fs, gs, iv, ratio)
    c = ratio.c
    ints = _Integrals(iv, rtol, atol)
    (nf, ef), (ng, eg), (ns, es) = _pnorms(ints, fs, gs, p)
    return ints.report(nf + ng, c * ns, ef + eg + c * es)


# ---------------------------------------------------------------------------
# m-convex products


def _exponent_product(ints: _Integrals, fs: FunctionSpec, gs: FunctionSpec):
    """(1/(b-a)) int f(x)^((x-a)/(b-a)) g(x)^((b-x)/(b-a)) dx."""
    iv = ints.interval
    up = _weights(iv)

    def integrand(x):
        u = up(x)
        return np.power(fs.family.values(x), u) * np.power(gs.family.values(x), 1.0 - u)

    val, err = ints(integrand)
    return val / iv.length, err / iv.length


def _m_convex_pair(f, g, m1, m2, iv: Interval, tag1=None, tag2=None):
    _check_unit_param("m1", m1)
    _check_unit_param("m2", m2)
    fs = _require(f, tag1 or ClassTag.m_convex(m1), max(iv.b, _ext_point(iv.a, m1)), "f")
    gs = _require(g, tag2 or ClassTag.m_convex(m2), max(iv.b, _ext_point(iv.a, m2)), "g")
    return fs, gs


def thm3_exponent_product(f: Func, g: Func, m1: float, m2: float, interval, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL):
    """Exponent-weighted product bound for an m1-convex f and an m2-convex g."""
    iv = _interval(interval)
    fs, gs = _m_convex_pair(f, g, m1, m2, iv)
    ints = _Integrals(iv, rtol, atol)
    lhs, err = _exponent_product(ints, fs, gs)
    a, b = iv.a, iv.b
    fa1, ga2 = evaluate(fs, a / m1), evaluate(gs, a / m2)
    rhs = (evaluate(fs, b) + m2 * ga2) / 3.0 + (evaluate(gs, b) + m1 * fa1) / 6.0
    return ints.report(lhs, rhs, err)


def _weighted_product_lhs(ints: _Integrals, fs, gs, a1, a2, m1, m2):
    """Left side of the weighted product inequality with power weights u**a1, u**a2.

    Written as one integral of the combined integrand, with u = (x-a)/(b-a).
    """
    iv = ints.interval
    a, b = iv.a, iv.b
    fb, gb = evaluate(fs, b), evaluate(gs, b)
    fa1, ga2 = evaluate(fs, a / m1), evaluate(gs, a / m2)
    up = _weights(iv)

    def integrand(x):
        u = up(x)
        fx, gx = fs.family.values(x), gs.family.values(x)
        w1, w2 = np.power(u, a1), np.power(u, a2)
        return (gb * w2 + m2 * ga2 * (1.0 - w2)) * fx + (fb * w1 + m1 * fa1 * (1.0 - w1)) * gx

    val, err = ints(integrand)
    L = iv.length
    return val / L, err / L, (fb, gb, fa1, ga2)


def _product_integral(ints: _Integrals, fs, gs):
    val, err = ints(lambda x: fs.family.values(x) * gs.family.values(x))
    L = ints.interval.length
    return val / L, err / L


def thm4_weighted_product(f: Func, g: Func, m1: float, m2: float, interval, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL):
    """Weighted product bound for an m1-convex f and an m2-convex g."""
    iv = _interval(interval)
    fs, gs = _m_convex_pair(f, g, m1, m2, iv)
    ints = _Integrals(iv, rtol, atol)
    lhs, lerr, (fb, gb, fa1, ga2) = _weighted_product_lhs(ints, fs, gs, 1.0, 1.0, m1, m2)
    prod, perr = _product_integral(ints, fs, gs)
    rhs = prod + fb * gb / 3.0 + m1 / 6.0 * fa1 * gb + m2 / 6.0 * fb * ga2 + m1 * m2 / 3.0 * fa1 * ga2
    return ints.report(lhs, rhs, lerr + perr)


def thm5_minkowski_mconvex(
    f: Func,
    g: Func,
    p: float,
    m1: float,
    m2: float,
    interval,
    ratio: Optional[RatioBounds] = None,
    variant=Variant.AS_DERIVED,
    rtol=DEFAULT_RTOL,
    atol=DEFAULT_ATOL,
):
    """Reverse-Minkowski-scaled norm sum against the endpoint bound.

    With A = f(b)+g(b) and B = m1 f(a/m1) + m2 g(a/m2) the right side is
    ``(2**(p-1) (b-a)/(p+1))**(1/p) * (A**p -/+ B**p)**(1/p)``: the typeset
    form subtracts, the integration that produces it adds.
    """
    variant = Variant.parse(variant)
    _check_p(p)
    iv = _interval(interval)
    fs, gs = _m_convex_pair(f, g, m1, m2, iv)
    if ratio is None:
        ratio = estimate_ratio_bounds(fs, gs, iv)
    _check_ratio(fs, gs, iv, ratio)
    c = ratio.c
    ints = _Integrals(iv, rtol, atol)
    nf, ef = ints(lambda x: np.power(fs.family.values(x), p))
    ng, eg = ints(lambda x: np.power(gs.family.values(x), p))
    lhs = (nf ** (1 / p) + ng ** (1 / p)) / c
    lerr = (_root_err(nf, ef, p) + _root_err(ng, eg, p)) / c

    a, b = iv.a, iv.b
    A = evaluate(fs, b) + evaluate(gs, b)
    B = m1 * evaluate(fs, a / m1) + m2 * evaluate(gs, a / m2)
    pref = (2.0 ** (p - 1.0) * iv.length / (p + 1.0)) ** (1.0 / p)
    if variant is Variant.AS_DERIVED:
        rhs = pref * (A**p + B**p) ** (1.0 / p)
        return ints.report(lhs, rhs, lerr)
    inner = A**p - B**p
    if inner < 0 and p != 1:
        return _report(
            lhs,
            float("nan"),
            lerr,
            ints.evaluations,
            note=f"A^p - B^p = {inner:.6g} < 0: the 1/p-th root is undefined",
            inconclusive=True,
        )
    rhs = pref * (inner if p == 1 else inner ** (1.0 / p))
    return ints.report(lhs, rhs, lerr)


# ---------------------------------------------------------------------------
# s-convex and log-convex


def thm6_s_exponent_product(
    f: Func, g: Func, s1: float, s2: float, interval, variant=Variant.AS_DERIVED, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL
):
    """Exponent-weighted product bound with Beta-function coefficients.

    The g terms differ between the variants: the typeset form puts
    1/(s2+2) on g(b) and B(2, s2+1) on g(a); integrating
    (1-t)[t^s2 g(b) + (1-t)^s2 g(a)] gives the reverse assignment.
    """
    variant = Variant.parse(variant)
    _check_unit_param("s1", s1)
    _check_unit_param("s2", s2)
    iv = _interval(interval)
    fs = _require(f, ClassTag.s_convex(s1), iv.b, "f")
    gs = _require(g, ClassTag.s_convex(s2), iv.b, "g")
    ints = _Integrals(iv, rtol, atol)
    lhs, err = _exponent_product(ints, fs, gs)
    a, b = iv.a, iv.b
    fa, fb, ga, gb = evaluate(fs, a), evaluate(fs, b), evaluate(gs, a), evaluate(gs, b)
    rhs = fb / (s1 + 2.0) + beta(2.0, s1 + 1.0) * fa
    if variant is Variant.AS_PRINTED:
        rhs += gb / (s2 + 2.0) + beta(2.0, s2 + 1.0) * ga
    else:
        rhs += beta(2.0, s2 + 1.0) * gb + ga / (s2 + 2.0)
    return ints.report(lhs, rhs, err)


def _cauchy_lhs(ints: _Integrals, fs, gs, alpha):
    w = 1.0 - alpha

    def integrand(x):
        # 0**0 == 1 in numpy, matching the convention for zero weights
        return np.power(fs.family.values(x), alpha) * np.power(gs.family.values(x), w)

    val, err = ints(integrand)
    L = ints.interval.length
    return val / L, err / L


def thm7_s_cauchy_product(f: Func, g: Func, s: float, alpha: float, interval, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL):
    """mean(f^alpha g^(1-alpha)) <= [alpha (f(a)+f(b)) + (1-alpha)(g(a)+g(b))] / (s+1)."""
    _check_unit_param("s", s)
    _check_unit_param("alpha", alpha, closed_zero=True)
    iv = _interval(interval)
    fs = _require(f, ClassTag.s_convex(s), iv.b, "f")
    gs = _require(g, ClassTag.s_convex(s), iv.b, "g")
    ints = _Integrals(iv, rtol, atol)
    lhs, err = _cauchy_lhs(ints, fs, gs, alpha)
    a, b = iv.a, iv.b
    rhs = (alpha * (evaluate(fs, a) + evaluate(fs, b)) + (1.0 - alpha) * (evaluate(gs, a) + evaluate(gs, b))) / (s + 1.0)
    return ints.report(lhs, rhs, err)


def thm8_log_cauchy_product(f: Func, g: Func, alpha: float, interval, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL):
    """mean(f^alpha g^(1-alpha)) <= alpha L(f(a), f(b)) + (1-alpha) L(g(a), g(b))."""
    _check_unit_param("alpha", alpha, closed_zero=True)
    iv = _interval(interval)
    fs = _require(f, ClassTag.log_convex(), iv.b, "f")
    gs = _require(g, ClassTag.log_convex(), iv.b, "g")
    a, b = iv.a, iv.b
    fa, fb, ga, gb = evaluate(fs, a), evaluate(fs, b), evaluate(gs, a), evaluate(gs, b)
    if min(fa, fb, ga, gb) <= 0:
        raise HypothesisError("log-convex bound needs strictly positive endpoint values")
    ints = _Integrals(iv, rtol, atol)
    lhs, err = _cauchy_lhs(ints, fs, gs, alpha)
    rhs = alpha * log_mean(fa, fb) + (1.0 - alpha) * log_mean(ga, gb)
    return ints.report(lhs, rhs, err)


# ---------------------------------------------------------------------------
# (alpha, m)-convex


def _alpha_m_pair(f, g, a1, m1, a2, m2, iv):
    _check_unit_param("alpha1", a1)
    _check_unit_param("alpha2", a2)
    return _m_convex_pair(
        f, g, m1, m2, iv, ClassTag.alpha_m_convex(a1, m1), ClassTag.alpha_m_convex(a2, m2)
    )


def thm9_alpha_m_exponent_product(
    f: Func,
    g: Func,
    alpha1: float,
    m1: float,
    alpha2: float,
    m2: float,
    interval,
    variant=Variant.AS_DERIVED,
    rtol=DEFAULT_RTOL,
    atol=DEFAULT_ATOL,
):
    """Exponent-weighted product bound for (alpha, m)-convex f and g.

    The f(a/m1) coefficient is m1/(2(alpha1+2)) as typeset and
    m1*alpha1/(2(alpha1+2)) from integrating t(1 - t^alpha1).
    """
    variant = Variant.parse(variant)
    iv = _interval(interval)
    fs, gs = _alpha_m_pair(f, g, alpha1, m1, alpha2, m2, iv)
    ints = _Integrals(iv, rtol, atol)
    lhs, err = _exponent_product(ints, fs, gs)
    a, b = iv.a, iv.b
    fb, gb = evaluate(fs, b), evaluate(gs, b)
    fa1, ga2 = evaluate(fs, a / m1), evaluate(gs, a / m2)
    c_fa = m1 / (2.0 * (alpha1 + 2.0))
    if variant is Variant.AS_DERIVED:
        c_fa *= alpha1
    q = (alpha2 + 1.0) * (alpha2 + 2.0)
    rhs = fb / (alpha1 + 2.0) + c_fa * fa1 + gb / q + m2 * (alpha2**2 + 3.0 * alpha2) / (2.0 * q) * ga2
    return ints.report(lhs, rhs, err)


def thm10_alpha_m_weighted_product(
    f: Func,
    g: Func,
    alpha1: float,
    m1: float,
    alpha2: float,
    m2: float,
    interval,
    variant=Variant.AS_DERIVED,
    rtol=DEFAULT_RTOL,
    atol=DEFAULT_ATOL,
):
    """Weighted product bound for (alpha, m)-convex f and g.

    The f(a/m1) g(b) coefficient has (alpha1+1) in its denominator as
    typeset; integrating t^alpha2 (1 - t^alpha1) gives (alpha2+1).
    """
    variant = Variant.parse(variant)
    iv = _interval(interval)
    fs, gs = _alpha_m_pair(f, g, alpha1, m1, alpha2, m2, iv)
    ints = _Integrals(iv, rtol, atol)
    lhs, lerr, (fb, gb, fa1, ga2) = _weighted_product_lhs(ints, fs, gs, alpha1, alpha2, m1, m2)
    prod, perr = _product_integral(ints, fs, gs)
    s = alpha1 + alpha2 + 1.0
    cross_den = (alpha1 + 1.0) if variant is Variant.AS_PRINTED else (alpha2 + 1.0)
    rhs = (
        prod
        + fb * gb / s
        + m2 * alpha2 / ((alpha1 + 1.0) * s) * ga2 * fb
        + m1 * alpha1 / (cross_den * s) * fa1 * gb
        + m1 * m2 * alpha1 * alpha2 * (alpha1 + alpha2 + 2.0) / ((alpha1 + 1.0) * (alpha2 + 1.0) * s) * fa1 * ga2
    )
    return ints.report(lhs, rhs, lerr + perr)


# ---------------------------------------------------------------------------
# corollaries


COROLLARIES = ("C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9")


def _is_one(spec: FunctionSpec, iv: Interval) -> bool:
    xs = np.linspace(iv.a, iv.b, 65)
    return bool(np.all(np.abs(evaluate(spec, xs) - 1.0) <= 1e-14))


def corollary_preset(
    cid: str,
    f: Func,
    g: Func,
    interval,
    variant=Variant.AS_DERIVED,
    rtol=DEFAULT_RTOL,
    atol=DEFAULT_ATOL,
    **params,
) -> BoundReport:
    """Evaluate a corollary as a parameter specialization of its theorem.

    C1 thm3, C2 thm4 and C4 thm4 with g = 1 at m1 = m2 = 1; C3 is C2 with
    the f(b), g(b) weights lowered to f(a), g(a) for nondecreasing f, g;
    C5 is thm5 at m = 1, p = 1 multiplied through by c; C6 is thm7 at
    alpha = 1 (needs ``s``); C7 thm6 at s1 = s2 = 1; C8 thm9 and C9 thm10 at
    alpha1 = alpha2 = 1 (``m1``, ``m2`` default to 1).
    """
    cid = cid.upper()
    iv = _interval(interval)
    kw = dict(rtol=rtol, atol=atol)
    if cid == "C1":
        return thm3_exponent_product(f, g, 1.0, 1.0, iv, **kw)
    if cid == "C2":
        return thm4_weighted_product(f, g, 1.0, 1.0, iv, **kw)
    if cid == "C3":
        fs, gs = _m_convex_pair(f, g, 1.0, 1.0, iv)
        for name, spec in (("f", fs), ("g", gs)):
            if not is_nondecreasing(spec, iv.a, iv.b):
                raise HypothesisError(f"{name} is not nondecreasing on [{iv.a:g}, {iv.b:g}]")
        base = thm4_weighted_product(fs, gs, 1.0, 1.0, iv, **kw)
        ints = _Integrals(iv, rtol, atol)
        a = iv.a
        fa, ga = evaluate(fs, a), evaluate(gs, a)
        val, err = ints(lambda x: ga * fs.family.values(x) + fa * gs.family.values(x))
        L = iv.length
        # int (x-a) h + int (b-x) h = (b-a) int h
        lhs = val / L
        return _report(
            lhs,
            base.rhs,
            err / L + base.tol - ROUNDING_RTOL * max(abs(base.lhs), abs(base.rhs)),
            base.evaluations + ints.evaluations,
            inconclusive=bool(ints.failed) or base.verdict == "Inconclusive",
        )
    if cid == "C4":
        if not _is_one(_spec(g), iv):
            raise HypothesisError("C4 requires g = 1")
        return thm4_weighted_product(f, g, 1.0, 1.0, iv, **kw)
    if cid == "C5":
        ratio = params.get("ratio")
        fs, gs = _spec(f), _spec(g)
        if ratio is None:
            ratio = estimate_ratio_bounds(fs, gs, iv)
        rep = thm5_minkowski_mconvex(f, g, 1.0, 1.0, 1.0, iv, ratio=ratio, variant=variant, **kw)
        return rep.scaled(ratio.c)
    if cid == "C6":
        return thm7_s_cauchy_product(f, g, params.get("s", 1.0), 1.0, iv, **kw)
    if cid == "C7":
        return thm6_s_exponent_product(f, g, 1.0, 1.0, iv, variant=variant, **kw)
    if cid == "C8":
        return thm9_alpha_m_exponent_product(
            f, g, 1.0, params.get("m1", 1.0), 1.0, params.get("m2", 1.0), iv, variant=variant, **kw
        )
    if cid == "C9":
        return thm10_alpha_m_weighted_product(
            f, g, 1.0, params.get("m1", 1.0), 1.0, params.get("m2", 1.0), iv, variant=variant, **kw
        )
    raise ValueError(f"unknown corollary {cid!r}")
