"""Closed-form nonnegative function families and convexity-class membership.

Functions are immutable value objects (``FunctionSpec``) so that verification
cases can be serialized, replayed and shrunk.  Membership in a convexity class
is either constructive (the generator only emits families known to belong to
the class) or empirical (the defining inequality was checked on a grid).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Optional, Union

import numpy as np

from .special import DomainError

__all__ = [
    "Power",
    "Affine",
    "Exponential",
    "Constant",
    "NonNegSum",
    "Scale",
    "FunctionSpec",
    "ClassTag",
    "ClassVerdict",
    "CertifiedFunction",
    "CertificationError",
    "evaluate",
    "check_class",
    "sample_certified",
    "is_nondecreasing",
    "family_from_dict",
]

ArrayLike = Union[float, np.ndarray]

# slack allowed on the domain check, covers rounding in t*x + m*(1-t)*y
_DOMAIN_RTOL = 1e-12
_CLASS_RTOL = 1e-10
CERT_GRID = 25


class CertificationError(RuntimeError):
    """A generated or supplied function failed its class certification."""


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class Power:
    """c * x**k.  Exponents above 1 are allowed (convex pieces)."""

    c: float
    k: float

    def __post_init__(self):
        if not (self.c >= 0 and self.k > 0):
            raise ValueError(f"Power needs c >= 0 and k > 0, got c={self.c}, k={self.k}")

    def values(self, x):
        return self.c * np.power(x, self.k)

    def coeffs(self):
        return [self.c, self.k]

    def __str__(self):
        return f"Power({self.c:g}, {self.k:g})"


@dataclass(frozen=True)
class Affine:
    """p * x + q with p, q >= 0."""

    p: float
    q: float

    def __post_init__(self):
        if not (self.p >= 0 and self.q >= 0):
            raise ValueError(f"Affine needs p, q >= 0, got p={self.p}, q={self.q}")

    def values(self, x):
        return self.p * np.asarray(x, dtype=float) + self.q

    def coeffs(self):
        return [self.p, self.q]

    def __str__(self):
        return f"Affine({self.p:g}, {self.q:g})"


@dataclass(frozen=True)
class Exponential:
    """c * exp(k * x) with c > 0."""

    c: float
    k: float

    def __post_init__(self):
        if not (self.c > 0 and math.isfinite(self.k)):
            raise ValueError(f"Exponential needs c > 0, got c={self.c}")

    def values(self, x):
        return self.c * np.exp(self.k * np.asarray(x, dtype=float))

    def coeffs(self):
        return [self.c, self.k]

    def __str__(self):
        return f"Exponential({self.c:g}, {self.k:g})"


@dataclass(frozen=True)
class Constant:
    c: float

    def __post_init__(self):
        if not self.c >= 0:
            raise ValueError(f"Constant needs c >= 0, got {self.c}")

    def values(self, x):
        return np.full(np.shape(x), float(self.c))

    def coeffs(self):
        return [self.c]

    def __str__(self):
        return f"Constant({self.c:g})"


@dataclass(frozen=True)
class NonNegSum:
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("NonNegSum needs at least one term")

    def values(self, x):
        out = self.terms[0].values(x)
        for term in self.terms[1:]:
            out = out + term.values(x)
        return out

    def coeffs(self):
        return []

    def __str__(self):
        return "NonNegSum[" + ", ".join(str(t) for t in self.terms) + "]"


@dataclass(frozen=True)
class Scale:
    lam: float
    inner: Any

    def __post_init__(self):
        if not self.lam >= 0:
            raise ValueError(f"Scale needs lambda >= 0, got {self.lam}")

    def values(self, x):
        return self.lam * self.inner.values(x)

    def coeffs(self):
        return [self.lam]

    def __str__(self):
        return f"Scale({self.lam:g}, {self.inner})"


Family = Union[Power, Affine, Exponential, Constant, NonNegSum, Scale]

_LEAVES = {"Power": Power, "Affine": Affine, "Exponential": Exponential, "Constant": Constant}


def family_to_dict(fam) -> dict:
    name = type(fam).__name__
    if isinstance(fam, NonNegSum):
        return {"family": name, "terms": [family_to_dict(t) for t in fam.terms]}
    if isinstance(fam, Scale):
        return {"family": name, "coeffs": [fam.lam], "inner": family_to_dict(fam.inner)}
    return {"family": name, "coeffs": [float(c) for c in fam.coeffs()]}


def family_from_dict(d: dict):
    name = d["family"]
    if name == "NonNegSum":
        return NonNegSum(tuple(family_from_dict(t) for t in d["terms"]))
    if name == "Scale":
        return Scale(float(d["coeffs"][0]), family_from_dict(d["inner"]))
    try:
        cls = _LEAVES[name]
    except KeyError:
        raise ValueError(f"unknown function family {name!r}") from None
    return cls(*(float(c) for c in d["coeffs"]))


@dataclass(frozen=True)
class FunctionSpec:
    """A closed-form nonnegative function on ``[0, domain_upper]``."""

    family: Family
    domain_upper: float

    def __post_init__(self):
        if not self.domain_upper > 0:
            raise ValueError(f"domain_upper must be positive, got {self.domain_upper}")

    def __call__(self, x: ArrayLike) -> ArrayLike:
        return evaluate(self, x)

    def with_domain(self, domain_upper: float) -> "FunctionSpec":
        return FunctionSpec(self.family, float(domain_upper))

    def to_dict(self) -> dict:
        out = family_to_dict(self.family)
        out["domain_upper"] = float(self.domain_upper)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "FunctionSpec":
        return cls(family_from_dict(d), float(d["domain_upper"]))

    def __str__(self):
        return f"{self.family}@[0, {self.domain_upper:g}]"


def evaluate(spec: FunctionSpec, x: ArrayLike) -> ArrayLike:
    """Evaluate ``spec`` at ``x`` (scalar or array); raise outside the domain."""
    arr = np.asarray(x, dtype=float)
    upper = spec.domain_upper * (1.0 + _DOMAIN_RTOL)
    if arr.size and (np.min(arr) < 0.0 or np.max(arr) > upper):
        bad = arr[(arr < 0.0) | (arr > upper)].ravel()[0]
        raise DomainError(f"x={bad!r} outside domain [0, {spec.domain_upper}] of {spec.family}")
    out = spec.family.values(np.clip(arr, 0.0, spec.domain_upper))
    if np.ndim(x) == 0:
        return float(out)
    return out


# ---------------------------------------------------------------------------
# class tags


_KINDS = ("Convex", "Starshaped", "MConvex", "SConvexSecond", "AlphaMConvex", "LogConvex")


@dataclass(frozen=True)
class ClassTag:
    kind: str
    m: Optional[float] = None
    s: Optional[float] = None
    alpha: Optional[float] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown class kind {self.kind!r}")
        for name in ("m", "s", "alpha"):
            v = getattr(self, name)
            if v is not None and not (0.0 < v <= 1.0):
                raise ValueError(f"class parameter {name}={v} must lie in (0, 1]")

    @classmethod
    def convex(cls):
        return cls("Convex")

    @classmethod
    def starshaped(cls):
        return cls("Starshaped")

    @classmethod
    def m_convex(cls, m):
        return cls("MConvex", m=float(m))

    @classmethod
    def s_convex(cls, s):
        return cls("SConvexSecond", s=float(s))

    @classmethod
    def alpha_m_convex(cls, alpha, m):
        return cls("AlphaMConvex", m=float(m), alpha=float(alpha))

    @classmethod
    def log_convex(cls):
        return cls("LogConvex")

    def __str__(self):
        args = [f"{k}={getattr(self, k):g}" for k in ("alpha", "m", "s") if getattr(self, k) is not None]
        return f"{self.kind}({', '.join(args)})" if args else self.kind


@dataclass(frozen=True)
class ClassVerdict:
    """Result of a grid check.  ``holds`` is False iff a violation was found."""

    holds: bool
    x: float = float("nan")
    y: float = float("nan")
    t: float = float("nan")
    gap: float = 0.0

    def __bool__(self):
        return self.holds


def _tpow(t, e):
    # 0**0 == 1 (numpy already does this), kept explicit for clarity at t=0
    return np.where(e == 0, 1.0, np.power(t, e))


def check_class(spec: FunctionSpec, tag: ClassTag, interval_upper: float, grid_density: int = CERT_GRID) -> ClassVerdict:
    """Check the defining inequality of ``tag`` on a uniform (x, y, t) grid.

    x and y range over ``[0, interval_upper]`` and t over ``[0, 1]``, endpoints
    included.  A grid point counts as a violation when
    ``lhs - rhs > 1e-10 * (1 + max(|lhs|, |rhs|))``; the worst one is reported.
    """
    if interval_upper > spec.domain_upper * (1.0 + _DOMAIN_RTOL):
        raise DomainError(
            f"interval_upper={interval_upper} exceeds domain_upper={spec.domain_upper}"
        )
    n = int(grid_density)
    if n < 2:
        raise ValueError("grid_density must be at least 2")
    pts = np.linspace(0.0, interval_upper, n)
    X = pts[:, None, None]
    Y = pts[None, :, None]
    T = np.linspace(0.0, 1.0, n)[None, None, :]
    f = spec.family.values
    fx, fy = f(X), f(Y)

    kind = tag.kind
    if kind == "Convex":
        lhs = f(T * X + (1 - T) * Y)
        rhs = T * fx + (1 - T) * fy
    elif kind == "Starshaped":
        lhs = f(T * X) + 0.0 * Y
        rhs = T * fx + 0.0 * Y
    elif kind == "MConvex":
        m = tag.m
        lhs = f(T * X + m * (1 - T) * Y)
        rhs = T * fx + m * (1 - T) * fy
    elif kind == "SConvexSecond":
        s = tag.s
        lhs = f(T * X + (1 - T) * Y)
        rhs = np.power(T, s) * fx + np.power(1 - T, s) * fy
    elif kind == "AlphaMConvex":
        ta = np.power(T, tag.alpha)
        lhs = f(T * X + tag.m * (1 - T) * Y)
        rhs = ta * fx + tag.m * (1 - ta) * fy
    elif kind == "LogConvex":
        lhs = f(T * X + (1 - T) * Y)
        with np.errstate(divide="ignore", invalid="ignore"):
            rhs = _tpow(fx, T) * _tpow(fy, 1 - T)
        if np.any(fx <= 0):
            i = int(np.argmax(fx.ravel() <= 0))
            return ClassVerdict(False, float(pts[i]), float("nan"), float("nan"), float("inf"))
    else:  # pragma: no cover - guarded by ClassTag
        raise ValueError(kind)

    lhs, rhs = np.broadcast_arrays(lhs, rhs)
    gap = lhs - rhs
    budget = _CLASS_RTOL * (1.0 + np.maximum(np.abs(lhs), np.abs(rhs)))
    excess = gap - budget
    idx = np.unravel_index(int(np.argmax(excess)), excess.shape)
    if excess[idx] > 0:
        i, j, k = idx
        return ClassVerdict(False, float(pts[i]), float(pts[j]), float(T.ravel()[k]), float(gap[idx]))
    return ClassVerdict(True)


def is_nondecreasing(spec: FunctionSpec, a: float, b: float, grid_density: int = 257) -> bool:
    xs = np.linspace(a, b, grid_density)
    v = evaluate(spec, xs)
    return bool(np.all(np.diff(v) >= -1e-12 * (1.0 + np.abs(v[1:]))))


# ---------------------------------------------------------------------------
# certified generators


@dataclass(frozen=True)
class CertifiedFunction:
    spec: FunctionSpec
    tags: frozenset
    # "constructive" or "empirical:<grid_density>"
    certification: str = "constructive"

    def __call__(self, x):
        return evaluate(self.spec, x)


_MAX_RETRIES = 40
# keeps upper**k finite for the domains the harness builds
_MAX_POWER = 200.0


def _coef(rng, lo=0.1, hi=3.0):
    return float(rng.uniform(lo, hi))


def _convex_family(rng, upper, zero_at_origin: bool):
    """Nonnegative convex families; ``zero_at_origin`` forces f(0) = 0."""
    pick = rng.integers(0, 6)
    q = 0.0 if zero_at_origin else _coef(rng, 0.0, 2.0)
    if pick == 0:
        return Constant(_coef(rng)) if not zero_at_origin else Affine(_coef(rng), 0.0)
    if pick == 1:
        return Affine(_coef(rng), q)
    if pick == 2:
        k = float(rng.uniform(1.0, 3.0))
        return Power(_coef(rng) / upper ** (k - 1), k)
    if pick == 3:
        k = float(rng.uniform(1.0, 3.0))
        return NonNegSum((Affine(_coef(rng, 0.0, 2.0), q), Power(_coef(rng) / upper ** (k - 1), k)))
    if pick == 4 and not zero_at_origin:
        return Exponential(_coef(rng, 0.1, 2.0), float(rng.uniform(0.0, 1.5)) / max(upper, 1.0))
    inner = _convex_family(rng, upper, zero_at_origin)
    return Scale(_coef(rng, 0.2, 2.0), inner)


def _s_convex_family(rng, s, upper):
    pick = rng.integers(0, 6)
    if pick == 0:
        return Power(_coef(rng), s)
    if pick == 1:
        return Power(1.0, s)
    if pick == 2:
        return NonNegSum((Power(_coef(rng), s), Constant(_coef(rng, 0.0, 2.0))))
    if pick == 3:
        return NonNegSum((Power(_coef(rng), s), Affine(_coef(rng, 0.0, 1.0), _coef(rng, 0.0, 1.0))))
    if pick == 4:
        return Constant(_coef(rng))
    # nonnegative convex functions are s-convex for every s in (0, 1]
    return _convex_family(rng, upper, zero_at_origin=False)


def _log_convex_family(rng, upper):
    pick = rng.integers(0, 4)
    scale = max(upper, 1.0)
    if pick == 0:
        return Constant(_coef(rng))
    if pick == 3:
        return NonNegSum(
            (
                Exponential(_coef(rng, 0.1, 2.0), float(rng.uniform(-2.0, 2.0)) / scale),
                Exponential(_coef(rng, 0.1, 2.0), float(rng.uniform(-2.0, 2.0)) / scale),
            )
        )
    return Exponential(_coef(rng, 0.1, 2.0), float(rng.uniform(-2.0, 2.0)) / scale)


def sample_certified(tag: ClassTag, domain_upper: float, seed) -> CertifiedFunction:
    """Draw a random function that belongs to the class described by ``tag``.

    ``seed`` may be an int or a ``numpy.random.Generator``.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    upper = float(domain_upper)
    kind = tag.kind

    if kind in ("Convex", "MConvex") and (tag.m is None or tag.m == 1.0):
        fam = _convex_family(rng, upper, zero_at_origin=False)
    elif kind in ("MConvex", "Starshaped"):
        # convex with f(0) = 0 is starshaped, hence m-convex for every m
        fam = _convex_family(rng, upper, zero_at_origin=True)
    elif kind == "SConvexSecond":
        fam = _s_convex_family(rng, tag.s, upper)
    elif kind == "LogConvex":
        fam = _log_convex_family(rng, upper)
    elif kind == "AlphaMConvex":
        return _sample_alpha_m(tag, upper, rng)
    else:  # pragma: no cover
        raise ValueError(kind)
    return CertifiedFunction(FunctionSpec(fam, upper), frozenset({tag}), "constructive")


def _sample_alpha_m(tag: ClassTag, upper: float, rng) -> CertifiedFunction:
    alpha, m = tag.alpha, tag.m
    if alpha == 1.0:
        inner = sample_certified(ClassTag.m_convex(m), upper, rng)
        return CertifiedFunction(inner.spec, frozenset({tag}), "constructive")
    if m == 1.0:
        # with alpha < 1 and m = 1 only constants survive the t -> 0 limit
        return CertifiedFunction(FunctionSpec(Constant(_coef(rng)), upper), frozenset({tag}), "constructive")
    # steep normalized powers c * (x/upper)**k; raise k until the grid check passes
    k = float(rng.uniform(1.5, 4.0))
    c = _coef(rng)
    for _ in range(_MAX_RETRIES):
        if k > _MAX_POWER:
            break
        spec = FunctionSpec(Power(c / upper**k, k), upper)
        if check_class(spec, tag, upper, CERT_GRID):
            return CertifiedFunction(spec, frozenset({tag}), f"empirical:{CERT_GRID}")
        k *= 1.5
    raise CertificationError(f"could not generate a function certified as {tag}")
