"""Seeded verification campaigns, counterexample search and tightness probes."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from typing import Optional

import numpy as np

from . import bounds as B
from .bounds import BoundReport, HypothesisError, Variant
from .funclib import (
    CERT_GRID,
    CertificationError,
    CertifiedFunction,
    ClassTag,
    Constant,
    FunctionSpec,
    NonNegSum,
    Scale,
    check_class,
    evaluate,
    sample_certified,
)
from .quad import DEFAULT_ATOL, DEFAULT_RTOL, Interval
from .special import DomainError

__all__ = [
    "THEOREM_IDS",
    "VARIANT_THEOREMS",
    "parse_theorem_ids",
    "TheoremCase",
    "CheckOutcome",
    "Counterexample",
    "SweepPlan",
    "Report",
    "TightnessStats",
    "generate_case",
    "run_check",
    "sweep",
    "falsify",
    "tightness",
    "write_atomic",
]

THEOREM_IDS = (
    "HH_LEFT", "HH_RIGHT", "MINK", "RMINK",
    "T3", "T4", "T5", "T6", "T7", "T8", "T9", "T10",
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9",
)  # fmt: skip
# ids whose printed and derived forms differ (C8/C9 coincide but accept both)
VARIANT_THEOREMS = frozenset({"T5", "T6", "T9", "T10", "C5", "C7", "C8", "C9"})
RATIO_THEOREMS = frozenset({"RMINK", "T5", "C5"})

_ALIASES = {
    "HH": ("HH_LEFT", "HH_RIGHT"),
    "HHL": ("HH_LEFT",),
    "HHLEFT": ("HH_LEFT",),
    "HHR": ("HH_RIGHT",),
    "HHRIGHT": ("HH_RIGHT",),
    "MINKOWSKI": ("MINK",),
    "REVERSEMINKOWSKI": ("RMINK",),
}

ENDPOINT_BUMP = 0.1
RECHECK_FACTOR = 10.0


def parse_theorem_ids(text) -> list:
    """Parse ``"T3,thm6,HH"`` style lists; raises ``ValueError`` on unknown ids."""
    items = text.split(",") if isinstance(text, str) else list(text)
    out = []
    for raw in items:
        key = raw.strip().upper().replace("-", "").replace("_", "")
        if not key:
            continue
        if key.startswith("THM"):
            key = "T" + key[3:]
        elif key.startswith("COR"):
            key = "C" + key[3:]
        ids = _ALIASES.get(key) or ((key,) if key in THEOREM_IDS else None)
        if ids is None:
            raise ValueError(f"unknown theorem id {raw.strip()!r}")
        out.extend(i for i in ids if i not in out)
    return out


# ---------------------------------------------------------------------------
# cases


@dataclass(frozen=True)
class TheoremCase:
    theorem_id: str
    variant: str
    params: dict
    f_spec: Optional[FunctionSpec]
    g_spec: Optional[FunctionSpec]
    interval: Interval
    seed: int
    case_id: int = 0

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "theorem_id": self.theorem_id,
            "variant": self.variant,
            "params": {k: float(v) for k, v in sorted(self.params.items())},
            "f_spec": self.f_spec.to_dict() if self.f_spec else None,
            "g_spec": self.g_spec.to_dict() if self.g_spec else None,
            "interval": self.interval.to_dict(),
            "seed": int(self.seed),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TheoremCase":
        return cls(
            theorem_id=d["theorem_id"],
            variant=d["variant"],
            params=dict(d["params"]),
            f_spec=FunctionSpec.from_dict(d["f_spec"]) if d.get("f_spec") else None,
            g_spec=FunctionSpec.from_dict(d["g_spec"]) if d.get("g_spec") else None,
            interval=Interval(**d["interval"]),
            seed=int(d["seed"]),
            case_id=int(d.get("case_id", 0)),
        )

    def describe(self) -> str:
        ps = ", ".join(f"{k}={v:g}" for k, v in sorted(self.params.items()))
        iv = self.interval
        return f"{self.theorem_id}[{self.variant}] ({ps}) on [{iv.a:g}, {iv.b:g}]  f={self.f_spec}  g={self.g_spec}"


def _unit(rng, lo=0.1):
    """Draw from (0, 1]: exactly 1 with probability ENDPOINT_BUMP."""
    if rng.random() < ENDPOINT_BUMP:
        return 1.0
    return float(rng.uniform(lo, 1.0))


def _weight(rng):
    if rng.random() < ENDPOINT_BUMP:
        return 1.0
    return float(rng.uniform(0.0, 1.0))


def _p(rng):
    if rng.random() < ENDPOINT_BUMP:
        return 1.0
    return float(rng.uniform(1.0, 4.0))


def _interval(rng, positive_a=False):
    if not positive_a and rng.random() < 0.25:
        a = 0.0
    else:
        a = float(rng.uniform(0.1 if positive_a else 0.0, 2.0))
    return Interval(a, a + float(rng.uniform(0.2, 3.0)))


def _any_tag(rng):
    pick = rng.integers(0, 3)
    if pick == 0:
        return ClassTag.convex()
    if pick == 1:
        return ClassTag.s_convex(_unit(rng))
    return ClassTag.log_convex()


def _extent(iv: Interval, params: dict) -> float:
    upper = iv.b
    for key in ("m1", "m2"):
        if key in params:
            upper = max(upper, iv.a / params[key])
    return upper


def _draw(tid: str, rng) -> tuple:
    """Parameters, interval and the class tags for f and g."""
    params = {}
    positive_a = tid in RATIO_THEOREMS
    if tid in ("HH_LEFT", "HH_RIGHT"):
        params["s"] = _unit(rng, 0.05)
        tags = (ClassTag.s_convex(params["s"]), None)
    elif tid in ("MINK", "RMINK"):
        params["p"] = _p(rng)
        tags = (_any_tag(rng), _any_tag(rng))
    elif tid in ("T3", "T4", "T5"):
        params["m1"], params["m2"] = _unit(rng), _unit(rng)
        if tid == "T5":
            params["p"] = _p(rng)
        tags = (ClassTag.m_convex(params["m1"]), ClassTag.m_convex(params["m2"]))
    elif tid == "T6":
        params["s1"], params["s2"] = _unit(rng, 0.05), _unit(rng, 0.05)
        tags = (ClassTag.s_convex(params["s1"]), ClassTag.s_convex(params["s2"]))
    elif tid in ("T7", "C6"):
        params["s"] = _unit(rng, 0.05)
        params["alpha"] = 1.0 if tid == "C6" else _weight(rng)
        tags = (ClassTag.s_convex(params["s"]),) * 2
    elif tid == "T8":
        params["alpha"] = _weight(rng)
        tags = (ClassTag.log_convex(),) * 2
    elif tid in ("T9", "T10", "C8", "C9"):
        one = tid in ("C8", "C9")
        params["alpha1"] = 1.0 if one else _unit(rng)
        params["m1"] = _unit(rng)
        params["alpha2"] = 1.0 if one else _unit(rng)
        params["m2"] = _unit(rng)
        tags = (
            ClassTag.alpha_m_convex(params["alpha1"], params["m1"]),
            ClassTag.alpha_m_convex(params["alpha2"], params["m2"]),
        )
    elif tid in ("C1", "C2", "C3", "C4", "C5"):
        tags = (ClassTag.convex(), None if tid == "C4" else ClassTag.convex())
    elif tid == "C7":
        tags = (ClassTag.s_convex(1.0),) * 2
    else:
        raise ValueError(tid)
    return params, _interval(rng, positive_a), tags


def case_seed(plan_seed: int, theorem_id: str, index: int) -> int:
    # the variant is left out so both variants see the same cases
    key = [int(plan_seed) & 0xFFFFFFFF, THEOREM_IDS.index(theorem_id), index]
    return int(np.random.SeedSequence(key).generate_state(1)[0])


def generate_case(theorem_id: str, variant, seed: int, case_id: int = 0) -> TheoremCase:
    """Build the random case determined by ``seed`` for one theorem."""
    variant = Variant.parse(variant).value
    rng = np.random.default_rng(seed)
    params, iv, (ftag, gtag) = _draw(theorem_id, rng)
    upper = _extent(iv, params)
    f = sample_certified(ftag, upper, rng).spec
    if theorem_id == "C4":
        g = FunctionSpec(Constant(1.0), upper)
    elif gtag is None:
        g = None
    else:
        g = sample_certified(gtag, upper, rng).spec
    return TheoremCase(theorem_id, variant, params, f, g, iv, int(seed), case_id)


def hypotheses(case: TheoremCase) -> list:
    """(which, tag, upper) triples that must certify before evaluation."""
    tid, p, iv = case.theorem_id, case.params, case.interval
    if tid in ("HH_LEFT", "HH_RIGHT"):
        return [("f", ClassTag.s_convex(p["s"]), iv.b)]
    if tid in ("MINK", "RMINK"):
        return []
    if tid in ("T3", "T4", "T5"):
        return [
            ("f", ClassTag.m_convex(p["m1"]), max(iv.b, iv.a / p["m1"])),
            ("g", ClassTag.m_convex(p["m2"]), max(iv.b, iv.a / p["m2"])),
        ]
    if tid == "T6":
        return [("f", ClassTag.s_convex(p["s1"]), iv.b), ("g", ClassTag.s_convex(p["s2"]), iv.b)]
    if tid in ("T7", "C6"):
        return [("f", ClassTag.s_convex(p["s"]), iv.b), ("g", ClassTag.s_convex(p["s"]), iv.b)]
    if tid == "T8":
        return [("f", ClassTag.log_convex(), iv.b), ("g", ClassTag.log_convex(), iv.b)]
    if tid in ("T9", "T10", "C8", "C9"):
        a1 = p.get("alpha1", 1.0)
        a2 = p.get("alpha2", 1.0)
        return [
            ("f", ClassTag.alpha_m_convex(a1, p["m1"]), max(iv.b, iv.a / p["m1"])),
            ("g", ClassTag.alpha_m_convex(a2, p["m2"]), max(iv.b, iv.a / p["m2"])),
        ]
    if tid in ("C1", "C2", "C3", "C4", "C5"):
        return [("f", ClassTag.m_convex(1.0), iv.b), ("g", ClassTag.m_convex(1.0), iv.b)]
    if tid == "C7":
        return [("f", ClassTag.s_convex(1.0), iv.b), ("g", ClassTag.s_convex(1.0), iv.b)]
    raise ValueError(tid)


# ---------------------------------------------------------------------------
# checks


@dataclass(frozen=True)
class CheckOutcome:
    case: TheoremCase
    report: Optional[BoundReport]
    wall_time: float
    quad_evaluations: int
    status: str = "checked"  # "checked" | "skipped"
    reason: str = ""

    @property
    def verdict(self) -> str:
        return self.report.verdict if self.report is not None else "Skipped"

    @property
    def violated(self) -> bool:
        return self.report is not None and self.report.violated

    def record(self) -> dict:
        rec = self.case.to_dict()
        rep = self.report
        rec.update(
            status=self.status,
            verdict=self.verdict,
            lhs=rep.lhs if rep else None,
            rhs=rep.rhs if rep else None,
            slack=rep.slack if rep else None,
            tol=rep.tol if rep else None,
            violation=rep.violation if rep else None,
            quad_evaluations=self.quad_evaluations,
            note=(rep.note if rep else self.reason) or self.reason,
        )
        return rec


def _evaluate(case: TheoremCase, f, g, rtol, atol) -> BoundReport:
    tid, p, iv, v = case.theorem_id, case.params, case.interval, case.variant
    kw = dict(rtol=rtol, atol=atol)
    if tid == "HH_LEFT":
        return B.hermite_hadamard_s(f, p["s"], iv, **kw)[0]
    if tid == "HH_RIGHT":
        return B.hermite_hadamard_s(f, p["s"], iv, **kw)[1]
    if tid == "MINK":
        return B.minkowski(f, g, p["p"], iv, **kw)
    if tid == "RMINK":
        return B.reverse_minkowski(f, g, p["p"], iv, **kw)
    if tid == "T3":
        return B.thm3_exponent_product(f, g, p["m1"], p["m2"], iv, **kw)
    if tid == "T4":
        return B.thm4_weighted_product(f, g, p["m1"], p["m2"], iv, **kw)
    if tid == "T5":
        return B.thm5_minkowski_mconvex(f, g, p["p"], p["m1"], p["m2"], iv, variant=v, **kw)
    if tid == "T6":
        return B.thm6_s_exponent_product(f, g, p["s1"], p["s2"], iv, variant=v, **kw)
    if tid == "T7":
        return B.thm7_s_cauchy_product(f, g, p["s"], p["alpha"], iv, **kw)
    if tid == "T8":
        return B.thm8_log_cauchy_product(f, g, p["alpha"], iv, **kw)
    if tid == "T9":
        return B.thm9_alpha_m_exponent_product(f, g, p["alpha1"], p["m1"], p["alpha2"], p["m2"], iv, variant=v, **kw)
    if tid == "T10":
        return B.thm10_alpha_m_weighted_product(f, g, p["alpha1"], p["m1"], p["alpha2"], p["m2"], iv, variant=v, **kw)
    return B.corollary_preset(tid, f, g, iv, variant=v, **p, **kw)


def _certify(case: TheoremCase, grid_density: int):
    specs = {"f": case.f_spec, "g": case.g_spec}
    tags = {"f": set(), "g": set()}
    for which, tag, upper in hypotheses(case):
        spec = specs[which]
        verdict = check_class(spec, tag, upper, grid_density)
        if not verdict:
            raise HypothesisError(f"{which}={spec.family} fails {tag} at x={verdict.x:g}, y={verdict.y:g}, t={verdict.t:g}")
        tags[which].add(tag)
    out = {}
    for which, spec in specs.items():
        out[which] = None if spec is None else CertifiedFunction(spec, frozenset(tags[which]), f"empirical:{grid_density}")
    return out["f"], out["g"]


def run_check(
    case: TheoremCase,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    grid_density: int = CERT_GRID,
    recheck: bool = True,
) -> CheckOutcome:
    """Certify the hypotheses of ``case`` and evaluate its inequality.

    Failed certification yields a skipped outcome.  A violation is
    re-evaluated at 10x tighter quadrature tolerances and only reported if it
    persists.
    """
    start = time.perf_counter()
    if case.f_spec is None:
        return CheckOutcome(case, None, 0.0, 0, "skipped", "no function could be generated")
    try:
        f, g = _certify(case, grid_density)
        rep = _evaluate(case, f, g, rtol, atol)
        evals = rep.evaluations
        if recheck and rep.violated:
            rep = _evaluate(case, f, g, rtol / RECHECK_FACTOR, atol / RECHECK_FACTOR)
            evals += rep.evaluations
    except (HypothesisError, CertificationError, DomainError) as exc:
        return CheckOutcome(case, None, time.perf_counter() - start, 0, "skipped", str(exc))
    return CheckOutcome(case, rep, time.perf_counter() - start, evals)


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class SweepPlan:
    theorems: list
    variants: list = field(default_factory=lambda: ["as-derived"])
    cases: int = 100
    seed: int = 0
    rtol: float = DEFAULT_RTOL
    atol: float = DEFAULT_ATOL
    grid_density: int = CERT_GRID
    workers: int = 1

    def __post_init__(self):
        self.theorems = parse_theorem_ids(self.theorems)
        self.variants = [Variant.parse(v).value for v in self.variants]

    def to_dict(self) -> dict:
        return {
            "theorems": list(self.theorems),
            "variants": list(self.variants),
            "cases": self.cases,
            "seed": self.seed,
            "rtol": self.rtol,
            "atol": self.atol,
            "grid_density": self.grid_density,
        }

    def jobs(self) -> list:
        """(theorem, variant) pairs; theorems without a discrepancy run once."""
        out = []
        for tid in self.theorems:
            vs = self.variants if tid in VARIANT_THEOREMS else ["as-derived"]
            for v in vs:
                if (tid, v) not in out:
                    out.append((tid, v))
        return out


@dataclass
class Report:
    plan: dict
    outcomes: list
    wall_time: float = 0.0
    created: str = ""

    def summary(self) -> dict:
        groups = {}
        for o in self.outcomes:
            key = f"{o.case.theorem_id}/{o.case.variant}"
            s = groups.setdefault(
                key,
                {"cases": 0, "holds": 0, "violations": 0, "inconclusive": 0, "skipped": 0,
                 "min_slack": None, "min_slack_case": None, "quad_evaluations": 0},
            )  # fmt: skip
            s["cases"] += 1
            s["quad_evaluations"] += o.quad_evaluations
            if o.status == "skipped":
                s["skipped"] += 1
                continue
            s[{"Holds": "holds", "ViolatedBy": "violations", "Inconclusive": "inconclusive"}[o.verdict]] += 1
            if o.verdict != "Inconclusive" and (s["min_slack"] is None or o.report.slack < s["min_slack"]):
                s["min_slack"] = o.report.slack
                s["min_slack_case"] = o.case.case_id
        total = {
            k: sum(g[k] for g in groups.values())
            for k in ("cases", "holds", "violations", "inconclusive", "skipped", "quad_evaluations")
        }
        return {"by_theorem": groups, "total": total}

    @property
    def violations(self) -> int:
        return sum(1 for o in self.outcomes if o.violated)

    def payload(self) -> dict:
        """Deterministic part of the report (no timestamps or timings)."""
        return {
            "plan": self.plan,
            "summary": self.summary(),
            "records": [o.record() for o in self.outcomes],
        }

    def to_dict(self) -> dict:
        out = self.payload()
        out["meta"] = {"created": self.created, "wall_time_s": round(self.wall_time, 3)}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for o in self.outcomes:
            writer.writerow(flat_record(o.record()))
        return buf.getvalue()


CSV_COLUMNS = [
    "case_id", "theorem_id", "variant", "status", "verdict",
    "lhs", "rhs", "slack", "tol", "violation",
    "a", "b", "params", "f_spec", "g_spec", "seed", "quad_evaluations", "note",
]  # fmt: skip


def flat_record(rec: dict) -> dict:
    out = {k: rec.get(k) for k in CSV_COLUMNS if k in rec}
    out["a"] = rec["interval"]["a"]
    out["b"] = rec["interval"]["b"]
    for k in ("params", "f_spec", "g_spec"):
        out[k] = json.dumps(rec[k], sort_keys=True)
    return {k: ("" if v is None else v) for k, v in out.items()}


def _run_job(args):
    case, rtol, atol, grid = args
    return run_check(case, rtol, atol, grid)


def _make_case(tid, variant, plan_seed, index):
    seed = case_seed(plan_seed, tid, index)
    try:
        return generate_case(tid, variant, seed, index)
    except CertificationError:
        return TheoremCase(tid, variant, {}, None, None, Interval(0.0, 1.0), seed, index)


def sweep(plan: SweepPlan, progress=None) -> Report:
    """Run every (theorem, variant, case) of ``plan``.

    Outcomes are ordered by theorem, variant and case index regardless of the
    order in which workers finish.
    """
    start = time.perf_counter()
    cases = []
    for tid, variant in plan.jobs():
        for i in range(plan.cases):
            cases.append(_make_case(tid, variant, plan.seed, i))
    args = [(c, plan.rtol, plan.atol, plan.grid_density) for c in cases]
    if plan.workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=plan.workers) as pool:
            outcomes = list(pool.map(_run_job, args, chunksize=8))
    else:
        outcomes = []
        for a in args:
            outcomes.append(_run_job(a))
            if progress is not None:
                progress(outcomes[-1])
    order = {job: k for k, job in enumerate(plan.jobs())}
    outcomes.sort(key=lambda o: (order[(o.case.theorem_id, o.case.variant)], o.case.case_id))
    return Report(
        plan.to_dict(),
        outcomes,
        wall_time=time.perf_counter() - start,
        created=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )


# ---------------------------------------------------------------------------
# falsification


@dataclass(frozen=True)
class Counterexample:
    case: TheoremCase
    violation: float
    shrink_steps: int
    report: Optional[BoundReport] = None

    def to_dict(self) -> dict:
        out = {"case": self.case.to_dict(), "violation": self.violation, "shrink_steps": self.shrink_steps}
        if self.report is not None:
            out.update(lhs=self.report.lhs, rhs=self.report.rhs, slack=self.report.slack, tol=self.report.tol)
        return out


def _with(case: TheoremCase, **changes) -> TheoremCase:
    """Copy of ``case`` with function domains re-fitted to its interval and params."""
    new = replace(case, **changes)
    upper = _extent(new.interval, new.params)
    f = new.f_spec.with_domain(upper) if new.f_spec else None
    g = new.g_spec.with_domain(upper) if new.g_spec else None
    return replace(new, f_spec=f, g_spec=g)


def _simpler_families(spec: FunctionSpec, iv: Interval):
    if spec is None or isinstance(spec.family, Constant):
        return
    yield Constant(1.0)
    mid = float(evaluate(spec, 0.5 * (iv.a + iv.b)))
    if mid > 0 and mid != 1.0:
        yield Constant(mid)
    fam = spec.family
    if isinstance(fam, Scale):
        yield fam.inner
    if isinstance(fam, NonNegSum):
        yield from fam.terms


def _shrink_candidates(case: TheoremCase):
    iv = case.interval
    # structural first: toward constants, then toward sub-terms
    for which in ("f_spec", "g_spec"):
        if case.theorem_id == "C4" and which == "g_spec":
            continue
        spec = getattr(case, which)
        for fam in _simpler_families(spec, iv):
            yield _with(case, **{which: FunctionSpec(fam, spec.domain_upper)})
    # parameters toward the ends of their ranges
    for key, val in sorted(case.params.items()):
        if key == "p":
            targets = [1.0]
        elif key == "alpha":
            targets = [1.0, 0.0]
        else:
            targets = [1.0]
        for t in targets:
            if val != t:
                yield _with(case, params={**case.params, key: t})
    # smaller or simpler interval
    L = iv.length
    if iv.a > 0:
        yield _with(case, interval=Interval(0.0, L))
    if L != 1.0:
        yield _with(case, interval=Interval(iv.a, iv.a + 1.0))
    # halving stops at unit length so counterexamples stay readable
    if L > 1.0:
        yield _with(case, interval=Interval(iv.a, iv.a + 0.5 * L))
        yield _with(case, interval=Interval(iv.a + 0.5 * L, iv.b))


def shrink(case: TheoremCase, outcome: CheckOutcome, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL, max_steps: int = 200):
    """Greedily simplify a violating case while the violation persists."""
    steps = 0
    seen = {json.dumps(case.to_dict(), sort_keys=True)}
    while steps < max_steps:
        for cand in _shrink_candidates(case):
            key = json.dumps(cand.to_dict(), sort_keys=True)
            if key in seen:
                continue
            seen.add(key)
            out = run_check(cand, rtol, atol)
            if out.violated:
                case, outcome = cand, out
                steps += 1
                break
        else:
            break
    return case, outcome, steps


def falsify(theorem_id: str, variant, budget: int, seed: int, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL) -> Optional[Counterexample]:
    """Search up to ``budget`` random cases for a violation and shrink the first hit."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    theorem_id = parse_theorem_ids(theorem_id)[0]
    variant = Variant.parse(variant).value
    for i in range(budget):
        case = _make_case(theorem_id, variant, seed, i)
        out = run_check(case, rtol, atol)
        if out.violated:
            small, sout, steps = shrink(case, out, rtol, atol)
            final = run_check(small, rtol / RECHECK_FACTOR, atol / RECHECK_FACTOR, recheck=False)
            if not final.violated:  # pragma: no cover - shrink only accepts rechecked violations
                small, final, steps = case, out, 0
            return Counterexample(small, final.report.violation, steps, final.report)
    return None


# ---------------------------------------------------------------------------
# tightness


QUANTILES = (0.0, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0)


@dataclass(frozen=True)
class TightnessStats:
    theorem_id: str
    variant: str
    checked: int
    skipped: int
    min_slack: float
    argmin_case: Optional[TheoremCase]
    quantiles: dict
    max_violation: float = 0.0

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "variant": self.variant,
            "checked": self.checked,
            "skipped": self.skipped,
            "min_slack": self.min_slack,
            "argmin_case": self.argmin_case.to_dict() if self.argmin_case else None,
            "quantiles": {f"{q:g}": v for q, v in self.quantiles.items()},
            "max_violation": self.max_violation,
        }


def tightness(theorem_id: str, variant, budget: int, seed: int, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL) -> TightnessStats:
    """Slack distribution of the inequality over ``budget`` random certified cases."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    theorem_id = parse_theorem_ids(theorem_id)[0]
    variant = Variant.parse(variant).value
    slacks, cases, skipped, worst = [], [], 0, 0.0
    for i in range(budget):
        case = _make_case(theorem_id, variant, seed, i)
        out = run_check(case, rtol, atol)
        if out.status == "skipped" or out.verdict == "Inconclusive":
            skipped += 1
            continue
        slacks.append(out.report.slack)
        cases.append(case)
        if out.violated:
            worst = max(worst, out.report.violation)
    if not slacks:
        return TightnessStats(theorem_id, variant, 0, skipped, math.nan, None, {}, 0.0)
    arr = np.asarray(slacks)
    k = int(np.argmin(arr))
    qs = {q: float(np.quantile(arr, q)) for q in QUANTILES}
    return TightnessStats(theorem_id, variant, len(slacks), skipped, float(arr[k]), cases[k], qs, worst)


# ---------------------------------------------------------------------------
# output


def write_atomic(path, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
