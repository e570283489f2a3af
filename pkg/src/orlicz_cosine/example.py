"""End-to-end reproduction of the entropy / step-weight example.

Setup: phi(x) = (1+|x|) ln(1+|x|) - |x|, w = 1/2 on i >= 0 and 3/2 on
i < 0, g = 1, K = {-3..3}.  The pipeline checks the conjugate pair, the
single-point feasibility bound, the explicit geometric upper bounds on the
criterion quantities, and then runs the transitivity, mixing and witness
machinery on the same data.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import group
from .criteria import SCHEMA, Verdict, check_mixing, check_transitive
from .ops import PHI, PHI_TILDE, Weight, WeightedTranslation
from .seq import FinSupSeq
from .witness import verify_witness
from .young import YoungFunction, conjugate, inverse, paper_entropy, paper_exp

DEFAULT_K = tuple(range(-3, 4))
DEFAULT_HORIZON = 80
DEFAULT_EPS = 1e-6
DEFAULT_STRATEGY = "all_plus"
WITNESS_NS = (10, 20, 40, 80)
WITNESS_TARGET = (-1, 0, 1)
CONJUGATE_GRID = np.linspace(0.0, 20.0, 200)
CONJUGATE_RTOL = 1e-8
FEASIBILITY_CAP = 2.0


def conjugate_pair_check(grid=CONJUGATE_GRID, rtol=CONJUGATE_RTOL) -> dict:
    """Numerical conjugate of the entropy function against e^y - y - 1.

    The error is measured relative to max(1, psi(y)): psi reaches 4.9e8 at
    y = 20, where double precision cannot resolve 1e-8 absolutely.
    """
    numeric = conjugate(paper_entropy())
    exact = paper_exp()
    worst_abs = worst_rel = 0.0
    for y in grid:
        a, b = numeric(float(y)), exact(float(y))
        worst_abs = max(worst_abs, abs(a - b))
        worst_rel = max(worst_rel, abs(a - b) / max(1.0, abs(b)))
    return {"points": len(grid), "y_max": float(grid[-1]), "max_abs_error": worst_abs,
            "max_scaled_error": worst_rel, "tolerance": rtol, "ok": worst_rel <= rtol}


def feasibility_check(cap: float = FEASIBILITY_CAP) -> dict:
    """Largest |nu| at a single point with e^|nu| - |nu| - 1 <= 1."""
    t_star = inverse(paper_exp(), 1.0)
    return {"t_star": t_star, "cap": cap, "ok": t_star <= cap}


def _geometric_bounds_apply(op, K):
    pts = sorted(K)
    return (op.w.name == "paper-step" and op.g == (1,)
            and pts[0][0] <= 0 <= pts[-1][0])


def geometric_bounds(op: WeightedTranslation, K, rows) -> dict:
    """Compare each row with the closed-form envelopes of the example.

    With a1 = min K <= 0 <= am = max K and m = |K|:
        Q_phi(n)   <= 2m (1/2)^(n - |a1|) w(a1)^|a1|
        Q_tilde(n) <= 2m (2/3)^(n - |am|) w(am)^-|am|
    and, from the feasibility bound, Q <= 2 * sum of the weight products.
    """
    pts = sorted(K)
    m = len(pts)
    a1, am = pts[0], pts[-1]
    out = {"applicable": _geometric_bounds_apply(op, K), "rows": [], "ok": True}
    for r in rows:
        sum_phi = math.fsum(op.weight_product(x, r.n, PHI) for x in pts)
        sum_tilde = math.fsum(op.weight_product(x, r.n, PHI_TILDE) for x in pts)
        rec = {"n": r.n,
               "Q_phi": r.Q_phi, "feasible_phi": FEASIBILITY_CAP * sum_phi,
               "Q_tilde": r.Q_tilde, "feasible_tilde": FEASIBILITY_CAP * sum_tilde}
        ok = r.Q_phi <= rec["feasible_phi"] and r.Q_tilde <= rec["feasible_tilde"]
        if out["applicable"]:
            rec["envelope_phi"] = (2 * m * 0.5 ** (r.n - abs(a1[0]))
                                   * op.w(a1) ** abs(a1[0]))
            rec["envelope_tilde"] = (2 * m * (2.0 / 3.0) ** (r.n - abs(am[0]))
                                     * op.w(am) ** -abs(am[0]))
            ok = ok and r.Q_phi <= rec["envelope_phi"] and r.Q_tilde <= rec["envelope_tilde"]
        rec["ok"] = ok
        out["ok"] = out["ok"] and ok
        out["rows"].append(rec)
    return out


@dataclass
class ExampleReport:
    checks: dict
    transitive: object
    mixing: object
    witness: object
    verdict: Verdict
    failures: list = field(default_factory=list)

    def to_dict(self):
        return {"schema": SCHEMA, "check": "reproduce_example",
                "verdict": self.verdict.value, "failures": self.failures,
                "conjugate_pair": self.checks["conjugate_pair"],
                "feasibility": self.checks["feasibility"],
                "geometric_bounds": self.checks["geometric_bounds"],
                "witness_convergence": self.checks["witness_convergence"],
                "transitive": self.transitive.to_dict(),
                "mixing": self.mixing.to_dict(),
                "witness": self.witness.to_dict()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        return self.transitive.to_csv()


def _witness_convergence(trace, eps_final=1e-4):
    rows = trace.rows
    f_dec = all(b.dist_to_f < a.dist_to_f for a, b in zip(rows, rows[1:]))
    h_dec = all(b.dist_to_h < a.dist_to_h for a, b in zip(rows, rows[1:]))
    last = rows[-1] if rows else None
    small = last is not None and last.dist_to_f < eps_final and last.dist_to_h < eps_final
    return {"dist_to_f_decreasing": f_dec, "dist_to_h_decreasing": h_dec,
            "final_below": eps_final, "final_small": small,
            "ok": f_dec and h_dec and small}


def reproduce_example(phi: YoungFunction | None = None, weight: Weight | None = None,
                      g=(1,), K=DEFAULT_K, horizon: int = DEFAULT_HORIZON,
                      eps: float = DEFAULT_EPS, strategy: str = DEFAULT_STRATEGY,
                      ns=WITNESS_NS) -> ExampleReport:
    phi = phi or paper_entropy()
    weight = weight or Weight.paper_step()
    op = WeightedTranslation(group.element(g), weight)
    K = group.finite_set(K)

    transitive = check_transitive(op, phi, K, horizon, eps, strategy)
    mixing = check_mixing(op, phi, K, horizon, eps)
    target = FinSupSeq.indicator(
        [group.element(x) for x in WITNESS_TARGET if group.element(x) in K]
        if op.dim == 1 else sorted(K))
    sep = group.separation_index(target.support, op.g)
    trace = verify_witness(op, phi, target, target,
                           [n for n in ns if sep < n <= horizon], strategy)
    checks = {"conjugate_pair": conjugate_pair_check(),
              "feasibility": feasibility_check(),
              "geometric_bounds": geometric_bounds(op, K, transitive.rows),
              "witness_convergence": _witness_convergence(trace)}
    failures = [name for name, c in checks.items() if not c["ok"]]
    if mixing.verdict is not Verdict.SATISFIED:
        failures.append("mixing")

    if transitive.verdict is Verdict.SATISFIED and not failures:
        verdict = Verdict.SATISFIED
    elif transitive.verdict is Verdict.VIOLATED:
        verdict = Verdict.VIOLATED
    else:
        verdict = Verdict.INCONCLUSIVE
    return ExampleReport(checks, transitive, mixing, trace, verdict, failures)
