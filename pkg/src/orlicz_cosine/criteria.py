"""Finite-horizon evidence for transitivity and mixing of cosine sequences.

For a finite K in Z^d the criterion quantities are

    Q_phi(E, n)   = sup_nu sum_{x in E} phi_n(x) |nu(x + ng)|
    Q_tilde(E, n) = sup_nu sum_{x in E} phi~_n(x) |nu(x + ng)|

with the supremum over nu in the unit ball of the complementary modular.
After the change of variable y = x + ng each one is the Orlicz norm of a
finitely supported sequence, which is how they are computed here.

A finite computation cannot certify a limit, so verdicts are graded:
``satisfied_up_to_horizon``, ``violated`` (only on a constant or
nondecreasing positive lower bound) or ``inconclusive``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np

from . import group
from .ops import PHI, PHI_TILDE, WeightedTranslation
from .seq import FinSupSeq, orlicz_norm
from .young import YoungFunction

SCHEMA = "orlicz-cosine/report/1"
EVIDENCE = "numerical evidence"
STRATEGIES = ("all_plus", "all_minus", "greedy")
QUANTITIES = ("Q_phi", "Q_tilde", "Q2_plus", "Q2_minus")
# orbit length per row for each quantity; decay is fitted per unit of it
ORBIT_FACTOR = {"Q_phi": 1, "Q_tilde": 1, "Q2_plus": 2, "Q2_minus": 2}
MONOTONE_SLACK = 1e-12


class Verdict(str, Enum):
    SATISFIED = "satisfied_up_to_horizon"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"

    @property
    def exit_code(self) -> int:
        return {"satisfied_up_to_horizon": 0, "violated": 2, "inconclusive": 3}[self.value]


class PreconditionError(ValueError):
    pass


def _points(E) -> list:
    return [list(p) for p in sorted(E)]


@dataclass
class Row:
    n: int
    Q_phi: float
    Q_tilde: float
    Q2_plus: Optional[float]
    Q2_minus: Optional[float]
    E_plus: frozenset
    E_minus: frozenset

    def worst(self) -> float:
        return max(q for q in (self.Q_phi, self.Q_tilde, self.Q2_plus, self.Q2_minus)
                   if q is not None)

    def to_dict(self):
        return {"n": self.n, "Q_phi": self.Q_phi, "Q_tilde": self.Q_tilde,
                "Q2_plus": self.Q2_plus, "Q2_minus": self.Q2_minus,
                "E_plus": _points(self.E_plus), "E_minus": _points(self.E_minus)}


@dataclass
class CriterionReport:
    check: str
    K: frozenset
    g: tuple
    phi: str
    weight: str
    horizon: int
    eps: float
    strategy: Optional[str]
    separation_index: int
    rows: list
    verdict: Verdict
    decay: dict
    subsequence: list
    n0: Optional[int] = None
    weight_window: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def row(self, n: int) -> Row:
        return self.rows[n - 1]

    def to_dict(self):
        return {
            "schema": SCHEMA, "check": self.check, "evidence": EVIDENCE,
            "K": _points(self.K), "g": list(self.g), "phi": self.phi,
            "weight": self.weight, "horizon": self.horizon, "eps": self.eps,
            "strategy": self.strategy, "separation_index": self.separation_index,
            "weight_window": self.weight_window,
            "rows": [r.to_dict() for r in self.rows],
            "decay": self.decay, "subsequence": self.subsequence, "n0": self.n0,
            "verdict": self.verdict.value, "warnings": self.warnings,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", *QUANTITIES, "partition_size_plus"])
        for r in self.rows:
            writer.writerow([r.n, *(_cell(getattr(r, q)) for q in QUANTITIES),
                             len(r.E_plus)])
        return buf.getvalue()


def _cell(v):
    return "" if v is None else repr(float(v))


# ---------------------------------------------------------------------------
# quantities

def shifted_products(op: WeightedTranslation, E: Iterable, n: int,
                     variant: str) -> FinSupSeq:
    """The sequence x + ng -> (weight product)(x) for x in E."""
    return FinSupSeq({group.translate(x, op.g, n): op.weight_product(x, n, variant)
                      for x in sorted(group.finite_set(E))}, op.dim)


def criterion_quantity(op: WeightedTranslation, phi: YoungFunction, E: Iterable,
                       n: int, variant: str = PHI) -> float:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    E = group.finite_set(E)
    if not E:
        return 0.0
    return orlicz_norm(phi, shifted_products(op, E, n, variant))


def choose_partition(op: WeightedTranslation, K: Iterable, n: int,
                     strategy: str = "greedy") -> tuple[frozenset, frozenset]:
    """Split K into (E+, E-) for the 2n-quantities.

    ``greedy`` sends x to E+ when phi_2n(x) <= phi~_2n(x), ties to E+.
    """
    K = group.finite_set(K)
    if strategy == "all_plus":
        return K, frozenset()
    if strategy == "all_minus":
        return frozenset(), K
    if strategy != "greedy":
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    plus, minus = set(), set()
    for x in K:
        fwd = op.weight_product(x, 2 * n, PHI)
        bwd = op.weight_product(x, 2 * n, PHI_TILDE)
        (plus if fwd <= bwd else minus).add(x)
    return frozenset(plus), frozenset(minus)


# ---------------------------------------------------------------------------
# verdict helpers

def fit_window(horizon: int) -> int:
    return max(8, horizon // 4)


def fit_decay(rows: Sequence[Row], quantity: str) -> Optional[float]:
    """Least-squares geometric ratio of a quantity over the given rows.

    The ratio is per unit of orbit length (n for Q_phi/Q_tilde, 2n for the
    split quantities).  Rows where the quantity is zero or absent are
    skipped; fewer than two usable rows gives ``None``.
    """
    xs, ys = [], []
    for r in rows:
        q = getattr(r, quantity)
        if q is not None and q > 0.0:
            xs.append(ORBIT_FACTOR[quantity] * r.n)
            ys.append(math.log(q))
    if len(xs) < 2:
        return None
    slope = np.polyfit(np.asarray(xs, float), np.asarray(ys, float), 1)[0]
    return float(math.exp(slope))


def _bounded_below(rows: Sequence[Row], quantity: str, floor: float) -> bool:
    vals = [getattr(r, quantity) for r in rows]
    if not vals or min(vals) <= floor:
        return False
    return all(b >= a * (1.0 - MONOTONE_SLACK) for a, b in zip(vals, vals[1:]))


def _violated(rows, sep, eps) -> bool:
    tail = [r for r in rows if r.n > sep]
    return any(_bounded_below(tail, q, 10.0 * eps) for q in ("Q_phi", "Q_tilde"))


def dyadic_subsequence(rows: Sequence[Row]) -> list[int]:
    """In each block [2^j, 2^(j+1)) the n minimising the worst quantity."""
    out = []
    horizon = len(rows)
    lo = 1
    while lo <= horizon:
        block = rows[lo - 1:min(2 * lo, horizon + 1) - 1]
        out.append(min(block, key=lambda r: (r.worst(), r.n)).n)
        lo *= 2
    return out


def _prepare(op, K, horizon, eps):
    K = group.finite_set(K)
    if not K:
        raise PreconditionError("K must be nonempty")
    if eps <= 0:
        raise PreconditionError(f"eps must be positive, got {eps}")
    sep = group.separation_index(K, op.g)
    if horizon <= sep:
        raise PreconditionError(
            f"horizon {horizon} must exceed the separation index: need horizon >= {sep + 1}")
    inf_w, sup_w = op.weight_bounds(K, 2 * horizon, warn=False)
    window = {"n_max": 2 * horizon, "inf": inf_w, "sup": sup_w}
    notes = []
    if sup_w <= 1.0:
        notes.append(f"sup of weight on window is {sup_w:g} <= 1")
    return K, sep, window, notes


# ---------------------------------------------------------------------------
# checks

def check_transitive(op: WeightedTranslation, phi: YoungFunction, K: Iterable,
                     horizon: int = 80, eps: float = 1e-6,
                     strategy: str = "greedy") -> CriterionReport:
    """Evaluate the four transitivity quantities for n = 1..horizon."""
    K, sep, window, notes = _prepare(op, K, horizon, eps)
    rows = []
    for n in range(1, horizon + 1):
        plus, minus = choose_partition(op, K, n, strategy)
        rows.append(Row(
            n=n,
            Q_phi=criterion_quantity(op, phi, K, n, PHI),
            Q_tilde=criterion_quantity(op, phi, K, n, PHI_TILDE),
            Q2_plus=criterion_quantity(op, phi, plus, 2 * n, PHI),
            Q2_minus=criterion_quantity(op, phi, minus, 2 * n, PHI_TILDE),
            E_plus=plus, E_minus=minus))
    tail = rows[-fit_window(horizon):]
    decay = {q: fit_decay(tail, q) for q in QUANTITIES}
    subseq = dyadic_subsequence(rows)
    fitted = [d for d in decay.values() if d is not None]
    if fitted and all(d < 1.0 for d in fitted) and rows[subseq[-1] - 1].worst() < eps:
        verdict = Verdict.SATISFIED
    elif _violated(rows, sep, eps):
        verdict = Verdict.VIOLATED
    else:
        verdict = Verdict.INCONCLUSIVE
    return CriterionReport("transitive", K, op.g, phi.name, op.w.name, horizon, eps,
                           strategy, sep, rows, verdict, decay, subseq,
                           weight_window=window, warnings=notes)


def check_mixing(op: WeightedTranslation, phi: YoungFunction, K: Iterable,
                 horizon: int = 80, eps: float = 1e-6) -> CriterionReport:
    """Full-sequence version: E_n = K and no split, every late n must be small."""
    K, sep, window, notes = _prepare(op, K, horizon, eps)
    rows = [Row(n=n,
                Q_phi=criterion_quantity(op, phi, K, n, PHI),
                Q_tilde=criterion_quantity(op, phi, K, n, PHI_TILDE),
                Q2_plus=None, Q2_minus=None, E_plus=K, E_minus=frozenset())
            for n in range(1, horizon + 1)]
    width = fit_window(horizon)
    decay = {q: fit_decay(rows[-width:], q) for q in ("Q_phi", "Q_tilde")}
    n0 = None
    for r in reversed(rows):
        if r.worst() >= eps:
            break
        n0 = r.n
    if (n0 is not None and n0 <= horizon - width
            and all(d is not None and d < 1.0 for d in decay.values())):
        verdict = Verdict.SATISFIED
    elif _violated(rows, sep, eps):
        verdict = Verdict.VIOLATED
    else:
        verdict = Verdict.INCONCLUSIVE
    subseq = list(range(n0, horizon + 1)) if verdict is Verdict.SATISFIED else []
    return CriterionReport("mixing", K, op.g, phi.name, op.w.name, horizon, eps,
                           None, sep, rows, verdict, decay, subseq, n0=n0,
                           weight_window=window, warnings=notes)


@dataclass
class DirectSumReport:
    per_component: list
    joint_ns: list
    verdict: Verdict
    horizon: int
    eps: float

    def to_dict(self):
        return {"schema": SCHEMA, "check": "direct_sum", "evidence": EVIDENCE,
                "horizon": self.horizon, "eps": self.eps,
                "per_component": [r.to_dict() for r in self.per_component],
                "joint_ns": self.joint_ns, "verdict": self.verdict.value}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["component", "n", *QUANTITIES, "partition_size_plus"])
        for c, rep in enumerate(self.per_component):
            for r in rep.rows:
                writer.writerow([c, r.n, *(_cell(getattr(r, q)) for q in QUANTITIES),
                                 len(r.E_plus)])
        return buf.getvalue()


def check_direct_sum(ops: Sequence[WeightedTranslation], phi: YoungFunction,
                     K: Iterable, horizon: int = 80, eps: float = 1e-6,
                     strategy: str = "greedy") -> DirectSumReport:
    """Transitivity evidence for a finite direct sum of cosine sequences.

    The components must share one subsequence (n_k): the good-n sets of
    the components are intersected, and the intersection must still be
    populated in the last dyadic block [2^j, horizon].
    """
    if not ops:
        raise ValueError("direct sum needs at least one component")
    reports = [check_transitive(op, phi, K, horizon, eps, strategy) for op in ops]
    good = [{r.n for r in rep.rows if r.worst() < eps} for rep in reports]
    joint = sorted(set.intersection(*good))
    if any(rep.verdict is Verdict.VIOLATED for rep in reports):
        verdict = Verdict.VIOLATED
    elif joint and joint[-1] >= 1 << (horizon.bit_length() - 1) and \
            all(rep.verdict is Verdict.SATISFIED for rep in reports):
        verdict = Verdict.SATISFIED
    else:
        verdict = Verdict.INCONCLUSIVE
    return DirectSumReport(reports, joint, verdict, horizon, eps)
