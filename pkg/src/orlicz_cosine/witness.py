"""The approximating vectors v_k with v_k -> f and C_{n_k} v_k -> h.

For targets f, h supported in K and a split K = E+ u E-,

    v = f chi_K + 2 T^n(h chi_E+) + 2 S^n(h chi_E-)

and, once n exceeds the separation index of K,

    C_n v = h chi_E+ + h chi_E- + T^n(f)/2 + S^n(f)/2
            + T^2n(h chi_E+) + S^2n(h chi_E-)

with pairwise disjoint supports.  The distances to f and h are therefore
controlled by the norms of the shifted pieces.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import group
from .criteria import SCHEMA, PreconditionError, check_transitive, choose_partition
from .ops import WeightedTranslation
from .seq import FinSupSeq, orlicz_norm
from .young import YoungFunction

BOUND_SLACK = 1e-9
TERM_NAMES = ("h_outside_E", "half_T_f", "half_S_f", "T2n_h_plus", "S2n_h_minus")


class SeparationError(PreconditionError):
    pass


class BoundViolation(ArithmeticError):
    """A measured distance exceeded its triangle-inequality bound."""


def _base_set(f, h, partition):
    K = set(f.support) | set(h.support)
    if partition is not None:
        K |= set(partition[0]) | set(partition[1])
    return frozenset(K)


def _require_separated(op, K, n):
    if not K:
        return
    sep = group.separation_index(K, op.g)
    if n <= sep:
        raise SeparationError(f"n = {n} is not above the separation index of K; "
                              f"smallest admissible n is {sep + 1}")


def _check_partition(K, plus, minus):
    if plus & minus:
        raise ValueError("E+ and E- must be disjoint")
    if not (plus | minus) >= K:
        raise ValueError("E+ u E- must cover the supports of f and h")


def build_vk(op: WeightedTranslation, f: FinSupSeq, h: FinSupSeq, n: int,
             partition: tuple) -> FinSupSeq:
    plus, minus = (group.finite_set(p) for p in partition)
    K = _base_set(f, h, (plus, minus))
    _check_partition(_base_set(f, h, None), plus, minus)
    _require_separated(op, K, n)
    chi = FinSupSeq.indicator(K) if K else FinSupSeq.zero(op.dim)
    return (f.times(chi)
            + 2.0 * op.apply_T(h.restrict(plus), n)
            + 2.0 * op.apply_S(h.restrict(minus), n))


def cosine_expansion(op: WeightedTranslation, f: FinSupSeq, h: FinSupSeq, n: int,
                     partition: tuple) -> list[FinSupSeq]:
    """The six disjointly supported pieces whose sum is C_n v."""
    plus, minus = (group.finite_set(p) for p in partition)
    K = _base_set(f, h, (plus, minus))
    fK = f.restrict(K)
    return [h.restrict(plus), h.restrict(minus),
            0.5 * op.apply_T(fK, n), 0.5 * op.apply_S(fK, n),
            op.apply_T(h.restrict(plus), 2 * n), op.apply_S(h.restrict(minus), 2 * n)]


@dataclass
class WitnessRow:
    n: int
    v: FinSupSeq
    partition: tuple
    dist_to_f: float
    dist_to_h: float
    f_bound_terms: tuple
    bound_terms: tuple

    @property
    def f_bound_total(self) -> float:
        return sum(self.f_bound_terms)

    @property
    def bound_total(self) -> float:
        return sum(self.bound_terms)

    @property
    def tightness(self) -> Optional[float]:
        return self.bound_total / self.dist_to_h if self.dist_to_h > 0 else None

    def to_dict(self):
        return {"n": self.n, "v_k": self.v.to_records(),
                "E_plus": [list(p) for p in sorted(self.partition[0])],
                "E_minus": [list(p) for p in sorted(self.partition[1])],
                "dist_to_f": self.dist_to_f, "dist_to_h": self.dist_to_h,
                "f_bound_terms": list(self.f_bound_terms),
                "f_bound_total": self.f_bound_total,
                "bound_terms": dict(zip(TERM_NAMES, self.bound_terms)),
                "bound_total": self.bound_total, "tightness": self.tightness}


@dataclass
class WitnessTrace:
    f: FinSupSeq
    h: FinSupSeq
    g: tuple
    phi: str
    weight: str
    strategy: str
    rows: list = field(default_factory=list)

    def to_dict(self):
        return {"schema": SCHEMA, "check": "witness", "g": list(self.g),
                "phi": self.phi, "weight": self.weight, "strategy": self.strategy,
                "f": self.f.to_records(), "h": self.h.to_records(),
                "rows": [r.to_dict() for r in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "dist_to_f", "dist_to_h", *TERM_NAMES, "bound_total"])
        for r in self.rows:
            writer.writerow([r.n, repr(r.dist_to_f), repr(r.dist_to_h),
                             *(repr(t) for t in r.bound_terms), repr(r.bound_total)])
        return buf.getvalue()


def verify_witness(op: WeightedTranslation, phi: YoungFunction, f: FinSupSeq,
                   h: FinSupSeq, ns: Optional[Sequence[int]] = None,
                   strategy: str = "greedy", horizon: int = 80,
                   eps: float = 1e-6) -> WitnessTrace:
    """Build v_k for each n and measure how close it and C_n v_k come.

    ``ns`` defaults to the dyadic subsequence picked by
    :func:`check_transitive` on K = supp f u supp h.
    """
    K = _base_set(f, h, None)
    if ns is None:
        if not K:
            ns = []
        else:
            ns = check_transitive(op, phi, K, horizon, eps, strategy).subsequence
            sep = group.separation_index(K, op.g)
            ns = [n for n in ns if n > sep]
    trace = WitnessTrace(f, h, op.g, phi.name, op.w.name, strategy)
    norm = lambda s: orlicz_norm(phi, s)
    for n in ns:
        _require_separated(op, K, n)
        partition = choose_partition(op, K, n, strategy)
        plus, minus = partition
        v = build_vk(op, f, h, n, partition)
        fK = f.restrict(K)
        f_terms = (norm(f - fK),
                   2.0 * norm(op.apply_T(h.restrict(plus), n)),
                   2.0 * norm(op.apply_S(h.restrict(minus), n)))
        terms = (norm(h - h.restrict(K)),
                 0.5 * norm(op.apply_T(fK, n)),
                 0.5 * norm(op.apply_S(fK, n)),
                 norm(op.apply_T(h.restrict(plus), 2 * n)),
                 norm(op.apply_S(h.restrict(minus), 2 * n)))
        row = WitnessRow(n, v, partition, norm(v - f),
                         norm(op.apply_cosine(v, n) - h), f_terms, terms)
        if row.dist_to_h > row.bound_total + BOUND_SLACK:
            raise BoundViolation(
                f"n={n}: distance {row.dist_to_h!r} exceeds the triangle bound "
                f"{row.bound_total!r}")
        trace.rows.append(row)
    return trace
