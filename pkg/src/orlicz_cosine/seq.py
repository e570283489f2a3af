"""Finitely supported sequences on Z^d and the two Orlicz-space norms."""
from __future__ import annotations

import math
from typing import Iterable, Mapping, Optional

import numpy as np

from . import _solvers, group
from .kernels import backend
from .young import YoungFunction, closed_form_conjugate, conjugate


class FinSupSeq:
    """An immutable finitely supported function Z^d -> R (or C).

    Zero values are dropped on construction, so ``support`` is exactly the
    set of stored points.  Insertion order is preserved, which keeps norm
    computations bitwise reproducible under translation.
    """

    __slots__ = ("_data", "_dim")

    def __init__(self, data: Optional[Mapping] = None, dim: Optional[int] = None):
        clean = {}
        for point, value in (data or {}).items():
            point = group.element(point)
            if value != 0:
                clean[point] = value
        dims = {len(p) for p in clean}
        if len(dims) > 1:
            raise ValueError(f"mixed dimensions: {sorted(dims)}")
        if dims:
            (d,) = dims
            if dim is not None and dim != d:
                raise ValueError(f"expected dimension {dim}, got {d}")
            dim = d
        self._data = clean
        self._dim = dim

    # construction -------------------------------------------------------

    @classmethod
    def delta(cls, point, value=1.0):
        return cls({group.element(point): value})

    @classmethod
    def indicator(cls, points: Iterable, value=1.0):
        pts = sorted(group.finite_set(points))
        return cls({p: value for p in pts})

    @classmethod
    def zero(cls, dim=None):
        return cls({}, dim)

    # mapping-like access ------------------------------------------------

    @property
    def dim(self):
        return self._dim

    @property
    def support(self) -> frozenset:
        return frozenset(self._data)

    def __getitem__(self, point):
        return self._data.get(group.element(point), 0.0)

    def __len__(self):
        return len(self._data)

    def __bool__(self):
        return bool(self._data)

    def __iter__(self):
        return iter(self._data)

    def items(self):
        return self._data.items()

    def values(self):
        return self._data.values()

    def __eq__(self, other):
        if not isinstance(other, FinSupSeq):
            return NotImplemented
        return self._data == other._data

    def __hash__(self):
        return hash(frozenset(self._data.items()))

    def __repr__(self):
        body = ", ".join(f"{list(p)}: {v!r}" for p, v in sorted(self._data.items()))
        return f"FinSupSeq({{{body}}})"

    # arithmetic ---------------------------------------------------------

    def _combine(self, other, op):
        out = dict(self._data)
        for p, v in other._data.items():
            out[p] = op(out.get(p, 0.0), v)
        for p in self._data:
            if p not in other._data:
                out[p] = op(self._data[p], 0.0)
        return FinSupSeq(out, self._dim or other._dim)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return FinSupSeq({p: -v for p, v in self._data.items()}, self._dim)

    def __mul__(self, c):
        if isinstance(c, FinSupSeq):
            return self.times(c)
        return FinSupSeq({p: c * v for p, v in self._data.items()}, self._dim)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return FinSupSeq({p: v / c for p, v in self._data.items()}, self._dim)

    def times(self, other: "FinSupSeq") -> "FinSupSeq":
        return FinSupSeq({p: v * other._data[p] for p, v in self._data.items()
                          if p in other._data}, self._dim)

    def restrict(self, points: Iterable) -> "FinSupSeq":
        keep = group.finite_set(points)
        return FinSupSeq({p: v for p, v in self._data.items() if p in keep},
                         self._dim)

    def shift(self, offset) -> "FinSupSeq":
        offset = group.element(offset)
        return FinSupSeq({group.add(p, offset): v for p, v in self._data.items()},
                         self._dim)

    def map(self, fn) -> "FinSupSeq":
        return FinSupSeq({p: fn(v) for p, v in self._data.items()}, self._dim)

    def abs(self):
        return self.map(abs)

    @property
    def real(self):
        return self.map(lambda v: float(np.real(v)))

    @property
    def imag(self):
        return self.map(lambda v: float(np.imag(v)))

    def positive_part(self):
        """Pointwise max(f, 0) of a real sequence."""
        return self.map(lambda v: v if v > 0 else 0.0)

    def negative_part(self):
        """Pointwise max(-f, 0), so that f = f+ - f-."""
        return self.map(lambda v: -v if v < 0 else 0.0)

    def max_abs(self) -> float:
        return max((abs(v) for v in self._data.values()), default=0.0)

    # serialisation ------------------------------------------------------

    def to_records(self):
        return [{"point": list(p), "value": _jsonable(v)}
                for p, v in sorted(self._data.items())]

    @classmethod
    def from_records(cls, records):
        data = {}
        for rec in records:
            value = rec["value"]
            if isinstance(value, dict):
                value = complex(value["re"], value["im"])
            data[group.element(rec["point"])] = value
        return cls(data)


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    return float(v)


# ---------------------------------------------------------------------------
# norms

def _amplitudes(f: FinSupSeq):
    a = np.fromiter((abs(v) for v in f.values()), dtype=float, count=len(f))
    scale = float(a.max())
    return np.ascontiguousarray(a / scale), scale


def modular(phi: YoungFunction, f: FinSupSeq) -> float:
    """Sum of phi(|f(x)|) over the support."""
    if not f:
        return 0.0
    if phi.kind is not None:
        a = np.fromiter((abs(v) for v in f.values()), dtype=float, count=len(f))
        return backend.modular(phi.kind, phi.param, a, 1.0)
    return _solvers.modular(phi.fn, [abs(v) for v in f.values()])


def luxemburg_norm(phi: YoungFunction, f: FinSupSeq) -> float:
    """inf{k > 0 : sum phi(|f|/k) <= 1}, by bisection on normalised data."""
    if not f:
        return 0.0
    a, scale = _amplitudes(f)
    if phi.kind is not None:
        k = backend.luxemburg(phi.kind, phi.param, a)
    else:
        k = _solvers.luxemburg(phi.fn, a.tolist())
    return scale * k


def _amemiya(phi, a):
    if phi.kind is not None:
        return backend.amemiya(phi.kind, phi.param, a)
    return _solvers.amemiya(phi.fn, a.tolist())


def orlicz_norm(phi: YoungFunction, f: FinSupSeq) -> float:
    """The dual (Orlicz) norm, via inf_k (1 + sum phi(k|f|)) / k."""
    if not f:
        return 0.0
    a, scale = _amplitudes(f)
    value, _ = _amemiya(phi, a)
    return scale * value


def orlicz_norm_dual_bound(phi: YoungFunction, f: FinSupSeq, trials: int = 4,
                           seed: int = 0, psi: Optional[YoungFunction] = None,
                           max_sweeps: int = 100) -> float:
    """Certified lower bound on the Orlicz norm from the dual side.

    Maximises sum |f| nu over nu >= 0 on the support of f subject to
    sum psi(nu) <= 1, by pairwise coordinate ascent.  Starts: the point
    nu = phi'(k* |f|) at the one-parameter minimiser k*, then ``trials``
    uniform random points.  A candidate counts only if its constraint sum,
    recomputed independently, is at most 1.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not f:
        return 0.0
    if psi is None:
        psi = closed_form_conjugate(phi) or conjugate(phi)
    a, scale = _amplitudes(f)
    _, kstar = _amemiya(phi, a)
    starts = [np.array([phi.deriv(kstar * x) for x in a])]
    rng = np.random.default_rng(seed)
    starts += [rng.uniform(0.05, 1.0, len(a)) for _ in range(trials)]

    best = 0.0
    for nu0 in starts:
        if psi.kind is not None:
            value, nu = backend.dual_ascent(psi.kind, psi.param, a,
                                            np.ascontiguousarray(nu0, dtype=float),
                                            max_sweeps)
        else:
            dpsi = psi.derivative or psi.deriv
            value, nu = _solvers.dual_ascent(psi.fn, dpsi, a.tolist(),
                                             list(nu0), max_sweeps)
        if _solvers.modular(psi.fn, list(nu)) <= 1.0 and value > best:
            best = value
    return scale * best


def holder_pair(f: FinSupSeq, h: FinSupSeq) -> float:
    """sum |f(x) h(x)| over the common support."""
    return math.fsum(abs(v * h[p]) for p, v in f.items() if p in h._data)
