"""Weighted translations on Z^d, their inverses, and cosine operators."""
from __future__ import annotations

import math
import warnings
from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import group
from .seq import FinSupSeq

PHI = "phi"
PHI_TILDE = "phi_tilde"
VARIANTS = (PHI, PHI_TILDE)
LOG_SPACE_ABOVE = 64


class WeightError(ValueError):
    """A weight evaluated to a non-positive or non-finite value."""


class WeakWeightWarning(UserWarning):
    """sup w <= 1 on the inspected window; the criteria cannot hold."""


class Weight:
    """A strictly positive function on Z^d.

    ``fn`` receives the point as a tuple of ints.  Values are checked for
    positivity and finiteness at every evaluation.
    """

    def __init__(self, fn: Callable[[tuple], float], name: str):
        self._fn = fn
        self.name = name

    def __call__(self, x) -> float:
        v = float(self._fn(x))
        if not (v > 0.0 and math.isfinite(v)):
            raise WeightError(f"weight {self.name} has value {v!r} at {list(x)}")
        return v

    def __repr__(self):
        return f"Weight({self.name!r})"

    def bounds(self, points: Iterable) -> tuple[float, float]:
        """(inf, sup) of the weight over a finite window."""
        vals = [self(p) for p in points]
        return min(vals), max(vals)

    @classmethod
    def constant(cls, c: float) -> "Weight":
        c = float(c)
        return cls(lambda x: c, f"{c:g}")

    @classmethod
    def piecewise(cls, below: float, steps: Sequence[tuple[float, float]],
                  name: str | None = None) -> "Weight":
        """Piecewise-constant weight in the first coordinate.

        ``steps`` is a list of ``(threshold, value)``: the value of the
        largest threshold ``<= x[0]`` applies, ``below`` under all of them.
        """
        steps = sorted((float(t), float(v)) for t, v in steps)
        cuts = [t for t, _ in steps]
        vals = [float(below)] + [v for _, v in steps]

        def fn(x):
            return vals[bisect_right(cuts, x[0])]

        if name is None:
            name = "piecewise(" + ";".join(f"{t:g}:{v:g}" for t, v in steps) + \
                f";else:{float(below):g})"
        return cls(fn, name)

    @classmethod
    def paper_step(cls) -> "Weight":
        """1/2 on i >= 0, 3/2 on i < 0."""
        return cls.piecewise(1.5, [(0, 0.5)], name="paper-step")


@dataclass(frozen=True)
class WeightedTranslation:
    """T f = w * (f shifted by g), i.e. (T f)(x) = w(x) f(x - g)."""

    g: tuple
    w: Weight

    def __post_init__(self):
        object.__setattr__(self, "g", group.require_aperiodic(self.g))

    @property
    def dim(self):
        return len(self.g)

    def _check(self, f: FinSupSeq, n: int):
        if n < 0:
            raise ValueError(f"power must be >= 0, got {n}")
        if f.dim is not None and f.dim != self.dim:
            raise ValueError(f"sequence lives in Z^{f.dim}, operator in Z^{self.dim}")

    def weight_product(self, x, n: int, variant: str = PHI) -> float:
        """Forward product w(x+g)...w(x+ng), or 1 / (w(x-g)...w(x-ng)).

        Products of more than 64 factors are accumulated in log space.
        """
        if n < 1:
            raise ValueError(f"weight products need n >= 1, got {n}")
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        x = group.element(x)
        step = 1 if variant == PHI else -1
        pts = (group.translate(x, self.g, step * j) for j in range(1, n + 1))
        if n > LOG_SPACE_ABOVE:
            total = math.fsum(math.log(self.w(p)) for p in pts)
            return math.exp(total if variant == PHI else -total)
        prod = 1.0
        for p in pts:
            prod *= self.w(p)
        return prod if variant == PHI else 1.0 / prod

    def apply_T(self, f: FinSupSeq, n: int = 1) -> FinSupSeq:
        """(T^n f)(x + ng) = phi_n(x) f(x)."""
        self._check(f, n)
        if n == 0:
            return f
        return FinSupSeq({group.translate(x, self.g, n): self.weight_product(x, n) * v
                          for x, v in f.items()}, f.dim)

    def apply_S(self, f: FinSupSeq, n: int = 1) -> FinSupSeq:
        """Inverse power: (S^n f)(x) = f(x + ng) / (w(x+g)...w(x+ng))."""
        self._check(f, n)
        if n == 0:
            return f
        out = {}
        for z, v in f.items():
            # the factors are w(z), w(z-g), ..., w(z-(n-1)g)
            above = group.translate(z, self.g, 1)
            out[group.translate(z, self.g, -n)] = \
                self.weight_product(above, n, PHI_TILDE) * v
        return FinSupSeq(out, f.dim)

    def apply_cosine(self, f: FinSupSeq, n: int = 1) -> FinSupSeq:
        """C_n f = (T^n f + S^n f) / 2."""
        self._check(f, n)
        if n == 0:
            return f
        return 0.5 * self.apply_T(f, n) + 0.5 * self.apply_S(f, n)

    def orbit_window(self, K: Iterable, n_max: int) -> list:
        """Every point x + jg with x in K and |j| <= n_max."""
        pts = set()
        for x in K:
            for j in range(-n_max, n_max + 1):
                pts.add(group.translate(x, self.g, j))
        return sorted(pts)

    def weight_bounds(self, K: Iterable, n_max: int, warn: bool = True):
        """(inf, sup) of w on the orbit window; warns when sup <= 1."""
        lo, hi = self.w.bounds(self.orbit_window(K, n_max))
        if warn and hi <= 1.0:
            warnings.warn(
                f"sup of weight {self.w.name} on the window is {hi:g} <= 1; "
                "the cosine sequence cannot be transitive", WeakWeightWarning,
                stacklevel=2)
        return lo, hi
