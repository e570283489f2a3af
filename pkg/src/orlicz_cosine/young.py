"""Young functions, their complementary functions, and the doubling test."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import _scalar
from ._solvers import INV_GOLDEN

DELTA2_LABEL = "numerical evidence"
VALIDATION_GRID = np.logspace(-8, 8, 512)
# below this point cancellation in user expressions can round phi to 0
POSITIVITY_FLOOR = 1e-4
DIVERGENCE_BOUND = 1e6


class YoungFunctionError(ValueError):
    """A function fails one of the sampled Young-function invariants."""


class DomainError(ValueError):
    pass


class UnboundedConjugateError(ArithmeticError):
    """The supremum defining the complementary function diverges."""


@dataclass(frozen=True)
class YoungFunction:
    """An even convex function vanishing only at the origin.

    ``fn`` is the raw formula; :meth:`eval` applies it to ``|t|``.  Presets
    carry a kernel ``kind`` code so the compiled norm kernels can be used.
    """

    fn: Callable[[float], float]
    name: str
    derivative: Optional[Callable[[float], float]] = None
    kind: Optional[int] = None
    param: float = 0.0
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def eval(self, t: float) -> float:
        if not math.isfinite(t):
            raise DomainError(f"{self.name}: non-finite argument {t!r}")
        return self.fn(abs(t))

    __call__ = eval

    def deriv(self, t: float) -> float:
        """phi'(t) for t >= 0, falling back to a central difference."""
        if self.derivative is not None:
            return self.derivative(t)
        h = 1e-6 * max(1.0, t)
        lo = max(0.0, t - h)
        return (self.fn(t + h) - self.fn(lo)) / (t + h - lo)


def _preset(kind, p, name):
    phi, dphi = _scalar.bind(kind, p)
    # the scalar formulas assume t >= 0; the raw fn must be even too
    return YoungFunction(fn=lambda t: phi(abs(t)), name=name, derivative=dphi,
                         kind=kind, param=p)


def paper_entropy() -> YoungFunction:
    """(1+|x|) ln(1+|x|) - |x|."""
    return _preset(_scalar.ENTROPY, 0.0, "paper-entropy")


def paper_exp() -> YoungFunction:
    """e^|x| - |x| - 1."""
    return _preset(_scalar.EXP, 0.0, "paper-exp")


def power(p: float) -> YoungFunction:
    """|x|^p / p, p > 1."""
    if not p > 1.0:
        raise DomainError(f"power preset needs p > 1, got {p}")
    return _preset(_scalar.POWER, float(p), f"power:{p:g}")


def square() -> YoungFunction:
    return _preset(_scalar.SQUARE, 0.0, "square")


def quarter_square() -> YoungFunction:
    return _preset(_scalar.QSQUARE, 0.0, "quarter-square")


PRESET_NAMES = ("paper-entropy", "paper-exp", "power:p", "square")


def preset(name: str) -> YoungFunction:
    if name == "paper-entropy":
        return paper_entropy()
    if name == "paper-exp":
        return paper_exp()
    if name == "square":
        return square()
    if name == "quarter-square":
        return quarter_square()
    if name.startswith("power:"):
        try:
            p = float(name.split(":", 1)[1])
        except ValueError:
            raise DomainError(f"bad power preset {name!r}") from None
        return power(p)
    raise KeyError(name)


def closed_form_conjugate(phi: YoungFunction) -> Optional[YoungFunction]:
    """The complementary preset when one is known in closed form."""
    if phi.kind is None:
        return None
    kind, p = _scalar.conjugate_kind(phi.kind, phi.param)
    names = {_scalar.ENTROPY: "paper-entropy", _scalar.EXP: "paper-exp",
             _scalar.SQUARE: "square", _scalar.QSQUARE: "quarter-square"}
    name = names.get(kind, f"power:{p:g}")
    return _preset(kind, p, name)


# --------------------------------------------------------------------------
# complementary function

def _golden_max(fn, lo, hi, tol):
    x1 = hi - INV_GOLDEN * (hi - lo)
    x2 = lo + INV_GOLDEN * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    while hi - lo > tol:
        if f1 > f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_GOLDEN * (hi - lo)
            f1 = fn(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_GOLDEN * (hi - lo)
            f2 = fn(x2)
    return (x1, f1) if f1 > f2 else (x2, f2)


def _root_of_derivative(phi, y, x_max):
    """Smallest x >= 0 with phi'(x) >= y, by bisection."""
    dphi = phi.derivative
    if y <= dphi(0.0):
        return 0.0
    hi = 1.0
    while dphi(hi) < y:
        hi *= 2.0
        if hi > x_max:
            raise UnboundedConjugateError(
                f"conjugate of {phi.name} unbounded at y={y:g}: "
                f"phi' < y on [0, {x_max:g}]")
    lo = 0.0 if hi == 1.0 else 0.5 * hi
    while hi - lo > 1e-12 * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if dphi(mid) < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def conjugate(phi: YoungFunction, *, x_max: float = 1e12,
              grid_size: int = 4097) -> YoungFunction:
    """Complementary function psi(y) = sup_{x>=0} (x|y| - phi(x)).

    With a derivative the inner supremum is a monotone root-find of
    phi'(x) = |y|.  Without one, a log-spaced grid on [0, x_max] locates
    the maximiser and golden-section search refines it.
    """
    if phi.derivative is not None:
        def argmax(y):
            return _root_of_derivative(phi, y, x_max)
    else:
        def argmax(y):
            return _grid_argmax(phi, y, x_max, grid_size)

    def psi(y):
        if y == 0.0:
            return 0.0
        x = argmax(y)
        return max(0.0, x * y - phi.fn(x))

    return YoungFunction(fn=psi, name=f"conj({phi.name})", derivative=argmax)


def _grid_argmax(phi, y, x_max, grid_size):
    cache = phi._cache
    key = ("grid", x_max, grid_size)
    if key not in cache:
        xs = np.concatenate(([0.0], np.logspace(-12, math.log10(x_max), grid_size)))
        with np.errstate(over="ignore", invalid="ignore"):
            vals = np.array([_safe(phi.fn, x) for x in xs])
        cache[key] = (xs, vals)
    xs, vals = cache[key]
    with np.errstate(invalid="ignore", over="ignore"):
        gains = xs * y - vals
    gains = np.where(np.isnan(gains), -np.inf, gains)
    i = int(np.argmax(gains))
    if i == len(xs) - 1:
        raise UnboundedConjugateError(
            f"conjugate of {phi.name} unbounded at y={y:g}: "
            f"supremum reaches the grid end x={x_max:g}")
    if i == 0 and gains[1] <= gains[0]:
        return 0.0
    lo, hi = xs[max(i - 1, 0)], xs[i + 1]
    x, g = _golden_max(lambda x: x * y - phi.fn(x), lo, hi, 1e-13 * max(1.0, hi))
    return x if g >= gains[i] else float(xs[i])


def _safe(fn, x):
    try:
        return fn(x)
    except (OverflowError, ArithmeticError, ValueError):
        return math.inf


def inverse(phi: YoungFunction, level: float) -> float:
    """Largest t >= 0 with phi(t) <= level, by bisection."""
    if level <= 0.0:
        return 0.0
    hi = 1.0
    while phi.fn(hi) <= level:
        hi *= 2.0
        if hi > 1e300:
            raise UnboundedConjugateError(f"{phi.name} stays below {level:g}")
    lo = 0.0
    while hi - lo > 1e-15 * hi:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if phi.fn(mid) <= level:
            lo = mid
        else:
            hi = mid
    return lo


# --------------------------------------------------------------------------
# invariants

@dataclass(frozen=True)
class Violation:
    invariant: str
    point: float
    detail: str

    def __str__(self):
        return f"{self.invariant} fails at t={self.point:g}: {self.detail}"


def _close(a, b, rtol=1e-12, atol=1e-14):
    if a == b:
        return True
    return abs(a - b) <= atol + rtol * max(abs(a), abs(b))


def check_invariants(phi: YoungFunction, grid=VALIDATION_GRID) -> list[Violation]:
    """Sample the Young-function axioms and return every violation found."""
    out = []
    fn = phi.fn
    try:
        at0 = fn(0.0)
        pos = [_safe(fn, float(t)) for t in grid]
        neg = [_safe(fn, -float(t)) for t in grid]
    except Exception as exc:  # expression evaluation errors
        return [Violation("evaluation", 0.0, str(exc))]

    if abs(at0) > 1e-15:
        out.append(Violation("phi(0) = 0", 0.0, f"phi(0) = {at0!r}"))
    for t, v in zip(grid, pos):
        if math.isnan(v) or v < -1e-14:
            out.append(Violation("nonnegativity", t, f"phi = {v!r}"))
            break
        if t >= POSITIVITY_FLOOR and v <= 0.0:
            out.append(Violation("vanishes only at 0", t, f"phi = {v!r}"))
            break
    for t, a, b in zip(grid, pos, neg):
        if not _close(a, b):
            out.append(Violation("evenness", t, f"phi(t) = {a!r}, phi(-t) = {b!r}"))
            break

    xs = np.concatenate((-grid[::-1], [0.0], grid))
    vals = neg[::-1] + [at0] + pos
    pairs = [(i, i + 1) for i in range(len(xs) - 1)]
    pairs += [(i, i + 2) for i in range(len(xs) - 2)]
    pairs += [(len(grid) - 1 - i, len(grid) + 1 + i) for i in range(len(grid))]
    for i, j in pairs:
        avg = 0.5 * (vals[i] + vals[j])
        if math.isinf(avg):
            continue
        mid = 0.5 * (xs[i] + xs[j])
        m = _safe(fn, float(mid))
        if m > avg + 1e-14 + 1e-10 * abs(avg):
            out.append(Violation(
                "convexity", float(mid),
                f"phi(mid) = {m!r} > {avg!r} for a={xs[i]:g}, b={xs[j]:g}"))
            break

    for k in range(len(grid) - 1):
        if pos[k + 1] < pos[k] - 1e-14 - 1e-12 * abs(pos[k]):
            out.append(Violation("monotone on [0, inf)", float(grid[k + 1]),
                                 f"{pos[k + 1]!r} < {pos[k]!r}"))
            break
    if not pos[-1] > DIVERGENCE_BOUND:
        out.append(Violation("divergence", float(grid[-1]),
                             f"phi = {pos[-1]!r} <= {DIVERGENCE_BOUND:g}"))
    return out


def validate(phi: YoungFunction) -> YoungFunction:
    problems = check_invariants(phi)
    if problems:
        raise YoungFunctionError(f"{phi.name}: {problems[0]}")
    return phi


# --------------------------------------------------------------------------
# doubling condition

@dataclass(frozen=True)
class Delta2Result:
    satisfied: bool
    constant: float
    refined_constant: float
    grid: tuple
    label: str = DELTA2_LABEL

    def to_dict(self):
        return {"satisfied": self.satisfied, "constant": self.constant,
                "refined_constant": self.refined_constant,
                "grid": list(self.grid), "label": self.label}


def _max_ratio(phi, ts):
    worst = 0.0
    for t in ts:
        t = float(t)
        base = _safe(phi.fn, t)
        if base == 0.0:
            raise YoungFunctionError(f"{phi.name}: phi({t:g}) = 0 for t > 0")
        top = _safe(phi.fn, 2.0 * t)
        ratio = math.inf if math.isinf(top) else top / base
        if ratio > worst:
            worst = ratio
    return worst


def is_delta2(phi: YoungFunction, t_grid=None) -> Delta2Result:
    """Sampled check of phi(2t) <= k phi(t) for all t > 0.

    ``constant`` is the largest ratio on the grid; the verdict requires it
    to be finite and unchanged (to 1e-3 relative) when the grid is doubled
    in density and widened by a decade at each end.
    """
    if t_grid is None:
        t_grid = np.logspace(-6, 6, 512)
    t_grid = np.asarray(t_grid, dtype=float)
    if np.any(t_grid <= 0):
        raise DomainError("t_grid must be strictly positive")
    lo, hi = float(t_grid.min()), float(t_grid.max())
    constant = _max_ratio(phi, t_grid)
    refined = _max_ratio(
        phi, np.logspace(math.log10(lo) - 1, math.log10(hi) + 1, 2 * len(t_grid)))
    ok = (math.isfinite(constant) and math.isfinite(refined)
          and refined <= constant * (1 + 1e-3) + 1e-12)
    return Delta2Result(ok, constant, refined, (lo, hi, len(t_grid)))
