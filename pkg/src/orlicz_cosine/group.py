"""The groups Z^d under addition, with counting measure.

Elements are plain tuples of ints; finite sets are frozensets of them.
"""
from __future__ import annotations

from numbers import Integral
from typing import Iterable, Sequence, Union

Element = tuple
ElementLike = Union[int, Sequence[int]]


class AperiodicityError(ValueError):
    """Raised for torsion (here: zero) translation elements."""


def element(x: ElementLike) -> Element:
    if isinstance(x, Integral) and not isinstance(x, bool):
        return (int(x),)
    coords = tuple(int(c) for c in x)
    if not coords:
        raise ValueError("group elements need at least one coordinate")
    for c, raw in zip(coords, x):
        if c != raw:
            raise ValueError(f"non-integer coordinate {raw!r}")
    return coords


def finite_set(points: Iterable[ElementLike]) -> frozenset:
    out = frozenset(element(p) for p in points)
    dims = {len(p) for p in out}
    if len(dims) > 1:
        raise ValueError(f"mixed dimensions in set: {sorted(dims)}")
    return out


def identity(dim: int = 1) -> Element:
    return (0,) * dim


def add(x: Element, y: Element) -> Element:
    return tuple(a + b for a, b in zip(x, y))


def neg(x: Element) -> Element:
    return tuple(-a for a in x)


def translate(x: ElementLike, g: ElementLike, n: int) -> Element:
    """x + n*g."""
    x, g = element(x), element(g)
    if len(x) != len(g):
        raise ValueError(f"dimension mismatch: {x} vs {g}")
    return tuple(a + n * b for a, b in zip(x, g))


def translate_set(K: Iterable[Element], g: Element, n: int) -> frozenset:
    return frozenset(tuple(a + n * b for a, b in zip(x, g)) for x in K)


def is_aperiodic(g: ElementLike) -> bool:
    # every nonzero element of Z^d has infinite order and unbounded orbit
    return any(c != 0 for c in element(g))


def require_aperiodic(g: ElementLike) -> Element:
    g = element(g)
    if not is_aperiodic(g):
        raise AperiodicityError(f"g = {list(g)} is a torsion element (the identity)")
    return g


def separation_index(K: Iterable[ElementLike], g: ElementLike) -> int:
    """Least N with K and K +- n g disjoint for every n > N."""
    g = require_aperiodic(g)
    K = finite_set(K)
    if not K:
        raise ValueError("separation index needs a nonempty set")
    dim = len(g)
    if any(len(x) != dim for x in K):
        raise ValueError("dimension mismatch between K and g")
    bound = 0
    for i, gi in enumerate(g):
        if gi:
            coords = [x[i] for x in K]
            bound = max(bound, (max(coords) - min(coords)) // abs(gi) + 1)
    last = 0
    for n in range(1, bound + 1):
        if K & translate_set(K, g, n) or K & translate_set(K, g, -n):
            last = n
    return last
