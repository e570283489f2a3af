"""Scalar Young functions addressed by an integer kind code.

The compiled kernels dispatch on the same codes, so every formula here has
a line-for-line twin in ``_kernels.pyx``.
"""
import math

ENTROPY = 1   # (1+t) ln(1+t) - t
EXP = 2       # e^t - t - 1
POWER = 3     # t^p / p
SQUARE = 4    # t^2
QSQUARE = 5   # t^2 / 4

INF = math.inf

# below this argument the closed forms lose digits to cancellation
SERIES_CUTOFF = 1e-2


def _entropy(t):
    if t < SERIES_CUTOFF:
        # sum_{k>=2} (-1)^k t^k / (k (k-1))
        total = 0.0
        term = t
        sign = 1.0
        for k in range(2, 11):
            term *= t
            total += sign * term / (k * (k - 1))
            sign = -sign
        return total
    return (1.0 + t) * math.log1p(t) - t


def _exp(t):
    if t < SERIES_CUTOFF:
        total = 0.0
        term = t
        for k in range(2, 11):
            term *= t / k
            total += term
        return total
    try:
        return math.expm1(t) - t
    except OverflowError:
        return INF


def _power(t, p):
    try:
        return t ** p / p
    except OverflowError:
        return INF


def phi(kind, p, t):
    """Evaluate the preset of the given kind at ``t >= 0``."""
    if kind == ENTROPY:
        return _entropy(t)
    if kind == EXP:
        return _exp(t)
    if kind == POWER:
        return _power(t, p)
    if kind == SQUARE:
        return t * t
    if kind == QSQUARE:
        return 0.25 * t * t
    raise ValueError(f"unknown kind {kind}")


def dphi(kind, p, t):
    if kind == ENTROPY:
        return math.log1p(t)
    if kind == EXP:
        try:
            return math.expm1(t)
        except OverflowError:
            return INF
    if kind == POWER:
        try:
            return t ** (p - 1.0)
        except OverflowError:
            return INF
    if kind == SQUARE:
        return 2.0 * t
    if kind == QSQUARE:
        return 0.5 * t
    raise ValueError(f"unknown kind {kind}")


def conjugate_kind(kind, p):
    """Kind code and parameter of the closed-form complementary function."""
    if kind == ENTROPY:
        return EXP, 0.0
    if kind == EXP:
        return ENTROPY, 0.0
    if kind == POWER:
        return POWER, p / (p - 1.0)
    if kind == SQUARE:
        return QSQUARE, 0.0
    if kind == QSQUARE:
        return SQUARE, 0.0
    raise ValueError(f"unknown kind {kind}")


def bind(kind, p):
    """Return ``(phi, dphi)`` closures for one kind."""
    return (lambda t: phi(kind, p, t)), (lambda t: dphi(kind, p, t))
