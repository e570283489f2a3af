"""Pure-Python one-dimensional solvers behind the Orlicz norms.

Every routine receives a list of nonnegative amplitudes normalised so the
largest is 1; the public wrappers in :mod:`orlicz_cosine.seq` undo the
scaling.  ``_kernels.pyx`` mirrors these loops exactly for preset kinds.
"""
import math

INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
K_TOL = 1e-12
LOG_K_TOL = 1e-12
ROOT_RTOL = 1e-15
MAX_DOUBLINGS = 2000
LOG_K_CAP = 700.0


class SolverError(ArithmeticError):
    """A one-dimensional solve failed to bracket or converge."""


def modular(phi, a, scale=1.0):
    total = 0.0
    for x in a:
        total += phi(scale * x)
    return total


def _excess(phi, a, k):
    total = 0.0
    for x in a:
        total += phi(x / k)
    return total - 1.0


def luxemburg(phi, a):
    """Return k with sum(phi(a/k)) = 1, approached from the feasible side."""
    k = 1.0
    if _excess(phi, a, k) > 0.0:
        lo, hi = k, 2.0 * k
        count = 0
        while _excess(phi, a, hi) > 0.0:
            lo, hi = hi, 2.0 * hi
            count += 1
            if count > MAX_DOUBLINGS:
                raise SolverError(f"luxemburg: modular stays above 1 up to k={hi:g}")
    else:
        lo, hi = 0.5 * k, k
        count = 0
        while _excess(phi, a, lo) <= 0.0:
            lo, hi = 0.5 * lo, lo
            count += 1
            if count > MAX_DOUBLINGS:
                raise SolverError(
                    f"luxemburg: modular never reaches 1 (k down to {lo:g}); "
                    "is phi bounded?")
    while hi - lo > K_TOL:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _excess(phi, a, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return hi


def _amemiya_objective(phi, a, u):
    k = math.exp(u)
    return (1.0 + modular(phi, a, k)) / k


def amemiya(phi, a):
    """Minimise (1 + sum(phi(k a))) / k over k > 0; return (minimum, argmin)."""
    ua, ub = -1.0, 0.0
    fa = _amemiya_objective(phi, a, ua)
    fb = _amemiya_objective(phi, a, ub)
    if fb > fa:
        ua, ub, fa, fb = ub, ua, fb, fa
    step = ub - ua
    uc = ub + step
    fc = _amemiya_objective(phi, a, uc)
    while fc < fb and abs(uc) < LOG_K_CAP:
        ua, fa = ub, fb
        ub, fb = uc, fc
        step *= 2.0
        uc = ub + step
        fc = _amemiya_objective(phi, a, uc)
    lo, hi = (ua, uc) if ua < uc else (uc, ua)
    x1 = hi - INV_GOLDEN * (hi - lo)
    x2 = lo + INV_GOLDEN * (hi - lo)
    f1 = _amemiya_objective(phi, a, x1)
    f2 = _amemiya_objective(phi, a, x2)
    while hi - lo > LOG_K_TOL:
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_GOLDEN * (hi - lo)
            f1 = _amemiya_objective(phi, a, x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_GOLDEN * (hi - lo)
            f2 = _amemiya_objective(phi, a, x2)
    if fb < min(f1, f2):
        return fb, math.exp(ub)
    if f1 < f2:
        return f1, math.exp(x1)
    return f2, math.exp(x2)


def inverse(psi, dpsi, level, hint):
    """Solve psi(y) = level for y >= 0 by safeguarded Newton."""
    if level <= 0.0:
        return 0.0
    hi = hint if hint > 1.0 else 1.0
    count = 0
    while psi(hi) < level:
        hi *= 2.0
        count += 1
        if count > MAX_DOUBLINGS:
            raise SolverError(f"inverse: psi stays below {level:g}")
    lo = 0.0
    y = hint if 0.0 < hint < hi else 0.5 * hi
    for _ in range(200):
        r = psi(y) - level
        if r > 0.0:
            hi = y
        elif r < 0.0:
            lo = y
        else:
            return y
        d = dpsi(y)
        y_new = y - r / d if d > 0.0 else -1.0
        if not (lo < y_new < hi):
            y_new = 0.5 * (lo + hi)
        if hi - lo <= ROOT_RTOL * hi or y_new == y:
            return y_new
        y = y_new
    return y


def _pair_value(psi, dpsi, ai, aj, budget, s, hint):
    rest = budget - psi(s)
    if rest <= 0.0:
        return ai * s, 0.0
    t = inverse(psi, dpsi, rest, hint)
    return ai * s + aj * t, t


def _pair_step(psi, dpsi, ai, aj, vi, vj):
    budget = psi(vi) + psi(vj)
    if budget <= 0.0:
        return vi, vj
    smax = inverse(psi, dpsi, budget, vi if vi > vj else vj)
    lo, hi = 0.0, smax
    tol = 1e-12 * (smax if smax > 1.0 else 1.0)
    x1 = hi - INV_GOLDEN * (hi - lo)
    x2 = lo + INV_GOLDEN * (hi - lo)
    g1, t1 = _pair_value(psi, dpsi, ai, aj, budget, x1, vj)
    g2, t2 = _pair_value(psi, dpsi, ai, aj, budget, x2, vj)
    while hi - lo > tol:
        if g1 > g2:
            hi, x2, g2, t2 = x2, x1, g1, t1
            x1 = hi - INV_GOLDEN * (hi - lo)
            g1, t1 = _pair_value(psi, dpsi, ai, aj, budget, x1, t2)
        else:
            lo, x1, g1, t1 = x1, x2, g2, t2
            x2 = lo + INV_GOLDEN * (hi - lo)
            g2, t2 = _pair_value(psi, dpsi, ai, aj, budget, x2, t1)
    if g1 > g2:
        s, t, g = x1, t1, g1
    else:
        s, t, g = x2, t2, g2
    if g > ai * vi + aj * vj:
        return s, t
    return vi, vj


def project(psi, nu):
    """Scale ``nu`` radially onto {sum(psi(nu)) <= 1}."""
    top = max(nu)
    if top <= 0.0:
        nu = [1.0] * len(nu)
        top = 1.0
    unit = [x / top for x in nu]
    k = luxemburg(psi, unit)
    return [x / k for x in unit]


def dual_ascent(psi, dpsi, a, nu0, max_sweeps=100, rtol=1e-13):
    """Pairwise coordinate ascent for max sum(a nu) s.t. sum(psi(nu)) <= 1.

    Returns ``(value, nu)`` with ``nu`` radially projected so that the
    constraint holds in floating point.
    """
    n = len(a)
    nu = project(psi, list(nu0))
    value = sum(ai * vi for ai, vi in zip(a, nu))
    for _ in range(max_sweeps):
        before = value
        for i in range(n):
            for j in range(i + 1, n):
                nu[i], nu[j] = _pair_step(psi, dpsi, a[i], a[j], nu[i], nu[j])
        value = sum(ai * vi for ai, vi in zip(a, nu))
        if value - before <= rtol * value:
            break
    nu = project(psi, nu)
    return sum(ai * vi for ai, vi in zip(a, nu)), nu
