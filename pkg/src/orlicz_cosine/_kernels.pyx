# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the preset Young functions.

Loop structure and constants match ``_solvers.py`` exactly; only the
dispatch on kind codes is static here.
"""
from libc.math cimport log1p, expm1, pow, exp, fabs, sqrt, INFINITY

import numpy as np

from ._solvers import SolverError

cdef int ENTROPY = 1
cdef int EXP = 2
cdef int POWER = 3
cdef int SQUARE = 4
cdef int QSQUARE = 5

cdef double SERIES_CUTOFF = 1e-2
cdef double INV_GOLDEN = (sqrt(5.0) - 1.0) / 2.0
cdef double K_TOL = 1e-12
cdef double LOG_K_TOL = 1e-12
cdef double ROOT_RTOL = 1e-15
cdef int MAX_DOUBLINGS = 2000
cdef double LOG_K_CAP = 700.0


cdef double _phi(int kind, double p, double t) noexcept:
    cdef double total, term, sign
    cdef int k
    if kind == ENTROPY:
        if t < SERIES_CUTOFF:
            total = 0.0
            term = t
            sign = 1.0
            for k in range(2, 11):
                term *= t
                total += sign * term / (k * (k - 1))
                sign = -sign
            return total
        return (1.0 + t) * log1p(t) - t
    if kind == EXP:
        if t < SERIES_CUTOFF:
            total = 0.0
            term = t
            for k in range(2, 11):
                term *= t / k
                total += term
            return total
        return expm1(t) - t
    if kind == POWER:
        return pow(t, p) / p
    if kind == SQUARE:
        return t * t
    return 0.25 * t * t


cdef double _dphi(int kind, double p, double t) noexcept:
    if kind == ENTROPY:
        return log1p(t)
    if kind == EXP:
        return expm1(t)
    if kind == POWER:
        return pow(t, p - 1.0)
    if kind == SQUARE:
        return 2.0 * t
    return 0.5 * t


cdef double _modular(int kind, double p, double[::1] a, double scale) noexcept:
    cdef double total = 0.0
    cdef Py_ssize_t i
    for i in range(a.shape[0]):
        total += _phi(kind, p, scale * a[i])
    return total


cdef double _excess(int kind, double p, double[::1] a, double k) noexcept:
    cdef double total = 0.0
    cdef Py_ssize_t i
    for i in range(a.shape[0]):
        total += _phi(kind, p, a[i] / k)
    return total - 1.0


cdef double _luxemburg(int kind, double p, double[::1] a) except? -1.0:
    cdef double k = 1.0, lo, hi, mid
    cdef int count = 0
    if _excess(kind, p, a, k) > 0.0:
        lo = k
        hi = 2.0 * k
        while _excess(kind, p, a, hi) > 0.0:
            lo = hi
            hi = 2.0 * hi
            count += 1
            if count > MAX_DOUBLINGS:
                raise SolverError(f"luxemburg: modular stays above 1 up to k={hi:g}")
    else:
        lo = 0.5 * k
        hi = k
        while _excess(kind, p, a, lo) <= 0.0:
            hi = lo
            lo = 0.5 * lo
            count += 1
            if count > MAX_DOUBLINGS:
                raise SolverError(
                    f"luxemburg: modular never reaches 1 (k down to {lo:g}); "
                    "is phi bounded?")
    while hi - lo > K_TOL:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _excess(kind, p, a, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return hi


cdef double _objective(int kind, double p, double[::1] a, double u) noexcept:
    cdef double k = exp(u)
    return (1.0 + _modular(kind, p, a, k)) / k


cdef double _inverse(int kind, double p, double level, double hint) except? -1.0:
    cdef double hi, lo, y, r, d, y_new
    cdef int count = 0, it
    if level <= 0.0:
        return 0.0
    hi = hint if hint > 1.0 else 1.0
    while _phi(kind, p, hi) < level:
        hi *= 2.0
        count += 1
        if count > MAX_DOUBLINGS:
            raise SolverError(f"inverse: psi stays below {level:g}")
    lo = 0.0
    y = hint if 0.0 < hint < hi else 0.5 * hi
    for it in range(200):
        r = _phi(kind, p, y) - level
        if r > 0.0:
            hi = y
        elif r < 0.0:
            lo = y
        else:
            return y
        d = _dphi(kind, p, y)
        y_new = y - r / d if d > 0.0 else -1.0
        if not (lo < y_new < hi):
            y_new = 0.5 * (lo + hi)
        if hi - lo <= ROOT_RTOL * hi or y_new == y:
            return y_new
        y = y_new
    return y


cdef double _pair_value(int kind, double p, double ai, double aj, double budget,
                        double s, double hint, double* t_out) except? -1.0:
    cdef double rest = budget - _phi(kind, p, s)
    cdef double t
    if rest <= 0.0:
        t_out[0] = 0.0
        return ai * s
    t = _inverse(kind, p, rest, hint)
    t_out[0] = t
    return ai * s + aj * t


cdef int _pair_step(int kind, double p, double ai, double aj,
                    double* vi, double* vj) except -1:
    cdef double budget = _phi(kind, p, vi[0]) + _phi(kind, p, vj[0])
    cdef double smax, lo, hi, tol, x1, x2, g1, g2, t1 = 0.0, t2 = 0.0
    cdef double s, t, g
    if budget <= 0.0:
        return 0
    smax = _inverse(kind, p, budget, vi[0] if vi[0] > vj[0] else vj[0])
    lo = 0.0
    hi = smax
    tol = 1e-12 * (smax if smax > 1.0 else 1.0)
    x1 = hi - INV_GOLDEN * (hi - lo)
    x2 = lo + INV_GOLDEN * (hi - lo)
    g1 = _pair_value(kind, p, ai, aj, budget, x1, vj[0], &t1)
    g2 = _pair_value(kind, p, ai, aj, budget, x2, vj[0], &t2)
    while hi - lo > tol:
        if g1 > g2:
            hi = x2
            x2 = x1
            g2 = g1
            t2 = t1
            x1 = hi - INV_GOLDEN * (hi - lo)
            g1 = _pair_value(kind, p, ai, aj, budget, x1, t2, &t1)
        else:
            lo = x1
            x1 = x2
            g1 = g2
            t1 = t2
            x2 = lo + INV_GOLDEN * (hi - lo)
            g2 = _pair_value(kind, p, ai, aj, budget, x2, t1, &t2)
    if g1 > g2:
        s = x1
        t = t1
        g = g1
    else:
        s = x2
        t = t2
        g = g2
    if g > ai * vi[0] + aj * vj[0]:
        vi[0] = s
        vj[0] = t
    return 0


cdef int _project(int kind, double p, double[::1] nu) except -1:
    cdef Py_ssize_t i, n = nu.shape[0]
    cdef double top = 0.0, k
    for i in range(n):
        if nu[i] > top:
            top = nu[i]
    if top <= 0.0:
        for i in range(n):
            nu[i] = 1.0
        top = 1.0
    for i in range(n):
        nu[i] = nu[i] / top
    k = _luxemburg(kind, p, nu)
    for i in range(n):
        nu[i] = nu[i] / k
    return 0


def modular(int kind, double p, double[::1] a, double scale=1.0):
    return _modular(kind, p, a, scale)


def luxemburg(int kind, double p, double[::1] a):
    return _luxemburg(kind, p, a)


def amemiya(int kind, double p, double[::1] a):
    cdef double ua = -1.0, ub = 0.0, uc, fa, fb, fc, step, tmp
    cdef double lo, hi, x1, x2, f1, f2
    fa = _objective(kind, p, a, ua)
    fb = _objective(kind, p, a, ub)
    if fb > fa:
        tmp = ua
        ua = ub
        ub = tmp
        tmp = fa
        fa = fb
        fb = tmp
    step = ub - ua
    uc = ub + step
    fc = _objective(kind, p, a, uc)
    while fc < fb and fabs(uc) < LOG_K_CAP:
        ua = ub
        fa = fb
        ub = uc
        fb = fc
        step *= 2.0
        uc = ub + step
        fc = _objective(kind, p, a, uc)
    if ua < uc:
        lo = ua
        hi = uc
    else:
        lo = uc
        hi = ua
    x1 = hi - INV_GOLDEN * (hi - lo)
    x2 = lo + INV_GOLDEN * (hi - lo)
    f1 = _objective(kind, p, a, x1)
    f2 = _objective(kind, p, a, x2)
    while hi - lo > LOG_K_TOL:
        if f1 < f2:
            hi = x2
            x2 = x1
            f2 = f1
            x1 = hi - INV_GOLDEN * (hi - lo)
            f1 = _objective(kind, p, a, x1)
        else:
            lo = x1
            x1 = x2
            f1 = f2
            x2 = lo + INV_GOLDEN * (hi - lo)
            f2 = _objective(kind, p, a, x2)
    if fb < min(f1, f2):
        return fb, exp(ub)
    if f1 < f2:
        return f1, exp(x1)
    return f2, exp(x2)


def dual_ascent(int kind, double p, double[::1] a, double[::1] nu0,
                int max_sweeps=100, double rtol=1e-13):
    cdef Py_ssize_t n = a.shape[0], i, j
    cdef double value = 0.0, before
    cdef int sweep
    out = np.array(nu0, dtype=np.float64, copy=True)
    cdef double[::1] nu = out
    _project(kind, p, nu)
    for i in range(n):
        value += a[i] * nu[i]
    for sweep in range(max_sweeps):
        before = value
        for i in range(n):
            for j in range(i + 1, n):
                _pair_step(kind, p, a[i], a[j], &nu[i], &nu[j])
        value = 0.0
        for i in range(n):
            value += a[i] * nu[i]
        if value - before <= rtol * value:
            break
    _project(kind, p, nu)
    value = 0.0
    for i in range(n):
        value += a[i] * nu[i]
    return value, out
