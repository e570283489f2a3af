"""Pure-Python fallback for the compiled kernels (same signatures)."""
import numpy as np

from . import _scalar, _solvers


def modular(kind, p, a, scale=1.0):
    phi, _ = _scalar.bind(kind, p)
    return _solvers.modular(phi, a.tolist(), scale)


def luxemburg(kind, p, a):
    phi, _ = _scalar.bind(kind, p)
    return _solvers.luxemburg(phi, a.tolist())


def amemiya(kind, p, a):
    phi, _ = _scalar.bind(kind, p)
    return _solvers.amemiya(phi, a.tolist())


def dual_ascent(kind, p, a, nu0, max_sweeps=100, rtol=1e-13):
    psi, dpsi = _scalar.bind(kind, p)
    value, nu = _solvers.dual_ascent(psi, dpsi, a.tolist(), nu0.tolist(),
                                     max_sweeps, rtol)
    return value, np.asarray(nu, dtype=float)
