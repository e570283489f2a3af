"""Backend selection for the norm kernels.

The compiled extension is used when it imports; otherwise (or when the
environment variable ``ORLICZ_COSINE_PURE`` is set to a non-empty value)
the pure-Python twin is used.  Both expose ``modular``, ``luxemburg``,
``amemiya`` and ``dual_ascent`` with identical signatures, operating on
contiguous float64 arrays and integer kind codes from ``_scalar``.
"""
import os

from . import _kernels_py

if os.environ.get("ORLICZ_COSINE_PURE"):
    backend = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as backend
        BACKEND = "cython"
    except ImportError:
        backend = _kernels_py
        BACKEND = "python"

python_backend = _kernels_py
