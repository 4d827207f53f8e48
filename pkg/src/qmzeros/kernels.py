"""Hot loops: batched q-series summation and phase increments.

The compiled extension is used when it was built; setting QMZ_PURE_PYTHON=1
forces the numpy implementation.
"""
import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("QMZ_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "compiled"


def eval_series(coeffs, q, cut):
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    q = np.ascontiguousarray(np.ravel(q), dtype=np.complex128)
    return _impl.eval_series(coeffs, q, int(cut))


def phase_increments(values):
    return _impl.phase_increments(np.ascontiguousarray(values, dtype=np.complex128))
