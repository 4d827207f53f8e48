import numpy as np


def eval_series(coeffs, q, cut):
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    q = np.asarray(q, dtype=np.complex128)
    ns, nc = coeffs.shape
    full = np.zeros((ns, q.size), dtype=np.complex128)
    mag = np.zeros((ns, q.size), dtype=np.float64)
    part = None
    qn = np.ones_like(q)
    for n in range(nc):
        col = coeffs[:, n]
        if np.any(col):
            term = col[:, None] * qn[None, :]
            full += term
            mag += np.abs(term)
        if n == cut:
            part = full.copy()
        qn = qn * q
        # subnormal powers are slow and contribute nothing
        qn[np.abs(qn) < 1e-290] = 0
    if part is None:
        part = full.copy()
    return full, part, mag


def phase_increments(values):
    values = np.asarray(values, dtype=np.complex128)
    return np.angle(values[1:] * np.conj(values[:-1]))
