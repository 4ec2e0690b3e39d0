"""Pure-numpy fallback for the hot kernels; same interface as the numba set.

Per-iteration arithmetic matches the numba path operation for operation
(same CSR accumulation order, same BLAS matrix-vector product), so results
agree to the last ulp except for tanh, where numpy's vectorized routine can
differ from libm by one ulp.
"""

import numpy as np
import scipy.sparse as sp

TIE_TOL = 1e-9

_CHUNK_BITS = 16


def anneal_sparse(indptr, indices, weights, h, norm, s, temps, noise, alpha, record):
    n = s.shape[0]
    t_f = temps.shape[0]
    n_rec = t_f if record else 0
    s_hist = np.empty((n_rec, n))
    e_hist = np.empty(n_rec)
    csr = sp.csr_matrix((weights, indices, indptr), shape=(n, n))
    if record:
        ei, ej, ew = _edge_arrays(indptr, indices, weights)
    for t in range(t_f):
        mv = csr @ s
        phi = (h + mv) / norm + noise[t]
        shat = -np.tanh(phi / temps[t])
        s = alpha * shat + (1.0 - alpha) * s
        if record:
            s_hist[t, :] = s
            r = np.where(s < 0.0, -1.0, 1.0)
            e_hist[t] = float(np.dot(ew, r[ei] * r[ej]) + np.dot(h, r))
    return s, s_hist, e_hist


def anneal_dense(J, h, norm, s, temps, noise, alpha, record):
    n = s.shape[0]
    t_f = temps.shape[0]
    n_rec = t_f if record else 0
    s_hist = np.empty((n_rec, n))
    e_hist = np.empty(n_rec)
    for t in range(t_f):
        mv = np.dot(J, s)
        phi = (h + mv) / norm + noise[t]
        shat = -np.tanh(phi / temps[t])
        s = alpha * shat + (1.0 - alpha) * s
        if record:
            s_hist[t, :] = s
            r = np.where(s < 0.0, -1.0, 1.0)
            e_hist[t] = 0.5 * np.dot(r, np.dot(J, r)) + np.dot(h, r)
    return s, s_hist, e_hist


def _edge_arrays(indptr, indices, weights):
    """Upper-triangle (i, j, w) arrays recovered from the symmetric CSR."""
    n = indptr.shape[0] - 1
    rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    keep = indices > rows
    return rows[keep], indices[keep], weights[keep]


def gray_ground(indptr, indices, weights, h):
    n = h.shape[0]
    ei, ej, ew = _edge_arrays(indptr, indices, weights)
    J = np.zeros((n, n))
    J[ei, ej] = ew
    J = J + J.T

    shifts = np.arange(n, dtype=np.uint64)
    total = 1 << n
    chunk = min(total, 1 << _CHUNK_BITS)
    emin = np.inf
    count = 0
    for start in range(0, total, chunk):
        ks = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        bits = (ks[:, None] >> shifts[None, :]) & np.uint64(1)
        S = 1.0 - 2.0 * bits
        E = 0.5 * np.einsum("bi,bi->b", S @ J, S) + S @ h
        cmin = float(E.min())
        if cmin < emin - TIE_TOL:
            emin = cmin
            count = int(np.count_nonzero(E <= emin + TIE_TOL))
        else:
            count += int(np.count_nonzero(E <= emin + TIE_TOL))
    return emin, count
