"""Numba implementations of the hot kernels.

Interface contract (shared with the numpy fallback):

* ``anneal_*`` advance the analog spins ``s`` in place through one noisy
  mean-field sweep per temperature in ``temps``; ``noise[t, i]`` is the
  pre-scaled Gaussian term added to spin i at iteration t, so the caller
  owns the random stream.  When ``record`` is set, the returned histories
  hold the spin vector and the energy of its sign-rounding after every
  iteration; otherwise they are empty.
* ``gray_ground`` enumerates all 2^n configurations and returns the exact
  minimum energy plus the number of configurations attaining it (within an
  absolute tie tolerance of 1e-9).
"""

import math

import numpy as np
from numba import njit

TIE_TOL = 1e-9


@njit(cache=True, nogil=True)
def _rounded_energy_csr(indptr, indices, weights, h, s, r):
    n = s.shape[0]
    for i in range(n):
        r[i] = -1.0 if s[i] < 0.0 else 1.0
    e = 0.0
    for i in range(n):
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            if j > i:
                e += weights[k] * r[i] * r[j]
        e += h[i] * r[i]
    return e


@njit(cache=True, nogil=True)
def anneal_sparse(indptr, indices, weights, h, norm, s, temps, noise, alpha, record):
    n = s.shape[0]
    t_f = temps.shape[0]
    n_rec = t_f if record else 0
    s_hist = np.empty((n_rec, n))
    e_hist = np.empty(n_rec)
    phi = np.empty(n)
    scratch = np.empty(n)
    for t in range(t_f):
        for i in range(n):
            acc = 0.0
            for k in range(indptr[i], indptr[i + 1]):
                acc += weights[k] * s[indices[k]]
            phi[i] = (h[i] + acc) / norm[i] + noise[t, i]
        T = temps[t]
        for i in range(n):
            s[i] = alpha * (-math.tanh(phi[i] / T)) + (1.0 - alpha) * s[i]
        if record:
            for i in range(n):
                s_hist[t, i] = s[i]
            e_hist[t] = _rounded_energy_csr(indptr, indices, weights, h, s, scratch)
    return s, s_hist, e_hist


@njit(cache=True, nogil=True)
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


@njit(cache=True, nogil=True)
def gray_ground(indptr, indices, weights, h):
    n = h.shape[0]
    s = np.full(n, -1.0)
    e = 0.0
    for i in range(n):
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            if j > i:
                e += weights[k] * s[i] * s[j]
        e += h[i] * s[i]
    emin = e
    count = 1
    total = np.int64(1) << n
    for step in range(1, total):
        # Gray code: flip the bit at the number of trailing zeros of step
        v = 0
        k = step
        while k & 1 == 0:
            k >>= 1
            v += 1
        s[v] = -s[v]
        acc = 0.0
        for k in range(indptr[v], indptr[v + 1]):
            acc += weights[k] * s[indices[k]]
        e += 2.0 * s[v] * (h[v] + acc)
        if e < emin - TIE_TOL:
            emin = e
            count = 1
        elif e <= emin + TIE_TOL:
            count += 1
    return emin, count
