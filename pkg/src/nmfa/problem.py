"""Ising problem representation and the arithmetic everything else builds on.

A problem is the pair (h, J): local fields h_i and symmetric couplings J_ij
over n spins.  Discrete configurations take values in {-1, +1}; the solver's
analog spins live in [-1, 1].  Both are plain float64 numpy arrays here.
"""

import numpy as np
import scipy.sparse as sp

# Problems denser than this fraction of all pairs get a dense matrix for
# the mean-field product; everything else goes through CSR.
DENSE_THRESHOLD = 0.5


class IsingProblem:
    """Immutable coupling structure: n spins, fields h, couplers (i, j, w).

    Couplers are unordered pairs, each stored once with i < j.  Row access
    (``neighbors``) is symmetric: if row i contains (j, w) then row j
    contains (i, w).  All arrays are frozen after construction, so instances
    can be shared freely across threads.
    """

    def __init__(self, n, couplers=(), h=None):
        n = int(n)
        if n < 1:
            raise ValueError(f"spin count must be positive, got {n}")
        self.n = n

        if h is None:
            hv = np.zeros(n)
        else:
            hv = np.asarray(h, dtype=np.float64).copy()
            if hv.shape != (n,):
                raise ValueError(f"h must have length {n}, got shape {hv.shape}")
            if not np.all(np.isfinite(hv)):
                raise ValueError("h contains non-finite entries")
        self.h = hv

        arr = np.asarray(couplers, dtype=np.float64)
        if arr.size == 0:
            arr = np.empty((0, 3))
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise ValueError("couplers must be a sequence of (i, j, w) triples")

        ii = arr[:, 0]
        jj = arr[:, 1]
        ww = arr[:, 2].copy()
        if not (np.all(ii == np.floor(ii)) and np.all(jj == np.floor(jj))):
            raise ValueError("coupler indices must be integers")
        ii = ii.astype(np.int64)
        jj = jj.astype(np.int64)
        if np.any((ii < 0) | (ii >= n) | (jj < 0) | (jj >= n)):
            raise ValueError(f"coupler index out of range [0, {n})")
        if np.any(ii == jj):
            raise ValueError("self-couplings are not allowed")
        if not np.all(np.isfinite(ww)):
            raise ValueError("coupler weights must be finite")
        if np.any(ww == 0.0):
            raise ValueError("coupler weights must be nonzero")

        # canonical order: i < j, then lexicographic
        lo = np.minimum(ii, jj)
        hi = np.maximum(ii, jj)
        order = np.lexsort((hi, lo))
        lo, hi, ww = lo[order], hi[order], ww[order]
        if lo.size > 1:
            dup = (lo[1:] == lo[:-1]) & (hi[1:] == hi[:-1])
            if np.any(dup):
                k = int(np.flatnonzero(dup)[0])
                raise ValueError(f"duplicate coupler ({lo[k]}, {hi[k]})")

        self.edges_i = lo
        self.edges_j = hi
        self.edge_weights = ww

        # symmetric CSR adjacency, rows sorted by column
        rows = np.concatenate([lo, hi])
        cols = np.concatenate([hi, lo])
        vals = np.concatenate([ww, ww])
        perm = np.lexsort((cols, rows))
        counts = np.bincount(rows, minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        self.csr_indptr = indptr
        self.csr_indices = cols[perm]
        self.csr_weights = vals[perm]

        norm = np.sqrt(self.h**2 + np.bincount(rows, weights=vals**2, minlength=n))
        self._norm = norm
        # field-free isolated spins divide by 1 so their drive is pure noise
        safe = norm.copy()
        safe[safe == 0.0] = 1.0
        self.normalizers_safe = safe

        pairs = n * (n - 1) // 2
        self.density = 0.0 if pairs == 0 else lo.size / pairs
        self.is_dense = self.density > DENSE_THRESHOLD
        if self.is_dense:
            dense = np.zeros((n, n))
            dense[lo, hi] = ww
            dense[hi, lo] = ww
            self.dense_weights = dense
        else:
            self.dense_weights = None
        self._csr = sp.csr_matrix(
            (self.csr_weights, self.csr_indices, self.csr_indptr), shape=(n, n)
        )

        for a in (self.h, self.edges_i, self.edges_j, self.edge_weights,
                  self.csr_indptr, self.csr_indices, self.csr_weights,
                  self._norm, self.normalizers_safe):
            a.flags.writeable = False
        if self.dense_weights is not None:
            self.dense_weights.flags.writeable = False

    @property
    def num_edges(self):
        return int(self.edges_i.size)

    @property
    def w_total(self):
        return float(self.edge_weights.sum())

    def neighbors(self, i):
        """Row access: (indices, weights) of every coupler touching spin i."""
        a, b = self.csr_indptr[i], self.csr_indptr[i + 1]
        return self.csr_indices[a:b], self.csr_weights[a:b]

    def matvec(self, s):
        """Coupling product (J s)_i = sum_j J_ij s_j."""
        if self.is_dense:
            return self.dense_weights @ s
        return self._csr @ s

    def __repr__(self):
        return f"IsingProblem(n={self.n}, edges={self.num_edges})"


def _check_length(problem, v, what):
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (problem.n,):
        raise ValueError(
            f"{what} length {v.shape} does not match problem size {problem.n}"
        )
    return v


def energy(problem, config):
    """Ising energy sum_(i<j) w_ij s_i s_j + sum_i h_i s_i of a +-1 config."""
    c = _check_length(problem, config, "configuration")
    pair = float(np.dot(problem.edge_weights, c[problem.edges_i] * c[problem.edges_j]))
    return pair + float(np.dot(problem.h, c))


def cut_value(problem, config):
    """Total weight of edges cut by the +-1 partition; requires h = 0."""
    if np.any(problem.h != 0.0):
        raise ValueError("cut value is only defined for problems with zero fields")
    c = _check_length(problem, config, "configuration")
    crossed = 1.0 - c[problem.edges_i] * c[problem.edges_j]
    return float(np.dot(problem.edge_weights, crossed)) * 0.5


def mean_field(problem, s):
    """Raw mean field phi_i = h_i + sum_j J_ij s_j (no normalization, no noise)."""
    v = _check_length(problem, s, "spin vector")
    return problem.h + problem.matvec(v)


def normalizers(problem):
    """Per-spin root-mean-square scale sqrt(h_i^2 + sum_j J_ij^2).

    Entries are zero for spins with no field and no couplers; the solver
    substitutes 1 for those internally.
    """
    return problem._norm.copy()


def sign_round(s):
    """Round analog spins to +-1; exact zeros map to +1 for reproducibility."""
    return np.where(np.asarray(s, dtype=np.float64) < 0.0, -1.0, 1.0)
