"""Seeded generators for the benchmark instance classes.

All generators produce zero-field problems and are deterministic per seed.
Generator streams use a Philox key space disjoint from solver noise, so the
same 64-bit seed can safely drive both.
"""

import numpy as np

from .problem import IsingProblem
from .solver import MASK64

GEN_STREAM_TAG = 1


def _gen_rng(seed):
    key = (GEN_STREAM_TAG << 64) | (int(seed) & MASK64)
    return np.random.Generator(np.random.Philox(key=key))


def _pairs(n):
    """All unordered pairs (i, j), i < j, in lexicographic order."""
    iu = np.triu_indices(n, 1)
    return iu[0].astype(np.int64), iu[1].astype(np.int64)


def gen_sk(n, seed):
    """Fully connected spin glass: every pair coupled with w = +-1, prob 1/2 each."""
    n = int(n)
    if n < 2:
        raise ValueError(f"sk generator needs n >= 2, got {n}")
    ii, jj = _pairs(n)
    rng = _gen_rng(seed)
    w = np.where(rng.random(ii.size) < 0.5, 1.0, -1.0)
    return IsingProblem(n, np.column_stack([ii, jj, w]))


def gen_dense_maxcut(n, p, seed):
    """Each pair carries a +1 coupler independently with probability p."""
    n = int(n)
    p = float(p)
    if n < 2:
        raise ValueError(f"dense generator needs n >= 2, got {n}")
    if not 0.0 < p <= 1.0:
        raise ValueError(f"edge probability must be in (0, 1], got {p}")
    ii, jj = _pairs(n)
    rng = _gen_rng(seed)
    keep = rng.random(ii.size) < p
    ii, jj = ii[keep], jj[keep]
    return IsingProblem(n, np.column_stack([ii, jj, np.ones(ii.size)]))


def gen_cubic_maxcut(n, seed):
    """Random 3-regular graph with +1 couplers, via configuration-model pairing.

    Stubs are shuffled and paired; any self-loop or repeated edge restarts
    the whole pairing, so accepted graphs are exactly 3-regular and simple.
    """
    n = int(n)
    if n < 4 or n % 2 != 0:
        raise ValueError(f"cubic generator needs even n >= 4, got {n}")
    rng = _gen_rng(seed)
    stubs = np.repeat(np.arange(n, dtype=np.int64), 3)
    while True:
        rng.shuffle(stubs)
        a = np.minimum(stubs[0::2], stubs[1::2])
        b = np.maximum(stubs[0::2], stubs[1::2])
        if np.any(a == b):
            continue
        keys = a * n + b
        if np.unique(keys).size != keys.size:
            continue
        return IsingProblem(n, np.column_stack([a, b, np.ones(a.size)]))


def moebius_ladder(n):
    """Even cycle of length n plus chords joining antipodal vertices, all w = +1."""
    n = int(n)
    if n < 6 or n % 2 != 0:
        raise ValueError(f"moebius ladder needs even n >= 6, got {n}")
    cyc_i = np.arange(n, dtype=np.int64)
    cyc_j = (cyc_i + 1) % n
    half = np.arange(n // 2, dtype=np.int64)
    ii = np.concatenate([np.minimum(cyc_i, cyc_j), half])
    jj = np.concatenate([np.maximum(cyc_i, cyc_j), half + n // 2])
    return IsingProblem(n, np.column_stack([ii, jj, np.ones(ii.size)]))


def is_connected(problem):
    """Breadth-first reachability of every spin from spin 0."""
    if problem.n == 1:
        return True
    seen = np.zeros(problem.n, dtype=bool)
    seen[0] = True
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for j in problem.neighbors(i)[0]:
                if not seen[j]:
                    seen[j] = True
                    nxt.append(int(j))
        frontier = nxt
    return bool(seen.all())
