"""Cross-checks between the numba kernels and the pure-numpy fallback."""

import subprocess
import sys

import numpy as np
import pytest

import nmfa
from nmfa import kernels
from nmfa.solver import DEFAULT_SCHEDULE, noise_stream

needs_numba = pytest.mark.skipif(
    kernels.numba_impl is None, reason="numba backend not active"
)


def sparse_inputs(seed, t_f=80):
    p = nmfa.gen_cubic_maxcut(40, seed=seed)
    noise = noise_stream(seed).standard_normal((t_f, p.n)) * 0.15
    temps = DEFAULT_SCHEDULE.temperatures(t_f)
    return p, temps, noise


@needs_numba
def test_anneal_sparse_backends_agree():
    p, temps, noise = sparse_inputs(1)
    args = (p.csr_indptr, p.csr_indices, p.csr_weights, p.h, p.normalizers_safe)
    a, ah, ae = kernels.numba_impl.anneal_sparse(
        *args, np.zeros(p.n), temps, noise.copy(), 0.15, True
    )
    b, bh, be = kernels.numpy_impl.anneal_sparse(
        *args, np.zeros(p.n), temps, noise.copy(), 0.15, True
    )
    assert np.allclose(a, b, rtol=0, atol=1e-10)
    assert np.allclose(ah, bh, rtol=0, atol=1e-10)
    assert np.array_equal(np.sign(a), np.sign(b))
    assert np.array_equal(ae, be)  # integer-weight energies are exact


@needs_numba
def test_anneal_dense_backends_agree():
    p = nmfa.gen_sk(30, seed=2)
    assert p.is_dense
    t_f = 80
    noise = noise_stream(2).standard_normal((t_f, p.n)) * 0.15
    temps = DEFAULT_SCHEDULE.temperatures(t_f)
    args = (p.dense_weights, p.h, p.normalizers_safe)
    a, _, ae = kernels.numba_impl.anneal_dense(
        *args, np.zeros(p.n), temps, noise.copy(), 0.15, True
    )
    b, _, be = kernels.numpy_impl.anneal_dense(
        *args, np.zeros(p.n), temps, noise.copy(), 0.15, True
    )
    assert np.allclose(a, b, rtol=0, atol=1e-10)
    assert np.array_equal(ae, be)


@needs_numba
def test_gray_ground_backends_agree():
    for seed in range(5):
        p = nmfa.gen_sk(12, seed=seed)
        args = (p.csr_indptr, p.csr_indices, p.csr_weights, p.h)
        assert kernels.numba_impl.gray_ground(*args) == kernels.numpy_impl.gray_ground(*args)


def test_env_flag_selects_numpy_backend():
    import os

    code = "import nmfa.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, NMFA_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env
    )
    assert out.stdout.strip() == "numpy"


def test_active_backend_reported():
    assert kernels.BACKEND in ("numba", "numpy")
    assert kernels.anneal_sparse is not None
