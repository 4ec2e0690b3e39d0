"""Kernel backend selection.

The numba backend is used when available; set ``NMFA_NO_NUMBA=1`` in the
environment to force the pure-numpy fallback.  Both implementations are
importable directly (``numpy_impl``, ``numba_impl``) so they can be compared
against each other; the module-level names point at the active one.
"""

import os

from . import _kernels_numpy as numpy_impl

_flag = os.environ.get("NMFA_NO_NUMBA", "").strip().lower()
FORCE_NUMPY = _flag in {"1", "true", "yes", "on"}

numba_impl = None
if not FORCE_NUMPY:
    try:
        from . import _kernels_numba as numba_impl
    except ImportError:
        numba_impl = None

if numba_impl is not None:
    BACKEND = "numba"
    _active = numba_impl
else:
    BACKEND = "numpy"
    _active = numpy_impl

anneal_sparse = _active.anneal_sparse
anneal_dense = _active.anneal_dense
gray_ground = _active.gray_ground
