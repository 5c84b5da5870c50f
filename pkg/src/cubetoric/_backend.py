"""Kernel backend selection.

The heavy inner loops (pairwise monomial products, reducer search, reduction
expansion) exist twice: jitted in :mod:`cubetoric._kernels_numba` and as
vectorized numpy in :mod:`cubetoric._kernels_numpy`.  The active backend is
chosen once, from ``CUBETORIC_BACKEND`` (``auto``/``numba``/``numpy``), and
can be overridden programmatically with :func:`select_backend` (used by the
benchmark and the test suite).  Both backends produce identical results; see
``benchmarks/bench_backends.py`` for the speed comparison.
"""

from . import _config
from . import _kernels_numpy

_active = None


def select_backend(name: str):
    """Force the kernel backend; returns the selected module."""
    global _active
    name = name.strip().lower()
    if name == "numpy":
        _active = _kernels_numpy
    elif name == "numba":
        from . import _kernels_numba

        _active = _kernels_numba
    elif name == "auto":
        try:
            from . import _kernels_numba

            _active = _kernels_numba
        except ImportError:
            _active = _kernels_numpy
    else:
        raise ValueError(f"unknown backend {name!r}")
    return _active


def kernels():
    """The active kernel module, resolving the environment flag on first use."""
    global _active
    if _active is None:
        select_backend(_config.backend_name())
    return _active
