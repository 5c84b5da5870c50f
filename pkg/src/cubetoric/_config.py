"""Runtime limits and environment knobs.

Two environment variables are honoured:

``CUBETORIC_MAX_N``
    Cube-dimension cap for model construction (default 12, hard cap 16).
    Exactness is never at stake; the cap only bounds runtime and memory,
    since rings have 2**n basis elements.

``CUBETORIC_BACKEND``
    Kernel backend: ``auto`` (default), ``numba`` or ``numpy``.
"""

import os

DEFAULT_MAX_N = 12
HARD_MAX_N = 16

MAX_GENERATORS = 64  # uint8 exponent rows; see gf2poly

ENV_MAX_N = "CUBETORIC_MAX_N"
ENV_BACKEND = "CUBETORIC_BACKEND"


def dimension_cap() -> int:
    """Effective cube-dimension cap (env override, clamped to the hard cap)."""
    raw = os.environ.get(ENV_MAX_N)
    if raw is None:
        return DEFAULT_MAX_N
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_MAX_N} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{ENV_MAX_N} must be >= 1, got {value}")
    return min(value, HARD_MAX_N)


def backend_name() -> str:
    raw = os.environ.get(ENV_BACKEND, "auto").strip().lower()
    if raw not in ("auto", "numba", "numpy"):
        raise ValueError(f"{ENV_BACKEND} must be auto, numba or numpy, got {raw!r}")
    return raw
