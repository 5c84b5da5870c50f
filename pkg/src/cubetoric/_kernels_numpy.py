"""Pure-numpy implementations of the hot exponent-row kernels.

All kernels operate on C-contiguous ``(k, m)`` uint8 arrays whose rows are
monomial exponent vectors.  Callers guarantee that no exponent addition can
overflow uint8 (checked in :mod:`cubetoric.gf2poly`).  Outputs may contain
duplicate rows; mod-2 cancellation happens in the shared canonicalizer.
"""

import numpy as np

NAME = "numpy"


def pairwise_products(a: np.ndarray, b: np.ndarray, max_weight: int) -> np.ndarray:
    """All row sums a[i] + b[j]; rows heavier than max_weight are dropped.

    ``max_weight < 0`` disables the weight cap.
    """
    m = a.shape[1]
    out = (a[:, None, :] + b[None, :, :]).reshape(-1, m)
    if max_weight >= 0:
        keep = out.sum(axis=1, dtype=np.int32) <= max_weight
        out = out[keep]
    return np.ascontiguousarray(out)


def find_reducer(rows: np.ndarray, leads: np.ndarray) -> np.ndarray:
    """Index of the first lead dividing each row, or -1 if none divides."""
    divisible = (rows[:, None, :] >= leads[None, :, :]).all(axis=2)
    idx = divisible.argmax(axis=1).astype(np.int64)
    idx[~divisible.any(axis=1)] = -1
    return idx


def expand_reducibles(
    rows: np.ndarray,
    idx: np.ndarray,
    leads: np.ndarray,
    tails: np.ndarray,
    tail_start: np.ndarray,
    tail_count: np.ndarray,
) -> np.ndarray:
    """Replace each row by quotient * tail for every tail of its reducer.

    Every ``idx[i]`` must be >= 0.  A reducer with an empty tail contributes
    no rows (the term is killed outright).
    """
    counts = tail_count[idx]
    total = int(counts.sum())
    m = rows.shape[1]
    if total == 0:
        return np.empty((0, m), dtype=np.uint8)
    quotients = rows - leads[idx]
    rep = np.repeat(quotients, counts, axis=0)
    bounds = np.concatenate(([0], np.cumsum(counts)))
    pos = np.arange(total) - np.repeat(bounds[:-1], counts) + np.repeat(tail_start[idx], counts)
    return np.ascontiguousarray(rep + tails[pos])
