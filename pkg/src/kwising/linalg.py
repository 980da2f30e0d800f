"""Dense determinants."""

from __future__ import annotations

import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor

PIVOT_FLOOR = 1e-300


def det(a) -> complex:
    """Determinant by LU with partial pivoting; a pivot below 1e-300 in modulus gives 0."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if n == 0:
        return 1 + 0j
    with warnings.catch_warnings():
        # an exactly singular matrix is an expected answer here
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(a, check_finite=True)
    diag = np.diag(lu)
    if np.min(np.abs(diag)) < PIVOT_FLOOR:
        return 0j
    swaps = int(np.count_nonzero(piv != np.arange(n)))
    # product of moduli can overflow long before the answer does; accumulate in log form
    logabs = np.sum(np.log(np.abs(diag)))
    phase = np.prod(diag / np.abs(diag))
    sign = -1 if swaps % 2 else 1
    return complex(sign * phase * np.exp(logabs))


def row_norm_scale(a) -> float:
    """Hadamard bound: product of row 2-norms, an upper bound on ``|det a|``."""
    a = np.asarray(a, dtype=complex)
    if a.shape[0] == 0:
        return 1.0
    return float(np.prod(np.linalg.norm(a, axis=1)))
