"""Hadamard transform with the 1/M forward, unit inverse scaling.

``ht(X)[i] = (1/M) sum_j X[j] h(i, j)`` and ``iht(Xt)[j] = sum_i Xt[i] h(i, j)``
with ``h(i, j) = (-1)**popcount(i & j)`` (natural, not sequency, order).
"""

from __future__ import annotations

import numpy as np

from .constellation import bits_per_symbol


def popcount(x):
    x = np.asarray(x, dtype=np.int64)
    count = np.zeros_like(x)
    while np.any(x):
        count += x & 1
        x = x >> 1
    return count


def h_coeff(i, j, m: int | None = None):
    """Sign (+1/-1) of the Hadamard coefficient for labels i and j."""
    if m is not None:
        M = 1 << m
        if np.any(np.asarray(i) < 0) or np.any(np.asarray(i) >= M) \
                or np.any(np.asarray(j) < 0) or np.any(np.asarray(j) >= M):
            raise ValueError(f"indices must lie in [0, {M})")
    s = 1 - 2 * (popcount(np.bitwise_and(i, j)) & 1)
    return int(s) if np.ndim(s) == 0 else s


def hadamard_matrix(M: int) -> np.ndarray:
    """M x M matrix of h(i, j)."""
    bits_per_symbol(M)
    i = np.arange(M)
    return h_coeff(i[:, None], i[None, :]).astype(float)


def _fwht(X: np.ndarray) -> np.ndarray:
    """Unnormalized butterfly: returns H @ X in O(M log M)."""
    Y = np.array(X, dtype=float, copy=True)
    M = Y.shape[0]
    h = 1
    while h < M:
        Y = Y.reshape(M // (2 * h), 2, h, *Y.shape[1:])
        a, b = Y[:, 0].copy(), Y[:, 1]
        Y[:, 0] += b
        Y[:, 1] = a - b
        Y = Y.reshape(M, *Y.shape[3:])
        h *= 2
    return Y


def _rows(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 0:
        raise ValueError("expected a vector or matrix")
    bits_per_symbol(X.shape[0])
    return X


def ht(X) -> np.ndarray:
    """Hadamard transform; row 0 is the uniformly weighted mean of X."""
    X = _rows(X)
    return _fwht(X) / X.shape[0]


def iht(Xt) -> np.ndarray:
    """Inverse of :func:`ht`."""
    return _fwht(_rows(Xt))


def ht_naive(X) -> np.ndarray:
    """O(M^2) reference: explicit matrix product with the sign matrix."""
    X = _rows(X)
    return hadamard_matrix(X.shape[0]) @ X / X.shape[0]
