"""Probability-dependent linear transform between shaped and uniform alphabets.

For bit probabilities ``b`` the transform maps an NBC-labeled alphabet ``X``
used with the product distribution ``P`` to an alphabet ``S = G D^{1/2} X``
that, used with equally likely symbols, has the same mean, energy and
low-SNR GMI slope.  ``G`` holds the coefficients

    gamma[i, j] = prod_k ( (-1)**((1 - n_ik) n_jk) sqrt(P(C_k=0))
                         + (-1)**(n_ik (1 - n_jk)) sqrt(P(C_k=1)) )

and ``D = diag(P)``.  ``G.T @ G = M I`` so the transform is invertible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constellation import (ConstellationError, bit_prob_table,
                            check_bit_probs, nbc, symbol_distribution)
from .hadamard import hadamard_matrix, ht, iht


def gamma(b) -> np.ndarray:
    """M x M coefficient matrix, entry [i, j] = gamma_{i,j}."""
    b = check_bit_probs(b)
    m = b.size
    sq0, sq1 = np.sqrt(b), np.sqrt(1.0 - b)
    n = nbc(m).astype(int)
    ni = n[:, None, :]  # row label bits
    nj = n[None, :, :]  # column label bits
    s0 = 1 - 2 * ((1 - ni) * nj)
    s1 = 1 - 2 * (ni * (1 - nj))
    return np.prod(s0 * sq0 + s1 * sq1, axis=2)


def _check_rows(X, b) -> tuple[np.ndarray, np.ndarray, bool]:
    b = check_bit_probs(b)
    X = np.asarray(X, dtype=float)
    vector = X.ndim == 1
    if vector:
        X = X[:, None]
    if X.ndim != 2 or X.shape[0] != 1 << b.size:
        raise ConstellationError(
            f"{X.shape[0] if X.ndim else 0} rows do not match {b.size} bit probabilities")
    return X, b, vector


def forward(X, b) -> np.ndarray:
    """Transformed alphabet ``G D^{1/2} X`` (same shape as X)."""
    X, b, vector = _check_rows(X, b)
    S = gamma(b) @ (np.sqrt(symbol_distribution(b))[:, None] * X)
    return S[:, 0] if vector else S


def inverse(S, b) -> np.ndarray:
    """Inverse transform ``(1/M) D^{-1/2} G^T S``."""
    S, b, vector = _check_rows(S, b)
    M = S.shape[0]
    X = (gamma(b).T @ S) / (M * np.sqrt(symbol_distribution(b)))[:, None]
    return X[:, 0] if vector else X


def psi(b) -> np.ndarray:
    """psi[i] = prod over set bits k of i of 2 sqrt(P(C_k=0) P(C_k=1))."""
    b = check_bit_probs(b)
    f = 2.0 * np.sqrt(b * (1.0 - b))
    n = nbc(b.size)
    return np.prod(np.where(n == 1, f[None, :], 1.0), axis=1)


@dataclass(frozen=True)
class TMatrix:
    """Maps the HT of X to the HT of its transform: ``ht(forward(X)) = t @ ht(X)``."""

    t: np.ndarray
    t_inv: np.ndarray
    psi: np.ndarray


def t_matrix(b) -> TMatrix:
    """Closed-form T and its inverse (both upper triangular).

    ``t[i, j] = psi_i prod_{k: n_ik != n_jk} (P(C_k=0) - P(C_k=n_jk))``
    ``t_inv[i, j] = (1/psi_j) prod_{k: n_ik != n_jk} (P(C_k=n_jk) - P(C_k=0))``
    """
    b = check_bit_probs(b)
    m = b.size
    table = bit_prob_table(b)
    n = nbc(m)
    ps = psi(b)
    ni, nj = n[:, None, :], n[None, :, :]
    p_nj = table[np.arange(m)[None, None, :], np.broadcast_to(nj, (1 << m, 1 << m, m))]
    diff = b[None, None, :] - p_nj
    differ = ni != nj
    core = np.prod(np.where(differ, diff, 1.0), axis=2)
    sign = np.prod(np.where(differ, -1.0, 1.0), axis=2)
    t = ps[:, None] * core
    t_inv = sign * core / ps[None, :]
    return TMatrix(t, t_inv, ps)


def t_matrix_dense(b) -> np.ndarray:
    """``(1/M) H G D^{1/2} H`` computed by explicit matrix products."""
    b = check_bit_probs(b)
    M = 1 << b.size
    H = hadamard_matrix(M)
    return H @ gamma(b) @ np.diag(np.sqrt(symbol_distribution(b))) @ H / M


def ht_of_transform(X, b) -> np.ndarray:
    """HT of the transformed alphabet computed through T (no G product)."""
    X, b, _ = _check_rows(X, b)
    return t_matrix(b).t @ ht(X)


def alphabet_from_transform_ht(St, b) -> np.ndarray:
    """Recover X from the HT of its transform via ``T^{-1}`` and the inverse HT."""
    St, b, _ = _check_rows(St, b)
    return iht(t_matrix(b).t_inv @ St)
