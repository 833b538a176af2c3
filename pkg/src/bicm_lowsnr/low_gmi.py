"""Low-GMI parameters: mean, energy and the BICM-GMI slope at zero SNR.

``alpha`` is in bit per channel use per unit SNR; ``1/alpha`` is the lowest
Eb/N0 a BICM receiver can reach as the SNR vanishes, so ``alpha <= log2(e)``.
Four independent routes are provided and agree to rounding error:

* :func:`params_uniform` -- signed-sum formula for equally likely symbols
* :func:`params_ht` -- Hadamard-domain form for equally likely symbols
* :func:`params` -- double sum over symbol pairs for product distributions
* :func:`params_via_transform` -- uniform formula on the transformed alphabet
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constellation import (ConstellationError, as_alphabet, bit_prob_table,
                            bits_per_symbol, nbc, symbol_distribution)
from .hadamard import ht
from .transform import forward

LOG2E = math.log2(math.e)


class ZeroEnergyError(ConstellationError):
    """The alphabet has zero average energy so alpha is undefined."""


@dataclass(frozen=True)
class LowGmiParams:
    mu: np.ndarray
    es: float
    alpha: float

    @property
    def alpha_inv_db(self) -> float:
        """Wideband Eb/N0 limit 10 log10(1/alpha) in dB (inf if alpha = 0)."""
        return 10 * math.log10(1 / self.alpha) if self.alpha > 0 else math.inf

    def to_dict(self) -> dict:
        return {"mu": np.asarray(self.mu).tolist(), "es": float(self.es),
                "alpha": float(self.alpha), "alpha_inv_db": self.alpha_inv_db}


def _energy(es: float) -> float:
    if not es > 0:
        raise ZeroEnergyError("average symbol energy is zero; alpha undefined")
    return float(es)


def _signs(m: int) -> np.ndarray:
    """M x m matrix of (-1)**n_{i,k}."""
    return 1.0 - 2.0 * nbc(m)


def params_uniform(X) -> LowGmiParams:
    X = as_alphabet(X)
    M = X.shape[0]
    m = bits_per_symbol(M)
    mu = X.mean(axis=0)
    es = _energy(np.mean(np.sum(X ** 2, axis=1)))
    signed = _signs(m).T @ X  # row k: sum_i (-1)^{n_ik} x_i
    alpha = LOG2E / (M * M * es) * np.sum(signed ** 2)
    return LowGmiParams(mu, es, float(alpha))


def params_ht(X) -> LowGmiParams:
    X = as_alphabet(X)
    m = bits_per_symbol(X.shape[0])
    Xt = ht(X)
    es = _energy(np.sum(Xt ** 2))
    alpha = LOG2E / es * sum(np.sum(Xt[1 << k] ** 2) for k in range(m))
    return LowGmiParams(Xt[0].copy(), es, float(alpha))


def params(X, b) -> LowGmiParams:
    """Low-GMI parameters of ``[X, P(b)]`` from the pairwise double sum."""
    X = as_alphabet(X)
    m = bits_per_symbol(X.shape[0])
    P = symbol_distribution(b, m)
    table = bit_prob_table(b)
    n = nbc(m)
    mu = P @ X
    es = _energy(P @ np.sum(X ** 2, axis=1))
    gram = X @ X.T
    s = _signs(m)
    total = 0.0
    for k in range(m):
        p_own = table[k, n[:, k]]        # P(C_k = n_jk)
        p_flip = table[k, 1 - n[:, k]]   # P(C_k = 1 - n_ik)
        weight = np.outer(s[:, k] * p_flip, s[:, k] / p_own)
        total += np.sum(np.outer(P, P) * gram * weight)
    return LowGmiParams(mu, es, float(LOG2E / es * total))


def params_via_transform(X, b) -> LowGmiParams:
    """Parameters of ``[forward(X, b), uniform]``, equal to those of ``[X, P(b)]``."""
    X = as_alphabet(X)
    return params_uniform(forward(X, b))


def alpha_proof_form(X, b) -> float:
    """alpha from the per-bit squared-norm expression (two norms minus the mean)."""
    X = as_alphabet(X)
    m = bits_per_symbol(X.shape[0])
    P = symbol_distribution(b, m)
    table = bit_prob_table(b)
    n = nbc(m)
    mu = P @ X
    es = _energy(P @ np.sum(X ** 2, axis=1))
    mu2 = float(mu @ mu)
    s = _signs(m)
    total = 0.0
    for k in range(m):
        w = P / np.sqrt(table[k, n[:, k]])
        a = (s[:, k] * w) @ X
        c = w @ X
        total += a @ a + c @ c - 2 * mu2
    return float(LOG2E / (2 * es) * total)


def cm_alpha(X, b) -> float:
    """Zero-SNR slope of the coded-modulation MI: log2(e) (1 - |mu|^2 / Es)."""
    X = as_alphabet(X)
    P = symbol_distribution(b, bits_per_symbol(X.shape[0]))
    mu = P @ X
    es = _energy(P @ np.sum(X ** 2, axis=1))
    return float(LOG2E * (1 - mu @ mu / es))
