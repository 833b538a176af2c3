"""First-order optimality: which shaped constellations reach the Shannon limit.

A constellation ``[X, P(b)]`` with NBC labeling has ``alpha = log2(e)`` (the
-1.59 dB wideband limit) exactly when its mean under ``P`` is zero and the
Hadamard transform of ``X`` vanishes outside rows ``{0, 1, 2, 4, ..., M/2}``,
i.e. ``X`` is a zero-mean linear projection of a hypercube.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constellation import (ConstellationError, as_alphabet, bits_per_symbol,
                            check_bit_probs, nbc, symbol_distribution)
from .hadamard import ht
from .low_gmi import LOG2E, ZeroEnergyError, params, params_ht
from .transform import forward

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class FooReport:
    """Verdict plus the continuous quantities it was derived from.

    ``residual`` is the energy fraction of the HT rows that must vanish and
    ``mean_norm`` is ``|mu|``.  ``ht_mean_offset`` is the norm of
    ``x~_0 - sum_k x~_{2^k} (P(C_k=1) - P(C_k=0))`` (zero for FOO constellations
    in the alternative, HT-only form of the mean condition).
    """

    is_foo: bool
    mean_norm: float
    residual: float
    alpha_gap: float
    alpha: float
    es: float
    ht_mean_offset: float = 0.0
    ht_form_is_foo: bool | None = None

    def to_dict(self) -> dict:
        return {"is_foo": self.is_foo, "mean_norm": self.mean_norm,
                "residual": self.residual, "alpha_gap": self.alpha_gap,
                "alpha": self.alpha, "es": self.es,
                "ht_mean_offset": self.ht_mean_offset,
                "ht_form_is_foo": self.ht_form_is_foo}


def _powers_of_two(m: int) -> np.ndarray:
    return 1 << np.arange(m)


def _off_support(Xt: np.ndarray, m: int, include_zero: bool) -> float:
    keep = np.zeros(Xt.shape[0], dtype=bool)
    keep[_powers_of_two(m)] = True
    if not include_zero:
        keep[0] = True
    return float(np.sum(Xt[~keep] ** 2))


def is_foo_uniform(X, tol: float = DEFAULT_TOL) -> FooReport:
    """FOO test for equally likely symbols: HT supported on powers of two only."""
    X = as_alphabet(X)
    m = bits_per_symbol(X.shape[0])
    p = params_ht(X)
    Xt = ht(X)
    residual = _off_support(Xt, m, include_zero=True) / p.es
    mean_norm = float(np.linalg.norm(p.mu))
    ok = math.sqrt(residual) <= tol
    return FooReport(ok, mean_norm, residual, LOG2E - p.alpha, p.alpha, p.es,
                     mean_norm, ok)


def is_foo(X, b, tol: float = DEFAULT_TOL) -> FooReport:
    """FOO test for ``[X, P(b)]``: zero mean and HT support in {0} and powers of two.

    The mean condition is also checked in its HT-only form; both verdicts are
    reported and ``is_foo`` uses the zero-mean form.
    """
    X = as_alphabet(X)
    m = bits_per_symbol(X.shape[0])
    b = check_bit_probs(b, m)
    p = params(X, b)
    scale = math.sqrt(p.es)
    Xt = ht(X)
    residual = _off_support(Xt, m, include_zero=False) / p.es
    support_ok = math.sqrt(residual) <= tol
    mean_norm = float(np.linalg.norm(p.mu))
    predicted = sum(Xt[1 << k] * ((1 - b[k]) - b[k]) for k in range(m))
    offset = float(np.linalg.norm(Xt[0] - predicted))
    ok = support_ok and mean_norm <= tol * scale
    ht_ok = support_ok and offset <= tol * scale
    return FooReport(ok, mean_norm, residual, LOG2E - p.alpha, p.alpha, p.es,
                     offset, ht_ok)


def is_foo_via_transform(X, b, tol: float = DEFAULT_TOL) -> FooReport:
    """Uniform-distribution FOO test applied to the transformed alphabet."""
    return is_foo_uniform(forward(as_alphabet(X), b), tol)


def translate_to_zero_mean(X, b) -> np.ndarray:
    """Shift the alphabet by its mean under ``P(b)``."""
    X = as_alphabet(X)
    P = symbol_distribution(b, bits_per_symbol(X.shape[0]))
    return X - P @ X


def hypercube_projection(V, b=None) -> np.ndarray:
    """Alphabet ``x_i = sum_k (-1)**(1 - n_ik) v_k`` shifted to zero mean under ``P(b)``.

    ``V`` has one row per label bit (rows may be zero).  The result is FOO
    for the given bit probabilities (uniform if ``b`` is None).
    """
    V = np.asarray(V, dtype=float)
    if V.ndim == 1:
        V = V[:, None]
    if V.ndim != 2 or V.shape[0] < 1:
        raise ConstellationError("V must be an m x N matrix")
    m = V.shape[0]
    signs = 2.0 * nbc(m) - 1.0
    X = signs @ V
    if b is None:
        return X - X.mean(axis=0)
    return translate_to_zero_mean(X, b)


def ampm_mean(b) -> np.ndarray:
    """Closed-form mean of the 8-AMPM alphabet under ``P(b)``."""
    b = check_bit_probs(b)
    if b.size != 3:
        raise ConstellationError("8-AMPM needs exactly 3 bit probabilities")
    return np.array([1 + 2 * (b[1] - b[0] - b[2]), 2 * (b[0] - b[2])])


__all__ = ["FooReport", "is_foo", "is_foo_uniform", "is_foo_via_transform",
           "translate_to_zero_mean", "hypercube_projection", "ampm_mean",
           "ZeroEnergyError", "DEFAULT_TOL"]
