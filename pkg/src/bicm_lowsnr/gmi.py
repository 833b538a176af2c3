"""CM-MI and BICM-GMI of shaped constellations over the real AWGN channel.

The channel adds independent Gaussian noise of variance ``N0/2`` per real
dimension; the SNR is ``Es/N0`` with ``Es`` the average symbol energy under
the constellation's own input distribution.  Expectations over the noise are
evaluated with an N-dimensional tensor-product Gauss-Hermite rule, and all
mixture densities go through log-sum-exp so nothing underflows at high SNR.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np
from numpy.polynomial.hermite import hermgauss
from scipy.special import logsumexp

from .constellation import Constellation, bit_prob_table, entropy_bits, nbc
from .constellation import normalize_to_nbc

LN2 = math.log(2.0)
DEFAULT_ORDER = 80
CSV_HEADER = ("snr_db", "ebno_cm_db", "ebno_bicm_db", "cm_mi", "bicm_gmi")


class NumericError(ArithmeticError):
    """Invalid numeric request (non-positive SNR, too few nodes or samples)."""


class ChannelKind(Enum):
    AWGN = "awgn"


@dataclass(frozen=True)
class ChannelSpec:
    """Channel with fixed unit gain (E[H^2] = 1) and noise density ``n0``.

    Fading would enter as another :class:`ChannelKind` with its own
    expectation over the gain; only AWGN is evaluated here.
    """

    n0: float
    kind: ChannelKind = ChannelKind.AWGN

    def __post_init__(self):
        if not self.n0 > 0:
            raise NumericError("noise density must be positive")

    @property
    def gain_power(self) -> float:
        return 1.0

    @classmethod
    def for_snr(cls, es: float, snr: float) -> "ChannelSpec":
        if not snr > 0:
            raise NumericError(f"SNR must be positive, got {snr}")
        return cls(es / snr)


@dataclass(frozen=True)
class QuadratureSpec:
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        if int(self.order) < 8:
            raise NumericError("Gauss-Hermite order must be at least 8")


@lru_cache(maxsize=16)
def _gh_rule(order: int, dims: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes t and weights w with E[f(Z)] ~ sum_q w_q f(sqrt(N0) t_q)
    for Z ~ N(0, N0/2 I_dims); the weights sum to one."""
    t, w = hermgauss(order)
    w = w / math.sqrt(math.pi)
    grids = np.meshgrid(*([t] * dims), indexing="ij")
    wgrids = np.meshgrid(*([w] * dims), indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=1)
    weights = np.prod(np.stack([g.ravel() for g in wgrids], axis=1), axis=1)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _prepare(c: Constellation):
    if not c.is_nbc:
        c = normalize_to_nbc(c)
    X = np.asarray(c.points, dtype=float)
    P = c.probs
    es = float(P @ np.sum(X ** 2, axis=1))
    if not es > 0:
        raise NumericError("constellation has zero energy")
    return c, X, P, es


def _integrands(X, P, table, labels, n0, i, z):
    """Per-sample log-ratio integrands (natural log) for transmitted row i
    and noise samples z (Q x N).  Returns (cm, bicm) arrays of length Q."""
    d = X[i] - X                                  # M x N
    expo = -(np.sum(d ** 2, axis=1)[:, None] + 2.0 * d @ z.T) / n0  # M x Q
    logp = np.log(P)[:, None] + expo
    top = logp.max(axis=0)
    w = np.exp(logp - top)
    lse_all = top + np.log(w.sum(axis=0))
    cm = -lse_all
    bicm = np.zeros_like(cm)
    for k in range(labels.shape[1]):
        same = labels[:, k] == labels[i, k]
        part = w[same].sum(axis=0)
        tiny = part < 1e-250
        lse = top + np.log(np.where(tiny, 1.0, part))
        if tiny.any():
            lse[tiny] = logsumexp(logp[same][:, tiny], axis=0)
        bicm += lse - math.log(table[k, labels[i, k]]) - lse_all
    return cm, bicm


def _evaluate(c: Constellation, snr: float, order: int) -> tuple[float, float]:
    QuadratureSpec(order)
    if not snr > 0:
        raise NumericError(f"SNR must be positive, got {snr}")
    c, X, P, es = _prepare(c)
    n0 = ChannelSpec.for_snr(es, snr).n0
    nodes, weights = _gh_rule(int(order), X.shape[1])
    z = math.sqrt(n0) * nodes
    table = bit_prob_table(c.bits)
    labels = nbc(c.m)
    cm = bicm = 0.0
    for i in range(c.M):
        a, b = _integrands(X, P, table, labels, n0, i, z)
        cm += P[i] * (weights @ a)
        bicm += P[i] * (weights @ b)
    return cm / LN2, bicm / LN2


def cm_mi(c: Constellation, snr: float, order: int = DEFAULT_ORDER) -> float:
    """Coded-modulation mutual information I(X;Y) in bit/symbol."""
    return _evaluate(c, snr, order)[0]


def bicm_gmi(c: Constellation, snr: float, order: int = DEFAULT_ORDER) -> float:
    """BICM generalized mutual information sum_k I(C_k;Y) in bit/symbol."""
    return _evaluate(c, snr, order)[1]


def _ebno_db(snr: float, rate: float) -> float:
    return 10 * math.log10(snr / rate) if rate > 0 else math.inf


@dataclass(frozen=True)
class GmiPoint:
    snr: float
    cm_mi: float
    bicm_gmi: float

    @property
    def snr_db(self) -> float:
        return 10 * math.log10(self.snr)

    @property
    def ebno_cm_db(self) -> float:
        return _ebno_db(self.snr, self.cm_mi)

    @property
    def ebno_bicm_db(self) -> float:
        return _ebno_db(self.snr, self.bicm_gmi)

    def to_dict(self) -> dict:
        return {"snr": self.snr, "snr_db": self.snr_db, "cm_mi": self.cm_mi,
                "bicm_gmi": self.bicm_gmi, "ebno_cm_db": self.ebno_cm_db,
                "ebno_bicm_db": self.ebno_bicm_db}


def gmi_point(c: Constellation, snr: float, order: int = DEFAULT_ORDER) -> GmiPoint:
    cm, bicm = _evaluate(c, snr, order)
    return GmiPoint(float(snr), float(cm), float(bicm))


@dataclass(frozen=True)
class GmiCurve:
    points: tuple[GmiPoint, ...]
    name: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def snr_db(self) -> np.ndarray:
        return np.array([p.snr_db for p in self.points])

    @property
    def cm_mi(self) -> np.ndarray:
        return np.array([p.cm_mi for p in self.points])

    @property
    def bicm_gmi(self) -> np.ndarray:
        return np.array([p.bicm_gmi for p in self.points])

    @property
    def ebno_bicm_db(self) -> np.ndarray:
        return np.array([p.ebno_bicm_db for p in self.points])

    def write_csv(self, fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for p in self.points:
            w.writerow([f"{v:.17g}" for v in
                        (p.snr_db, p.ebno_cm_db, p.ebno_bicm_db, p.cm_mi, p.bicm_gmi)])


def db_grid(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive dB grid start:step:stop."""
    if step <= 0 or stop < start:
        raise NumericError("grid needs step > 0 and stop >= start")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def gmi_sweep(c: Constellation, snr_db, order: int = DEFAULT_ORDER,
              workers: int | None = None) -> GmiCurve:
    """Evaluate CM-MI and BICM-GMI over an increasing grid of SNRs in dB."""
    grid = np.asarray(snr_db, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or np.any(np.diff(grid) <= 0):
        raise NumericError("SNR grid must be a strictly increasing vector")
    snrs = 10.0 ** (grid / 10)
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            pts = list(pool.map(lambda s: gmi_point(c, s, order), snrs))
    else:
        pts = [gmi_point(c, s, order) for s in snrs]
    return GmiCurve(tuple(pts), c.name, {"order": order})


def alpha_numeric(c: Constellation, order: int = DEFAULT_ORDER,
                  h: float = 1e-4) -> float:
    """Zero-SNR slope of the BICM-GMI from secants at h and 2h, Richardson-extrapolated."""
    s1 = bicm_gmi(c, h, order) / h
    s2 = bicm_gmi(c, 2 * h, order) / (2 * h)
    return 2 * s1 - s2


def mc_gmi(c: Constellation, snr: float, samples: int = 10 ** 6,
           seed: int | None = 0, chunk: int = 100_000) -> tuple[float, float]:
    """Monte-Carlo BICM-GMI estimate and its standard error (bit/symbol)."""
    if samples < 10 ** 4:
        raise NumericError("Monte-Carlo estimate needs at least 10^4 samples")
    if not snr > 0:
        raise NumericError(f"SNR must be positive, got {snr}")
    c, X, P, es = _prepare(c)
    n0 = es / snr
    rng = np.random.default_rng(seed)
    table = bit_prob_table(c.bits)
    labels = nbc(c.m)
    total = total_sq = 0.0
    done = 0
    while done < samples:
        n = min(chunk, samples - done)
        tx = rng.choice(c.M, size=n, p=P)
        z = rng.normal(scale=math.sqrt(n0 / 2), size=(n, c.N))
        vals = np.empty(n)
        for i in range(c.M):
            sel = tx == i
            if sel.any():
                vals[sel] = _integrands(X, P, table, labels, n0, i, z[sel])[1]
        vals /= LN2
        total += vals.sum()
        total_sq += (vals ** 2).sum()
        done += n
    mean = total / samples
    var = max(total_sq / samples - mean ** 2, 0.0) * samples / (samples - 1)
    return float(mean), float(math.sqrt(var / samples))


def awgn_capacity(snr: float, dims: int = 2) -> float:
    """Gaussian-input capacity at SNR Es/N0 for a real (1) or complex (2) channel."""
    if snr < 0:
        raise NumericError("SNR must be non-negative")
    if dims == 2:
        return math.log2(1 + snr)
    if dims == 1:
        return 0.5 * math.log2(1 + 2 * snr)
    raise NumericError(f"unsupported dimension {dims}")


def input_entropy(c: Constellation) -> float:
    """H(P): the high-SNR ceiling of the CM-MI."""
    return entropy_bits(c.probs)


def bit_entropy_sum(c: Constellation) -> float:
    """sum_k H(C_k): the high-SNR ceiling of the BICM-GMI."""
    return float(sum(entropy_bits([b, 1 - b]) for b in c.bits))
