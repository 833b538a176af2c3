"""Constellations with independent, possibly biased, bit levels.

A constellation is an alphabet ``points`` (M x N, one symbol per row), a
vector ``bits`` of zero-bit probabilities (one per label position) and a
binary labeling.  Label bit ``k`` of the integer ``i`` is ``(i >> k) & 1``,
so column 0 holds the least significant bit.  All analysis routines assume
the natural binary code (NBC), i.e. row ``i`` carries label ``i``; use
:func:`normalize_to_nbc` to bring an arbitrarily labeled constellation into
that form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


class ConstellationError(ValueError):
    """Malformed alphabet, labeling or bit probabilities."""


class DegenerateShapingError(ConstellationError):
    """A bit probability equal to 0 or 1 (half of the symbols never used)."""


class InvalidLabelingError(ConstellationError):
    pass


def bits_per_symbol(M: int) -> int:
    """Return m with M = 2**m, raising if M is not a power of two >= 2."""
    M = int(M)
    if M < 2 or M & (M - 1):
        raise ConstellationError(f"alphabet size {M} is not a power of two >= 2")
    return M.bit_length() - 1


def nbc(m: int) -> np.ndarray:
    """Natural binary code: row i holds the base-2 digits of i, LSB first."""
    if m < 1:
        raise ConstellationError("need at least one bit per symbol")
    i = np.arange(1 << m)
    return ((i[:, None] >> np.arange(m)[None, :]) & 1).astype(np.int8)


def gray_code(m: int) -> np.ndarray:
    """Binary reflected Gray sequence g(p) = p ^ (p >> 1) for p < 2**m."""
    if m < 1:
        raise ConstellationError("need at least one bit per symbol")
    p = np.arange(1 << m)
    return p ^ (p >> 1)


def reverse_bits(i, m: int):
    """Reverse the m-bit binary representation of ``i`` (scalar or array)."""
    i = np.asarray(i)
    out = np.zeros_like(i)
    for k in range(m):
        out |= ((i >> k) & 1) << (m - 1 - k)
    return out


def label_ints(labels: np.ndarray) -> np.ndarray:
    """Integer value of each label row (column k has weight 2**k)."""
    labels = np.asarray(labels)
    return (labels.astype(np.int64) << np.arange(labels.shape[1])).sum(axis=1)


def check_bit_probs(b, m: int | None = None) -> np.ndarray:
    b = np.atleast_1d(np.asarray(b, dtype=float))
    if b.ndim != 1 or b.size == 0:
        raise ConstellationError("bit probabilities must be a non-empty vector")
    if m is not None and b.size != m:
        raise ConstellationError(f"expected {m} bit probabilities, got {b.size}")
    if not np.all(np.isfinite(b)):
        raise ConstellationError("bit probabilities must be finite")
    if np.any(b <= 0.0) or np.any(b >= 1.0):
        raise DegenerateShapingError(
            f"bit probabilities must lie strictly inside (0, 1), got {b.tolist()}")
    return b


def bit_prob_table(b) -> np.ndarray:
    """m x 2 array with entry [k, u] = P(C_k = u)."""
    b = check_bit_probs(b)
    return np.stack([b, 1.0 - b], axis=1)


def symbol_distribution(b, m: int | None = None) -> np.ndarray:
    """Product-form symbol probabilities of an NBC-labeled constellation.

    ``p[i] = prod_k P(C_k = n_{i,k})`` where ``n_{i,k}`` is bit k of i.
    """
    b = check_bit_probs(b, m)
    table = bit_prob_table(b)
    n = nbc(b.size)
    return np.prod(table[np.arange(b.size)[None, :], n], axis=1)


def entropy_bits(p) -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum())


def as_alphabet(points) -> np.ndarray:
    """Coerce to a finite M x N float array with M a power of two."""
    X = np.asarray(points, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or X.shape[1] < 1:
        raise ConstellationError("alphabet must be an M x N matrix")
    bits_per_symbol(X.shape[0])
    if not np.all(np.isfinite(X)):
        raise ConstellationError("alphabet entries must be finite")
    return X


@dataclass(frozen=True)
class Constellation:
    """Alphabet, bit probabilities and labeling.

    ``labels`` defaults to the NBC.  Arrays are copied and made read-only.
    """

    points: np.ndarray
    bits: np.ndarray
    labels: np.ndarray = field(default=None)
    name: str = ""

    def __post_init__(self):
        X = as_alphabet(self.points)
        m = bits_per_symbol(X.shape[0])
        b = check_bit_probs(self.bits, m)
        L = nbc(m) if self.labels is None else np.asarray(self.labels)
        if L.shape != (X.shape[0], m):
            raise InvalidLabelingError(
                f"labeling must be {X.shape[0]} x {m}, got {L.shape}")
        if not np.isin(L, (0, 1)).all():
            raise InvalidLabelingError("labels must be binary")
        L = L.astype(np.int8)
        if np.unique(label_ints(L)).size != X.shape[0]:
            raise InvalidLabelingError("labels must be distinct")
        for name, arr in (("points", X), ("bits", b), ("labels", L)):
            arr = np.array(arr, copy=True)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def M(self) -> int:
        return self.points.shape[0]

    @property
    def m(self) -> int:
        return self.bits.size

    @property
    def N(self) -> int:
        return self.points.shape[1]

    @property
    def is_nbc(self) -> bool:
        return bool(np.array_equal(label_ints(self.labels), np.arange(self.M)))

    @property
    def probs(self) -> np.ndarray:
        """Probability of each row, following that row's label."""
        return symbol_distribution(self.bits)[label_ints(self.labels)]

    def with_points(self, points, bits=None) -> "Constellation":
        return Constellation(points, self.bits if bits is None else bits,
                             self.labels, self.name)

    def to_dict(self) -> dict:
        if self.is_nbc:
            labeling = "nbc"
        else:
            labeling = self.labels.astype(int).tolist()
        return {"m": self.m, "n": self.N, "points": self.points.tolist(),
                "bit_probs": self.bits.tolist(), "labeling": labeling}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, doc: dict) -> "Constellation":
        try:
            points = np.asarray(doc["points"], dtype=float)
            bits = doc["bit_probs"]
            labeling = doc.get("labeling", "nbc")
        except (KeyError, TypeError, ValueError) as exc:
            raise ConstellationError(f"bad constellation document: {exc}") from exc
        if points.ndim == 1:
            points = points[:, None]
        m = bits_per_symbol(points.shape[0])
        if "m" in doc and int(doc["m"]) != m:
            raise ConstellationError(f"'m' is {doc['m']} but there are {points.shape[0]} points")
        if "n" in doc and int(doc["n"]) != points.shape[1]:
            raise ConstellationError(f"'n' is {doc['n']} but points have {points.shape[1]} columns")
        if isinstance(labeling, str):
            labels = labeling_matrix(labeling, m)
        else:
            labels = np.asarray(labeling)
        return cls(points, bits, labels, doc.get("name", ""))

    @classmethod
    def from_json(cls, text: str) -> "Constellation":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConstellationError(f"invalid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConstellationError("constellation document must be a JSON object")
        return cls.from_dict(doc)


def labeling_matrix(kind: str, m: int) -> np.ndarray:
    """Labeling rows for symbols listed in geometric (position) order.

    ``"nbc"``: position p carries label p.  ``"brgc"``: position p carries
    the Gray integer g(p), LSB in column 0.  ``"brgc-rev"``: the same Gray
    word read with its most significant bit in column 0 (the order used for
    the printed 8-PAM labels ``000, 001, 011, 010, ...``).
    """
    kind = kind.lower()
    if kind == "nbc":
        ints = np.arange(1 << m)
    elif kind == "brgc":
        ints = gray_code(m)
    elif kind == "brgc-rev":
        ints = reverse_bits(gray_code(m), m)
    else:
        raise InvalidLabelingError(f"unknown labeling {kind!r}")
    return nbc(m)[ints]


def normalize_to_nbc(c: Constellation) -> Constellation:
    """Reorder rows so that the symbol carrying label i sits in row i."""
    ints = label_ints(c.labels)
    if not np.array_equal(np.sort(ints), np.arange(c.M)):
        raise InvalidLabelingError("labels are not a permutation of the NBC")
    order = np.argsort(ints)
    return Constellation(c.points[order], c.bits, None, c.name)


# -- catalog ------------------------------------------------------------------

AMPM8 = np.array([[-1, 0], [1, -2], [-3, 0], [-1, -2],
                  [1, 2], [3, 0], [-1, 2], [1, 0]], dtype=float)


def pam_points(M: int) -> np.ndarray:
    bits_per_symbol(M)
    return np.arange(-(M - 1), M, 2, dtype=float)[:, None]


def psk_points(M: int) -> np.ndarray:
    bits_per_symbol(M)
    ang = 2 * np.pi * np.arange(M) / M + np.pi / M
    return np.stack([np.cos(ang), np.sin(ang)], axis=1)


_R = np.sqrt(0.5)
# Two-ring star 8-QAM in NBC row order: unit ring at 45 + 90k degrees,
# radius-2 ring on the axes.  Coordinates and labels are a reconstruction
# (not a published table) chosen so that alpha = 1.14 (uniform) and
# 1.18 (bit probabilities [0.5, 0.5, 0.85]).
STAR8QAM = np.array([[_R, _R], [-_R, -_R], [2, 0], [0, -2],
                     [0, 2], [-2, 0], [-_R, _R], [_R, -_R]], dtype=float)


def _place(positions: np.ndarray, kind: str) -> np.ndarray:
    """Rows reordered so that row i is the position carrying label i."""
    m = bits_per_symbol(positions.shape[0])
    ints = label_ints(labeling_matrix(kind, m))
    out = np.empty_like(positions)
    out[ints] = positions
    return out


def catalog(name: str, M: int | None = None, labeling: str = "nbc",
            bits=None) -> Constellation:
    """Named alphabets, returned NBC-normalized.

    ``name`` is one of ``pam``, ``qam_square``, ``psk``, ``ampm8``,
    ``star8qam``.  For ``qam_square`` the low half of the label bits indexes
    the first coordinate and the high half the second, each axis labeled as a
    sqrt(M)-PAM.  ``bits`` defaults to uniform.
    """
    key = name.lower().replace("-", "_")
    if key in ("ampm8", "8ampm"):
        if M not in (None, 8):
            raise ConstellationError("ampm8 has M = 8")
        M, X = 8, AMPM8.copy()
        if labeling != "nbc":
            X = _place(X, labeling)
    elif key in ("star8qam", "star8", "8qam"):
        if M not in (None, 8):
            raise ConstellationError("star8qam has M = 8")
        M, X = 8, STAR8QAM.copy()
        if labeling != "nbc":
            X = _place(X, labeling)
    else:
        if M is None:
            raise ConstellationError(f"{name} needs an alphabet size M")
        m = bits_per_symbol(M)
        if key == "pam":
            X = _place(pam_points(M), labeling)
        elif key == "psk":
            X = _place(psk_points(M), labeling)
        elif key in ("qam", "qam_square"):
            if m % 2:
                raise ConstellationError("square QAM needs an even number of bits")
            axis = _place(pam_points(1 << (m // 2)), labeling)[:, 0]
            i = np.arange(M)
            lo, hi = i & ((1 << (m // 2)) - 1), i >> (m // 2)
            X = np.stack([axis[lo], axis[hi]], axis=1)
        else:
            raise ConstellationError(f"unknown constellation {name!r}")
    m = bits_per_symbol(M)
    b = np.full(m, 0.5) if bits is None else bits
    return Constellation(X, b, None, f"{key}{M}-{labeling}")
