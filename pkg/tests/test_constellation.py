import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from bicm_lowsnr.constellation import (Constellation, ConstellationError,
                                       DegenerateShapingError, InvalidLabelingError,
                                       bits_per_symbol, catalog, check_bit_probs,
                                       entropy_bits, labeling_matrix, label_ints, nbc,
                                       normalize_to_nbc, reverse_bits, symbol_distribution)


def test_nbc_rows_are_base2_lsb_first():
    assert nbc(2).tolist() == [[0, 0], [1, 0], [0, 1], [1, 1]]
    assert np.array_equal(label_ints(nbc(5)), np.arange(32))


@pytest.mark.parametrize("M", [0, 1, 3, 6, 12])
def test_bits_per_symbol_rejects_non_powers(M):
    with pytest.raises(ConstellationError):
        bits_per_symbol(M)


def test_reverse_bits():
    assert reverse_bits(np.array([1, 2, 3, 6]), 3).tolist() == [4, 2, 6, 3]


def test_brgc_4pam_matches_shaped_example():
    c = catalog("pam", 4, "brgc")
    assert c.points[:, 0].tolist() == [-3, -1, 3, 1]


def test_reversed_gray_8pam_order():
    c = catalog("pam", 8, "brgc-rev")
    assert c.points[:, 0].tolist() == [-7, 7, -1, 1, -5, 5, -3, 3]


def test_brgc_16qam_columns():
    c = catalog("qam_square", 16, "brgc")
    assert c.points[:4].tolist() == [[-3, -3], [-1, -3], [3, -3], [1, -3]]
    assert c.points[::4, 1].tolist() == [-3, -1, 3, 1]


def test_psk_points_on_unit_circle():
    c = catalog("psk", 8)
    assert np.allclose(np.hypot(*c.points.T), 1.0)
    assert np.allclose(c.points[0], [np.cos(np.pi / 8), np.sin(np.pi / 8)])


@pytest.mark.parametrize("b", [[0.0, 0.5], [0.5, 1.0], [np.nan, 0.5]])
def test_degenerate_probabilities_rejected(b):
    with pytest.raises(ConstellationError):
        check_bit_probs(b)


def test_degenerate_is_specific_error():
    with pytest.raises(DegenerateShapingError):
        Constellation([[-1], [1]], [1.0])


def test_labels_must_be_distinct():
    with pytest.raises(InvalidLabelingError):
        Constellation([[-1], [1]], [0.5], labels=[[0], [0]])


def test_symbol_distribution_matches_oracle():
    b = [0.35, 0.5, 0.8]
    assert np.allclose(symbol_distribution(b), oracles.probs(b), rtol=0, atol=1e-15)


def test_probs_follow_labels():
    L = labeling_matrix("brgc", 2)
    c = Constellation([[-3], [-1], [1], [3]], [0.2, 0.5], labels=L)
    p = oracles.probs([0.2, 0.5])
    assert np.allclose(c.probs, p[label_ints(L)])
    n = normalize_to_nbc(c)
    assert n.is_nbc
    assert n.points[:, 0].tolist() == [-3, -1, 3, 1]
    assert np.allclose(n.probs, p)


def test_json_roundtrip_preserves_everything():
    c = Constellation([[-3], [-1], [1], [3]], [0.3, 0.6], labeling_matrix("brgc", 2))
    d = Constellation.from_json(c.to_json())
    assert np.array_equal(d.points, c.points)
    assert np.array_equal(d.bits, c.bits)
    assert np.array_equal(d.labels, c.labels)


def test_json_string_labeling_means_position_order():
    doc = {"m": 2, "n": 1, "points": [-3, -1, 1, 3], "bit_probs": [0.5, 0.5],
           "labeling": "brgc"}
    c = normalize_to_nbc(Constellation.from_dict(doc))
    assert c.points[:, 0].tolist() == [-3, -1, 3, 1]


@pytest.mark.parametrize("doc", [
    "[1, 2]",
    "{not json",
    json.dumps({"points": [1, 2, 3], "bit_probs": [0.5]}),
    json.dumps({"m": 3, "points": [1, 2], "bit_probs": [0.5]}),
    json.dumps({"points": [1, 2]}),
    json.dumps({"points": [1, 2], "bit_probs": [0.5], "labeling": "octal"}),
])
def test_malformed_documents(doc):
    with pytest.raises(ConstellationError):
        Constellation.from_json(doc)


def test_points_are_read_only():
    c = catalog("pam", 4)
    with pytest.raises(ValueError):
        c.points[0, 0] = 9


def test_unknown_catalog_name():
    with pytest.raises(ConstellationError):
        catalog("hexagonal", 16)


def test_entropy():
    assert entropy_bits([0.5, 0.5]) == pytest.approx(1.0)
    assert entropy_bits([1.0, 0.0]) == 0.0


@given(st.integers(1, 6), st.data())
def test_sum_product(m, data):
    # sum over all labels of prod_k f[k, n_ik] == prod_k (f[k,0] + f[k,1])
    f = np.array(data.draw(st.lists(st.tuples(st.floats(-3, 3), st.floats(-3, 3)),
                                    min_size=m, max_size=m)))
    n = nbc(m)
    lhs = np.prod(f[np.arange(m)[None, :], n], axis=1).sum()
    rhs = np.prod(f.sum(axis=1))
    scale = np.prod(np.abs(f).sum(axis=1))
    assert abs(lhs - rhs) <= 1e-9 * max(scale, 1e-300)


@given(st.integers(1, 6), st.data())
def test_distribution_is_normalized_product(m, data):
    b = np.array(data.draw(st.lists(st.floats(0.01, 0.99), min_size=m, max_size=m)))
    P = symbol_distribution(b)
    assert P.sum() == pytest.approx(1.0, abs=1e-12)
    for k in range(m):
        assert P[nbc(m)[:, k] == 0].sum() == pytest.approx(b[k], abs=1e-12)
