import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import shaped_alphabets
from bicm_lowsnr.constellation import catalog
from bicm_lowsnr.low_gmi import (LOG2E, LowGmiParams, ZeroEnergyError, alpha_proof_form,
                                 cm_alpha, params, params_ht, params_uniform,
                                 params_via_transform)
from bicm_lowsnr.transform import forward

B1 = [0.35, 0.5, 0.35, 0.5]

# alpha values frozen from oracles.alpha_conditional_means
FROZEN = [
    (("qam", 16, "brgc", B1), 1.097207544255027),
    (("qam", 16, "brgc", None), 1.1541560327111706),
    (("psk", 8, "nbc", [0.5, 0.7, 0.9]), 0.6665511939122253),
    (("psk", 8, "nbc", [0.9, 0.7, 0.3]), 0.7647208314502932),
    (("psk", 8, "nbc", None), 0.6157086218714383),
]


@pytest.mark.parametrize("args, alpha", FROZEN)
def test_frozen_alpha(args, alpha):
    c = catalog(*args)
    assert params(c.points, c.bits).alpha == pytest.approx(alpha, abs=1e-12)
    assert params_via_transform(c.points, c.bits).alpha == pytest.approx(alpha, abs=1e-12)


def test_shaped_16qam():
    c = catalog("qam", 16, "brgc", B1)
    p = params(c.points, c.bits)
    assert np.linalg.norm(p.mu) <= 1e-12
    assert p.es == pytest.approx(7.60, abs=0.01)
    assert p.alpha == pytest.approx(1.10, abs=0.01)


@pytest.mark.parametrize("b, alpha", [([0.5, 0.7, 0.9], 0.67), ([0.9, 0.7, 0.3], 0.76),
                                      ([0.5, 0.5, 0.5], 0.62)])
def test_8psk_values(b, alpha):
    c = catalog("psk", 8, "nbc", b)
    assert params(c.points, c.bits).alpha == pytest.approx(alpha, abs=0.01)


def test_transformed_4pam_matches_shaped_4pam():
    b = [0.35, 0.5]
    X = np.array([-3.0, -1, 3, 1])
    shaped, uniform = params(X, b), params_uniform(forward(X, b))
    assert shaped.es == pytest.approx(uniform.es, abs=1e-12)
    assert shaped.alpha == pytest.approx(uniform.alpha, abs=1e-12)


def test_uniform_ht_mean_is_zero_row():
    X = np.array([[1.0, 2], [3, 4], [5, 6], [7, 8]])
    assert np.allclose(params_ht(X).mu, X.mean(axis=0))


def test_alpha_inv_db():
    p = LowGmiParams(np.zeros(1), 1.0, LOG2E)
    assert p.alpha_inv_db == pytest.approx(-1.5917, abs=1e-4)
    assert LowGmiParams(np.zeros(1), 1.0, 0.0).alpha_inv_db == math.inf
    assert set(p.to_dict()) == {"mu", "es", "alpha", "alpha_inv_db"}


def test_zero_energy():
    with pytest.raises(ZeroEnergyError):
        params(np.zeros((4, 2)), [0.3, 0.6])
    with pytest.raises(ZeroEnergyError):
        params_uniform(np.zeros(2))


def test_one_bit_alphabet():
    # antipodal BPSK attains the wideband limit; on-off keying does not
    assert params_uniform([-1, 1]).alpha == pytest.approx(LOG2E)
    assert params([0, 1], [0.5]).alpha == pytest.approx(LOG2E / 2)


@given(shaped_alphabets())
def test_four_routes_agree(case):
    X, b = case
    ref = params(X, b)
    via = params_via_transform(X, b)
    assert via.alpha == pytest.approx(ref.alpha, abs=1e-10)
    assert via.es == pytest.approx(ref.es, rel=1e-10)
    assert np.allclose(via.mu, ref.mu, rtol=0, atol=1e-10 * max(1.0, math.sqrt(ref.es)))
    assert alpha_proof_form(X, b) == pytest.approx(ref.alpha, abs=1e-10)
    assert oracles.alpha_conditional_means(X, b) == pytest.approx(ref.alpha, abs=1e-10)
    S = forward(X, b)
    assert params_ht(S).alpha == pytest.approx(params_uniform(S).alpha, abs=1e-10)


@given(shaped_alphabets())
def test_alpha_bounds(case):
    X, b = case
    a = params(X, b).alpha
    assert -1e-12 <= a <= LOG2E + 1e-12
    assert a <= cm_alpha(X, b) + 1e-9


@given(shaped_alphabets(), st.floats(0.01, 100).flatmap(lambda s: st.sampled_from([s, -s])))
def test_scale_invariance(case, c):
    X, b = case
    assert params(c * X, b).alpha == pytest.approx(params(X, b).alpha, abs=1e-10)
