"""Factorization-norm SDP: reference values, certification slack,
witness factors, independent search oracle."""

import math

import numpy as np
import pytest

import oracles
from schurbound import InputError, factorization_norm


def test_reference_values():
    assert factorization_norm(np.ones((3, 3))).value == pytest.approx(1.0, abs=1e-4)
    flip = np.array([[1.0, 1.0], [1.0, -1.0]])
    assert factorization_norm(flip).value == pytest.approx(math.sqrt(2.0), abs=1e-4)
    diag = np.diag([2.0, -3.0, 1.0])
    assert factorization_norm(diag).value == pytest.approx(3.0, abs=1e-3)


def test_certified_side_and_entry_floor():
    rng = np.random.default_rng(40)
    for _ in range(8):
        k = int(rng.integers(2, 6))
        phi = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
        res = factorization_norm(phi)
        assert res.value >= res.lower - 1e-6
        assert res.value >= np.max(np.abs(phi)) - 1e-9
        assert res.converged


def test_witness_factors_realize_value():
    rng = np.random.default_rng(41)
    phi = rng.normal(size=(3, 3))
    res = factorization_norm(phi)
    F, G = res.factors_left, res.factors_right
    assert np.allclose(F @ G.conj().T, phi, atol=1e-4)
    rows = float(np.max(np.sum(np.abs(F) ** 2, axis=1)))
    cols = float(np.max(np.sum(np.abs(G) ** 2, axis=1)))
    assert math.sqrt(rows * cols) <= res.value + 1e-4


def test_against_search_oracle():
    rng = np.random.default_rng(42)
    for _ in range(4):
        phi = rng.normal(size=(3, 3))
        sdp = factorization_norm(phi).value
        search = oracles.factorization_norm_search(phi, seeds=30, seed=1)
        # both sides upper-bound the norm; the SDP must not lose
        assert sdp <= search + 1e-3
        assert abs(sdp - search) <= 0.05 * max(sdp, 1.0)


def test_rejects_rectangular_symbol():
    rng = np.random.default_rng(43)
    with pytest.raises(InputError):
        factorization_norm(rng.normal(size=(2, 4)))
