"""Schatten norms, polar witnesses, and the pairing against
independent high-precision oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from schurbound import (
    InputError,
    polar_witness,
    schatten_norm,
    schur_apply,
    trace_pairing,
)
from schurbound.schatten import check_exponent, conjugate_exponent


def rand_complex(rng, shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


@pytest.mark.parametrize("p", [1.0, 2.0, 2.5, 4.0, math.inf])
def test_norm_matches_mp_oracle(p):
    rng = np.random.default_rng(10)
    for shape in [(3, 3), (4, 2), (5, 5)]:
        A = rand_complex(rng, shape)
        got = schatten_norm(A, p)
        want = oracles.schatten_norm_mp(A, p)
        assert got == pytest.approx(want, rel=1e-10)


def test_p2_is_frobenius():
    rng = np.random.default_rng(11)
    A = rand_complex(rng, (6, 4))
    assert schatten_norm(A, 2) == pytest.approx(np.linalg.norm(A), rel=1e-13)


def test_exponent_validation():
    assert check_exponent(2) == 2.0
    assert check_exponent(math.inf) == math.inf
    with pytest.raises(InputError):
        check_exponent(0.5)
    with pytest.raises(InputError):
        check_exponent(float("nan"))
    assert conjugate_exponent(1.0) == math.inf
    assert conjugate_exponent(math.inf) == 1.0
    assert conjugate_exponent(4.0) == pytest.approx(4.0 / 3.0)


@settings(max_examples=60, deadline=None)
@given(
    seed=st.integers(0, 10_000),
    p=st.sampled_from([1.0, 1.5, 2.0, 3.0, 6.0, math.inf]),
)
def test_triangle_inequality(seed, p):
    rng = np.random.default_rng(seed)
    A = rand_complex(rng, (4, 4))
    B = rand_complex(rng, (4, 4))
    lhs = schatten_norm(A + B, p)
    assert lhs <= schatten_norm(A, p) + schatten_norm(B, p) + 1e-10


def test_trace_pairing_vs_loops():
    rng = np.random.default_rng(12)
    A = rand_complex(rng, (3, 5))
    B = rand_complex(rng, (5, 3))
    assert trace_pairing(A, B) == pytest.approx(
        oracles.trace_pairing_loops(A, B), rel=1e-13
    )


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 4.0, math.inf])
def test_polar_witness_attains_dual_norm(p):
    rng = np.random.default_rng(13)
    C = rand_complex(rng, (4, 4))
    A, value = polar_witness(C, p)
    pc = conjugate_exponent(p)
    assert value == pytest.approx(schatten_norm(C, pc), rel=1e-10)
    assert schatten_norm(A, p) == pytest.approx(1.0, abs=1e-10)
    attained = np.sum(A * C)
    assert attained.real == pytest.approx(value, rel=1e-9)
    assert abs(attained.imag) <= 1e-9 * value


def test_schur_apply_is_entrywise():
    rng = np.random.default_rng(14)
    phi = rand_complex(rng, (4, 4))
    A = rand_complex(rng, (4, 4))
    assert np.array_equal(schur_apply(phi, A), phi * A)


def test_diagonal_projection_contracts():
    # diag(A) is an average of unitary conjugations, so projecting onto
    # the diagonal can never increase a Schatten norm
    rng = np.random.default_rng(15)
    A = rand_complex(rng, (5, 5))
    D = oracles.diagonal_sign_average(A)
    assert np.allclose(D, np.diag(np.diag(A)), atol=1e-12)
    for p in (1.0, 2.0, 3.0, math.inf):
        assert schatten_norm(D, p) <= schatten_norm(A, p) + 1e-10


def test_weighted_norm_reduces_to_plain():
    rng = np.random.default_rng(16)
    A = rand_complex(rng, (4, 4))
    w = np.ones(4)
    assert schatten_norm(A, 3.0, wx=w, wy=w) == pytest.approx(
        schatten_norm(A, 3.0), rel=1e-13
    )
