"""Exact rational matrices, valuations, invariant recovery."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schurbound import (
    InputError,
    Polygon,
    QMatrix,
    build_D,
    cartan_invariants,
    polygon_check,
    random_unimodular,
    valuation,
)
from schurbound.padic import minor_min_valuations


def test_valuation():
    assert valuation(12, 2) == 2
    assert valuation(12, 3) == 1
    assert valuation(Fraction(1, 8), 2) == -3
    assert valuation(Fraction(9, 4), 3) == 2
    assert valuation(0, 5) == float("inf")
    with pytest.raises(InputError):
        valuation(1, 4)


def test_qmatrix_exact_ops():
    A = QMatrix([[1, 2], [3, 4]], 2)
    B = QMatrix([[0, 1], [1, 0]], 2)
    assert (A @ B).rows == ((Fraction(2), Fraction(1)), (Fraction(4), Fraction(3)))
    assert A.det() == -2
    assert A.transpose().rows[0] == (Fraction(1), Fraction(3))
    with pytest.raises(InputError):
        QMatrix([[1, 2]], 2)


def test_diagonal_representative_recovers_polygon():
    poly = Polygon((1, 1))
    D = build_D(poly, 2)
    # diag(q^{-mu}) for slopes (1, 0, -1)
    assert D.rows[0][0] == Fraction(1, 2)
    assert D.rows[1][1] == 1
    assert D.rows[2][2] == 2
    assert cartan_invariants(D).lam == (1, 1)


def test_minor_valuations_known_matrix():
    D = build_D(Polygon((2, 3, 2)), 3)
    mins = minor_min_valuations(D)
    # lambda_i = -min over i x i minors, and the determinant is 1
    assert [-v for v in mins[:-1]] == [2, 3, 2]
    assert mins[-1] == 0


def test_determinant_must_be_one():
    with pytest.raises(InputError):
        cartan_invariants(QMatrix([[2, 0], [0, 1]], 2))


def test_size_cap():
    big = QMatrix([[int(i == j) for j in range(11)] for i in range(11)], 2)
    with pytest.raises(InputError):
        cartan_invariants(big)


def test_random_unimodular_is_unimodular():
    rng = np.random.default_rng(30)
    for size in (1, 2, 4, 6):
        K = random_unimodular(size, 3, rng)
        assert K.det() == 1
        assert all(x.denominator == 1 for row in K.rows for x in row)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_invariance_under_stabilizer(seed):
    rng = np.random.default_rng(seed)
    while True:
        r = int(rng.integers(1, 5))
        lam = tuple(int(x) for x in rng.integers(0, 4, size=r))
        if polygon_check(lam)[0]:
            break
    q = int(rng.choice([2, 3]))
    D = build_D(Polygon(lam), q)
    K1 = random_unimodular(r + 1, q, rng, ops=25)
    K2 = random_unimodular(r + 1, q, rng, ops=25)
    assert cartan_invariants(K1 @ D @ K2).lam == lam
