"""Release gate.

Runs every numbered selftest criterion through the library entry point and
prints one pass/fail line per criterion, so `pytest -v -s tests/test_acceptance.py`
doubles as the reproduction log.  A few criteria get an extra leg here that
the in-package selftest cannot carry: comparisons against the slow
high-precision and random-search oracles that live next to the tests.
"""

import math

import numpy as np
import pytest

import oracles
from schurbound import build_Tk, factorization_norm, tk_diff_norm_closed_form
from schurbound.residue import TkParams
from schurbound.selftest import CHECKS


@pytest.mark.parametrize("number", sorted(CHECKS))
def test_criterion(number, capsys):
    res = CHECKS[number]()
    status = "PASS" if res.passed else "FAIL"
    with capsys.disabled():
        print(f"criterion {number:2d} {status} {res.name}: {res.detail}")
    assert res.passed, f"criterion {number} failed: {res.detail}"


@pytest.mark.parametrize(
    "q,m,n,p",
    [(2, 1, 1, 6.0), (3, 1, 1, 4.5), (2, 2, 1, 10.0)],
)
def test_criterion_1_high_precision_leg(q, m, n, p):
    # closed form against an mpmath SVD at 50 digits, independent of the
    # numpy path used inside the selftest
    diff = build_Tk(TkParams(q, m, n, m)) - build_Tk(TkParams(q, m, n, m - 1))
    ref = oracles.schatten_norm_mp(diff, p)
    assert tk_diff_norm_closed_form(q, m, n, p) == pytest.approx(ref, rel=1e-10)


def test_criterion_8_search_oracle_leg():
    flip = np.array([[1.0, 1.0], [1.0, -1.0]])
    assert oracles.factorization_norm_search(flip) == pytest.approx(
        math.sqrt(2.0), abs=1e-3
    )
    rng = np.random.default_rng(88)
    for _ in range(3):
        phi = rng.normal(size=(3, 3))
        sdp = factorization_norm(phi).value
        search = oracles.factorization_norm_search(phi, seeds=60)
        # sdp certifies an upper bound; the search reaches it from below
        assert sdp <= search + 1e-3
        assert abs(sdp - search) <= 0.05 * max(1.0, search)
