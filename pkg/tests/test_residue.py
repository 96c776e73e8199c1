"""Finite-ring test matrices: entries, spectrum, closed forms."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from schurbound import (
    InputError,
    TkParams,
    build_Tk,
    epsilon_rate,
    tk_diff_norm_closed_form,
    tk_diff_norm_from_spectrum,
    tk_diff_spectrum,
    verify_tk_diff,
)
from schurbound.residue import ResidueRing, additive_characters, character_matrix


@pytest.mark.parametrize("q,m,n,k", [(2, 1, 1, 0), (2, 1, 1, 1), (2, 2, 1, 1), (3, 1, 1, 0), (2, 1, 2, 1), (3, 1, 2, 1)])
def test_entries_match_bruteforce(q, m, n, k):
    M = build_Tk(TkParams(q, m, n, k))
    rng = np.random.default_rng(20)
    dim = M.shape[0]
    for _ in range(200):
        r = int(rng.integers(0, dim))
        c = int(rng.integers(0, dim))
        assert M[r, c] == oracles.tk_entry_bruteforce(q, m, n, k, r, c)


@pytest.mark.parametrize("q,m,n", [(2, 1, 1), (2, 2, 1), (3, 1, 2)])
def test_stochastic_rows_fix_ones(q, m, n):
    for k in range(m + 1):
        M = build_Tk(TkParams(q, m, n, k))
        dim = M.shape[0]
        ones = np.ones(dim)
        assert np.allclose(M.sum(axis=1), 1.0, atol=1e-12)
        assert np.allclose(M @ ones, ones, atol=1e-12)
        # every entry is 0 or q^{-mn}
        vals = np.unique(M)
        assert set(np.round(vals, 15)) <= {0.0, round(float(q) ** (-m * n), 15)}


def test_dimension_cap():
    with pytest.raises(InputError):
        TkParams(2, 3, 3, 1, cap=1000)


def test_closed_form_matches_spectrum_and_oracle():
    for q, m, n, p in [(2, 1, 1, 6.0), (2, 2, 1, 4.5), (3, 1, 1, 10.0), (2, 1, 2, 3.0)]:
        closed = tk_diff_norm_closed_form(q, m, n, p)
        spect = tk_diff_norm_from_spectrum(q, m, n, p)
        assert closed == pytest.approx(spect, rel=1e-12)
    Tm = build_Tk(TkParams(2, 1, 1, 1))
    Tm1 = build_Tk(TkParams(2, 1, 1, 0))
    want = oracles.schatten_norm_mp(Tm - Tm1, 6.0)
    assert tk_diff_norm_closed_form(2, 1, 1, 6.0) == pytest.approx(want, rel=1e-10)


def test_closed_form_rejects_low_exponent():
    # the display is only valid above the critical exponent; the
    # message still quotes the spectrum value so nothing is hidden
    with pytest.raises(InputError):
        tk_diff_norm_closed_form(2, 1, 1, 2.0)


def test_epsilon_rate():
    assert epsilon_rate(1, 6.0) == pytest.approx(1.0 / 6.0)
    assert epsilon_rate(2, math.inf) == 1.0
    assert epsilon_rate(3, 4.0) == pytest.approx(3 * 0.25 - 0.25)
    with pytest.raises(InputError):
        epsilon_rate(1, 2.0)
    with pytest.raises(InputError):
        epsilon_rate(0, 6.0)


def test_spectrum_multiplicities_cover_dimension():
    for q, m, n in [(2, 1, 1), (2, 2, 1), (3, 2, 1), (5, 1, 2)]:
        spec = tk_diff_spectrum(q, m, n)
        assert sum(mult for _, mult in spec) == q ** (m * (n + 1))
        sigmas = [s for s, _ in spec]
        assert sigmas == sorted(sigmas, reverse=True)


def test_verify_report_consistency():
    rep = verify_tk_diff(2, 1, 1, 6.0, u=2.0, v=-1.0, with_oracle=True)
    assert rep.rel_gap <= 1e-10
    assert rep.upper_ok
    assert rep.shift_lower == pytest.approx(3.0)
    assert rep.shift_lower_ok
    assert rep.shifted_norm >= 3.0 - 1e-9


@settings(max_examples=80, deadline=None)
@given(
    ur=st.floats(-3, 3), ui=st.floats(-3, 3),
    vr=st.floats(-3, 3), vi=st.floats(-3, 3),
)
def test_shifted_norm_floor(ur, ui, vr, vi):
    u = complex(ur, ui)
    v = complex(vr, vi)
    norm = tk_diff_norm_from_spectrum(2, 2, 1, 6.0, u, v)
    assert norm >= abs(u - v) - 1e-9


def test_characters_orthogonal():
    ring = ResidueRing(3, 2)
    chars = additive_characters(ring)
    assert len(chars) == 9
    assert sum(ch.nondegenerate for ch in chars) == 6
    C = np.array([[ch(x) for x in range(9)] for ch in chars])
    # distinct characters are orthogonal over the ring
    G = C @ C.conj().T / 9
    assert np.allclose(G, np.eye(9), atol=1e-12)


def test_character_matrix_unitary_when_nondegenerate():
    ring = ResidueRing(2, 2)
    ch = additive_characters(ring)[1]
    assert ch.nondegenerate
    M = character_matrix(ch) / 2.0
    assert np.allclose(M @ M.conj().T, np.eye(4), atol=1e-12)
