"""Block assembly, residue classification, obstruction certificates."""

from fractions import Fraction

import numpy as np
import pytest

from schurbound import (
    InputError,
    Polygon,
    build_alpha_beta,
    cartan_invariants,
    classify_residue,
    epsilon_rate,
    governing_data,
    obstruction_certificate,
)


def test_governing_rule_selection():
    poly = Polygon((2, 3, 2))
    assert governing_data(poly, 1, 1) == (16, 2)
    assert governing_data(poly, 2, 1) == (16, 1)
    # i = 3 leaves no room on the right for n = 1, reflect instead
    assert governing_data(poly, 3, 1) == (17, 2)
    with pytest.raises(InputError):
        governing_data(poly, 4, 1)
    # no break available: increment would leave the cone
    with pytest.raises(InputError):
        governing_data(Polygon((2, 2, 2)), 1, 1)


def test_block_shapes_and_residue():
    poly = Polygon((2, 3, 2))
    q = 2
    m = poly.break_at(2)
    assert m == 2
    a, b, x, y = 3, 1, 2, 0
    alpha, beta, w = build_alpha_beta(poly, 1, 1, (a, b, x, y), q)
    assert w == y - (a * x + b)
    # determinant-one product, exact
    assert (alpha @ beta).det() == 1
    assert alpha.det() == 1
    # beta is the identity off the last block column
    n4 = beta.n
    for i in range(n4):
        for j in range(n4):
            if j != 2:
                assert beta.rows[i][j] == (1 if i == j else 0)


def test_classification_matches_exact_invariants():
    poly = Polygon((2, 3, 2))
    q, n, i = 2, 1, 1
    m = poly.break_at(2)
    Q = q**m
    for w_target, expect in [(0, poly.lam), (q ** (m - 1), poly.increment(i).lam)]:
        a, x, b = 3, 1, 2
        y = (a * x + b + w_target) % Q
        alpha, beta, w = build_alpha_beta(poly, i, n, (a, b, x, y), q)
        label = classify_residue(w, q, m)
        assert label == ("base" if w_target == 0 else "raised")
        assert cartan_invariants(alpha @ beta).lam == expect


def test_classify_residue_values():
    assert classify_residue(0, 2, 2) == "base"
    assert classify_residue(8, 2, 2) == "base"
    assert classify_residue(2, 2, 2) == "raised"
    assert classify_residue(6, 2, 2) == "raised"
    assert classify_residue(1, 2, 2) is None
    assert classify_residue(3, 2, 1) == "raised"
    assert classify_residue(-2, 2, 2) == "raised"


def test_build_preconditions():
    poly = Polygon((2, 3, 2))
    with pytest.raises(InputError):
        build_alpha_beta(poly, 1, 1, (1, 1, 1), 2)
    with pytest.raises(InputError):
        build_alpha_beta(poly, 3, 1, (1, 1, 1, 1), 2)
    with pytest.raises(InputError):
        build_alpha_beta(poly, 1, 1, (1, 1, 1, 1), 4)
    with pytest.raises(InputError):
        build_alpha_beta(Polygon((2, 2, 2)), 1, 1, (1, 1, 1, 1), 2)


def test_certificate_value_and_warnings():
    lam = (1, 1)
    f = {lam: 1.0, (2, 1): -1.0}
    cert = obstruction_certificate(f, [(lam, 1)], 2, 1, 6.0)
    eps = epsilon_rate(1, 6.0)
    assert cert.eps == pytest.approx(eps)
    assert cert.value == pytest.approx(2.0**eps * 2.0 / 2.0)
    assert len(cert.entries) == 1
    e = cert.entries[0]
    assert (e.rule, e.governing_break) == (16, 1)
    # undefined increment class -> warning, no contribution
    cert2 = obstruction_certificate({lam: 1.0}, [(lam, 1)], 2, 1, 6.0)
    assert cert2.value == 0.0
    assert len(cert2.warnings) == 1
    # inadmissible index -> warning
    cert3 = obstruction_certificate(f, [(lam, 2)], 2, 1, 6.0)
    assert len(cert3.entries) + len(cert3.warnings) == 1


def test_certificate_callable_and_reflection_rule():
    poly = Polygon((2, 3, 2))

    def f(p):
        return 1.0 if p.lam == (2, 3, 2) else -1.0

    cert = obstruction_certificate(f, [(poly, 3)], 2, 1, 6.0)
    assert len(cert.entries) == 1
    e = cert.entries[0]
    assert e.rule == 17
    assert e.governing_break == 2
    assert cert.value == pytest.approx(2.0 ** (2 * epsilon_rate(1, 6.0)) * 1.0)


def test_certificate_needs_positive_rate():
    with pytest.raises(InputError):
        obstruction_certificate({}, [], 2, 1, 3.0)
