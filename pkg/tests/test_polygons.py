"""Convex cone membership, breaks, and the increment scheduler."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schurbound import (
    InputError,
    Polygon,
    lambda_m_path,
    polygon_check,
    scaled_polygon,
)


def test_membership_cases():
    assert polygon_check((1, 1))[0]
    assert polygon_check((2, 3, 2))[0]
    assert polygon_check((0, 0, 0))[0]
    assert not polygon_check((0, 5, 0))[0]
    assert not polygon_check((-1,))[0]
    assert not polygon_check((1, 3))[0]


def test_slopes_and_breaks():
    ok, slopes, breaks = polygon_check((2, 3, 2))
    assert ok
    assert slopes == (2, 1, -1, -2)
    assert breaks == (1, 2, 1)
    p = Polygon((2, 3, 2))
    assert p.break_at(2) == 2
    with pytest.raises(InputError):
        p.break_at(0)


def test_increment_and_reflect():
    p = Polygon((1, 1))
    assert p.increment(1).lam == (2, 1)
    assert p.can_increment(2) and p.increment(2).lam == (1, 2)
    assert p.reflect().lam == (1, 1)
    assert Polygon((2, 1)).reflect().lam == (1, 2)
    with pytest.raises(InputError):
        Polygon((0, 1, 2))  # increasing tail: slopes not non-increasing
    with pytest.raises(InputError):
        Polygon((0, 2, 0))


def test_scaled_polygon_breaks():
    for r in (3, 4, 7):
        for m in (0, 1, 3):
            p = scaled_polygon(r, m)
            assert p.lam == tuple(m * i * (r + 1 - i) for i in range(1, r + 1))
            assert all(b == 2 * m for b in p.breaks)


valid_polygons = st.integers(0, 10**6).map(
    lambda seed: _random_polygon(seed)
)


def _random_polygon(seed):
    import numpy as np

    rng = np.random.default_rng(seed)
    while True:
        r = int(rng.integers(1, 7))
        lam = tuple(int(x) for x in rng.integers(0, 6, size=r))
        if polygon_check(lam)[0]:
            return Polygon(lam)


@settings(max_examples=60, deadline=None)
@given(poly=valid_polygons)
def test_reflect_involution_and_increment_closure(poly):
    assert poly.reflect().reflect().lam == poly.lam
    assert polygon_check(poly.reflect().lam)[0]
    for i in range(1, poly.r + 1):
        if poly.can_increment(i):
            assert polygon_check(poly.increment(i).lam)[0]
        else:
            with pytest.raises(InputError):
                poly.increment(i)


def test_path_forced_length_and_floor():
    steps = lambda_m_path(4, 1)
    assert len(steps) == sum(i * (5 - i) for i in range(1, 5))
    assert steps[-1].polygon.lam == scaled_polygon(4, 2).lam
    floor = 0
    seen = scaled_polygon(4, 1)
    for s in steps:
        # each step raises exactly one coordinate by one
        diff = [a - b for a, b in zip(s.polygon.lam, seen.lam)]
        assert sorted(diff) == [0] * (len(diff) - 1) + [1]
        assert diff[s.index - 1] == 1
        assert min(s.polygon.breaks) >= floor
        assert s.rule in (16, 17)
        seen = s.polygon


def test_path_floor_at_higher_scale():
    steps = lambda_m_path(5, 2)
    assert all(min(s.polygon.breaks) >= 2 for s in steps)
    assert all(s.governing_break >= 2 for s in steps)


def test_path_rejects_bad_parameters():
    with pytest.raises(InputError):
        lambda_m_path(2, 1)
    with pytest.raises(InputError):
        lambda_m_path(4, 0)
