import numpy as np
import pytest

from trendvar import RngStream


def test_equal_keys_reproduce_draws():
    a = RngStream(42, 7).generator().random(1000)
    b = RngStream(42, 7).generator().random(1000)
    np.testing.assert_array_equal(a, b)


def test_distinct_stream_index_decorrelated():
    a = RngStream(42, 0).generator().random(10_000)
    b = RngStream(42, 1).generator().random(10_000)
    assert abs(np.corrcoef(a, b)[0, 1]) < 0.01


def test_distinct_master_seed_differs():
    a = RngStream(1).generator().random(10)
    b = RngStream(2).generator().random(10)
    assert not np.array_equal(a, b)


def test_children_are_deterministic_and_distinct():
    root = RngStream(99)
    kids = [root.child(k) for k in range(100)]
    assert [root.child(k) for k in range(100)] == kids
    assert len({c.stream_index for c in kids}) == 100
    assert all(c.master_seed == 99 for c in kids)


def test_child_streams_decorrelated():
    root = RngStream(7)
    a = root.child(0).generator().random(10_000)
    b = root.child(1).generator().random(10_000)
    assert abs(np.corrcoef(a, b)[0, 1]) < 0.01


def test_grandchildren_do_not_collide_with_children():
    root = RngStream(5)
    idx = {root.child(k).stream_index for k in range(50)}
    idx |= {root.child(0).child(k).stream_index for k in range(50)}
    assert len(idx) == 100


def test_invalid_construction():
    with pytest.raises(ValueError):
        RngStream(-1)
    with pytest.raises(ValueError):
        RngStream(1 << 64)
    with pytest.raises(ValueError):
        RngStream(0, -1)
