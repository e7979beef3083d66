import pytest
from hypothesis import given
from hypothesis import strategies as st

from klein5.rng import SplitMix64


def test_published_first_output():
    assert SplitMix64(1234567).next_u64() == 0x599ED017FB08FC85


def test_same_seed_same_stream():
    a, b = SplitMix64(9), SplitMix64(9)
    assert [a.next_u64() for _ in range(20)] == [b.next_u64() for _ in range(20)]
    assert SplitMix64(9).next_u64() != SplitMix64(10).next_u64()


@given(st.integers(0, 2**64 - 1), st.integers(1, 1000))
def test_below_in_range(seed, bound):
    rng = SplitMix64(seed)
    assert all(0 <= rng.below(bound) < bound for _ in range(20))


def test_below_rejects_empty_range():
    with pytest.raises(ValueError):
        SplitMix64(1).below(0)


@given(st.integers(0, 2**32), st.lists(st.integers(), max_size=12))
def test_shuffle_is_permutation(seed, items):
    copy = list(items)
    SplitMix64(seed).shuffle(copy)
    assert sorted(copy) == sorted(items)
