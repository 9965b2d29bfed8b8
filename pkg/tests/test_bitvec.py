import random

import numpy as np
import pytest

from stindex.bitvec import PackedRankSelect, build_packed_rank_select


class DenseBits:
    """Oracle: plain dense 0/1 array with prefix sums."""

    def __init__(self, ones, n):
        bits = np.zeros(n + 1, dtype=np.int64)
        for x in ones:
            bits[x] = 1
        self.sums = np.cumsum(bits)
        self.ones = list(ones)

    def rank(self, i):
        return int(self.sums[i])

    def select(self, k):
        return self.ones[k - 1]


def test_spec_trivial_examples():
    b = build_packed_rank_select([1, 3, 4], 5, t=1)
    assert b.M == 3
    # bits 10110 -> rank(3) = 2, select(2) = 3
    assert b.rank(3) == 2
    assert b.select(2) == 3
    assert b.rank(0) == 0
    assert b.rank(5) == 3
    assert b.select(1) == 1
    assert b.select(3) == 4


def test_empty_vector():
    b = build_packed_rank_select([], 64, t=2)
    for i in range(0, 65, 7):
        assert b.rank(i) == 0
    with pytest.raises(ValueError):
        b.select(1)


def test_input_validation():
    with pytest.raises(ValueError):
        build_packed_rank_select([3, 3], 5)
    with pytest.raises(ValueError):
        build_packed_rank_select([0, 2], 5)
    with pytest.raises(ValueError):
        build_packed_rank_select([2, 6], 5)
    b = build_packed_rank_select([2], 5)
    with pytest.raises(ValueError):
        b.rank(6)
    with pytest.raises(ValueError):
        b.rank(-1)


@pytest.mark.parametrize("t", [1, 2, 3])
def test_exhaustive_small_universes(t):
    rng = random.Random(42 + t)
    for n in [1, 2, 63, 64, 65, 128, 300, 511, 512]:
        for density in [0.0, 0.05, 0.5, 1.0]:
            ones = sorted(x for x in range(1, n + 1) if rng.random() < density)
            oracle = DenseBits(ones, n)
            b = PackedRankSelect(n, ones, t=t)
            for i in range(n + 1):
                assert b.rank(i) == oracle.rank(i)
            for k in range(1, len(ones) + 1):
                assert b.select(k) == oracle.select(k)


def test_spec_random_large():
    # random 10^3 indices in [1, 10^6], t = 2, 10^4 probes vs the dense oracle
    rng = random.Random(2024)
    ones = sorted(rng.sample(range(1, 10**6 + 1), 10**3))
    b = PackedRankSelect(10**6, ones, t=2)
    oracle = DenseBits(ones, 10**6)
    for _ in range(10**4):
        i = rng.randint(0, 10**6)
        assert b.rank(i) == oracle.rank(i)
    for k in range(1, 1001):
        assert b.select(k) == oracle.select(k)


def test_inverse_identities():
    rng = random.Random(9)
    ones = sorted(rng.sample(range(1, 5000), 200))
    b = PackedRankSelect(5000, ones, t=2)
    assert b.rank(b.N) == b.M
    for k in range(1, b.M + 1):
        assert b.rank(b.select(k)) == k
    for x in range(ones[0], 5001, 13):
        assert b.select(b.rank(x)) <= x


def test_space_bound():
    # measured words <= c * (t*M + N / W^t) with the constant reported in README
    c = 12
    rng = random.Random(77)
    for n, m, t in [(10**6, 10**3, 2), (10**6, 10**3, 1), (4096, 512, 2), (10**5, 7, 3)]:
        ones = sorted(rng.sample(range(1, n + 1), m))
        b = PackedRankSelect(n, ones, t=t)
        assert b.words() <= c * (t * m + n / 64**t) + 64
