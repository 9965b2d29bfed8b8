import random

import pytest

from stindex.strops import Interval, compute_period, is_primitive, lyndon_rotation, maximal_run


def sym(text):
    return [ord(c) for c in text]


def brute_period(s):
    n = len(s)
    for p in range(1, n + 1):
        if all(s[i] == s[i + p] for i in range(n - p)):
            return p
    return n


class TestComputePeriod:
    def test_spec_examples(self):
        assert compute_period(sym("abaab")) == 3
        assert compute_period(sym("aaaa")) == 1
        assert compute_period(sym("abcd")) == 4

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            compute_period([])

    def test_against_brute_force(self):
        rng = random.Random(7)
        for _ in range(300):
            n = rng.randint(1, 40)
            s = [rng.randint(0, 2) for _ in range(n)]
            assert compute_period(s) == brute_period(s)

    def test_periodicity_lemma(self):
        # if p = per(s) and q is any period with p + q <= |s|, gcd(p, q) is a period
        import math

        rng = random.Random(11)
        for _ in range(300):
            n = rng.randint(2, 36)
            s = [rng.randint(0, 1) for _ in range(n)]
            p = compute_period(s)
            for q in range(1, n + 1):
                if all(s[i] == s[i + q] for i in range(n - q)) and p + q <= n:
                    g = math.gcd(p, q)
                    assert all(s[i] == s[i + g] for i in range(n - g))


class TestPrimitive:
    def test_spec_examples(self):
        assert is_primitive(sym("abab")) is False
        assert is_primitive(sym("aba")) is True
        assert is_primitive(sym("a")) is True

    def test_matches_power_definition(self):
        rng = random.Random(3)
        for _ in range(400):
            n = rng.randint(1, 20)
            s = tuple(rng.randint(0, 1) for _ in range(n))
            powers = any(
                n % d == 0 and s == s[:d] * (n // d) for d in range(1, n) if n % d == 0
            )
            assert is_primitive(s) == (not powers)


class TestLyndonRotation:
    def test_spec_examples(self):
        assert lyndon_rotation(sym("aab")) == 1
        assert lyndon_rotation(sym("baa")) == 2
        assert lyndon_rotation(sym("cab")) == 2

    def test_non_primitive_rejected(self):
        with pytest.raises(ValueError):
            lyndon_rotation(sym("abab"))

    def test_exhaustive_small(self):
        # output rotation is <= every other rotation, all strings up to length 16 skipped
        # down to a sampled family plus full enumeration for short lengths
        for n in range(1, 8):
            for mask in range(2**n):
                s = [(mask >> i) & 1 for i in range(n)]
                if not is_primitive(s):
                    continue
                i = lyndon_rotation(s)
                best = min(tuple(s[j:] + s[:j]) for j in range(n))
                assert tuple(s[i - 1 :] + s[: i - 1]) == best
        rng = random.Random(5)
        for _ in range(200):
            n = rng.randint(8, 16)
            s = [rng.randint(0, 2) for _ in range(n)]
            if not is_primitive(s):
                continue
            i = lyndon_rotation(s)
            best = min(tuple(s[j:] + s[:j]) for j in range(n))
            assert tuple(s[i - 1 :] + s[: i - 1]) == best


class TestMaximalRun:
    def test_spec_examples(self):
        assert maximal_run(sym("cabababd"), Interval(2, 7), 2) == Interval(2, 7)
        assert maximal_run(sym("ababab"), Interval(2, 5), 2) == Interval(1, 6)
        assert maximal_run(sym("aXaaaa"), Interval(3, 6), 1) == Interval(3, 6)

    def test_rejects_non_period(self):
        with pytest.raises(ValueError):
            maximal_run(sym("abcabc"), Interval(1, 4), 2)

    def test_extension_breaks_period(self):
        rng = random.Random(19)
        for _ in range(300):
            n = rng.randint(4, 30)
            w = [rng.randint(0, 1) for _ in range(n)]
            a = rng.randint(1, n - 2)
            b = rng.randint(a + 1, n)
            p = compute_period(w[a - 1 : b])
            if p > b - a + 1:
                continue
            run = maximal_run(w, Interval(a, b), p)
            lo, hi = run
            assert all(w[i] == w[i + p] for i in range(lo - 1, hi - p))
            if lo > 1:
                assert w[lo - 2] != w[lo - 2 + p]
            if hi < n:
                assert w[hi] != w[hi - p]
