import random

import numpy as np
import pytest

from stindex.waindex import WaIndex, build_index, choose_instance


def sym(text):
    return [ord(c) for c in text]


class TestChooseInstance:
    def test_spec_examples(self):
        assert choose_instance(6) == (0, 8)
        assert choose_instance(100) == (4, 8)
        assert choose_instance(47) == (2, 13)
        assert choose_instance(5) is None

    def test_target_inequality_everywhere(self):
        for L in range(6, 3000):
            k, alpha = choose_instance(L)
            assert 8 <= alpha <= 13
            assert (alpha - 2) * 2**k <= L < (alpha - 1) * 2**k
            # the query is long for the instance: L >= 3/4 * alpha * 2^k
            assert 4 * L >= 3 * alpha * 2**k


def check_all_queries(idx, oracle_tree, lo=1, hi=None, sample=None, rng=None):
    n = idx.n
    hi = hi or n
    queries = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)
               if lo <= j - i + 1 <= hi]
    if sample and len(queries) > sample:
        queries = rng.sample(queries, sample)
    want = oracle_tree.naive_locus_batch([(0, i, j) for i, j in queries])
    for q, (i, j) in enumerate(queries):
        got = idx.substring_locus(i, j)
        assert got == want[q], (i, j, got, want[q])
    return len(queries)


class TestStandardMode:
    def test_abracadabra_exhaustive(self):
        w = sym("abracadabra")
        idx = build_index(w)
        assert check_all_queries(idx, idx.master) == 66

    def test_repeated_substring_same_locus(self):
        idx = build_index(sym("abracadabra"))
        a = idx.substring_locus(1, 4)
        b = idx.substring_locus(8, 11)
        assert a == b and a.kind == "explicit"
        c = idx.substring_locus(1, 1)
        assert c.kind == "explicit"  # node "a" via the fallback walk
        d = idx.substring_locus(5, 7)
        assert d.kind == "implicit" and d.depth == 3

    def test_small_families_exhaustive(self):
        rng = random.Random(77)
        cases = [
            [0] * 37,
            sym("ab" * 24),
            [rng.randrange(2) for _ in range(64)],
            [rng.randrange(26) for _ in range(50)],
            sym("aaaab" * 9),
        ]
        for w in cases:
            idx = build_index(w)
            check_all_queries(idx, idx.master)

    def test_a_power_b(self):
        rng = random.Random(5)
        w = [0] * 255 + [1]
        idx = build_index(w)
        check_all_queries(idx, idx.master, sample=4000, rng=rng)

    def test_tiny_texts(self):
        for w in ([0], [0, 1], [1, 1, 1], sym("ab")):
            idx = build_index(w)
            check_all_queries(idx, idx.master)


class TestCompactMode:
    def test_mode_equivalence_small(self):
        rng = random.Random(31)
        cases = [
            [rng.randrange(2) for _ in range(150)],
            sym("ab" * 80),
            [0] * 160,
            [rng.randrange(26) for _ in range(90)],
            sym(("abcd" * 10 + "zzzz") * 3),
        ]
        for w in cases:
            std = build_index(w, mode="standard")
            cmp_ = build_index(w, mode="compact")
            n = len(w)
            for i in range(1, n + 1):
                for j in range(i, n + 1):
                    a = std.substring_locus(i, j)
                    b = cmp_.substring_locus(i, j)
                    assert a == b, (i, j, a, b)

    def test_shortening_random_tail(self):
        # random strings have no deep explicit ancestors: most docs removed
        rng = random.Random(11)
        w = [rng.randrange(26) for _ in range(256)]
        idx = build_index(w, mode="compact")
        for (k, alpha), rec in idx.instances.items():
            if alpha * 2**k >= 64:
                assert rec.inst is None or rec.cuts.size < idx.n // 2**k

    def test_shortening_keeps_a_power(self):
        w = [0] * 256
        idx = build_index(w, mode="compact")
        for (k, alpha), rec in idx.instances.items():
            assert rec.inst is not None
            # deep explicit spine: documents survive unshortened
            assert np.all(rec.cuts == 1)

    def test_shortened_never_longer(self):
        rng = random.Random(13)
        w = [rng.randrange(3) for _ in range(200)]
        idx = build_index(w, mode="compact")
        for rec in idx.instances.values():
            if rec.inst is None:
                continue
            assert np.all(rec.inst.gst.docs.full_lens <= rec.ell)


class TestProbeBound:
    def test_probe_counter_bounded(self):
        from stindex.metrics import PROBES

        rng = random.Random(3)
        w = [rng.randrange(2) for _ in range(300)]
        idx = build_index(w)
        worst = 0
        for _ in range(500):
            i = rng.randint(1, 300)
            j = rng.randint(i, 300)
            _, used = PROBES.measure(idx.substring_locus, i, j)
            worst = max(worst, used)
        assert worst <= 64, worst
