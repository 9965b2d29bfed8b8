import random

import numpy as np
import pytest

from stindex.treetools import (LevelAncestorIndex, MarkedPredIndex, build_level_ancestor,
                               build_marked_pred, level_ancestor, marked_pred_search,
                               small_set_predecessor)


def random_tree(rng, n, wstep=3):
    par = np.full(n, -1, dtype=np.int64)
    w = np.zeros(n, dtype=np.int64)
    for v in range(1, n):
        p = rng.randrange(v)
        par[v] = p
        w[v] = w[p] + rng.randint(1, wstep)
    return par, w


def walk_depth(par, v):
    d = 0
    while par[v] != -1:
        v = par[v]
        d += 1
    return d


def scan_marked(par, w, marked, v, x, direction):
    best = -1
    u = v
    while u != -1:
        if marked[u]:
            if direction == "pred" and w[u] <= x:
                best = u
                break  # first hit walking up from below... need deepest: walk up gives deepest first
            if direction == "succ" and w[u] >= x:
                best = u  # keep going: shallower = smaller weight, want smallest >= x
        u = int(par[u])
    return best


class TestLevelAncestor:
    def test_path_example(self):
        par = np.array([-1, 0, 1, 2])  # a -> b -> c -> d
        idx = build_level_ancestor(par)
        assert level_ancestor(idx, 3, 1) == 1
        assert level_ancestor(idx, 3, 0) == 0
        assert level_ancestor(idx, 2, 2) == 2  # identity

    def test_identity(self):
        rng = random.Random(1)
        par, _ = random_tree(rng, 50)
        idx = build_level_ancestor(par)
        for v in range(50):
            assert level_ancestor(idx, v, idx.depth[v]) == v

    def test_rejects_bad_depth(self):
        idx = build_level_ancestor(np.array([-1, 0]))
        with pytest.raises(ValueError):
            level_ancestor(idx, 1, 2)

    def test_random_trees_vs_parent_walk(self):
        rng = random.Random(2)
        for _ in range(15):
            n = rng.randint(1, 1000)
            par, _ = random_tree(rng, n)
            idx = build_level_ancestor(par)
            # full agreement with the parent-walk oracle
            for v in rng.sample(range(n), min(n, 60)):
                path = [v]
                u = v
                while par[u] != -1:
                    u = int(par[u])
                    path.append(u)
                path.reverse()
                for d in range(len(path)):
                    assert level_ancestor(idx, v, d) == path[d]


class TestSmallSetPredecessor:
    def test_examples(self):
        assert small_set_predecessor([2, 5, 9], 6) == (2, 5)
        assert small_set_predecessor([2, 5, 9], 1) is None

    def test_against_naive(self):
        from stindex.predsets import naive_predecessor

        rng = random.Random(3)
        for _ in range(200):
            s = sorted(rng.sample(range(1, 100), rng.randint(1, 20)))
            x = rng.randint(0, 101)
            got = small_set_predecessor(s, x)
            want = naive_predecessor(s, x)
            assert got == want


class TestMarkedPred:
    def test_chain_example(self):
        # chain with marks at weights {2, 5, 9}
        par = np.array([-1, 0, 1, 2, 3, 4])
        w = np.array([0, 2, 4, 5, 8, 9])
        marked = np.array([0, 1, 0, 1, 0, 1], dtype=np.uint8)
        idx = build_marked_pred(par, w, marked)
        assert idx.weight[marked_pred_search(idx, 5, 6)] == 5
        assert marked_pred_search(idx, 5, 1, "pred") == -1  # below all marks
        assert idx.weight[marked_pred_search(idx, 5, 6, "succ")] == 9
        assert idx.weight[marked_pred_search(idx, 5, 2, "pred")] == 2

    def test_random_trees_vs_scan(self):
        rng = random.Random(4)
        for trial in range(25):
            n = rng.randint(2, 1000)
            par, w = random_tree(rng, n)
            marked = np.zeros(n, dtype=np.uint8)
            # keep mark density low on every root path
            for v in range(n):
                if rng.random() < 0.05:
                    marked[v] = 1
            try:
                idx = build_marked_pred(par, w, marked, cap=rng.choice([4, 16, 64]))
            except ValueError:
                continue  # density precondition tripped; fine for random marks
            for _ in range(200):
                v = rng.randrange(n)
                x = rng.randint(-1, int(w.max()) + 2)
                for direction in ("pred", "succ"):
                    got = marked_pred_search(idx, v, x, direction)
                    want = scan_marked(par, w, marked, v, x, direction)
                    assert got == want, (trial, v, x, direction)

    def test_bracket_property(self):
        rng = random.Random(5)
        par, w = random_tree(rng, 300)
        marked = (np.random.RandomState(9).rand(300) < 0.04).astype(np.uint8)
        idx = build_marked_pred(par, w, marked)
        for v in range(300):
            for x in range(0, int(w.max()) + 1, 7):
                p = marked_pred_search(idx, v, x, "pred")
                s = marked_pred_search(idx, v, x, "succ")
                if p != -1 and s != -1:
                    assert idx.weight[p] <= x <= idx.weight[s]

    def test_density_precondition(self):
        n = 600
        par = np.full(n, -1, dtype=np.int64)
        par[1:] = np.arange(n - 1)  # one long chain
        w = np.arange(n, dtype=np.int64)
        marked = np.ones(n, dtype=np.uint8)
        with pytest.raises(ValueError, match="marked"):
            build_marked_pred(par, w, marked)
