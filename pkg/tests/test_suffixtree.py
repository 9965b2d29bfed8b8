import random

import numpy as np
import pytest

from oracles import suffix_trie, trie_locus
from stindex.suffixtree import DocumentSet, Locus, build_gst, build_suffix_tree


def sym(text):
    return [ord(c) for c in text]


def node_string(st, row):
    """Spelled string of an explicit node, via its leftmost leaf."""
    d = st.sdepth(row)
    if row >= st.n_int:
        pos = row - st.n_int
    else:
        pos = int(st.sa[st.sal[row]])
    text, _ = st.docs.concat()
    return tuple(int(x) for x in text[pos : pos + d])


def tree_fingerprint(st):
    internals = {node_string(st, v) for v in range(st.n_int)}
    leaves = {node_string(st, st.n_int + p) for p in range(st.m)}
    return internals, leaves


def docs_with_separators(st):
    out = []
    for d in range(st.docs.beta):
        s = [st.docs.symbol(d, p) for p in range(1, int(st.docs.full_lens[d]) + 2)]
        out.append(tuple(s))
    return out


class TestBuild:
    def test_abracadabra_shape(self):
        st = build_suffix_tree(sym("abracadabra"))
        assert st.m == 12  # 12 leaves
        assert st.n_int == 5  # root, a, abra, bra, ra
        internals, _ = tree_fingerprint(st)
        sep = st.docs.separator(0)
        want = {(), tuple(sym("a")), tuple(sym("abra")), tuple(sym("bra")), tuple(sym("ra"))}
        assert internals == want

    def test_single_symbol(self):
        st = build_suffix_tree(sym("a"))
        assert st.n_int == 1
        assert st.m == 2  # a$ and $

    def test_random_vs_trie_oracle(self):
        rng = random.Random(6)
        for trial in range(40):
            n = rng.randint(1, 200)
            sigma = rng.choice([1, 2, 4, 26])
            w = [rng.randrange(sigma) for _ in range(n)]
            st = build_suffix_tree(w)
            internal, leaves = suffix_trie(docs_with_separators(st))
            got_int, got_leaves = tree_fingerprint(st)
            assert got_int == internal
            assert got_leaves == leaves

    def test_gst_two_docs_leaves(self):
        docs = DocumentSet(contents=[sym("ab"), sym("b")])
        st = build_gst(docs)
        assert st.m == 5  # ab$1, b$1, $1, b$2, $2
        # leaf round trip
        for d in range(2):
            for off in range(1, int(docs.full_lens[d]) + 2):
                row = st.leaf_row(d, off)
                assert st.leaf_doc_offset(row) == (d, off)

    def test_gst_random_vs_oracle(self):
        rng = random.Random(13)
        for trial in range(25):
            beta = rng.randint(1, 6)
            docs = DocumentSet(contents=[
                [rng.randrange(3) for _ in range(rng.randint(1, 60))] for _ in range(beta)
            ])
            st = build_gst(docs)
            internal, leaves = suffix_trie(docs_with_separators(st))
            got_int, got_leaves = tree_fingerprint(st)
            assert got_int == internal
            assert got_leaves == leaves

    def test_fig3_family_builds(self):
        ell = 8
        docs = DocumentSet(contents=[
            sym(("a" * (ell - i) + "b" + "a" * (i - 1)) * 4) for i in range(1, ell + 1)
        ])
        st = build_gst(docs)
        assert st.docs.beta == 8
        assert st.m == 8 * 33


class TestInvariants:
    def build_random(self, rng, beta=4, ln=40):
        docs = DocumentSet(contents=[
            [rng.randrange(2) for _ in range(rng.randint(2, ln))] for _ in range(beta)
        ])
        return build_gst(docs)

    def test_suffix_link_depths(self):
        rng = random.Random(3)
        for _ in range(20):
            st = self.build_random(rng)
            for v in range(1, st.n_int):
                t = int(st.slink[v])
                assert int(st.isdep[t]) == int(st.isdep[v]) - 1

    def test_leaf_counts(self):
        rng = random.Random(4)
        st = self.build_random(rng, beta=5)
        # recompute by brute force over leaf ancestors
        cnt = np.zeros(st.n_int, dtype=np.int64)
        for pos in range(st.m):
            v = int(st.lpar[pos])
            while v != -1:
                cnt[v] += 1
                v = int(st.ipar[v])
        assert np.array_equal(cnt, st.cnt)

    def test_dv_correspondence(self):
        # x in D(v), x > 0 implies x - 1 in D(link(v)), for consecutive suffix leaves
        rng = random.Random(5)
        for _ in range(10):
            st = self.build_random(rng, beta=3)
            for d in range(st.docs.beta):
                for off in range(1, int(st.docs.full_lens[d]) + 1):
                    v = st.leaf_row(d, off)
                    u = st.leaf_slink(v)
                    dv = set()
                    r = v
                    while r != -1 and r != 0:
                        dv.add(st.sdepth(r))
                        r = st.parent(r)
                    du = set()
                    r = u
                    while r != -1 and r != 0:
                        du.add(st.sdepth(r))
                        r = st.parent(r)
                    for x in dv:
                        if 0 < x - 1 <= st.sdepth(u):
                            assert x - 1 in du or x - 1 == 0


class TestNaiveLocus:
    def test_spec_examples(self):
        st = build_suffix_tree(sym("abracadabra"))
        loc = st.naive_locus(0, 1, 4)
        assert loc.kind == "explicit"
        assert node_string(st, loc.node) == tuple(sym("abra"))
        loc = st.naive_locus(0, 1, 2)
        assert loc.kind == "implicit" and loc.depth == 2
        assert node_string(st, loc.upper) == tuple(sym("a"))
        assert node_string(st, loc.child) == tuple(sym("abra"))
        loc = st.naive_locus(0, 5, 7)  # "cad"
        assert loc.kind == "implicit" and loc.depth == 3
        assert loc.child >= st.n_int  # leaf edge of suffix 5
        assert st.leaf_doc_offset(loc.child) == (0, 5)

    def test_matches_trie_oracle(self):
        rng = random.Random(8)
        for trial in range(20):
            n = rng.randint(2, 60)
            w = [rng.randrange(2) for _ in range(n)]
            st = build_suffix_tree(w)
            internal, leaves = suffix_trie(docs_with_separators(st))
            for i in range(1, n + 1):
                for j in range(i, n + 1):
                    got = st.naive_locus(0, i, j)
                    want = trie_locus(internal, leaves, w[i - 1 : j])
                    if want[0] == "explicit":
                        assert got.kind == "explicit"
                        assert node_string(st, got.node) == tuple(w[i - 1 : j])
                    else:
                        assert got.kind == "implicit"
                        assert node_string(st, got.upper) == want[1]


class TestLeafLookup:
    def test_leaf_of_round_trip(self):
        st = build_suffix_tree(sym("abracadabra"))
        row = st.leaf_row(0, 1)
        assert st.sdepth(row) == 12
        with pytest.raises(ValueError):
            st.leaf_row(0, 14)
        with pytest.raises(ValueError):
            st.leaf_row(1, 1)
