"""Sparse bit vector with rank/select answered in ~t probes.

The structure is a recursive packed decomposition: the universe is cut into
top-level buckets of size W^t; each non-empty bucket holds a tree of
occupancy words (one machine word of child-occupancy bits plus partial sums
per present child) down to leaf words of actual bits.  Population counts on
single words replace the universal lookup table.

Space is O(t*M + N/W^t) words; select is answered from an explicit table.
"""

import numpy as np

from .metrics import PROBES, array_words

WORD = 64


class PackedRankSelect:
    def __init__(self, universe_size, ones, t=2):
        if t < 1:
            raise ValueError("t must be >= 1")
        ones = np.asarray(ones, dtype=np.int64)
        if ones.size:
            if np.any(np.diff(ones) <= 0):
                raise ValueError("one-indices must be strictly increasing")
            if ones[0] < 1 or ones[-1] > universe_size:
                raise ValueError("one-indices out of [1, N]")
        self.N = int(universe_size)
        self.M = int(ones.size)
        self.t = int(t)
        self.select_table = ones
        self._build(ones)

    # -- construction ------------------------------------------------------

    def _build(self, ones):
        t = self.t
        bucket = WORD**t
        nb = max(1, -(-self.N // bucket))
        self.top_sums = np.zeros(nb, dtype=np.int64)
        self.top_child = np.full(nb, -1, dtype=np.int64)
        words, psums, kids = [], [], []  # per-node records
        if self.M:
            b_ids = (ones - 1) // bucket
            starts = np.searchsorted(b_ids, np.arange(nb))
            counts = np.diff(np.append(starts, self.M))
            self.top_sums[1:] = np.cumsum(counts)[:-1]
            for j in np.nonzero(counts)[0]:
                lo, hi = starts[j], starts[j] + counts[j]
                local = ones[lo:hi] - 1 - int(j) * bucket  # 0-based within bucket
                self.top_child[j] = _make_node(local, t, words, psums, kids)
        self.node_B = np.asarray(words, dtype=np.uint64)
        lens_p = [len(p) for p in psums]
        lens_c = [len(c) for c in kids]
        self.psum_start = np.concatenate(([0], np.cumsum(lens_p))).astype(np.int64)
        self.child_start = np.concatenate(([0], np.cumsum(lens_c))).astype(np.int64)
        self.psums = np.asarray([x for p in psums for x in p], dtype=np.int64)
        self.children = np.asarray([x for c in kids for x in c], dtype=np.int64)

    # -- queries -----------------------------------------------------------

    def rank(self, i):
        """Number of ones at positions <= i, for 0 <= i <= N."""
        if i < 0 or i > self.N:
            raise ValueError(f"rank position {i} outside [0, {self.N}]")
        if i == 0 or self.M == 0:
            return 0
        bucket = WORD**self.t
        j = (i - 1) // bucket
        PROBES.hit()
        total = int(self.top_sums[j])
        node = int(self.top_child[j])
        if node < 0:
            return total
        local = (i - 1) % bucket + 1  # count ones at local positions 1..local
        u = self.t
        while u > 1:
            PROBES.hit()
            B = int(self.node_B[node])
            sub = WORD ** (u - 1)
            c = (local - 1) // sub
            r = (B & ((1 << c) - 1)).bit_count()
            total += int(self.psums[self.psum_start[node] + r])
            if not (B >> c) & 1:
                return total
            node = int(self.children[self.child_start[node] + r])
            local = (local - 1) % sub + 1
            u -= 1
        PROBES.hit()
        B = int(self.node_B[node])
        return total + (B & ((1 << local) - 1)).bit_count()

    def select(self, k):
        """Position of the k-th one, 1 <= k <= M."""
        if k < 1 or k > self.M:
            raise ValueError(f"select rank {k} outside [1, {self.M}]")
        PROBES.hit()
        return int(self.select_table[k - 1])

    def words(self):
        return array_words(self.top_sums, self.top_child, self.select_table,
                           self.node_B, self.psum_start, self.psums,
                           self.child_start, self.children)


def _make_node(values, u, words, psums, kids):
    """Pack sorted 0-based values from a universe of size WORD**u."""
    nid = len(words)
    words.append(0)
    psums.append([])
    kids.append([])
    if u == 1:
        w = 0
        for v in values:
            w |= 1 << int(v)
        words[nid] = w
        return nid
    sub = WORD ** (u - 1)
    cids = values // sub
    w = 0
    ps = [0]
    groups = []
    start = 0
    while start < len(values):
        c = int(cids[start])
        end = start
        while end < len(values) and cids[end] == c:
            end += 1
        w |= 1 << c
        ps.append(ps[-1] + (end - start))
        groups.append(values[start:end] - c * sub)
        start = end
    words[nid] = w
    psums[nid] = ps
    kids[nid] = [_make_node(g, u - 1, words, psums, kids) for g in groups]
    return nid


def build_packed_rank_select(one_indices, universe_size, t=2):
    return PackedRankSelect(universe_size, one_indices, t=t)
