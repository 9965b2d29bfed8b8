"""Generic tree machinery: level ancestor, the small-set constant-time
predecessor stand-in, and marked-ancestor predecessor/successor search via a
micro-macro decomposition.

Trees come in as parent arrays (root parent = -1) with a weight per node;
weights strictly increase from root to leaf, so sorting by weight is a
topological order.
"""

from bisect import bisect_left, bisect_right

import numpy as np

from . import kernels
from .metrics import PROBES, array_words

MICRO_CAP = 64  # micro trees must fit one machine-word bitmask


class LevelAncestorIndex:
    """Ladder decomposition plus power-of-two jump pointers: two probes per
    query.  The jump table is O(n log n) words; this index backs the generic
    tree API and the verification suites, not the per-instance query path."""

    def __init__(self, parents):
        par = np.asarray(parents, dtype=np.int64)
        n = int(par.size)
        order = np.flatnonzero(par == -1)
        if order.size != 1:
            raise ValueError("exactly one root required")
        self.par = par
        depth = np.zeros(n, dtype=np.int64)
        topo = self._topo_order(par)
        for v in topo:
            p = int(par[v])
            if p != -1:
                depth[v] = depth[p] + 1
        self.depth = depth
        # long-path decomposition
        height = np.zeros(n, dtype=np.int64)
        long_child = np.full(n, -1, dtype=np.int64)
        for v in topo[::-1]:
            p = int(par[v])
            if p != -1 and height[v] + 1 > height[p]:
                height[p] = height[v] + 1
                long_child[p] = v
        head = np.empty(n, dtype=np.int64)
        for v in topo:
            p = int(par[v])
            if p == -1 or int(long_child[p]) != v:
                head[v] = v
            else:
                head[v] = head[p]
        # ladders: each path doubled upward
        self.ladder_of = np.full(n, -1, dtype=np.int64)
        self.ladder_idx = np.full(n, -1, dtype=np.int64)
        ladders = []
        for h in np.flatnonzero(head == np.arange(n)):
            path = []
            v = int(h)
            while v != -1 and head[v] == h:
                path.append(v)
                v = int(long_child[v])
            ext = []
            u = int(par[h])
            for _ in range(len(path)):
                if u == -1:
                    break
                ext.append(u)
                u = int(par[u])
            lad = np.asarray(ext[::-1] + path, dtype=np.int64)
            lid = len(ladders)
            ladders.append(lad)
            for i, v in enumerate(path):
                self.ladder_of[v] = lid
                self.ladder_idx[v] = len(ext) + i
        self.ladders = ladders
        # jump table: 2^j-th ancestors
        levels = max(1, int(depth.max()).bit_length()) if n else 1
        jump = np.full((levels, n), -1, dtype=np.int64)
        jump[0] = par
        for j in range(1, levels):
            prev = jump[j - 1]
            jump[j] = np.where(prev >= 0, prev[np.maximum(prev, 0)], -1)
        self.jump = jump

    @staticmethod
    def _topo_order(par):
        n = int(par.size)
        order = []
        children = [[] for _ in range(n)]
        root = -1
        for v in range(n):
            p = int(par[v])
            if p == -1:
                root = v
            else:
                children[p].append(v)
        stack = [root]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(children[v])
        return np.asarray(order, dtype=np.int64)

    def query(self, v, d):
        """Ancestor of v at tree depth d (0 = root)."""
        dv = int(self.depth[v])
        if not (0 <= d <= dv):
            raise ValueError(f"depth {d} not on the root path of node {v}")
        if d == dv:
            return int(v)
        delta = dv - d
        j = delta.bit_length() - 1
        PROBES.hit()
        u = int(self.jump[j][v])
        lad = self.ladders[int(self.ladder_of[u])]
        PROBES.hit()
        k = int(self.ladder_idx[u]) - (int(self.depth[u]) - d)
        return int(lad[k])

    def words(self):
        return array_words(self.par, self.depth, self.ladder_of, self.ladder_idx,
                           self.jump, *self.ladders)


def build_level_ancestor(parents):
    return LevelAncestorIndex(parents)


def level_ancestor(idx, v, d):
    return idx.query(v, d)


def small_set_predecessor(sorted_values, x):
    """Predecessor in a polylog-size set; the atomic-heap contract: counted
    as a single probe."""
    PROBES.hit()
    r = bisect_right(sorted_values, x)
    if r == 0:
        return None
    return r, sorted_values[r - 1]


class MarkedPredIndex:
    """Predecessor/successor by weight among the marked ancestors of a node.

    Micro-macro decomposition: O(n / cap) macro nodes each carrying the full
    sorted list of its marked ancestors; micro trees of <= cap nodes answered
    by one word-wide bitmask per node over the micro tree's weight list.
    """

    def __init__(self, parents, weights, marked, cap=MICRO_CAP):
        par = np.asarray(parents, dtype=np.int64)
        w = np.asarray(weights, dtype=np.int64)
        mk = np.asarray(marked, dtype=np.uint8)
        n = int(par.size)
        self.weight = w.astype(np.int32)
        order = np.argsort(w, kind="stable")
        if n and int(par[order[0]]) != -1:
            raise ValueError("weights must increase from the root")
        macro = kernels.macro_select(par, order, cap)
        first_macro, micro_id, nearest = kernels.marked_chases(par, order, mk, macro)
        # per-micro sorted weight lists with node ids (micro ids compacted)
        rows = np.flatnonzero(micro_id >= 0)
        self.micro_slot = np.full(n, -1, dtype=np.int32)
        if rows.size:
            key = np.lexsort((w[rows], micro_id[rows]))
            rows = rows[key]
            mids = micro_id[rows]
            boundary = np.r_[True, mids[1:] != mids[:-1]]
            starts = np.flatnonzero(boundary)
            slot_of_row = (np.cumsum(boundary) - 1).astype(np.int64)
            self.micro_start = np.append(starts, rows.size).astype(np.int64)
            pos = np.arange(rows.size, dtype=np.int64)
            pos -= np.maximum.accumulate(np.where(boundary, pos, 0))
            self.micro_rows = rows.astype(np.int32)
            self.micro_w = w[rows].astype(np.int32)
            self.micro_slot[rows] = slot_of_row
            posfull = np.zeros(n, dtype=np.int64)
            posfull[rows] = pos
            if np.any(pos >= cap):
                raise AssertionError("micro tree exceeded the word width")
        else:
            self.micro_start = np.zeros(1, dtype=np.int64)
            self.micro_rows = np.empty(0, dtype=np.int32)
            self.micro_w = np.empty(0, dtype=np.int32)
            posfull = np.zeros(n, dtype=np.int64)
        self.B = kernels.micro_masks(par, order, micro_id, mk, posfull)
        # per-macro heaps of marked ancestors, as one CSR (ascending weights)
        mark_par = np.full(n, -1, dtype=np.int64)
        has_par = par >= 0
        mark_par[has_par] = nearest[par[has_par]]
        macros = np.flatnonzero(macro).astype(np.int64)
        hs, hf = kernels.mark_heaps(macros, nearest, mark_par)
        self.macro_slot = np.full(n, -1, dtype=np.int32)
        self.macro_slot[macros] = np.arange(macros.size, dtype=np.int32)
        # chases walk deepest-first: reverse each segment
        rev = np.concatenate([hf[hs[i]:hs[i + 1]][::-1] for i in range(macros.size)]) \
            if hf.size else hf
        self.heap_start = hs
        self.heap_node = rev.astype(np.int32)
        self.heap_w = w[rev].astype(np.int32) if rev.size else rev.astype(np.int32)
        self.first_macro_slot = self.macro_slot[first_macro].astype(np.int32)
        lens = np.diff(hs)
        # mark density precondition: O(log n) marks per root path (the band
        # grid contributes up to ~15 marks per depth octave)
        limit = 16 * max(1, n.bit_length()) + 32
        if lens.size and int(lens.max()) > limit:
            raise ValueError("too many marked nodes on a root path")

    def search(self, v, x, direction="pred"):
        """Deepest marked ancestor-or-self of v with weight <= x ("pred") or
        the shallowest with weight >= x ("succ"); node id or -1."""
        v = int(v)
        ms = int(self.micro_slot[v])
        micro_hit = -1
        if ms != -1:
            s, e = int(self.micro_start[ms]), int(self.micro_start[ms + 1])
            PROBES.hit()
            ws = self.micro_w[s:e]
            if direction == "pred":
                i = bisect_right(ws, x)
                mask = int(self.B[v]) & ((1 << i) - 1)
                if mask:
                    micro_hit = int(self.micro_rows[s + mask.bit_length() - 1])
            else:
                i = bisect_left(ws, x)
                mask = int(self.B[v]) >> i << i
                if mask:
                    lowbit = (mask & -mask).bit_length() - 1
                    micro_hit = int(self.micro_rows[s + lowbit])
        if direction == "pred" and micro_hit != -1:
            return micro_hit  # in-micro hits are deeper than anything macro
        slot = int(self.first_macro_slot[v])
        s, e = int(self.heap_start[slot]), int(self.heap_start[slot + 1])
        ws = self.heap_w[s:e]
        PROBES.hit()
        if direction == "pred":
            i = bisect_right(ws, x)
            return int(self.heap_node[s + i - 1]) if i else -1
        i = bisect_left(ws, x)
        if i < ws.size:
            return int(self.heap_node[s + i])
        return micro_hit

    def words(self):
        return array_words(self.first_macro_slot, self.micro_slot, self.B,
                           self.micro_rows, self.micro_w, self.micro_start,
                           self.heap_start, self.heap_node, self.heap_w,
                           self.weight, self.macro_slot)


def build_marked_pred(parents, weights, marks, cap=MICRO_CAP):
    return MarkedPredIndex(parents, weights, marks, cap=cap)


def marked_pred_search(idx, v, x, direction="pred"):
    return idx.search(v, x, direction)
