"""Applications over the substring-locus index: substring search with
occurrence reporting, perfect substring hashing, and cross-document pattern
matching over a document collection."""

from typing import NamedTuple

import numpy as np

from .strops import SEPARATOR_BASE
from .waindex import WaIndex


class SubstringHash(NamedTuple):
    """Perfect hash of a substring: (canonical locus id, length).

    h(i, j) == h(i', j') iff w[i..j] == w[i'..j']; packs into 2*ceil(log2)
    bits via `packed`.
    """

    locus_id: int
    length: int

    def packed(self, id_bits):
        return (self.locus_id << id_bits) | self.length


def substring_search(idx: WaIndex, i, j, report=False):
    """Locus of w[i..j]; with report=True, also every starting position."""
    locus = idx.substring_locus(i, j)
    if not report:
        return locus, None
    occ = sorted(off for _, off in idx.master.occurrences(locus))
    return locus, occ


def substring_hash(idx: WaIndex, i, j):
    locus = idx.substring_locus(i, j)
    return SubstringHash(locus.canonical_id(idx.master.n_rows()), j - i + 1)


class CrossDocIndex:
    """Documents concatenated with unique in-text separators, indexed once;
    per-document sorted SA-rank lists intersect any locus interval."""

    SEP = 1 << 20

    def __init__(self, docs, mode="standard"):
        self.doc_lens = [len(d) for d in docs]
        if any(l < 1 for l in self.doc_lens):
            raise ValueError("documents must be nonempty")
        parts = []
        self.doc_start = []  # 1-based start of each document in w
        at = 1
        for d, doc in enumerate(docs):
            self.doc_start.append(at)
            parts.append(np.asarray(doc, dtype=np.int32))
            parts.append(np.array([self.SEP + d], dtype=np.int32))
            at += len(doc) + 1
        self.w = np.concatenate(parts)
        self.idx = WaIndex(self.w, mode=mode)
        m = self.idx.master
        self.rank_by_pos = np.empty(m.m, dtype=np.int64)
        self.rank_by_pos[m.sa] = np.arange(m.m)
        # per-document sorted rank lists with their local offsets
        self.doc_ranks = []
        self.doc_offs = []
        for d, ln in enumerate(self.doc_lens):
            s = self.doc_start[d] - 1
            ranks = self.rank_by_pos[s : s + ln]
            order = np.argsort(ranks)
            self.doc_ranks.append(ranks[order])
            self.doc_offs.append((np.arange(ln, dtype=np.int64) + 1)[order])

    def locus(self, k, i, j):
        ln = self.doc_lens[k]
        if not (1 <= i <= j <= ln):
            raise ValueError(f"({i}, {j}) outside document {k}")
        g = self.doc_start[k]
        return self.idx.substring_locus(g + i - 1, g + j - 1)

    def search(self, k, i, j, k2):
        """Occurrences of w_k[i..j] inside document k2, as sorted offsets."""
        loc = self.locus(k, i, j)
        m = self.idx.master
        row = loc.node if loc.kind == "explicit" else loc.child
        if row >= m.n_int:
            lo = hi = int(self.rank_by_pos[row - m.n_int])
        else:
            lo, hi = int(m.sal[row]), int(m.sar[row])
        ranks = self.doc_ranks[k2]
        a = int(np.searchsorted(ranks, lo, side="left"))
        b = int(np.searchsorted(ranks, hi, side="right"))
        L = j - i + 1
        out = [int(o) for o in self.doc_offs[k2][a:b]
               if o + L - 1 <= self.doc_lens[k2]]
        return sorted(out)


def cross_doc_search(gst_idx: CrossDocIndex, k, i, j, k2):
    return gst_idx.search(k, i, j, k2)
