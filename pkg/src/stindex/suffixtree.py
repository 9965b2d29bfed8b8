"""Suffix trees and generalised suffix trees over integer alphabets.

The tree is an arena: internal nodes 0..n_int-1 (0 = root) with parent,
string depth, SA interval, leaf count and suffix link; leaves are implicit
rows n_int + pos where pos is the position in the concatenated document
text, so leaf ids of one document are contiguous and ordered by offset.

Construction: suffix array (SA-IS in the compiled kernels, prefix doubling
in the fallback) + Kasai LCP + one-pass stack lifting.  Because document
separators are unique, truncated leaf depths can be fed straight to the
lifting pass and the result is the generalised suffix tree.
"""

from typing import NamedTuple

import numpy as np

from . import kernels
from .metrics import PROBES, array_words
from .strops import SEPARATOR_BASE

BIG = kernels.BIG


class Locus(NamedTuple):
    """Position in a suffix tree: an explicit node or a point on an edge."""

    kind: str  # "explicit" | "implicit"
    node: int  # explicit node row (or -1)
    upper: int  # edge upper endpoint (implicit only)
    child: int  # edge lower endpoint (implicit only)
    depth: int  # string depth of the locus

    @staticmethod
    def explicit(node, depth):
        return Locus("explicit", int(node), -1, -1, int(depth))

    @staticmethod
    def implicit(upper, child, depth):
        return Locus("implicit", -1, int(upper), int(child), int(depth))

    def canonical_id(self, n_rows):
        """Integer id, unique per locus: node row, or n_rows + edge-child row."""
        if self.kind == "explicit":
            return self.node
        return n_rows + self.child


class DocumentSet:
    """Documents as master-text intervals (plus optional padding) or as
    explicit symbol arrays.  Each document is terminated by its own separator
    symbol; padding uses one further symbol shared within the collection."""

    def __init__(self, master=None, intervals=None, contents=None, ell=None):
        self.master = None if master is None else np.asarray(master, dtype=np.int32)
        if contents is not None:
            self.contents = [np.asarray(c, dtype=np.int32) for c in contents]
            self.starts = None
            self.text_lens = np.array([c.size for c in self.contents], dtype=np.int64)
            self.full_lens = self.text_lens.copy()
        else:
            self.contents = None
            iv = np.asarray(intervals, dtype=np.int64).reshape(-1, 3)
            self.starts = iv[:, 0]  # 1-based master position
            self.text_lens = iv[:, 1]
            self.full_lens = iv[:, 2]
        if np.any(self.text_lens < 1):
            raise ValueError("documents must be nonempty")
        self.beta = int(self.full_lens.size)
        self.ell = int(ell if ell is not None else self.full_lens.max())
        self.pad_symbol = SEPARATOR_BASE + self.beta + 1

    def separator(self, d):
        return SEPARATOR_BASE + 1 + d

    def symbol(self, d, pos):
        """1-based symbol of document d including padding and separator."""
        t, f = int(self.text_lens[d]), int(self.full_lens[d])
        if pos <= t:
            if self.contents is not None:
                return int(self.contents[d][pos - 1])
            return int(self.master[self.starts[d] - 1 + pos - 1])
        if pos <= f:
            return self.pad_symbol
        if pos == f + 1:
            return self.separator(d)
        raise ValueError(f"position {pos} outside document {d}")

    def concat(self):
        """Concatenated text w_0 $_0 w_1 $_1 ... as int32, plus doc offsets."""
        total = int(np.sum(self.full_lens)) + self.beta
        out = np.empty(total, dtype=np.int32)
        starts = np.empty(self.beta + 1, dtype=np.int64)
        at = 0
        for d in range(self.beta):
            starts[d] = at
            t, f = int(self.text_lens[d]), int(self.full_lens[d])
            if self.contents is not None:
                out[at : at + t] = self.contents[d]
            else:
                s = int(self.starts[d]) - 1
                out[at : at + t] = self.master[s : s + t]
            if f > t:
                out[at + t : at + f] = self.pad_symbol
            out[at + f] = self.separator(d)
            at += f + 1
        starts[self.beta] = at
        return out, starts

    def words(self):
        return array_words(self.starts, self.text_lens, self.full_lens)


class SuffixTree:
    def __init__(self):
        self.docs = None
        self.n_int = 0
        self.m = 0

    # -- construction ------------------------------------------------------

    @classmethod
    def build(cls, docs, track_duplicates=True, retain_text=False, retain_debug=False,
              concat=None):
        self = cls()
        self.docs = docs
        text, cstarts = docs.concat() if concat is None else concat
        m = int(text.size)
        self.m = m
        self.doc_cstart = cstarts
        sa = kernels.suffix_array(text, int(text.max()) + 1)
        lcp = kernels.lcp_array(text, sa)
        # per concat position: owning document and truncated leaf string depth
        docid = np.repeat(np.arange(docs.beta, dtype=np.int32),
                          (docs.full_lens + 1).astype(np.int64))
        ends = cstarts[1:] - 1  # separator position of each doc
        lsdep = (ends[docid] - np.arange(m) + 1).astype(np.int32)
        if track_duplicates and docs.beta >= 1:
            dr = docid[sa].astype(np.int64)
            idx = np.argsort(dr, kind="stable")
            aux = np.full(m, BIG, dtype=np.int64)
            same = dr[idx[1:]] == dr[idx[:-1]]
            aux[idx[:-1][same]] = idx[1:][same]
        else:
            aux = np.full(m, BIG, dtype=np.int64)
        ipar, isdep, sal, sar, cnt, minaux, lpar = kernels.build_tree(
            sa, lcp, lsdep[sa], aux)
        n_int = int(ipar.size)
        self.n_int = n_int
        self.ipar = ipar.astype(np.int32)
        self.isdep = isdep.astype(np.int32)
        self.sal = sal.astype(np.int32)
        self.sar = sar.astype(np.int32)
        self.cnt = cnt.astype(np.int32)
        self.dup = (minaux <= sar).astype(np.uint8)
        self.lpar = lpar.astype(np.int32)
        self.lsdep = lsdep.astype(np.int32)
        self.sa = sa.astype(np.int32)
        self.docid = docid
        # children in (parent, first symbol) order; text symbols sort first
        child_rows = np.concatenate([np.arange(1, n_int, dtype=np.int64),
                                     n_int + np.arange(m, dtype=np.int64)])
        par_rows = np.concatenate([ipar[1:], lpar])
        sym_pos = np.concatenate([
            self.sa[sal[1:]] + isdep[ipar[1:]],
            np.arange(m, dtype=np.int64) + isdep[lpar],
        ])
        syms = text[sym_pos].astype(np.int64)
        order = np.lexsort((syms, par_rows))
        counts = np.bincount(par_rows, minlength=n_int)
        self.cs_start = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        self.ch_node = child_rows[order].astype(np.int32)
        self.ch_sym = syms[order].astype(np.int32)
        self._build_slinks()
        self.text = text if retain_text else None
        self.retain_debug = retain_debug
        return self

    def _build_slinks(self):
        n_int = self.n_int
        self.slink = np.full(n_int, 0, dtype=np.int32)
        deep = np.nonzero(self.isdep[1:] >= 2)[0] + 1
        if deep.size == 0:
            return
        qpos = self.sa[self.sal[deep]] + 1
        qdep = self.isdep[deep] - 1
        upper, _ = self.batch_path_lookup(qpos, qdep)
        ok = (upper < n_int) & (self.isdep[np.minimum(upper, n_int - 1)] == qdep)
        if not np.all(ok):
            raise AssertionError("suffix link target missing")
        self.slink[deep] = upper

    # -- generic helpers ---------------------------------------------------

    def batch_path_lookup(self, q_pos, q_depth):
        """For each (leaf position, depth): deepest root-path node with
        string depth <= depth, plus the next node below it on the path."""
        q_pos = np.asarray(q_pos, dtype=np.int64)
        q_depth = np.asarray(q_depth, dtype=np.int64)
        order = np.argsort(q_pos, kind="stable")
        counts = np.bincount(q_pos, minlength=self.m)
        q_start = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        return kernels.stack_queries(self.cs_start, self.ch_node, self.isdep,
                                     self.lsdep, self.n_int,
                                     q_start, q_depth[order], order.astype(np.int64))

    def leaf_row(self, doc, offset):
        """Leaf of w_doc[offset..]; offset is 1-based, separator included."""
        if not (0 <= doc < self.docs.beta):
            raise ValueError(f"document {doc} out of range")
        if not (1 <= offset <= int(self.docs.full_lens[doc]) + 1):
            raise ValueError(f"offset {offset} outside document {doc}")
        return self.n_int + int(self.doc_cstart[doc]) + offset - 1

    def leaf_doc_offset(self, row):
        pos = row - self.n_int
        d = int(self.docid[pos])
        return d, pos - int(self.doc_cstart[d]) + 1

    def sdepth(self, row):
        if row < self.n_int:
            return int(self.isdep[row])
        return int(self.lsdep[row - self.n_int])

    def parent(self, row):
        if row < self.n_int:
            return int(self.ipar[row])
        return int(self.lpar[row - self.n_int])

    def leaf_slink(self, row):
        """Suffix link of a leaf: the leaf of the next offset, or the root."""
        pos = row - self.n_int
        if int(self.lsdep[pos]) == 1:
            return 0
        return row + 1

    def child_by_symbol(self, row, sym):
        """Child of `row` whose edge starts with `sym`, or -1.  Binary search
        over at most sigma text children: one bounded probe."""
        lo, hi = int(self.cs_start[row]), int(self.cs_start[row + 1])
        PROBES.hit()
        ch_sym = self.ch_sym
        while lo < hi:
            mid = (lo + hi) // 2
            v = int(ch_sym[mid])
            if v == sym:
                return int(self.ch_node[mid])
            if v < sym:
                lo = mid + 1
            else:
                hi = mid
        return -1

    def n_rows(self):
        return self.n_int + self.m

    def occurrences(self, locus):
        """Starting (doc, offset) pairs of the substring at `locus`."""
        row = locus.node if locus.kind == "explicit" else locus.child
        if row >= self.n_int:
            return [self.leaf_doc_offset(row)]
        out = []
        for r in range(int(self.sal[row]), int(self.sar[row]) + 1):
            pos = int(self.sa[r])
            d = int(self.docid[pos])
            out.append((d, pos - int(self.doc_cstart[d]) + 1))
        return out

    # -- the test/verification oracle --------------------------------------

    def naive_locus(self, doc, i, j):
        """Locus of w_doc[i..j] by a verified root walk; O(j - i) oracle."""
        res = self.naive_locus_batch([(doc, i, j)])
        return res[0]

    def naive_locus_batch(self, queries):
        if self.text is None:
            text, _ = self.docs.concat()
        else:
            text = self.text
        q_pos = np.array([int(self.doc_cstart[d]) + i - 1 for d, i, _ in queries],
                         dtype=np.int64)
        q_len = np.array([j - i + 1 for _, i, j in queries], dtype=np.int64)
        if np.any(q_len < 1):
            raise ValueError("empty query substring")
        up, node = kernels.naive_locus_batch(
            self.cs_start, self.ch_node, self.ch_sym, self.isdep, self.lsdep,
            self.n_int, self.sal, self.sa, text, q_pos, q_len)
        out = []
        for k in range(len(queries)):
            if up[k] < 0:
                out.append(Locus.explicit(node[k], q_len[k]))
            else:
                out.append(Locus.implicit(up[k], node[k], q_len[k]))
        return out

    def strip(self):
        """Drop build-only arrays once the query structures are assembled."""
        self.sal = self.sar = self.cnt = self.dup = None
        self.slink = self.sa = self.docid = None

    def words(self):
        w = array_words(self.ipar, self.isdep, self.sal, self.sar, self.cnt,
                        self.lpar, self.lsdep, self.sa, self.docid,
                        self.cs_start, self.ch_node, self.ch_sym, self.slink,
                        self.doc_cstart)
        if self.docs is not None:
            w += self.docs.words()
        return w


def build_suffix_tree(w, retain_text=True):
    """ST(w$) for a single string w of byte symbols."""
    w = np.asarray(w, dtype=np.int32)
    if w.size < 1:
        raise ValueError("text must be nonempty")
    docs = DocumentSet(master=w, intervals=[(1, w.size, w.size)])
    return SuffixTree.build(docs, track_duplicates=False, retain_text=retain_text)


def build_gst(docs, retain_text=False, retain_debug=False, concat=None):
    return SuffixTree.build(docs, track_duplicates=True, retain_text=retain_text,
                            retain_debug=retain_debug, concat=concat)
