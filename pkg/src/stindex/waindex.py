"""Top-level substring-locus index over a single text.

Standard mode (Lemma-3 style): for every block size 2^k and every reachable
multiplier alpha, one long-retrieval instance over the overlapping block
runs.  Compact mode shortens each run to its longest suffix with a deep
explicit suffix-tree ancestor (dropping runs without one) and answers the
uncovered queries from per-band marked nodes: those loci always sit on a
single long suffix-tree edge.

Every instance keeps a map from its GST nodes back to master-tree loci, so
query answers are master-tree loci in all modes.
"""

import numpy as np

from .longret import LongInstance
from .metrics import PROBES, array_words
from .suffixtree import DocumentSet, Locus, SuffixTree, build_suffix_tree
from .treetools import MarkedPredIndex

ALPHA_LO, ALPHA_HI = 8, 13
GRID_ALPHA_HI = 22  # compact-mode band grid extends past the dispatch range


def choose_instance(length):
    """(k, alpha) with (alpha-2)*2^k <= length < (alpha-1)*2^k, alpha in 8..13.

    Returns None for length < 6 (the root-walk fallback)."""
    if length < 6:
        return None
    k = (length // 6).bit_length() - 1
    alpha = (length >> k) + 2
    return k, alpha


def pick_band(length):
    """Compact-mode instance selector: the band (k, alpha) whose instance
    provably answers a length-`length` query after document shortening.

    Needs (3/4) * alpha * 2^k <= length (the query stays long) and
    (alpha-1) * 2^k >= floor(9*length/8) (the answer edge's lower endpoint,
    which sits below 9L/8, fits a kept run together with its branch
    witnesses).  Scanning alpha upward finds a valid pair for every
    length >= 6.
    """
    for alpha in range(ALPHA_LO, GRID_ALPHA_HI + 1):
        q = (4 * length) // (3 * alpha)
        if q == 0:
            continue
        k = q.bit_length() - 1
        if (alpha - 1) * (1 << k) >= (9 * length) // 8:
            return k, alpha
    raise AssertionError(f"no band instance covers length {length}")


class InstanceRecord:
    __slots__ = ("k", "alpha", "ell", "block_map", "cuts", "inst",
                 "st_kind", "st_a", "st_b", "st_entry")

    def words(self):
        w = array_words(self.block_map, self.cuts, self.st_kind, self.st_a,
                        self.st_b, self.st_entry)
        if self.inst is not None:
            w += self.inst.words()
        return w


class WaIndex:
    def __init__(self, w, mode="standard", t=1, retain_debug=False):
        if mode not in ("standard", "compact"):
            raise ValueError(f"unknown mode {mode!r}")
        self.w = np.asarray(w, dtype=np.int32)
        self.n = int(self.w.size)
        if self.n < 1:
            raise ValueError("text must be nonempty")
        self.mode = mode
        self.t = int(t)
        self.retain_debug = retain_debug
        self.master = build_suffix_tree(self.w)
        self.instances = {}
        self.band_marks = None
        self._build_all()

    # -- construction ------------------------------------------------------

    def reachable_pairs(self):
        """(k, alpha) pairs choose_instance can produce for lengths in [6, n]."""
        out = []
        if self.n < 6:
            return out
        kmax = (self.n // 6).bit_length() - 1
        for k in range(kmax + 1):
            hi = min(self.n, 6 * (1 << (k + 1)) - 1)
            ahi = (hi >> k) + 2
            for alpha in range(ALPHA_LO, min(ALPHA_HI, ahi) + 1):
                out.append((k, alpha))
        return out

    def compact_pairs(self):
        """Band instances pick_band can select for lengths in [6, n]."""
        if self.n < 6:
            return []
        L = np.arange(6, self.n + 1, dtype=np.int64)
        chosen_k = np.full(L.size, -1, dtype=np.int64)
        chosen_a = np.full(L.size, -1, dtype=np.int64)
        undone = np.ones(L.size, dtype=bool)
        for alpha in range(ALPHA_LO, GRID_ALPHA_HI + 1):
            q = (4 * L) // (3 * alpha)
            ok = q > 0
            k = np.zeros(L.size, dtype=np.int64)
            k[ok] = np.frexp(q[ok].astype(np.float64))[1] - 1
            cond = ok & ((alpha - 1) * (1 << k) >= (9 * L) // 8)
            take = undone & cond
            chosen_k[take] = k[take]
            chosen_a[take] = alpha
            undone &= ~cond
        assert not undone.any(), "pick_band must cover every length"
        return sorted({(int(k), int(a)) for k, a in zip(chosen_k, chosen_a)})

    def _build_all(self):
        pairs = self.reachable_pairs() if self.mode == "standard" else self.compact_pairs()
        for k, alpha in pairs:
            self.instances[(k, alpha)] = self.build_instance(k, alpha)
        if self.mode == "compact":
            self._build_band_marks()

    def _runs(self, k, alpha):
        bs = 1 << k
        nb = -(-self.n // bs)
        full = alpha * bs
        starts = np.arange(nb, dtype=np.int64) * bs + 1
        text_lens = np.minimum(full, self.n - starts + 1)
        return bs, nb, full, starts, text_lens

    def shorten_documents(self, starts, text_lens, ell):
        """Per run: 1-based cut offset of its longest suffix whose locus has
        an explicit master ancestor at depth >= ceil(3*ell/4); 0 if removed."""
        B = -(-3 * ell // 4)
        m = self.master
        qpos = np.arange(self.n, dtype=np.int64)
        _, lower = m.batch_path_lookup(qpos, np.full(self.n, B - 1, dtype=np.int64))
        anc_dep = np.full(self.n, np.iinfo(np.int64).max, dtype=np.int64)
        ok = (lower >= 0) & (lower < m.n_int)
        anc_dep[ok] = m.isdep[lower[ok]]
        cuts = np.zeros(starts.size, dtype=np.int64)
        for d in range(starts.size):
            tlen = int(text_lens[d])
            base = int(starts[d]) - 1
            omax = tlen - B + 1
            if omax < 1:
                continue
            offs = np.arange(1, omax + 1, dtype=np.int64)
            qual = anc_dep[base + offs - 1] <= tlen - offs + 1
            hit = np.flatnonzero(qual)
            if hit.size:
                cuts[d] = int(offs[hit[0]])
        return cuts

    def build_instance(self, k, alpha):
        rec = InstanceRecord()
        rec.k, rec.alpha = k, alpha
        bs, nb, full, starts, text_lens = self._runs(k, alpha)
        rec.ell = full
        if self.mode == "compact":
            cuts = self.shorten_documents(starts, text_lens, full)
        else:
            cuts = np.ones(nb, dtype=np.int64)
        # deduplicate identical documents (content-determined, so cuts agree)
        rec.block_map = np.full(nb, -1, dtype=np.int64)
        seen = {}
        intervals = []
        doc_cuts = []
        for b in range(nb):
            if cuts[b] == 0:
                continue
            s, tl = int(starts[b]), int(text_lens[b])
            key = (tl, self.w[s - 1 : s - 1 + tl].tobytes())
            if key not in seen:
                seen[key] = len(intervals)
                c = int(cuts[b])
                if self.mode == "compact":
                    intervals.append((s + c - 1, tl - c + 1, tl - c + 1))
                else:
                    intervals.append((s, tl, full))
                doc_cuts.append(c)
            rec.block_map[b] = seen[key]
        rec.cuts = np.asarray(doc_cuts, dtype=np.int64)
        if not intervals:
            rec.inst = None
            rec.st_kind = rec.st_a = rec.st_b = rec.st_entry = None
            return rec
        docs = DocumentSet(master=self.w, intervals=intervals, ell=full)
        concat = docs.concat()
        gst = SuffixTree.build(docs, retain_text=self.retain_debug, concat=concat)
        rec.inst = LongInstance(gst, full, compact=(self.mode == "compact"),
                                t=self.t, text=concat[0])
        self._build_st_map(rec)
        if not self.retain_debug:
            gst.strip()
        return rec

    def _build_st_map(self, rec):
        """Master-tree locus per GST explicit node, and per GST row the master
        edge serving implicit loci on the edge above it."""
        from . import kernels

        g = rec.inst.gst
        docs = g.docs
        m = self.master
        # per-leaf usable text length and master position
        pos_all = np.arange(g.m, dtype=np.int64)
        off = pos_all - g.doc_cstart[g.docid] + 1
        tcap = docs.text_lens[g.docid] - off + 1
        wpos = docs.starts[g.docid] + off - 1  # 1-based master position
        best, arg = kernels.subtree_argmax(g.ipar, g.lpar,
                                           np.argsort(g.isdep, kind="stable").astype(np.int64),
                                           tcap)
        n_int, n_rows = g.n_int, g.n_rows()
        rec.st_kind = np.zeros(n_int, dtype=np.int8)
        rec.st_a = np.full(n_int, -1, dtype=np.int32)
        rec.st_b = np.full(n_int, -1, dtype=np.int32)
        rec.st_entry = np.full(n_rows, -1, dtype=np.int32)
        vs = np.flatnonzero(best >= g.isdep)
        vs = vs[vs > 0]
        if self.mode == "compact":
            # compact mapping never consults entry edges
            rows_int = rows_leaf = np.empty(0, dtype=np.int64)
            pdep_int = np.empty(0, dtype=np.int64)
            pdep_leaf = np.empty(g.m, dtype=np.int64)
        else:
            # entry edges: one per row whose incoming edge can hold text loci
            pdep_int = g.isdep[g.ipar[1:]].astype(np.int64)
            ok_int = best[1:] >= pdep_int + 1
            rows_int = np.flatnonzero(ok_int) + 1
            pdep_leaf = g.isdep[g.lpar].astype(np.int64)
            ok_leaf = tcap >= pdep_leaf + 1
            rows_leaf = np.flatnonzero(ok_leaf) + n_int
        q_pos = np.concatenate([
            wpos[arg[vs]] - 1,
            wpos[arg[rows_int]] - 1 if rows_int.size else rows_int,
            wpos[rows_leaf - n_int] - 1 if rows_leaf.size else rows_leaf,
        ])
        q_dep = np.concatenate([
            g.isdep[vs].astype(np.int64),
            pdep_int[rows_int - 1] + 1 if rows_int.size else rows_int,
            pdep_leaf[rows_leaf - n_int] + 1 if rows_leaf.size else rows_leaf,
        ])
        if q_pos.size == 0:
            return
        upper, lower = m.batch_path_lookup(q_pos, q_dep)
        nq = vs.size
        u_dep = np.where(upper[:nq] < m.n_int,
                         m.isdep[np.minimum(upper[:nq], m.n_int - 1)],
                         0)
        exact = u_dep == g.isdep[vs]
        rec.st_kind[vs] = np.where(exact, 1, 2).astype(np.int8)
        rec.st_a[vs] = upper[:nq]
        rec.st_b[vs[~exact]] = lower[:nq][~exact]
        assert np.all(rec.st_b[vs[~exact]] != -1)
        erows = np.concatenate([rows_int, rows_leaf])
        elow = lower[nq:]
        assert np.all(elow != -1)
        rec.st_entry[erows] = elow

    def _build_band_marks(self):
        m = self.master
        bands = set()
        for alpha in range(ALPHA_LO, GRID_ALPHA_HI + 1):
            k = 0
            while 3 * alpha * (1 << k) <= 4 * (self.n + 2):
                bands.add(alpha << k)
                k += 1
        bands = sorted(bands)
        n_rows = m.n_rows()
        dep = np.concatenate([m.isdep.astype(np.int64), m.lsdep.astype(np.int64)])
        pdep = np.concatenate([
            np.r_[np.int64(-1), m.isdep[m.ipar[1:]].astype(np.int64)],
            m.isdep[m.lpar].astype(np.int64)])
        marked = np.zeros(n_rows, dtype=np.uint8)
        for ell in bands:
            B = -(-3 * ell // 4)
            marked |= ((dep >= B) & (dep <= ell) & (pdep < B)).astype(np.uint8)
        marked[0] = 0
        par_all = np.concatenate([m.ipar.astype(np.int64), m.lpar.astype(np.int64)])
        self.band_marks = MarkedPredIndex(par_all, dep, marked)

    # -- queries -------------------------------------------------------------

    def _root_walk(self, i, L):
        m = self.master
        node, d = 0, 0
        while True:
            child = m.child_by_symbol(node, int(self.w[i - 1 + d]))
            assert child != -1, "substring absent from its own suffix tree"
            cd = m.sdepth(child)
            if cd >= L:
                if cd == L:
                    return Locus.explicit(child, L)
                return Locus.implicit(node, child, L)
            node, d = child, cd

    def map_gst_locus(self, rec, locus):
        """Master-tree locus for a locus produced by rec's instance
        (standard mode: full runs make every GST edge span one master edge)."""
        if locus.kind == "explicit":
            kind = int(rec.st_kind[locus.node])
            assert kind != 0, "explicit GST node without a master image"
            PROBES.hit()
            if kind == 1:
                return Locus.explicit(int(rec.st_a[locus.node]), locus.depth)
            return Locus.implicit(int(rec.st_a[locus.node]),
                                  int(rec.st_b[locus.node]), locus.depth)
        entry = int(rec.st_entry[locus.child])
        assert entry != -1, "edge without a master image"
        PROBES.hit()
        return Locus.implicit(self.master.parent(entry), entry, locus.depth)

    def _map_compact(self, rec, locus, i, L):
        """Compact-mode mapping.  Shortening can hide master branching from a
        GST edge, but never a node whose depth is in the instance's own band;
        pick_band put the answer edge's lower endpoint there, so it is the
        master image (or the stored lower node) of the GST edge's bottom."""
        g = rec.inst.gst
        if locus.kind == "explicit":
            return self.map_gst_locus(rec, locus)
        gv = locus.child
        PROBES.hit()
        if gv >= g.n_int:
            # no explicit node at depth >= L anywhere: the master locus sits
            # on the leaf edge of w[i..]
            mleaf = self.master.leaf_row(0, i)
            pu = self.master.parent(mleaf)
            assert self.master.sdepth(pu) < L
            return Locus.implicit(pu, mleaf, L)
        kind = int(rec.st_kind[gv])
        assert kind != 0
        vprime = int(rec.st_a[gv]) if kind == 1 else int(rec.st_b[gv])
        pu = self.master.parent(vprime)
        assert self.master.sdepth(pu) < L <= self.master.sdepth(vprime)
        return Locus.implicit(pu, vprime, L)

    def substring_locus(self, i, j):
        """Locus of w[i..j] in the master suffix tree."""
        if not (1 <= i <= j <= self.n):
            raise ValueError(f"bad coordinates ({i}, {j})")
        L = j - i + 1
        if L < 6:
            return self._root_walk(i, L)
        if self.mode == "standard":
            rec = self.instances[choose_instance(L)]
            bs = 1 << rec.k
            b = (i - 1) // bs
            o = i - b * bs
            d = int(rec.block_map[b])
            PROBES.hit()
            loc = rec.inst.query(d, o, o + L - 1)
            return self.map_gst_locus(rec, loc)
        # compact mode: a band mark just below the locus answers directly;
        # otherwise the answer edge's lower endpoint is shallower than 9L/8
        # and the pick_band instance resolves it
        leaf = self.master.leaf_row(0, i)
        u = self.band_marks.search(leaf, L, "succ")
        if u != -1:
            pu = self.master.parent(u)
            PROBES.hit()
            if self.master.sdepth(pu) < L:
                if self.master.sdepth(u) == L:
                    return Locus.explicit(u, L)
                return Locus.implicit(pu, u, L)
        rec = self.instances[pick_band(L)]
        bs = 1 << rec.k
        b = (i - 1) // bs
        o = i - b * bs
        d = int(rec.block_map[b])
        PROBES.hit()
        assert d >= 0, "compact query outside every kept document"
        oo = o - int(rec.cuts[d]) + 1
        assert oo >= 1, "compact query starts inside the shortened prefix"
        loc = rec.inst.query(d, oo, oo + L - 1)
        return self._map_compact(rec, loc, i, L)

    # -- accounting ----------------------------------------------------------

    def words(self):
        out = {"master": self.master.words()}
        for (k, alpha), rec in self.instances.items():
            out[f"instance_k{k}_a{alpha}"] = rec.words()
        if self.band_marks is not None:
            out["band_marks"] = self.band_marks.words()
        return out

    def total_words(self):
        return sum(self.words().values())


def build_index(w, mode="standard", retain_debug=False):
    return WaIndex(w, mode=mode, retain_debug=retain_debug)
