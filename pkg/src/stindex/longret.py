"""Long substring retrieval: constant-probe loci for substrings of length at
least ceil(3/4 * ell) over a collection of documents of length at most ell.

The generalised suffix tree's bottom part is decorated with activity flags
and levels; active same-level nodes form disjoint paths, grouped by the
suffix-link relation into chains and cycles, each backed by one PISNS
instance over the paths' explicit-depth sets.  Queries whose locus is not
active have a small period; those route through per-Lyndon-word periodic
families (rotation paths cut into one-period fragments backed by PINS).
"""

import numpy as np

from . import kernels
from .metrics import PROBES, array_words
from .predsets import PinsIndex, PisnsIndex
from .suffixtree import Locus, build_gst
from .treetools import MarkedPredIndex

BIG = kernels.BIG


class Chain:
    """A chain or cycle of level paths with its PISNS backing."""

    __slots__ = ("paths", "is_cycle", "pisns", "universe")

    def __init__(self, paths, is_cycle):
        self.paths = paths
        self.is_cycle = is_cycle
        self.pisns = None
        self.universe = 0


class PeriodicFamily:
    """All sufficiently deep explicit nodes spelling substrings of r^inf,
    organised by rotation phase and one-period fragments."""

    __slots__ = ("r", "p", "alpha", "hlow", "pins", "slot", "frag_nodes",
                 "dmax", "u_phi", "c_phi", "s_phi", "n_sets")

    def __init__(self, r, alpha, hlow):
        self.r = r
        self.p = len(r)
        self.alpha = alpha
        self.hlow = hlow

    def base_depth(self, phi, j):
        return (self.p - phi + 1) + (self.alpha - j) * self.p

    def kept(self, phi, j):
        return 1 <= j <= self.alpha and self.base_depth(phi, j) >= self.hlow

    def words(self):
        w = array_words(self.dmax, self.u_phi, self.c_phi, self.s_phi,
                        *self.frag_nodes.values())
        if self.pins is not None:
            w += self.pins.words()
        return w


class LongInstance:
    def __init__(self, gst, ell, compact=False, t=1, text=None):
        self.gst = gst
        self.ell = int(ell)
        self.compact = bool(compact)
        self.t = int(t)
        self.B = -(-3 * self.ell // 4)  # ceil(3 ell / 4): bottom-part boundary
        if text is None:
            text, _ = gst.docs.concat()
        self._decorate()
        self._build_paths()
        self._build_chains()
        self._build_marks()
        self._build_families(text)

    # -- decoration ---------------------------------------------------------

    def _decorate(self):
        g = self.gst
        if np.any(g.docs.full_lens > self.ell):
            raise ValueError("documents longer than the instance length")
        self.dup = g.dup
        self.active = ((g.isdep >= self.B) & (self.dup == 0)).astype(np.uint8)
        cnt = np.maximum(g.cnt, 1).astype(np.int64)
        self.level = (np.frexp(cnt.astype(np.float64))[1] - 1).astype(np.int64)
        self.order_int = np.argsort(g.isdep, kind="stable").astype(np.int64)
        ddep = kernels.leaf_flag_depths(g.cs_start, g.ch_node, g.isdep,
                                        g.n_int, g.m, self.dup)
        self.act_top = np.maximum(self.B, ddep + 1).astype(np.int32)

    # -- level paths, chains, cycles ----------------------------------------

    def _build_paths(self):
        g = self.gst
        pathid, n_paths = kernels.path_assign(g.ipar, self.order_int,
                                              self.active, self.level)
        self.pathptr = kernels.path_pointer(g.ipar, self.order_int, self.active,
                                            self.level, pathid).astype(np.int32)
        self.pathid = pathid.astype(np.int32)
        rows = np.flatnonzero(self.pathid >= 0)
        order = rows[np.lexsort((g.isdep[rows], self.pathid[rows]))]
        counts = np.bincount(self.pathid[rows], minlength=n_paths)
        self.pnode_start = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        self.pnodes = order.astype(np.int32)
        self.n_paths = n_paths
        tops = order[self.pnode_start[:-1]]
        bots = order[self.pnode_start[1:] - 1]
        self.p_top = tops.astype(np.int32)
        self.p_bot = bots.astype(np.int32)
        self.p_level = self.level[tops].astype(np.int32)
        ptop_sdep = g.isdep[g.ipar[tops]]
        self.p_lo = np.maximum(self.B, ptop_sdep + 1).astype(np.int32)  # ell_j
        self.p_hi = g.isdep[bots].astype(np.int32)  # r_j
        # at most one same-level child anywhere: implied by leaf counts
        self.p_chain = np.full(n_paths, -1, dtype=np.int32)
        self.p_pos = np.full(n_paths, -1, dtype=np.int32)

    def _points_to(self):
        g = self.gst
        out = np.full(self.n_paths, -1, dtype=np.int64)
        indeg_src = np.full(self.n_paths, -1, dtype=np.int64)
        for pid in range(self.n_paths):
            for k in range(int(self.pnode_start[pid]), int(self.pnode_start[pid + 1])):
                u = int(self.pnodes[k])
                t = int(g.slink[u])
                if t == 0 or not self.active[t]:
                    continue
                if self.level[t] != self.level[u]:
                    continue
                q = int(self.pathid[t])
                assert q != pid, "self-loop in the path relation"
                if out[pid] == -1:
                    out[pid] = q
                else:
                    assert out[pid] == q, "a path points to two paths"
                if indeg_src[q] == -1:
                    indeg_src[q] = pid
                else:
                    assert indeg_src[q] == pid, "two paths point to one path"
        return out

    def _build_chains(self, validate=False):
        g = self.gst
        nxt = self._points_to()
        self.chains = []
        indeg = np.zeros(self.n_paths, dtype=np.int64)
        for pid in range(self.n_paths):
            if nxt[pid] != -1:
                indeg[nxt[pid]] += 1
        seen = np.zeros(self.n_paths, dtype=bool)
        starts = [pid for pid in range(self.n_paths) if indeg[pid] == 0]
        for s in starts:
            path_list = []
            v = s
            while v != -1 and not seen[v]:
                seen[v] = True
                path_list.append(v)
                v = int(nxt[v])
            self._register_chain(path_list, is_cycle=False)
        for pid in range(self.n_paths):
            if seen[pid]:
                continue
            # remaining components are cycles; anchor at the minimal bottom id
            cyc = [pid]
            v = int(nxt[pid])
            while v != pid:
                cyc.append(v)
                v = int(nxt[v])
            a = min(range(len(cyc)), key=lambda k: int(self.p_bot[cyc[k]]))
            cyc = cyc[a:] + cyc[:a]
            for q in cyc:
                seen[q] = True
            self._register_chain(cyc, is_cycle=True)

    def _register_chain(self, path_list, is_cycle):
        g = self.gst
        cid = len(self.chains)
        ch = Chain(np.asarray(path_list, dtype=np.int64), is_cycle)
        self.chains.append(ch)
        z = len(path_list)
        for pos, pid in enumerate(path_list, start=1):
            self.p_chain[pid] = cid
            self.p_pos[pid] = pos
        # Lemma 8 nesting between consecutive paths (wrapping for cycles)
        pairs = range(z - 1) if not is_cycle else range(z)
        for k in pairs:
            a, b = path_list[k], path_list[(k + 1) % z]
            assert self.p_lo[a] <= 1 + self.p_lo[b], "range lower nesting violated"
            assert self.p_hi[a] <= 1 + self.p_hi[b], "range upper nesting violated"
        universe = z + int(self.p_hi[path_list[-1]])
        ch.universe = universe
        sets = []
        bounds = []
        for pos, pid in enumerate(path_list, start=1):
            lo, hi = int(self.pnode_start[pid]), int(self.pnode_start[pid + 1])
            sets.append(g.isdep[self.pnodes[lo:hi]].astype(np.int64) + pos)
            bounds.append(pos + int(self.p_lo[pid]))
        ch.pisns = PisnsIndex(sets, bounds, universe, compact=self.compact,
                              t2=self.t, validate=False)

    # -- marked entry structure ---------------------------------------------

    def _build_marks(self):
        g = self.gst
        marked_int = np.zeros(g.n_int, dtype=np.uint8)
        par_level = self.level[g.ipar[1:]]
        marked_int[1:] = par_level > self.level[1:]
        par_all = np.concatenate([g.ipar, g.lpar])
        weight = np.concatenate([g.isdep, g.lsdep])
        marked = np.concatenate([marked_int, np.ones(g.m, dtype=np.uint8)])
        self.marked = MarkedPredIndex(par_all, weight, marked)

    # -- periodic families ----------------------------------------------------

    def _build_families(self, text):
        g = self.gst
        beta = g.docs.beta
        self.doc_fam = np.full(beta, -1, dtype=np.int64)
        self.doc_p = np.zeros(beta, dtype=np.int64)
        self.doc_run = np.zeros((beta, 2), dtype=np.int64)
        self.doc_occ = np.zeros(beta, dtype=np.int64)
        self.families = []
        fam_of_word = {}
        hlow = -(-self.ell // 2)
        desc = kernels.doc_descriptors(text, g.doc_cstart, g.docs.full_lens, self.ell)
        for d in range(beta):
            p, run_s, run_e, occ = (int(x) for x in desc[d])
            if p == 0:
                continue
            base = int(g.doc_cstart[d])
            r = tuple(int(x) for x in text[base + occ - 1 : base + occ - 1 + p])
            assert occ + p - 1 <= run_e, "no full r occurrence inside the run"
            if r not in fam_of_word:
                fam_of_word[r] = len(self.families)
                alpha = (self.ell + 2 + p) // p + 1
                self.families.append(PeriodicFamily(r, alpha, hlow))
            fid = fam_of_word[r]
            self.doc_fam[d] = fid
            self.doc_p[d] = p
            self.doc_run[d] = (run_s, run_e)
            self.doc_occ[d] = occ
        if not self.families:
            return
        # periodic-prefix length of every leaf suffix under its doc's run
        pos_all = np.arange(g.m, dtype=np.int64)
        off = pos_all - g.doc_cstart[g.docid] + 1
        fam = self.doc_fam[g.docid]
        inside = (fam >= 0) & (off >= self.doc_run[g.docid, 0]) & \
                 (off <= self.doc_run[g.docid, 1])
        plen = np.where(inside, self.doc_run[g.docid, 1] - off + 1, -1)
        best, arg = kernels.subtree_argmax(g.ipar, g.lpar, self.order_int, plen)
        members = np.flatnonzero((best >= g.isdep) & (g.isdep >= 2))
        for f in self.families:
            f.slot = {}
            f.frag_nodes = {}
            f.dmax = np.zeros(f.p + 1, dtype=np.int64)
            f.u_phi = np.full(f.p + 1, -1, dtype=np.int64)
            f.c_phi = np.full(f.p + 1, -1, dtype=np.int64)
            f.s_phi = np.full(f.p + 1, -1, dtype=np.int64)
        frag_sets = {}
        for v in members:
            v = int(v)
            leafpos = int(arg[v])
            d = int(g.docid[leafpos])
            fid = int(self.doc_fam[d])
            f = self.families[fid]
            o = leafpos - int(g.doc_cstart[d]) + 1
            phi = (o - int(self.doc_occ[d])) % f.p + 1
            depth = int(g.isdep[v])
            if depth > f.dmax[phi]:
                f.dmax[phi] = depth
                f.u_phi[phi] = v
            q = depth - (f.p - phi + 1)
            if q < 0:
                continue
            j = f.alpha - q // f.p
            if not f.kept(phi, j):
                continue
            frag_sets.setdefault((fid, phi, j), []).append((q % f.p, v))
            if f.s_phi[phi] == -1 or depth < g.isdep[f.s_phi[phi]]:
                f.s_phi[phi] = v
        for fid, f in enumerate(self.families):
            sets = []
            names = []
            # flat nesting order S_{1,1} c= S_{2,1} c= ... c= S_{p,1} c= S_{1,2} ...
            # (deepest fragment first; suffix links shift phase then fragment)
            for j in range(1, f.alpha + 1):
                for phi in range(1, f.p + 1):
                    key = (fid, phi, j)
                    if key in frag_sets:
                        names.append((phi, j))
                        pairs = sorted(frag_sets[key])
                        f.frag_nodes[(phi, j)] = np.asarray([v for _, v in pairs],
                                                            dtype=np.int64)
                        sets.append(np.asarray([dd + 1 for dd, _ in pairs],
                                               dtype=np.int64))
            f.n_sets = len(sets)
            f.slot = {nm: k + 1 for k, nm in enumerate(names)}
            if sets:
                f.pins = PinsIndex(sets, f.p, compact=self.compact,
                                   t1=self.t + 1, validate=True)
            else:
                f.pins = None
            # the periodic continuation below the deepest explicit node
            for phi in range(1, f.p + 1):
                u = int(f.u_phi[phi])
                if u == -1:
                    continue
                sym = f.r[(phi - 1 + int(f.dmax[phi])) % f.p]
                f.c_phi[phi] = g.child_by_symbol(u, sym)

    # -- queries --------------------------------------------------------------

    def query(self, doc, i, j):
        """Locus of w_doc[i..j]; requires j - i + 1 >= ceil(3 ell / 4)."""
        g = self.gst
        L = j - i + 1
        if L < self.B:
            raise ValueError(f"query shorter than {self.B}")
        leaf = g.leaf_row(doc, i)
        pos = leaf - g.n_int
        PROBES.hit()
        if L >= int(self.act_top[pos]):
            return self._query_active(doc, i, leaf, L)
        return self._query_periodic(doc, i, L)

    def _query_active(self, doc, i, leaf, L):
        g = self.gst
        mplus = self.marked.search(leaf, L, "succ")
        route = -1
        if mplus != -1:
            if mplus >= g.n_int:
                pp = int(g.lpar[mplus - g.n_int])
                if g.isdep[pp] < L:
                    return Locus.implicit(pp, mplus, L)
            else:
                pp = int(g.ipar[mplus])
                if g.isdep[pp] < L:
                    route = mplus
        if route == -1:
            route = self.marked.search(leaf, L, "pred")
            assert route != -1 and route < g.n_int, "no usable mark on the root path"
        pid = int(self.pathptr[route])
        assert pid >= 0, "mark without a path pointer"
        cid = int(self.p_chain[pid])
        pos_j = int(self.p_pos[pid])
        ch = self.chains[cid]
        res = ch.pisns.pred(pos_j, pos_j + L)
        if res is None:
            top = int(self.p_top[pid])
            return Locus.implicit(int(g.ipar[top]), top, L)
        rank, value = res
        node = int(self.pnodes[self.pnode_start[pid] + rank - 1])
        depth = value - pos_j
        if depth == L:
            return Locus.explicit(node, L)
        child = g.child_by_symbol(node, g.docs.symbol(doc, i + depth))
        assert child != -1, "query substring leaves the tree"
        return Locus.implicit(node, child, L)

    def _query_periodic(self, doc, i, L):
        g = self.gst
        fid = int(self.doc_fam[doc])
        assert fid >= 0, "inactive locus without a periodic descriptor"
        f = self.families[fid]
        run_s, run_e = int(self.doc_run[doc, 0]), int(self.doc_run[doc, 1])
        assert run_s <= i and i + L - 1 <= run_e, "query leaves the periodic run"
        PROBES.hit()
        phi = (i - int(self.doc_occ[doc])) % f.p + 1
        if L > int(f.dmax[phi]):
            u, c = int(f.u_phi[phi]), int(f.c_phi[phi])
            assert u != -1 and c != -1, "missing rotation-path continuation"
            return Locus.implicit(u, c, L)
        q = L - (f.p - phi + 1)
        jf = f.alpha - q // f.p
        dd = q % f.p
        res = None
        slot = f.slot.get((phi, jf))
        if slot is not None:
            res = f.pins.pred(slot, dd + 1)
            if res is not None:
                rank, val = res
                depth = (L - dd) + val - 1
                node = int(f.frag_nodes[(phi, jf)][rank - 1])
                if depth == L:
                    return Locus.explicit(node, L)
                child = g.child_by_symbol(node, g.docs.symbol(doc, i + depth))
                assert child != -1
                return Locus.implicit(node, child, L)
        slot2 = f.slot.get((phi, jf + 1))
        if slot2 is not None:
            res = f.pins.pred(slot2, f.p)
            if res is not None:
                rank, val = res
                depth = (L - dd - f.p) + val - 1
                node = int(f.frag_nodes[(phi, jf + 1)][rank - 1])
                child = g.child_by_symbol(node, g.docs.symbol(doc, i + depth))
                assert child != -1
                return Locus.implicit(node, child, L)
        s = int(f.s_phi[phi])
        assert s != -1 and g.isdep[s] > L, "shallowest family node missing"
        par = int(g.ipar[s])
        assert g.isdep[par] < L
        return Locus.implicit(par, s, L)

    # -- diagnostics ----------------------------------------------------------

    def check_cost_bound(self, k):
        """(sum of costs, 3 * n_instance / 2^k, pass) for level-k paths."""
        g = self.gst
        n_inst = int(np.sum(g.docs.full_lens))
        bound = 3 * n_inst / 2**k
        total = 0
        if k == 0:
            # level-0 paths are single active leaves chained per document
            for d in range(g.docs.beta):
                flen = int(g.docs.full_lens[d])
                base = int(g.doc_cstart[d])
                offs = [o for o in range(1, flen + 2)
                        if int(g.lsdep[base + o - 1]) >= self.B]
                if not offs:
                    continue
                runs = []
                cur = [offs[0]]
                for o in offs[1:]:
                    if o == cur[-1] + 1:
                        cur.append(o)
                    else:
                        runs.append(cur)
                        cur = [o]
                runs.append(cur)
                for run in runs:
                    for idx, o in enumerate(run):
                        row = base + o - 1
                        r_j = int(g.lsdep[row])
                        if idx == 0:
                            lo_j = max(self.B, int(g.isdep[g.lpar[row]]) + 1)
                            total += r_j - lo_j + 1
                        else:
                            prev = int(g.lsdep[base + run[idx - 1] - 1])
                            total += r_j - prev + 1
            return total, bound, total <= bound
        for ch in self.chains:
            if int(self.p_level[ch.paths[0]]) != k:
                continue
            z = len(ch.paths)
            for idx, pid in enumerate(ch.paths):
                r_j = int(self.p_hi[pid])
                if idx == 0:
                    if ch.is_cycle:
                        total += r_j - int(self.p_hi[ch.paths[-1]]) + 1
                    else:
                        total += r_j - int(self.p_lo[pid]) + 1
                else:
                    total += r_j - int(self.p_hi[ch.paths[idx - 1]]) + 1
        return total, bound, total <= bound

    def words(self):
        w = self.gst.words()
        w += array_words(self.dup, self.active, self.level, self.act_top,
                         self.pathid, self.pathptr, self.pnode_start, self.pnodes,
                         self.p_top, self.p_bot, self.p_level, self.p_lo, self.p_hi,
                         self.p_chain, self.p_pos, self.doc_fam, self.doc_p,
                         self.doc_run, self.doc_occ)
        w += self.marked.words()
        w += sum(ch.pisns.words() for ch in self.chains if ch.pisns is not None)
        w += sum(f.words() for f in self.families)
        return w


def build_long_instance(docs, ell, compact=False, t=1, retain_text=False):
    concat = docs.concat()
    gst = build_gst(docs, retain_text=retain_text, concat=concat)
    return LongInstance(gst, ell, compact=compact, t=t, text=concat[0])
