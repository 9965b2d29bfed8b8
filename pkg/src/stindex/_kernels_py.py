"""Pure-Python/numpy fallbacks for the hot kernels.

Same signatures as the compiled module `stindex._kernels`; selected at import
time by `stindex.kernels` when the extension is unavailable (or when
STINDEX_PURE=1).  The suffix array here is numpy prefix-doubling rather than
SA-IS: asymptotically worse but vastly faster than interpreted SA-IS.
"""

import numpy as np

BIG = np.iinfo(np.int64).max // 4


def suffix_array(text, sigma=None):
    """SA of `text` (int array, all values >= 0) by prefix doubling."""
    t = np.asarray(text, dtype=np.int64)
    n = int(t.size)
    if n == 0:
        return np.empty(0, dtype=np.int32)
    order = np.argsort(t, kind="stable")
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.cumsum(np.r_[0, np.diff(t[order]) != 0])
    k = 1
    while int(rank[order[-1]]) < n - 1:
        r2 = np.full(n, -1, dtype=np.int64)
        r2[: n - k] = rank[k:]
        order = np.lexsort((r2, rank))
        ro, r2o = rank[order], r2[order]
        diff = np.r_[0, (ro[1:] != ro[:-1]) | (r2o[1:] != r2o[:-1])]
        nxt = np.empty(n, dtype=np.int64)
        nxt[order] = np.cumsum(diff)
        rank = nxt
        k <<= 1
    return order.astype(np.int32)


def lcp_array(text, sa):
    """Kasai: lcp[r] = lcp(suffix sa[r-1], suffix sa[r]); lcp[0] = 0."""
    t = np.asarray(text)
    n = int(sa.size)
    rank = np.empty(n, dtype=np.int64)
    rank[sa] = np.arange(n)
    lcp = np.zeros(n, dtype=np.int32)
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = int(sa[r - 1])
        while i + h < n and j + h < n and t[i + h] == t[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


def build_tree(sa, lcp, leaf_sdep, leaf_aux):
    """Suffix tree arena from SA + LCP (stack construction, one pass).

    leaf_sdep[r]: string depth of the leaf at SA rank r.
    leaf_aux[r]:  per-leaf value whose subtree minimum is aggregated.

    Returns (ipar, isdep, sal, sar, cnt, aux, lpar): internal node 0 is the
    root; sal/sar are SA-rank intervals; cnt leaf counts; aux subtree minima;
    lpar maps text position -> parent internal id of that leaf.
    """
    m = int(sa.size)
    ipar, isdep = [-1], [0]
    sal, sar, cnt, aux = [m], [-1], [0], [BIG]
    lpar = np.full(m, -1, dtype=np.int64)
    rank_of = np.empty(m, dtype=np.int64)
    st_dep = [0] * (m + 2)
    st_node = [0] * (m + 2)
    top = 0

    def attach(code, parent):
        if code < 0:
            pos = ~code
            lpar[pos] = parent
            r = int(rank_of[pos])
            csal = csar = r
            ccnt, caux = 1, int(leaf_aux[r])
        else:
            ipar[code] = parent
            csal, csar = sal[code], sar[code]
            ccnt, caux = cnt[code], aux[code]
        if csal < sal[parent]:
            sal[parent] = csal
        if csar > sar[parent]:
            sar[parent] = csar
        cnt[parent] += ccnt
        if caux < aux[parent]:
            aux[parent] = caux

    for r in range(m):
        l = int(lcp[r]) if r else 0
        last = None  # deferred child whose parent is decided below
        while st_dep[top] > l:
            u = st_node[top]
            top -= 1
            if st_dep[top] >= l:
                attach(u, st_node[top])
            else:
                last = u
        if st_dep[top] == l:
            if last is not None:
                attach(last, st_node[top])
        else:
            v = len(ipar)
            ipar.append(-1)
            isdep.append(l)
            sal.append(m)
            sar.append(-1)
            cnt.append(0)
            aux.append(BIG)
            assert last is not None, "split without a popped child"
            attach(last, v)
            top += 1
            st_dep[top], st_node[top] = l, v
        pos = int(sa[r])
        rank_of[pos] = r
        top += 1
        st_dep[top], st_node[top] = int(leaf_sdep[r]), ~pos
    while top > 0:
        u = st_node[top]
        top -= 1
        attach(u, st_node[top])

    return (np.asarray(ipar, dtype=np.int64), np.asarray(isdep, dtype=np.int64),
            np.asarray(sal, dtype=np.int64), np.asarray(sar, dtype=np.int64),
            np.asarray(cnt, dtype=np.int64), np.asarray(aux, dtype=np.int64),
            lpar)


def stack_queries(cs_start, ch_node, isdep, lsdep, n_int, q_start, q_depth, q_order):
    """Batched root-path lookups.

    Queries are grouped per leaf position: q_start[pos]..q_start[pos+1]-1
    index into q_depth/q_order (q_order gives the output slot).  For query
    depth d on the root path of leaf pos, reports
      upper[slot]: deepest node (row id; leaf row = n_int + pos) with
                   string depth <= d,
      lower[slot]: the next node on the path below upper (-1 if upper is the
                   leaf itself).
    """
    nq = int(q_depth.size)
    upper = np.full(nq, -1, dtype=np.int64)
    lower = np.full(nq, -1, dtype=np.int64)
    m = int(lsdep.size)
    # iterative DFS over the children CSR
    path_node = [0]
    path_dep = [0]
    stack = [(0, int(cs_start[0]), int(cs_start[1]))]
    while stack:
        node, lo, hi = stack.pop()
        if lo >= hi:
            # all children done: pop from root path
            path_node.pop()
            path_dep.pop()
            continue
        stack.append((node, lo + 1, hi))
        c = int(ch_node[lo])
        if c >= n_int:
            pos = c - n_int
            a, b = int(q_start[pos]), int(q_start[pos + 1])
            if a < b:
                path_node.append(c)
                path_dep.append(int(lsdep[pos]))
                deps = path_dep
                import bisect

                for qi in range(a, b):
                    d = int(q_depth[qi])
                    slot = int(q_order[qi])
                    k = bisect.bisect_right(deps, d) - 1
                    if k < 0:
                        k = 0
                    upper[slot] = path_node[k]
                    lower[slot] = path_node[k + 1] if k + 1 < len(path_node) else -1
                path_node.pop()
                path_dep.pop()
        else:
            path_node.append(c)
            path_dep.append(int(isdep[c]))
            stack.append((c, int(cs_start[c]), int(cs_start[c + 1])))
    return upper, lower


def leaf_flag_depths(cs_start, ch_node, isdep, n_int, m, flag):
    """Per leaf position: string depth of its deepest flagged internal
    ancestor (0 if none; the root may be flagged)."""
    out = np.zeros(m, dtype=np.int64)
    cur = [0 if not flag[0] else 0]
    # stack entries: (node, child cursor lo, hi, saved value)
    val = 0
    if flag[0]:
        val = int(isdep[0])
    stack = [(0, int(cs_start[0]), int(cs_start[1]), 0)]
    cur_val = val
    while stack:
        node, lo, hi, saved = stack.pop()
        if lo >= hi:
            cur_val = saved
            continue
        stack.append((node, lo + 1, hi, saved))
        c = int(ch_node[lo])
        if c >= n_int:
            out[c - n_int] = cur_val
        else:
            nv = cur_val
            if flag[c]:
                nv = int(isdep[c])
            stack.append((c, int(cs_start[c]), int(cs_start[c + 1]), cur_val))
            cur_val = nv
    return out


def naive_locus_batch(cs_start, ch_node, ch_sym, isdep, lsdep, n_int, sal, leafpos_by_rank,
                      sym_text, q_pos, q_len):
    """Oracle: root walks with full edge verification.

    sym_text: per concat position symbol array (the GST text).
    q_pos: concat position where each query substring starts; q_len: length.
    Returns (upper, node_or_child, depth_flags): for query q, if explicit,
    node_or_child = node row and upper = -1; else upper row and
    node_or_child = the edge's lower row.
    """
    nq = int(q_pos.size)
    out_up = np.full(nq, -1, dtype=np.int64)
    out_node = np.full(nq, -1, dtype=np.int64)
    for q in range(nq):
        start = int(q_pos[q])
        L = int(q_len[q])
        node = 0
        d = 0
        while True:
            sym = int(sym_text[start + d])
            lo, hi = int(cs_start[node]), int(cs_start[node + 1])
            child = -1
            while lo < hi:
                mid2 = (lo + hi) // 2
                cs = int(ch_sym[mid2])
                if cs == sym:
                    child = int(ch_node[mid2])
                    break
                if cs < sym:
                    lo = mid2 + 1
                else:
                    hi = mid2
            if child < 0:
                raise RuntimeError("substring absent from tree")
            if child >= n_int:
                cd = int(lsdep[child - n_int])
                cpos = child - n_int
            else:
                cd = int(isdep[child])
                cpos = int(leafpos_by_rank[sal[child]])
            reach = min(cd, L)
            for dd in range(d, reach):
                if int(sym_text[cpos + dd]) != int(sym_text[start + dd]):
                    raise RuntimeError("edge mismatch: substring absent")
            if reach == L:
                if cd == L:
                    out_node[q] = child
                else:
                    out_up[q] = node
                    out_node[q] = child
                break
            node = child
            d = cd
    return out_up, out_node


def macro_select(par, order, cap):
    """Greedy bottom-up packing: mark macro nodes so the remaining components
    (micro trees) have at most `cap` nodes.  The root is always macro."""
    n = int(par.size)
    carry = np.ones(n, dtype=np.int64)
    macro = np.zeros(n, dtype=np.uint8)
    for k in range(n - 1, -1, -1):
        v = int(order[k])
        p = int(par[v])
        if p == -1 or carry[v] >= cap:
            macro[v] = 1
        else:
            carry[p] += carry[v]
    return macro


def marked_chases(par, order, marked, macro):
    """Top-down: first macro ancestor-or-self, micro component id (-1 for
    macro nodes), nearest marked ancestor-or-self (-1 if none)."""
    n = int(par.size)
    first_macro = np.full(n, -1, dtype=np.int64)
    micro_id = np.full(n, -1, dtype=np.int64)
    nearest = np.full(n, -1, dtype=np.int64)
    for k in range(n):
        v = int(order[k])
        p = int(par[v])
        first_macro[v] = v if macro[v] else first_macro[p]
        if not macro[v]:
            micro_id[v] = v if (p == -1 or macro[p]) else micro_id[p]
        if marked[v]:
            nearest[v] = v
        elif p != -1:
            nearest[v] = nearest[p]
    return first_macro, micro_id, nearest


def micro_masks(par, order, micro_id, marked, pos):
    """B[v]: bit pos[u] set for every marked ancestor u of v (incl. v) inside
    v's micro tree."""
    n = int(par.size)
    B = np.zeros(n, dtype=np.uint64)
    for k in range(n):
        v = int(order[k])
        if micro_id[v] == -1:
            continue
        p = int(par[v])
        acc = int(B[p]) if (p != -1 and micro_id[p] == micro_id[v]) else 0
        if marked[v]:
            acc |= 1 << int(pos[v])
        B[v] = acc
    return B


def mark_heaps(macros, nearest, mark_par):
    """Per macro node: its marked ancestors-or-self, deepest first."""
    starts = [0]
    flat = []
    for mm in macros:
        u = int(nearest[mm])
        while u != -1:
            flat.append(u)
            u = int(mark_par[u])
        starts.append(len(flat))
    return (np.asarray(starts, dtype=np.int64),
            np.asarray(flat, dtype=np.int64))


def path_assign(ipar, order, active, level):
    """Level-path ids over internal nodes: a node continues its parent's path
    iff the parent is active at the same level; active nodes only."""
    n = int(ipar.size)
    pathid = np.full(n, -1, dtype=np.int64)
    count = 0
    for k in range(n):
        v = int(order[k])
        if not active[v]:
            continue
        p = int(ipar[v])
        if p != -1 and active[p] and level[p] == level[v]:
            pathid[v] = pathid[p]
        else:
            pathid[v] = count
            count += 1
    return pathid, count


def path_pointer(ipar, order, active, level, pathid):
    """Per internal node: the path of the first active node on its same-level
    descendant chain (its own path if active), else -1."""
    n = int(ipar.size)
    pp = np.full(n, -1, dtype=np.int64)
    for k in range(n - 1, -1, -1):
        v = int(order[k])
        if active[v]:
            pp[v] = pathid[v]
        p = int(ipar[v])
        if p != -1 and pp[v] != -1 and not active[p] and level[p] == level[v]:
            pp[p] = pp[v]
    return pp


def subtree_argmax(ipar, lpar, order_int, leaf_vals):
    """Per internal node: max over subtree leaves of leaf_vals, with one
    witness leaf position; processes internals in decreasing-depth order."""
    n_int = int(ipar.size)
    m = int(lpar.size)
    best = np.full(n_int, -1, dtype=np.int64)
    arg = np.full(n_int, -1, dtype=np.int64)
    for pos in range(m):
        p = int(lpar[pos])
        v = int(leaf_vals[pos])
        if v > best[p]:
            best[p] = v
            arg[p] = pos
    for k in range(n_int - 1, -1, -1):
        v = int(order_int[k])
        p = int(ipar[v])
        if p != -1 and best[v] > best[p]:
            best[p] = best[v]
            arg[p] = arg[v]
    return best, arg


def doc_descriptors(text, cstart, full_lens, ell):
    """Per document: period p of its middle part (0 if the middle is not
    periodic enough), the maximal run extending the middle, and the start of
    the Lyndon rotation occurrence inside the run."""
    beta = int(full_lens.size)
    out = np.zeros((beta, 4), dtype=np.int64)  # p, run_s, run_e, occ
    lo = max(1, -(-ell // 4))
    for d in range(beta):
        flen = int(full_lens[d])
        hi = min((3 * ell) // 4, flen)
        n_mid = hi - lo + 1
        if n_mid < 2:
            continue
        base = int(cstart[d]) + lo - 1  # 0-based index of middle start
        # failure function of the middle part
        border = [0] * (n_mid + 1)
        k = 0
        for i in range(1, n_mid):
            c = int(text[base + i])
            while k > 0 and c != int(text[base + k]):
                k = border[k]
            if c == int(text[base + k]):
                k += 1
            border[i + 1] = k
        p = n_mid - border[n_mid]
        if 4 * p > ell:
            continue
        s, e = lo, hi
        db = int(cstart[d])
        while s > 1 and text[db + s - 2] == text[db + s - 2 + p]:
            s -= 1
        while e < flen and text[db + e] == text[db + e - p]:
            e += 1
        # least rotation of the run's first period word (Booth two-pointer)
        wb = db + s - 1
        i1, j1, k1 = 0, 1, 0
        while i1 < p and j1 < p and k1 < p:
            a = int(text[wb + (i1 + k1) % p])
            b = int(text[wb + (j1 + k1) % p])
            if a == b:
                k1 += 1
                continue
            if a > b:
                i1 += k1 + 1
                if i1 == j1:
                    i1 += 1
            else:
                j1 += k1 + 1
                if j1 == i1:
                    j1 += 1
            k1 = 0
        rot = min(i1, j1) + 1
        out[d, 0] = p
        out[d, 1] = s
        out[d, 2] = e
        out[d, 3] = s + rot - 1
    return out
