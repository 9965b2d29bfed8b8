# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: SA-IS suffix array, Kasai LCP, the one-pass suffix tree
lifting, batched root-path lookups, and the inheritance passes used by the
decoration and marked-ancestor builds.  Mirrors stindex._kernels_py."""

import numpy as np


BIG = np.iinfo(np.int64).max // 4
cdef long long _BIG = BIG


# ---------------------------------------------------------------------------
# SA-IS

cdef void _induce(long long[::1] s, int[::1] sa, long long[::1] bkt_heads,
                  long long[::1] bkt_tails, long long[::1] counts,
                  unsigned char[::1] stype, long long n, long long sigma):
    cdef long long i, j, c
    # induce L from the left
    _bucket_bounds(counts, bkt_heads, bkt_tails, sigma)
    for i in range(n):
        j = sa[i]
        if j > 0:
            j -= 1
            if not stype[j]:
                c = s[j]
                sa[bkt_heads[c]] = j
                bkt_heads[c] += 1
    # induce S from the right
    _bucket_bounds(counts, bkt_heads, bkt_tails, sigma)
    for i in range(n - 1, -1, -1):
        j = sa[i]
        if j > 0:
            j -= 1
            if stype[j]:
                c = s[j]
                bkt_tails[c] -= 1
                sa[bkt_tails[c]] = j


cdef void _bucket_bounds(long long[::1] counts, long long[::1] heads,
                         long long[::1] tails, long long sigma):
    cdef long long c, at = 0
    for c in range(sigma):
        heads[c] = at
        at += counts[c]
        tails[c] = at


cdef void _sais(long long[::1] s, int[::1] sa, long long n, long long sigma):
    """s[n-1] must be the unique smallest symbol (0)."""
    cdef long long i, j, c, nlms, prev, names, k
    cdef bint diff, a_lms, b_lms
    cdef unsigned char[::1] stype
    cdef long long[::1] counts, heads, tails, lms, name_of, slms
    cdef long long[::1] red
    cdef int[::1] red_sa
    if n == 1:
        sa[0] = 0
        return
    stype_np = np.zeros(n, dtype=np.uint8)
    stype = stype_np
    stype[n - 1] = 1
    for i in range(n - 2, -1, -1):
        if s[i] < s[i + 1] or (s[i] == s[i + 1] and stype[i + 1]):
            stype[i] = 1
    counts_np = np.zeros(sigma, dtype=np.int64)
    counts = counts_np
    for i in range(n):
        counts[s[i]] += 1
    heads_np = np.empty(sigma, dtype=np.int64)
    tails_np = np.empty(sigma, dtype=np.int64)
    heads = heads_np
    tails = tails_np
    lms_np = np.empty(n, dtype=np.int64)
    lms = lms_np
    nlms = 0
    for i in range(1, n):
        if stype[i] and not stype[i - 1]:
            lms[nlms] = i
            nlms += 1
    # step 1: rough sort of LMS suffixes
    for i in range(n):
        sa[i] = -1
    _bucket_bounds(counts, heads, tails, sigma)
    for k in range(nlms - 1, -1, -1):
        j = lms[k]
        c = s[j]
        tails[c] -= 1
        sa[tails[c]] = <int> j
    _induce(s, sa, heads, tails, counts, stype, n, sigma)
    # name the LMS substrings in their sorted order
    name_np = np.full(n, -1, dtype=np.int64)
    name_of = name_np
    prev = -1
    names = 0
    for i in range(n):
        j = sa[i]
        if j > 0 and stype[j] and not stype[j - 1]:
            if prev == -1:
                names = 1
                name_of[j] = 0
            else:
                diff = False
                k = 0
                while True:
                    if s[prev + k] != s[j + k]:
                        diff = True
                        break
                    a_lms = k > 0 and stype[prev + k] and not stype[prev + k - 1]
                    b_lms = k > 0 and stype[j + k] and not stype[j + k - 1]
                    if a_lms and b_lms:
                        break
                    if a_lms != b_lms:
                        diff = True
                        break
                    k += 1
                if diff:
                    names += 1
                name_of[j] = names - 1
            prev = j
    slms_np = np.empty(nlms, dtype=np.int64)
    slms = slms_np
    if names < nlms:
        # recurse on the reduced string; its final name is the unique 0
        red_np = np.empty(nlms, dtype=np.int64)
        red = red_np
        for k in range(nlms):
            red[k] = name_of[lms[k]]
        red_sa_np = np.empty(nlms, dtype=np.int32)
        red_sa = red_sa_np
        _sais(red, red_sa, nlms, names)
        for k in range(nlms):
            slms[k] = lms[red_sa[k]]
    else:
        for k in range(nlms):
            slms[name_of[lms[k]]] = lms[k]
    # step 2: place LMS suffixes in their true order, induce again
    for i in range(n):
        sa[i] = -1
    _bucket_bounds(counts, heads, tails, sigma)
    for k in range(nlms - 1, -1, -1):
        j = slms[k]
        c = s[j]
        tails[c] -= 1
        sa[tails[c]] = <int> j
    _induce(s, sa, heads, tails, counts, stype, n, sigma)


def suffix_array(text, sigma=None):
    """SA of `text` (non-negative ints) via SA-IS with an appended sentinel."""
    t = np.ascontiguousarray(text, dtype=np.int64)
    cdef long long n = t.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.int32)
    s = np.empty(n + 1, dtype=np.int64)
    s[:n] = t + 1
    s[n] = 0
    cdef long long sg = int(t.max()) + 2 if n else 2
    sa_full = np.empty(n + 1, dtype=np.int32)
    _sais(s, sa_full, n + 1, sg)
    return sa_full[1:].copy()


# ---------------------------------------------------------------------------
# Kasai LCP

def lcp_array(text, sa):
    t = np.ascontiguousarray(text, dtype=np.int64)
    cdef long long[::1] tv = t
    sa32 = np.ascontiguousarray(sa, dtype=np.int32)
    cdef int[::1] sav = sa32
    cdef long long n = sa32.shape[0]
    rank_np = np.empty(n, dtype=np.int64)
    cdef long long[::1] rank = rank_np
    lcp_np = np.zeros(n, dtype=np.int32)
    cdef int[::1] lcp = lcp_np
    cdef long long i, h, r, j
    for i in range(n):
        rank[sav[i]] = i
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sav[r - 1]
        while i + h < n and j + h < n and tv[i + h] == tv[j + h]:
            h += 1
        lcp[r] = <int> h
        if h > 0:
            h -= 1
    return lcp_np


# ---------------------------------------------------------------------------
# suffix tree lifting

def build_tree(sa, lcp, leaf_sdep, leaf_aux):
    sa32 = np.ascontiguousarray(sa, dtype=np.int32)
    lcp32 = np.ascontiguousarray(lcp, dtype=np.int32)
    lsd = np.ascontiguousarray(leaf_sdep, dtype=np.int64)
    aux = np.ascontiguousarray(leaf_aux, dtype=np.int64)
    cdef int[::1] sav = sa32
    cdef int[::1] lcpv = lcp32
    cdef long long[::1] lsdv = lsd
    cdef long long[::1] auxv = aux
    cdef long long m = sa32.shape[0]
    ipar_np = np.full(m + 1, -1, dtype=np.int64)
    isdep_np = np.zeros(m + 1, dtype=np.int64)
    sal_np = np.full(m + 1, m, dtype=np.int64)
    sar_np = np.full(m + 1, -1, dtype=np.int64)
    cnt_np = np.zeros(m + 1, dtype=np.int64)
    iaux_np = np.full(m + 1, _BIG, dtype=np.int64)
    lpar_np = np.full(m, -1, dtype=np.int64)
    rank_np = np.empty(m, dtype=np.int64)
    cdef long long[::1] ipar = ipar_np
    cdef long long[::1] isdep = isdep_np
    cdef long long[::1] sal = sal_np
    cdef long long[::1] sar = sar_np
    cdef long long[::1] cnt = cnt_np
    cdef long long[::1] iaux = iaux_np
    cdef long long[::1] lpar = lpar_np
    cdef long long[::1] rank_of = rank_np
    st_dep_np = np.zeros(m + 2, dtype=np.int64)
    st_node_np = np.zeros(m + 2, dtype=np.int64)
    cdef long long[::1] st_dep = st_dep_np
    cdef long long[::1] st_node = st_node_np
    cdef long long top = 0, n_int = 1
    cdef long long r, l, last, u, v, pos
    cdef long long csal, csar, ccnt, caux, parent
    cdef bint have_last

    for r in range(m):
        l = lcpv[r] if r > 0 else 0
        have_last = False
        last = 0
        while st_dep[top] > l:
            u = st_node[top]
            top -= 1
            if st_dep[top] >= l:
                # attach u under the next element down
                parent = st_node[top]
                _attach(u, parent, ipar, sal, sar, cnt, iaux, lpar, rank_of, auxv)
            else:
                last = u
                have_last = True
        if st_dep[top] == l:
            if have_last:
                _attach(last, st_node[top], ipar, sal, sar, cnt, iaux, lpar,
                        rank_of, auxv)
        else:
            v = n_int
            n_int += 1
            isdep[v] = l
            _attach(last, v, ipar, sal, sar, cnt, iaux, lpar, rank_of, auxv)
            top += 1
            st_dep[top] = l
            st_node[top] = v
        pos = sav[r]
        rank_of[pos] = r
        top += 1
        st_dep[top] = lsdv[r]
        st_node[top] = ~pos
    while top > 0:
        u = st_node[top]
        top -= 1
        _attach(u, st_node[top], ipar, sal, sar, cnt, iaux, lpar, rank_of, auxv)

    return (ipar_np[:n_int].copy(), isdep_np[:n_int].copy(), sal_np[:n_int].copy(),
            sar_np[:n_int].copy(), cnt_np[:n_int].copy(), iaux_np[:n_int].copy(),
            lpar_np)


cdef inline void _attach(long long code, long long parent, long long[::1] ipar,
                         long long[::1] sal, long long[::1] sar, long long[::1] cnt,
                         long long[::1] iaux, long long[::1] lpar,
                         long long[::1] rank_of, long long[::1] auxv):
    cdef long long pos, rr, csal, csar, ccnt, caux
    if code < 0:
        pos = ~code
        lpar[pos] = parent
        rr = rank_of[pos]
        csal = rr
        csar = rr
        ccnt = 1
        caux = auxv[rr]
    else:
        ipar[code] = parent
        csal = sal[code]
        csar = sar[code]
        ccnt = cnt[code]
        caux = iaux[code]
    if csal < sal[parent]:
        sal[parent] = csal
    if csar > sar[parent]:
        sar[parent] = csar
    cnt[parent] += ccnt
    if caux < iaux[parent]:
        iaux[parent] = caux


# ---------------------------------------------------------------------------
# batched root-path lookups

def stack_queries(cs_start, ch_node, isdep, lsdep, n_int, q_start, q_depth, q_order):
    cs = np.ascontiguousarray(cs_start, dtype=np.int64)
    ch = np.ascontiguousarray(ch_node, dtype=np.int64)
    isd = np.ascontiguousarray(isdep, dtype=np.int32)
    lsd = np.ascontiguousarray(lsdep, dtype=np.int32)
    qs = np.ascontiguousarray(q_start, dtype=np.int64)
    qd = np.ascontiguousarray(q_depth, dtype=np.int64)
    qo = np.ascontiguousarray(q_order, dtype=np.int64)
    cdef long long[::1] csv = cs
    cdef long long[::1] chv = ch
    cdef int[::1] isdv = isd
    cdef int[::1] lsdv = lsd
    cdef long long[::1] qsv = qs
    cdef long long[::1] qdv = qd
    cdef long long[::1] qov = qo
    cdef long long nint = n_int
    cdef long long nq = qd.shape[0]
    upper_np = np.full(nq, -1, dtype=np.int64)
    lower_np = np.full(nq, -1, dtype=np.int64)
    cdef long long[::1] upper = upper_np
    cdef long long[::1] lower = lower_np
    cdef long long m = lsd.shape[0]
    cdef long long tot = nint + m
    path_node_np = np.zeros(tot + 2, dtype=np.int64)
    path_dep_np = np.zeros(tot + 2, dtype=np.int64)
    sn_np = np.zeros(tot + 2, dtype=np.int64)
    sl_np = np.zeros(tot + 2, dtype=np.int64)
    sh_np = np.zeros(tot + 2, dtype=np.int64)
    cdef long long[::1] path_node = path_node_np
    cdef long long[::1] path_dep = path_dep_np
    cdef long long[::1] sn = sn_np
    cdef long long[::1] sl = sl_np
    cdef long long[::1] sh = sh_np
    cdef long long sp = 0, plen = 1, node, lo, hi, c, posq, a, b, qi, d, lo2, hi2, mid, slot
    if nq == 0:
        return upper_np, lower_np
    path_node[0] = 0
    path_dep[0] = 0
    sn[0] = 0
    sl[0] = csv[0]
    sh[0] = csv[1]
    sp = 1
    while sp > 0:
        sp -= 1
        node = sn[sp]
        lo = sl[sp]
        hi = sh[sp]
        if lo >= hi:
            plen -= 1
            continue
        sn[sp] = node
        sl[sp] = lo + 1
        sh[sp] = hi
        sp += 1
        c = chv[lo]
        if c >= nint:
            posq = c - nint
            a = qsv[posq]
            b = qsv[posq + 1]
            if a < b:
                path_node[plen] = c
                path_dep[plen] = lsdv[posq]
                plen += 1
                for qi in range(a, b):
                    d = qdv[qi]
                    slot = qov[qi]
                    lo2 = 0
                    hi2 = plen
                    while hi2 - lo2 > 1:
                        mid = (lo2 + hi2) >> 1
                        if path_dep[mid] <= d:
                            lo2 = mid
                        else:
                            hi2 = mid
                    upper[slot] = path_node[lo2]
                    lower[slot] = path_node[lo2 + 1] if lo2 + 1 < plen else -1
                plen -= 1
        else:
            path_node[plen] = c
            path_dep[plen] = isdv[c]
            plen += 1
            sn[sp] = c
            sl[sp] = csv[c]
            sh[sp] = csv[c + 1]
            sp += 1
    return upper_np, lower_np


def leaf_flag_depths(cs_start, ch_node, isdep, n_int, m, flag):
    cs = np.ascontiguousarray(cs_start, dtype=np.int64)
    ch = np.ascontiguousarray(ch_node, dtype=np.int64)
    isd = np.ascontiguousarray(isdep, dtype=np.int32)
    fl = np.ascontiguousarray(flag, dtype=np.uint8)
    cdef long long[::1] csv = cs
    cdef long long[::1] chv = ch
    cdef int[::1] isdv = isd
    cdef unsigned char[::1] flv = fl
    cdef long long nint = n_int, mm = m
    out_np = np.zeros(mm, dtype=np.int64)
    cdef long long[::1] out = out_np
    cdef long long tot = nint + mm
    sn_np = np.zeros(tot + 2, dtype=np.int64)
    sl_np = np.zeros(tot + 2, dtype=np.int64)
    sh_np = np.zeros(tot + 2, dtype=np.int64)
    sv_np = np.zeros(tot + 2, dtype=np.int64)
    cdef long long[::1] sn = sn_np
    cdef long long[::1] sl = sl_np
    cdef long long[::1] sh = sh_np
    cdef long long[::1] sv = sv_np
    cdef long long sp, node, lo, hi, c, cur, nv
    cur = isdv[0] if flv[0] else 0
    sn[0] = 0
    sl[0] = csv[0]
    sh[0] = csv[1]
    sv[0] = 0
    sp = 1
    while sp > 0:
        sp -= 1
        node = sn[sp]
        lo = sl[sp]
        hi = sh[sp]
        if lo >= hi:
            cur = sv[sp]
            continue
        sl[sp] = lo + 1
        sp += 1
        c = chv[lo]
        if c >= nint:
            out[c - nint] = cur
        else:
            nv = isdv[c] if flv[c] else cur
            sn[sp] = c
            sl[sp] = csv[c]
            sh[sp] = csv[c + 1]
            sv[sp] = cur
            sp += 1
            cur = nv
    return out_np


def naive_locus_batch(cs_start, ch_node, ch_sym, isdep, lsdep, n_int, sal,
                      leafpos_by_rank, sym_text, q_pos, q_len):
    cs = np.ascontiguousarray(cs_start, dtype=np.int64)
    ch = np.ascontiguousarray(ch_node, dtype=np.int64)
    chs = np.ascontiguousarray(ch_sym, dtype=np.int32)
    isd = np.ascontiguousarray(isdep, dtype=np.int32)
    lsd = np.ascontiguousarray(lsdep, dtype=np.int32)
    salv_np = np.ascontiguousarray(sal, dtype=np.int32)
    lbr = np.ascontiguousarray(leafpos_by_rank, dtype=np.int32)
    txt = np.ascontiguousarray(sym_text, dtype=np.int32)
    qp = np.ascontiguousarray(q_pos, dtype=np.int64)
    ql = np.ascontiguousarray(q_len, dtype=np.int64)
    cdef long long[::1] csv = cs
    cdef long long[::1] chv = ch
    cdef int[::1] chsv = chs
    cdef int[::1] isdv = isd
    cdef int[::1] lsdv = lsd
    cdef int[::1] salv = salv_np
    cdef int[::1] lbrv = lbr
    cdef int[::1] txtv = txt
    cdef long long[::1] qpv = qp
    cdef long long[::1] qlv = ql
    cdef long long nint = n_int
    cdef long long nq = qp.shape[0]
    up_np = np.full(nq, -1, dtype=np.int64)
    node_np = np.full(nq, -1, dtype=np.int64)
    cdef long long[::1] up = up_np
    cdef long long[::1] node_out = node_np
    cdef long long q, start, L, node, d, sym, lo, hi, mid2, child, cd, cpos, reach, dd
    cdef int cval
    for q in range(nq):
        start = qpv[q]
        L = qlv[q]
        node = 0
        d = 0
        while True:
            sym = txtv[start + d]
            lo = csv[node]
            hi = csv[node + 1]
            child = -1
            while lo < hi:
                mid2 = (lo + hi) >> 1
                cval = chsv[mid2]
                if cval == sym:
                    child = chv[mid2]
                    break
                if cval < sym:
                    lo = mid2 + 1
                else:
                    hi = mid2
            if child < 0:
                raise RuntimeError("substring absent from tree")
            if child >= nint:
                cd = lsdv[child - nint]
                cpos = child - nint
            else:
                cd = isdv[child]
                cpos = lbrv[salv[child]]
            reach = cd if cd < L else L
            for dd in range(d, reach):
                if txtv[cpos + dd] != txtv[start + dd]:
                    raise RuntimeError("edge mismatch: substring absent")
            if reach == L:
                if cd == L:
                    node_out[q] = child
                else:
                    up[q] = node
                    node_out[q] = child
                break
            node = child
            d = cd
    return up_np, node_np


# ---------------------------------------------------------------------------
# inheritance passes

def macro_select(par, order, cap):
    p = np.ascontiguousarray(par, dtype=np.int64)
    o = np.ascontiguousarray(order, dtype=np.int64)
    cdef long long[::1] pv = p
    cdef long long[::1] ov = o
    cdef long long n = p.shape[0], capv = cap, k, v, pp
    carry_np = np.ones(n, dtype=np.int64)
    macro_np = np.zeros(n, dtype=np.uint8)
    cdef long long[::1] carry = carry_np
    cdef unsigned char[::1] macro = macro_np
    for k in range(n - 1, -1, -1):
        v = ov[k]
        pp = pv[v]
        if pp == -1 or carry[v] >= capv:
            macro[v] = 1
        else:
            carry[pp] += carry[v]
    return macro_np


def marked_chases(par, order, marked, macro):
    p = np.ascontiguousarray(par, dtype=np.int64)
    o = np.ascontiguousarray(order, dtype=np.int64)
    mk = np.ascontiguousarray(marked, dtype=np.uint8)
    mc = np.ascontiguousarray(macro, dtype=np.uint8)
    cdef long long[::1] pv = p
    cdef long long[::1] ov = o
    cdef unsigned char[::1] mkv = mk
    cdef unsigned char[::1] mcv = mc
    cdef long long n = p.shape[0], k, v, pp
    fm_np = np.full(n, -1, dtype=np.int64)
    mi_np = np.full(n, -1, dtype=np.int64)
    ne_np = np.full(n, -1, dtype=np.int64)
    cdef long long[::1] fm = fm_np
    cdef long long[::1] mi = mi_np
    cdef long long[::1] ne = ne_np
    for k in range(n):
        v = ov[k]
        pp = pv[v]
        fm[v] = v if mcv[v] else fm[pp]
        if not mcv[v]:
            mi[v] = v if (pp == -1 or mcv[pp]) else mi[pp]
        if mkv[v]:
            ne[v] = v
        elif pp != -1:
            ne[v] = ne[pp]
    return fm_np, mi_np, ne_np


def micro_masks(par, order, micro_id, marked, pos):
    p = np.ascontiguousarray(par, dtype=np.int64)
    o = np.ascontiguousarray(order, dtype=np.int64)
    mi = np.ascontiguousarray(micro_id, dtype=np.int64)
    mk = np.ascontiguousarray(marked, dtype=np.uint8)
    ps = np.ascontiguousarray(pos, dtype=np.int64)
    cdef long long[::1] pv = p
    cdef long long[::1] ov = o
    cdef long long[::1] miv = mi
    cdef unsigned char[::1] mkv = mk
    cdef long long[::1] psv = ps
    cdef long long n = p.shape[0], k, v, pp
    cdef unsigned long long acc
    B_np = np.zeros(n, dtype=np.uint64)
    cdef unsigned long long[::1] B = B_np
    for k in range(n):
        v = ov[k]
        if miv[v] == -1:
            continue
        pp = pv[v]
        acc = B[pp] if (pp != -1 and miv[pp] == miv[v]) else 0
        if mkv[v]:
            acc |= (<unsigned long long> 1) << psv[v]
        B[v] = acc
    return B_np


def mark_heaps(macros, nearest, mark_par):
    mc = np.ascontiguousarray(macros, dtype=np.int64)
    ne = np.ascontiguousarray(nearest, dtype=np.int64)
    mp = np.ascontiguousarray(mark_par, dtype=np.int64)
    cdef long long[::1] mcv = mc
    cdef long long[::1] nev = ne
    cdef long long[::1] mpv = mp
    cdef long long nm = mc.shape[0], i, u, total
    starts_np = np.zeros(nm + 1, dtype=np.int64)
    cdef long long[::1] starts = starts_np
    total = 0
    for i in range(nm):
        u = nev[mcv[i]]
        while u != -1:
            total += 1
            u = mpv[u]
        starts[i + 1] = total
    flat_np = np.empty(total, dtype=np.int64)
    cdef long long[::1] flat = flat_np
    total = 0
    for i in range(nm):
        u = nev[mcv[i]]
        while u != -1:
            flat[total] = u
            total += 1
            u = mpv[u]
    return starts_np, flat_np


def path_assign(ipar, order, active, level):
    p = np.ascontiguousarray(ipar, dtype=np.int64)
    o = np.ascontiguousarray(order, dtype=np.int64)
    ac = np.ascontiguousarray(active, dtype=np.uint8)
    lv = np.ascontiguousarray(level, dtype=np.int64)
    cdef long long[::1] pv = p
    cdef long long[::1] ov = o
    cdef unsigned char[::1] acv = ac
    cdef long long[::1] lvv = lv
    cdef long long n = p.shape[0], k, v, pp, count = 0
    pid_np = np.full(n, -1, dtype=np.int64)
    cdef long long[::1] pid = pid_np
    for k in range(n):
        v = ov[k]
        if not acv[v]:
            continue
        pp = pv[v]
        if pp != -1 and acv[pp] and lvv[pp] == lvv[v]:
            pid[v] = pid[pp]
        else:
            pid[v] = count
            count += 1
    return pid_np, count


def path_pointer(ipar, order, active, level, pathid):
    p = np.ascontiguousarray(ipar, dtype=np.int64)
    o = np.ascontiguousarray(order, dtype=np.int64)
    ac = np.ascontiguousarray(active, dtype=np.uint8)
    lv = np.ascontiguousarray(level, dtype=np.int64)
    pi = np.ascontiguousarray(pathid, dtype=np.int64)
    cdef long long[::1] pv = p
    cdef long long[::1] ov = o
    cdef unsigned char[::1] acv = ac
    cdef long long[::1] lvv = lv
    cdef long long[::1] piv = pi
    cdef long long n = p.shape[0], k, v, pp
    pp_np = np.full(n, -1, dtype=np.int64)
    cdef long long[::1] out = pp_np
    for k in range(n - 1, -1, -1):
        v = ov[k]
        if acv[v]:
            out[v] = piv[v]
        pp = pv[v]
        if pp != -1 and out[v] != -1 and (not acv[pp]) and lvv[pp] == lvv[v]:
            out[pp] = out[v]
    return pp_np


def subtree_argmax(ipar, lpar, order_int, leaf_vals):
    ip = np.ascontiguousarray(ipar, dtype=np.int64)
    lp = np.ascontiguousarray(lpar, dtype=np.int64)
    o = np.ascontiguousarray(order_int, dtype=np.int64)
    lvals = np.ascontiguousarray(leaf_vals, dtype=np.int64)
    cdef long long[::1] ipv = ip
    cdef long long[::1] lpv = lp
    cdef long long[::1] ov = o
    cdef long long[::1] lvv = lvals
    cdef long long n_int = ip.shape[0], m = lp.shape[0], pos, p, k, v
    best_np = np.full(n_int, -1, dtype=np.int64)
    arg_np = np.full(n_int, -1, dtype=np.int64)
    cdef long long[::1] best = best_np
    cdef long long[::1] arg = arg_np
    for pos in range(m):
        p = lpv[pos]
        if lvv[pos] > best[p]:
            best[p] = lvv[pos]
            arg[p] = pos
    for k in range(n_int - 1, -1, -1):
        v = ov[k]
        p = ipv[v]
        if p != -1 and best[v] > best[p]:
            best[p] = best[v]
            arg[p] = arg[v]
    return best_np, arg_np


def doc_descriptors(text, cstart, full_lens, ell):
    t = np.ascontiguousarray(text, dtype=np.int32)
    cs = np.ascontiguousarray(cstart, dtype=np.int64)
    fl = np.ascontiguousarray(full_lens, dtype=np.int64)
    cdef int[::1] tv = t
    cdef long long[::1] csv = cs
    cdef long long[::1] flv = fl
    cdef long long beta = fl.shape[0], ellv = ell
    out_np = np.zeros((beta, 4), dtype=np.int64)
    cdef long long[:, ::1] out = out_np
    cdef long long lo = (ellv + 3) // 4
    cdef long long d, flen, hi, n_mid, base, k, i, p, s, e, db, wb
    cdef long long i1, j1, k1, rot
    cdef int c, a, b
    if lo < 1:
        lo = 1
    border_np = np.zeros(ellv + 2, dtype=np.int64)
    cdef long long[::1] border = border_np
    for d in range(beta):
        flen = flv[d]
        hi = (3 * ellv) // 4
        if hi > flen:
            hi = flen
        n_mid = hi - lo + 1
        if n_mid < 2:
            continue
        base = csv[d] + lo - 1
        border[0] = 0
        border[1] = 0
        k = 0
        for i in range(1, n_mid):
            c = tv[base + i]
            while k > 0 and c != tv[base + k]:
                k = border[k]
            if c == tv[base + k]:
                k += 1
            border[i + 1] = k
        p = n_mid - border[n_mid]
        if 4 * p > ellv:
            continue
        s = lo
        e = hi
        db = csv[d]
        while s > 1 and tv[db + s - 2] == tv[db + s - 2 + p]:
            s -= 1
        while e < flen and tv[db + e] == tv[db + e - p]:
            e += 1
        wb = db + s - 1
        i1 = 0
        j1 = 1
        k1 = 0
        while i1 < p and j1 < p and k1 < p:
            a = tv[wb + (i1 + k1) % p]
            b = tv[wb + (j1 + k1) % p]
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
        rot = (i1 if i1 < j1 else j1) + 1
        out[d, 0] = p
        out[d, 1] = s
        out[d, 2] = e
        out[d, 3] = s + rot - 1
    return out_np
