"""Predecessor structures over correlated set collections.

PINS ("predecessor in nested sets"): S_1 c= S_2 c= ... c= S_k over [1, N].
Queries resolve with two table lookups: a per-group table giving the
predecessor in the group's largest set, then a per-set table mapping that
element down into S_i.  The compact variant replaces the per-group length-N
tables with packed rank/select bit vectors.

PISNS ("predecessor in shrinking nested sets"): lower bounds
m_1 <= m_2 <= ... <= m_k with S_i c= [m_i, N] and S_i ^ [m_{i+1}, N] c= S_{i+1}.
The universe is halved recursively; at each node the sets whose bound lies in
the low half donate their high-half elements to one PINS subproblem, then the
two halves recurse on the split set ranges.  A per-set guide bit word (one
bit per recursion level holding elements of that set) routes a query to the
right subproblem with O(1) bit arithmetic.
"""

from bisect import bisect_right

import numpy as np

from .bitvec import PackedRankSelect
from .metrics import PROBES, array_words


def naive_predecessor(sorted_values, x):
    """(1-based rank, value) of the largest element <= x, or None.

    Reference oracle; also the only predecessor routine the test suites
    compare everything else against.
    """
    r = bisect_right(sorted_values, x)
    if r == 0:
        return None
    return r, int(sorted_values[r - 1])


def _as_sorted_arrays(sets):
    out = []
    for s in sets:
        a = np.asarray(s, dtype=np.int64)
        if a.size > 1 and np.any(np.diff(a) <= 0):
            raise ValueError("set elements must be strictly increasing")
        out.append(a)
    return out


def validate_nested(sets, universe):
    prev = None
    for i, s in enumerate(sets):
        if s.size and (s[0] < 1 or s[-1] > universe):
            raise ValueError(f"set {i + 1} out of universe [1, {universe}]")
        if prev is not None and prev.size:
            if s.size < prev.size:
                raise ValueError(f"nesting violated: |S_{i + 1}| < |S_{i}|")
            pos = np.searchsorted(s, prev)
            bad = (pos >= s.size) | (s[np.minimum(pos, s.size - 1)] != prev)
            if np.any(bad):
                el = int(prev[np.nonzero(bad)[0][0]])
                raise ValueError(f"nesting violated at pair (set {i}, element {el})")
        prev = s


def validate_shrinking(sets, bounds, universe):
    if len(bounds) != len(sets):
        raise ValueError("one lower bound per set required")
    for i, s in enumerate(sets):
        if s.size == 0:
            raise ValueError(f"PISNS set {i + 1} is empty")
    for i, s in enumerate(sets):
        if s[0] < bounds[i] or s[-1] > universe:
            raise ValueError(f"set {i + 1} leaves [m_{i + 1}, N]")
        if i + 1 < len(sets):
            if bounds[i + 1] < bounds[i]:
                raise ValueError("lower bounds must be nondecreasing")
            keep = sets[i][sets[i] >= bounds[i + 1]]
            nxt = sets[i + 1]
            pos = np.searchsorted(nxt, keep)
            bad = (pos >= nxt.size) | (nxt[np.minimum(pos, nxt.size - 1)] != keep)
            if np.any(bad):
                el = int(keep[np.nonzero(bad)[0][0]])
                raise ValueError(f"shrinking-nesting violated at (set {i + 1}, element {el})")


class PinsIndex:
    """Nested-set predecessor; `base` shifts the universe to [base+1, base+N]."""

    def __init__(self, sets, universe, base=0, compact=False, t1=1, validate=True):
        self.sets = _as_sorted_arrays(sets)
        self.N = int(universe)
        self.base = int(base)
        self.compact = bool(compact)
        self.t1 = int(t1)
        if validate:
            validate_nested([s - self.base for s in self.sets], self.N)
        k = len(self.sets)
        sizes = [s.size for s in self.sets]
        # group by floor(log2(size)); nesting makes groups contiguous ranges
        self.group_of = np.full(k, -1, dtype=np.int32)
        group_last = {}
        for i, sz in enumerate(sizes):
            if sz == 0:
                continue
            c = sz.bit_length() - 1
            self.group_of[i] = c
            group_last[c] = i
        self.group_last = group_last
        self._set_tbl = [None] * k
        self._grp_tbl = {}
        self._grp_rs = {}
        self._rs0 = None
        if not group_last:
            return
        last_ids = sorted(group_last)
        top = self.sets[group_last[last_ids[-1]]]
        if compact:
            self._rs0 = PackedRankSelect(self.N, top - self.base, t=self.t1 + 1)
            for c in last_ids[:-1]:
                g = self.sets[group_last[c]]
                pos = np.searchsorted(top, g) + 1
                self._grp_rs[c] = PackedRankSelect(top.size, pos, t=self.t1 + 1)
        else:
            xs = np.arange(1, self.N + 1, dtype=np.int64) + self.base
            for c in last_ids:
                g = self.sets[group_last[c]]
                self._grp_tbl[c] = np.searchsorted(g, xs, side="right").astype(np.int32)
        for i in range(k):
            c = self.group_of[i]
            if c < 0:
                continue
            g = self.sets[group_last[c]]
            self._set_tbl[i] = np.searchsorted(self.sets[i], g, side="right").astype(np.int32)

    def pred_rank(self, i, x_local):
        """1-based rank of the predecessor of base + x_local in S_{i+1}, or 0."""
        c = self.group_of[i]
        if c < 0:
            return 0
        if self.compact:
            r_top = self._rs0.rank(x_local)
            if r_top == 0:
                return 0
            rs = self._grp_rs.get(int(c))
            if rs is None:  # i belongs to the last group
                r_grp = r_top
            else:
                r_grp = rs.rank(r_top)
                if r_grp == 0:
                    return 0
        else:
            PROBES.hit()
            r_grp = int(self._grp_tbl[int(c)][x_local - 1])
            if r_grp == 0:
                return 0
        PROBES.hit()
        return int(self._set_tbl[i][r_grp - 1])

    def pred(self, i, x):
        """Predecessor of x in set i (1-based set index); (rank, value) or None."""
        if not (1 <= i <= len(self.sets)):
            raise ValueError(f"set index {i} out of range")
        if not (1 <= x - self.base <= self.N):
            raise ValueError(f"query value {x} outside universe")
        r = self.pred_rank(i - 1, x - self.base)
        if r == 0:
            return None
        return r, int(self.sets[i - 1][r - 1])

    def words(self):
        w = array_words(*self.sets, *(t for t in self._set_tbl if t is not None))
        w += array_words(*self._grp_tbl.values())
        if self._rs0 is not None:
            w += self._rs0.words()
        w += sum(rs.words() for rs in self._grp_rs.values())
        return w


def build_pins(sets, universe, validate=True):
    return PinsIndex(sets, universe, compact=False, validate=validate)


def build_pins_compact(sets, universe, t1=1, validate=True):
    return PinsIndex(sets, universe, compact=True, t1=t1, validate=validate)


def _split_at_bound(bounds, lo, hi, mid):
    """Largest i in [lo, hi] with bounds[i] <= mid, or lo - 1.

    Double-ended galloping search, O(log min(k', k - k')).
    """
    if bounds[lo] > mid:
        return lo - 1
    if bounds[hi] <= mid:
        return hi
    a, b = lo, hi  # invariant: bounds[a] <= mid < bounds[b]
    step = 1
    while b - a > 1:
        crossed = False
        p = lo + step
        if p >= b:
            crossed = True
        elif bounds[p] <= mid:
            if p > a:
                a = p
        else:
            b = p
            crossed = True
        p = hi - step
        if not crossed:
            if p <= a:
                crossed = True
            elif bounds[p] > mid:
                if p < b:
                    b = p
                crossed = True
            elif p > a:
                a = p
        if crossed:
            break
        step <<= 1
    while b - a > 1:
        m = (a + b) // 2
        if bounds[m] <= mid:
            a = m
        else:
            b = m
    return a


class PisnsIndex:
    def __init__(self, sets, bounds, universe, compact=False, t2=1, validate=True):
        self.sets = _as_sorted_arrays(sets)
        self.bounds = np.asarray(bounds, dtype=np.int64)
        self.N = int(universe)
        self.compact = bool(compact)
        self.t2 = int(t2)
        if validate:
            validate_shrinking(self.sets, self.bounds, self.N)
        k = len(self.sets)
        n2 = 1
        while n2 < self.N:
            n2 <<= 1
        self.N2 = n2
        self.B = n2.bit_length() - 1
        self.guide = np.zeros(k, dtype=np.uint64)
        self.pins = []
        self._pins_base = []
        self._pins_top = []
        handles = [[] for _ in range(k)]  # (pins_id, local_idx, rank_offset)
        self._elements_placed = 0
        if k:
            rem = [s.size for s in self.sets]
            self._decompose(0, k - 1, 1, self.N2, 1, rem, handles)
        total = sum(s.size for s in self.sets)
        assert self._elements_placed == total, "decomposition must place every element once"
        lens = [len(h) for h in handles]
        self.h_start = np.concatenate(([0], np.cumsum(lens))).astype(np.int64)
        flat = [t for h in handles for t in h]
        self.h_pins = np.asarray([t[0] for t in flat], dtype=np.int32)
        self.h_local = np.asarray([t[1] for t in flat], dtype=np.int32)
        self.h_off = np.asarray([t[2] for t in flat], dtype=np.int32)

    # -- construction ------------------------------------------------------

    def _emit(self, pieces, nl, nh, level, handles):
        """Build one PINS subproblem from (set_idx, start, stop) slices."""
        if not pieces:
            return
        pid = len(self.pins)
        base = nl - 1
        local_sets = [self.sets[i][a:b] for i, a, b in pieces]
        idx = PinsIndex(local_sets, nh - base, base=base, compact=self.compact,
                        t1=self.t2 + 1, validate=False)
        self.pins.append(idx)
        self._pins_base.append(base)
        self._pins_top.append(nh)
        for local, (i, a, b) in enumerate(pieces):
            self.guide[i] |= np.uint64(1 << level)
            handles[i].append((pid, local, a))
            self._elements_placed += b - a

    def _decompose(self, lo, hi, nl, nh, level, rem, handles):
        while True:
            if lo > hi:
                return
            while hi >= lo and rem[hi] == 0:
                hi -= 1
            while lo <= hi and rem[lo] == 0:
                lo += 1
            if lo > hi:
                return
            if nl == nh or lo == hi:
                pieces = [(i, 0, rem[i]) for i in range(lo, hi + 1) if rem[i]]
                self._emit(pieces, nl, nh, level, handles)
                return
            mid = (nl + nh) // 2
            split = _split_at_bound(self.bounds, lo, hi, mid)
            if split >= lo:
                # peel high-half elements of the low-bound sets, top set first
                pieces = []
                for i in range(split, lo - 1, -1):
                    c = int(np.searchsorted(self.sets[i][: rem[i]], mid, side="right"))
                    if c == rem[i]:
                        break
                    pieces.append((i, c, rem[i]))
                    rem[i] = c
                pieces.reverse()
                self._emit(pieces, mid + 1, nh, level, handles)
            # recurse: low-bound sets into the low half, the rest into the high
            if split < hi:
                self._decompose(split + 1, hi, mid + 1, nh, level + 1, rem, handles)
            if split >= lo:
                lo, hi, nh, level = lo, split, mid, level + 1
                continue
            return

    # -- queries -----------------------------------------------------------

    def _piece_pred(self, i0, g, lvl, x):
        idx = (g & ((1 << lvl) - 1)).bit_count()
        h = int(self.h_start[i0]) + idx
        pid = int(self.h_pins[h])
        p = self.pins[pid]
        PROBES.hit()
        x_local = min(x, self._pins_top[pid]) - self._pins_base[pid]
        if x_local < 1:
            return None
        r = p.pred_rank(int(self.h_local[h]), x_local)
        if r == 0:
            return None
        grank = int(self.h_off[h]) + r
        return grank, int(self.sets[i0][grank - 1])

    def pred(self, i, x):
        """Predecessor of x in set i (1-based); (rank in full S_i, value) or None."""
        if not (1 <= i <= len(self.sets)):
            raise ValueError(f"set index {i} out of range")
        m = int(self.bounds[i - 1])
        if x < m:
            return None
        x = min(int(x), self.N2)
        g = int(self.guide[i - 1])
        if g == 0:
            return None
        PROBES.hit()
        z = (x - 1) ^ (m - 1)
        ld = self.B + 1 if z == 0 else self.B - (z.bit_length() - 1)
        deepest = g.bit_length() - 1
        if deepest < ld:
            lvl = deepest
        elif (g >> ld) & 1:
            lvl = ld
        else:
            mask = g >> (ld + 1)
            if mask == 0:
                return None
            lvl = ld + 1 + ((mask & -mask).bit_length() - 1)
        res = self._piece_pred(i - 1, g, lvl, x)
        if res is None:
            mask = g >> (lvl + 1)
            if mask == 0:
                return None
            lvl = lvl + 1 + ((mask & -mask).bit_length() - 1)
            res = self._piece_pred(i - 1, g, lvl, x)
        return res

    def words(self):
        w = array_words(self.guide, self.h_start, self.h_pins, self.h_local,
                        self.h_off, self.bounds)
        w += sum(p.words() for p in self.pins)
        return w


def build_pisns(sets, bounds, universe, compact=False, t2=1, validate=True):
    return PisnsIndex(sets, bounds, universe, compact=compact, t2=t2, validate=validate)
