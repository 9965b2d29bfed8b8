"""Invariant suite: the structural lemmas the construction relies on,
re-checked on built instances, plus oracle equivalence drivers.

Used by the CLI `verify` subcommand and the acceptance tests.  All checks
are independent recomputations (definition scans, naive predecessors, root
walks); failures come back as strings, empty list = pass.
"""

import random

import numpy as np

from .predsets import naive_predecessor
from .waindex import WaIndex


def _is_ancestor(g, a, b):
    return g.sal[a] <= g.sal[b] and g.sar[b] <= g.sar[a]


def verify_instance(inst, rng=None, pair_budget=200_000, query_budget=3000):
    rng = rng or random.Random(0)
    fails = []
    g = inst.gst
    if g.slink is None:
        fails.append("instance built without debug arrays")
        return fails
    lv = inst.level
    act = inst.active

    # Lemma "suffix active": inactive nodes have inactive link targets
    for v in range(1, g.n_int):
        t = int(g.slink[v])
        if not act[v] and t != 0 and act[t]:
            fails.append(f"lemma4: inactive node {v} links to active {t}")
    # Lemma "suffix level": the link target's level is at least as large
    for v in range(1, g.n_int):
        if lv[int(g.slink[v])] < lv[v]:
            fails.append(f"lemma5: level drops across the suffix link of {v}")
    # Lemma "one incoming": links of unrelated same-level nodes that become
    # ancestors force a strictly larger level
    ids = list(range(1, g.n_int))
    pairs = [(u, v) for u in ids for v in ids if u != v]
    if len(pairs) > pair_budget:
        pairs = [(rng.choice(ids), rng.choice(ids)) for _ in range(pair_budget)]
    for u, v in pairs:
        if lv[u] != lv[v] or _is_ancestor(g, u, v) or _is_ancestor(g, v, u):
            continue
        lu, lvv = int(g.slink[u]), int(g.slink[v])
        if _is_ancestor(g, lu, lvv) and lv[lu] <= lv[u]:
            fails.append(f"lemma6: link of {u} spans link of {v} without a level raise")
    # Lemma "degree one" re-derivation (raises on violation)
    try:
        inst._points_to()
    except AssertionError as e:
        fails.append(f"lemma7: {e}")
    # Lemma "monotonicity" including the set inclusion (c)
    for ch in inst.chains:
        z = len(ch.paths)
        span = range(z) if ch.is_cycle else range(z - 1)
        for idx in span:
            a, b = int(ch.paths[idx]), int(ch.paths[(idx + 1) % z])
            if inst.p_lo[a] > 1 + inst.p_lo[b] or inst.p_hi[a] > 1 + inst.p_hi[b]:
                fails.append(f"lemma8ab: ranges of paths {a}->{b} not nested")
            sa = set(int(g.isdep[x]) for x in
                     inst.pnodes[inst.pnode_start[a]:inst.pnode_start[a + 1]])
            sb = set(int(g.isdep[x]) for x in
                     inst.pnodes[inst.pnode_start[b]:inst.pnode_start[b + 1]])
            for d in sa:
                if d - 1 >= int(inst.p_lo[b]) and (d - 1) not in sb:
                    fails.append(f"lemma8c: depth {d} of path {a} missing from {b}")
    # Lemma "sum of increases" and the telescoping identity
    if inst.n_paths:
        kmax = int(np.max(inst.p_level))
    else:
        kmax = 0
    for k in range(kmax + 1):
        total, bound, ok = inst.check_cost_bound(k)
        if not ok:
            fails.append(f"lemma9: level {k} cost {total} exceeds {bound}")
    for ch in inst.chains:
        z = len(ch.paths)
        first, last = int(ch.paths[0]), int(ch.paths[-1])
        u1 = z + int(inst.p_hi[last]) - (1 + int(inst.p_lo[first])) + 1
        cost = 0
        for idx, pid in enumerate(ch.paths):
            pid = int(pid)
            if idx == 0:
                cost += (int(inst.p_hi[pid]) - int(inst.p_hi[last]) + 1 if ch.is_cycle
                         else int(inst.p_hi[pid]) - int(inst.p_lo[pid]) + 1)
            else:
                cost += int(inst.p_hi[pid]) - int(inst.p_hi[int(ch.paths[idx - 1])]) + 1
        if ch.is_cycle and u1 > 2 * cost:
            fails.append(f"telescope: cycle |U'_1|={u1} > 2*{cost}")
        if not ch.is_cycle and u1 != cost:
            fails.append(f"telescope: chain |U'_1|={u1} != {cost}")
        # PISNS answers match the naive predecessor on every path set
        for pos, pid in enumerate(ch.paths, start=1):
            pid = int(pid)
            lo, hi = int(inst.pnode_start[pid]), int(inst.pnode_start[pid + 1])
            vals = (g.isdep[inst.pnodes[lo:hi]].astype(np.int64) + pos).tolist()
            for _ in range(min(query_budget // max(1, inst.n_paths), 40)):
                x = rng.randint(pos + int(inst.p_lo[pid]), ch.universe)
                want = naive_predecessor(vals, x)
                got = ch.pisns.pred(pos, x)
                if got != want:
                    fails.append(f"pisns: chain path {pid} pred({x}) = {got} != {want}")
                    break
    # periodic families: disjoint node sets and r-periodic members
    owner = {}
    for fid, f in enumerate(inst.families):
        for (phi, j), nodes in f.frag_nodes.items():
            for v in nodes:
                v = int(v)
                if owner.setdefault(v, fid) != fid:
                    fails.append(f"families: node {v} in families {owner[v]} and {fid}")
                d = int(g.isdep[v])
                exp = d - (f.p - phi + 1)
                if exp < 0 or exp // f.p != f.alpha - j or exp % f.p + 1 > f.p:
                    fails.append(f"families: node {v} misfiled at ({phi},{j})")
        if g.text is not None:
            for (phi, j), nodes in f.frag_nodes.items():
                for v in nodes[: min(8, len(nodes))]:
                    pos = int(g.sa[g.sal[int(v)]])
                    d = int(g.isdep[int(v)])
                    s = g.text[pos : pos + d]
                    for q in range(d):
                        if int(s[q]) != f.r[(phi - 1 + q) % f.p]:
                            fails.append(f"families: node {int(v)} not r-periodic")
                            break
    return fails


def verify_index(idx: WaIndex, rng=None, query_budget=3000):
    rng = rng or random.Random(1)
    fails = []
    for (k, alpha), rec in sorted(idx.instances.items()):
        if rec.inst is None:
            continue
        fails += [f"(k={k},a={alpha}) {msg}"
                  for msg in verify_instance(rec.inst, rng, query_budget=query_budget)]
    return fails


def verify_text(w, max_n=512, rng=None, modes=("standard", "compact")):
    """Full verification: lemma suite on every instance plus oracle
    equivalence of substring_locus against the naive root walk."""
    rng = rng or random.Random(2)
    w = list(w)
    n = len(w)
    fails = []
    built = {}
    for mode in modes:
        idx = WaIndex(w, mode=mode, retain_debug=True)
        built[mode] = idx
        fails += [f"[{mode}] {m}" for m in verify_index(idx, rng)]
        if n <= max_n:
            queries = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
        else:
            queries = [(lambda i: (i, rng.randint(i, n)))(rng.randint(1, n))
                       for _ in range(20000)]
        want = idx.master.naive_locus_batch([(0, i, j) for i, j in queries])
        for q, (i, j) in enumerate(queries):
            got = idx.substring_locus(i, j)
            if got != want[q]:
                fails.append(f"[{mode}] locus({i},{j}) = {got} != {want[q]}")
                break
    if len(built) == 2:
        std, cmp_ = built["standard"], built["compact"]
        sample = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
        if len(sample) > 20000:
            sample = [s for s in sample if rng.random() < 20000 / len(sample)]
        for i, j in sample:
            if std.substring_locus(i, j) != cmp_.substring_locus(i, j):
                fails.append(f"mode mismatch at ({i},{j})")
                break
    return fails
