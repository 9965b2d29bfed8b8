"""Command-line front end: build/persist an index, run query batches, run
the verification suite, and benchmark probes and space."""

import argparse
import json
import sys

import numpy as np

from . import container
from .metrics import PROBES
from .waindex import WaIndex


def _read_text(path):
    with open(path, "rb") as f:
        data = f.read()
    if not data:
        print(f"error: {path} is empty", file=sys.stderr)
        raise SystemExit(2)
    return np.frombuffer(data, dtype=np.uint8).astype(np.int32)


def _read_pairs(path):
    """Query pairs, one per line: 'i j' (optionally 'doc i j k2')."""
    out = []
    try:
        with open(path) as f:
            for ln, line in enumerate(f, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split()
                try:
                    out.append((ln, [int(p) for p in parts]))
                except ValueError:
                    print(f"error: {path}:{ln}: not integers: {line!r}",
                          file=sys.stderr)
                    raise SystemExit(2)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        raise SystemExit(2)
    return out


def cmd_build(args):
    w = _read_text(args.text)
    idx = WaIndex(w, mode=args.mode)
    container.save(idx, args.output)
    if args.stats:
        words = idx.words()
        stats = {"n": idx.n, "mode": idx.mode,
                 "total_words": int(sum(words.values())),
                 "component_words": {k: int(v) for k, v in words.items()}}
        with open(args.stats, "w") as f:
            json.dump(stats, f, indent=2, sort_keys=True)
    print(f"built {args.mode} index over {idx.n} symbols -> {args.output}")
    return 0


def cmd_query(args):
    idx = container.load(args.index)
    any_ok = False
    for ln, parts in _read_pairs(args.pairs):
        if len(parts) != 2:
            print(f"error\tline {ln}\texpected 'i j'")
            continue
        i, j = parts
        if not (1 <= i <= j <= idx.n):
            print(f"error\tline {ln}\tout of range ({i}, {j})")
            continue
        loc = idx.substring_locus(i, j)
        any_ok = True
        if loc.kind == "explicit":
            ident = loc.node
        else:
            ident = loc.child
        fields = [str(i), str(j), loc.kind, str(ident), str(loc.depth)]
        if args.report_occurrences:
            occ = sorted(off for _, off in idx.master.occurrences(loc))
            fields.append(",".join(map(str, occ)))
        print("\t".join(fields))
    return 0 if any_ok else 1


def cmd_verify(args):
    from .verify import verify_text

    w = _read_text(args.text)
    fails = verify_text(list(w), max_n=args.max_n)
    for msg in fails:
        print(f"FAIL {msg}")
    if fails:
        return 1
    print("verify: all oracle and lemma checks passed")
    return 0


def cmd_bench(args):
    idx = container.load(args.index)
    hist = {}
    worst = 0
    count = 0
    for ln, parts in _read_pairs(args.pairs):
        if len(parts) != 2:
            continue
        i, j = parts
        if not (1 <= i <= j <= idx.n):
            continue
        _, used = PROBES.measure(idx.substring_locus, i, j)
        hist[used] = hist.get(used, 0) + 1
        worst = max(worst, used)
        count += 1
    words = idx.words()
    report = {
        "queries": count,
        "max_probes": worst,
        "probe_histogram": {str(k): v for k, v in sorted(hist.items())},
        "component_words": {k: int(v) for k, v in words.items()},
        "total_words": int(sum(words.values())),
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


def main(argv=None):
    ap = argparse.ArgumentParser(prog="stindex",
                                 description="substring-locus index over suffix trees")
    sub = ap.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("build", help="build and serialize an index")
    b.add_argument("text", help="input file, treated as raw bytes")
    b.add_argument("-o", "--output", required=True)
    b.add_argument("--mode", choices=["standard", "compact"], default="standard")
    b.add_argument("--stats", help="write component word counts to this JSON file")
    b.set_defaults(fn=cmd_build)

    q = sub.add_parser("query", help="answer a batch of (i, j) queries")
    q.add_argument("index")
    q.add_argument("--pairs", required=True)
    q.add_argument("--report-occurrences", action="store_true")
    q.set_defaults(fn=cmd_query)

    v = sub.add_parser("verify", help="oracle equivalence and lemma invariants")
    v.add_argument("text")
    v.add_argument("--max-n", type=int, default=512)
    v.set_defaults(fn=cmd_verify)

    be = sub.add_parser("bench", help="probe histogram and space accounting")
    be.add_argument("index")
    be.add_argument("--pairs", required=True)
    be.set_defaults(fn=cmd_bench)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
