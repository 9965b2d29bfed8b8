"""Brute-force reference structures shared by the test modules.

Everything here recomputes answers from first principles (uncompacted tries,
linear scans, parent walks) so the production structures are always checked
against an independent path.
"""

from collections import defaultdict


def suffix_trie(strings):
    """Compacted-trie fingerprint of all suffixes of the given symbol tuples.

    Returns (internal, leaves): internal = set of branching prefixes incl. the
    root (), leaves = set of full suffixes.  Each input string must end with
    its own unique separator symbol.
    """
    suffixes = set()
    for s in strings:
        s = tuple(s)
        for i in range(len(s)):
            suffixes.add(s[i:])
    nexts = defaultdict(set)
    for suf in suffixes:
        for d in range(len(suf)):
            nexts[suf[:d]].add(suf[d])
    internal = {p for p, nx in nexts.items() if len(nx) >= 2}
    internal.add(())
    return internal, suffixes


def trie_locus(internal, leaves, s):
    """Locus of s in the compacted trie: ('explicit', s) if s is an explicit
    node, else ('implicit', deepest_explicit_prefix, s)."""
    s = tuple(s)
    if s in internal or s in leaves:
        return ("explicit", s)
    d = len(s) - 1
    while d >= 0 and s[:d] not in internal:
        d -= 1
    return ("implicit", s[:d], s)


def scan_occurrences(text, i, j):
    """All 1-based starting positions of text[i..j] in text (naive scan)."""
    pat = tuple(text[i - 1 : j])
    n, m = len(text), len(pat)
    return [p + 1 for p in range(n - m + 1) if tuple(text[p : p + m]) == pat]
