"""String primitives over integer alphabets: periods, primitivity, Lyndon
rotations and maximal periodic runs.

Symbols are plain non-negative ints.  Values 0..255 are text bytes; values
>= SEPARATOR_BASE are reserved for per-document separators and padding, so
the same routines work unchanged on generalised-suffix-tree material.
"""

from typing import NamedTuple, Sequence

SEPARATOR_BASE = 256


class Interval(NamedTuple):
    """1-based inclusive interval of positions inside an enclosing string."""

    start: int
    end: int

    def __len__(self):
        return self.end - self.start + 1


def compute_period(s: Sequence[int]) -> int:
    """Smallest p >= 1 with s[i] == s[i+p] wherever both sides exist.

    s is periodic in the classical sense iff the result is <= len(s)/2.
    """
    n = len(s)
    if n == 0:
        raise ValueError("period of empty string is undefined")
    # failure function; period = n - longest proper border
    border = [0] * (n + 1)
    k = 0
    for i in range(1, n):
        while k > 0 and s[i] != s[k]:
            k = border[k]
        if s[i] == s[k]:
            k += 1
        border[i + 1] = k
    return n - border[n]


def is_primitive(s: Sequence[int]) -> bool:
    """True iff s is not a proper power v^i with i > 1."""
    n = len(s)
    if n == 0:
        raise ValueError("primitivity of empty string is undefined")
    p = compute_period(s)
    return p == n or n % p != 0


def lyndon_rotation(s: Sequence[int]) -> int:
    """1-based start index of the lexicographically least rotation of s.

    Requires s primitive (otherwise the least rotation is not unique).
    Booth-style two-pointer scan, O(n).
    """
    if not is_primitive(s):
        raise ValueError("lyndon_rotation requires a primitive string")
    n = len(s)
    i, j, k = 0, 1, 0
    while i < n and j < n and k < n:
        a = s[(i + k) % n]
        b = s[(j + k) % n]
        if a == b:
            k += 1
            continue
        if a > b:
            i += k + 1
            if i == j:
                i += 1
        else:
            j += k + 1
            if j == i:
                j += 1
        k = 0
    return min(i, j) + 1


def maximal_run(w: Sequence[int], seed: Interval, p: int) -> Interval:
    """Maximal interval containing `seed` on which p stays a period of w.

    p must already be a period of w[seed]; used to decide whether a query
    substring stays inside r^inf for the run's rotation word.
    """
    n = len(w)
    lo, hi = seed.start, seed.end
    if not (1 <= lo <= hi <= n):
        raise ValueError(f"seed {seed} out of bounds for |w|={n}")
    if p < 1 or p > hi - lo + 1:
        raise ValueError(f"p={p} cannot be a period of the seed")
    for i in range(lo, hi + 1 - p):
        if w[i - 1] != w[i - 1 + p]:
            raise ValueError(f"p={p} is not a period of w[{lo}..{hi}]")
    while lo > 1 and w[lo - 2] == w[lo - 2 + p]:
        lo -= 1
    while hi < n and w[hi] == w[hi - p]:
        hi += 1
    return Interval(lo, hi)
