"""Instrumentation: a process-wide probe counter and word-size accounting.

A "probe" is one access to a black-box constant-time primitive (a table read,
one rank/select level, one atomic-heap search, one child lookup).  Query code
calls ``PROBES.hit()``; benchmarks wrap queries in ``PROBES.measure()``.

Words are counted as 64-bit machine words of packed array payload.
"""

import numpy as np


class ProbeCounter:
    __slots__ = ("count", "enabled")

    def __init__(self):
        self.count = 0
        self.enabled = False

    def hit(self, n=1):
        if self.enabled:
            self.count += n

    def reset(self):
        self.count = 0

    def measure(self, fn, *args, **kwargs):
        """Run fn with counting enabled; return (result, probes used)."""
        prev_enabled, prev_count = self.enabled, self.count
        self.enabled, self.count = True, 0
        try:
            result = fn(*args, **kwargs)
            used = self.count
        finally:
            self.enabled, self.count = prev_enabled, prev_count
        return result, used


PROBES = ProbeCounter()


def array_words(*arrays):
    """Total size of the given numpy arrays in 64-bit words (rounded up each)."""
    total = 0
    for a in arrays:
        if a is None:
            continue
        a = np.asarray(a)
        total += (a.size * a.itemsize + 7) // 8
    return total
