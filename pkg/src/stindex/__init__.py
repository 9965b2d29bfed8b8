"""stindex: substring-locus queries on suffix trees in a constant number of probes."""

from .strops import Interval, compute_period, is_primitive, lyndon_rotation, maximal_run
from .bitvec import PackedRankSelect, build_packed_rank_select
from .predsets import (PinsIndex, PisnsIndex, build_pins, build_pins_compact,
                       build_pisns, naive_predecessor)

__all__ = [
    "Interval", "compute_period", "is_primitive", "lyndon_rotation", "maximal_run",
    "PackedRankSelect", "build_packed_rank_select",
    "PinsIndex", "PisnsIndex", "build_pins", "build_pins_compact", "build_pisns",
    "naive_predecessor",
]

__version__ = "0.1.0"
