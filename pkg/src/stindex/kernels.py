"""Kernel selection: compiled extension if present, pure fallback otherwise.

Set STINDEX_PURE=1 to force the pure-Python/numpy implementations (used by
the kernel benchmark to compare both engines).
"""

import os

if os.environ.get("STINDEX_PURE"):
    from . import _kernels_py as impl

    COMPILED = False
else:
    try:
        from . import _kernels as impl  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        from . import _kernels_py as impl

        COMPILED = False

BIG = 2**61

suffix_array = impl.suffix_array
lcp_array = impl.lcp_array
build_tree = impl.build_tree
stack_queries = impl.stack_queries
leaf_flag_depths = impl.leaf_flag_depths
naive_locus_batch = impl.naive_locus_batch
macro_select = impl.macro_select
marked_chases = impl.marked_chases
micro_masks = impl.micro_masks
mark_heaps = impl.mark_heaps
path_assign = impl.path_assign
path_pointer = impl.path_pointer
subtree_argmax = impl.subtree_argmax
doc_descriptors = impl.doc_descriptors
