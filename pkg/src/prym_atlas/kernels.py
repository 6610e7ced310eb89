"""Kernel backend selection.

The compiled extension `prym_atlas._kernels` is preferred when importable;
`prym_atlas._kernels_py` is the pure-Python mirror with identical
semantics.  Set the environment variable PRYM_ATLAS_PURE=1 to force the
pure backend (useful for benchmarking and for debugging the extension).
"""

import os

if os.environ.get("PRYM_ATLAS_PURE"):
    from . import _kernels_py as impl
else:
    try:
        from . import _kernels as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as impl

BACKEND: str = impl.BACKEND

hw_entry_terms = impl.hw_entry_terms
series_slices = impl.series_slices
series_coefficient = impl.series_coefficient
hw_block_agrees = impl.hw_block_agrees
poly_mul = impl.poly_mul
products_equal = impl.products_equal
