"""Kernel backend selection.

Prefers the compiled Smith-normal-form kernel when the extension built,
falling back to the pure-Python twin otherwise.  Both expose the same
``smith_with_transforms`` with bit-identical outputs.  Set CECHTOWER_PURE=1
to force the fallback (used by the benchmark and the equivalence tests).
"""

import os

if os.environ.get("CECHTOWER_PURE") == "1":
    from cechtower._snf_py import BACKEND, smith_with_transforms
else:
    try:
        from cechtower._snf_cy import BACKEND, smith_with_transforms
    except ImportError:
        from cechtower._snf_py import BACKEND, smith_with_transforms

__all__ = ["BACKEND", "smith_with_transforms"]
