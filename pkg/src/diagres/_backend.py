"""Select the term kernel at import time.

Prefers the compiled extension (diagres._kernel, built from _kernel.pyx) and
falls back to the pure-Python twin.  Set DIAGRES_KERNEL=python in the
environment to force the fallback, e.g. for the benchmark comparison.
"""

from __future__ import annotations

import os

if os.environ.get("DIAGRES_KERNEL") == "python":
    from . import _kernel_py as kernel
else:
    try:
        from . import _kernel as kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as kernel

BACKEND = kernel.BACKEND
tup_add = kernel.tup_add
tup_sub = kernel.tup_sub
tup_lcm = kernel.tup_lcm
axpy_q = kernel.axpy_q
axpy_p = kernel.axpy_p
mul_q = kernel.mul_q
mul_p = kernel.mul_p
