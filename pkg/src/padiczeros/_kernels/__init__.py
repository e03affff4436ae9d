"""Kernel selection: compiled Cython speedups with a pure-Python fallback.

Set PADICZEROS_PURE=1 to force the fallback even when the extension built.
`impl` is the module the rest of the package calls into.
"""

import os

if os.environ.get("PADICZEROS_PURE"):
    from . import pure as impl
else:
    try:
        from . import _speedups as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pure as impl

HAVE_SPEEDUPS = impl.HAVE_SPEEDUPS

count_common_zeros = impl.count_common_zeros
count_zeros_and_singular = impl.count_zeros_and_singular
first_nonsingular_zero = impl.first_nonsingular_zero
min_violation_scan = impl.min_violation_scan
