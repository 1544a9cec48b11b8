"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``TNNCELLS_PURE=1`` to force the pure lane (used by the benchmark and
by tests that compare the two implementations).
"""

from __future__ import annotations

import os

if os.environ.get("TNNCELLS_PURE"):
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel_c as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernel_py as _impl

term_map_mul = _impl.term_map_mul
det_bareiss_int = _impl.det_bareiss_int
all_minors_int = _impl.all_minors_int

BACKEND = "compiled" if _impl.__name__.endswith("_c") else "pure"
