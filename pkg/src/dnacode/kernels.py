"""Kernel backend selection.

The compiled extension is used when present; otherwise the pure-Python
twin takes over. Set ``DNACODE_BACKEND=pure`` (or ``compiled``) to force a
backend; ``compiled`` raises if the extension was not built.
"""

import os

from . import _kernels_py

try:
    from . import _kernels_c
except ImportError:
    _kernels_c = None

_requested = os.environ.get("DNACODE_BACKEND", "auto").lower()
if _requested in ("", "auto"):
    _impl = _kernels_c if _kernels_c is not None else _kernels_py
elif _requested in ("compiled", "c", "ext"):
    if _kernels_c is None:
        raise ImportError("DNACODE_BACKEND=compiled, but the extension is not built")
    _impl = _kernels_c
elif _requested in ("pure", "py", "python"):
    _impl = _kernels_py
else:
    raise ValueError(f"unrecognised DNACODE_BACKEND: {_requested!r}")

BACKEND = "compiled" if _impl is _kernels_c else "pure"

best_alignment_stats = _impl.best_alignment_stats
match_weight_sum = _impl.match_weight_sum
self_weight_sum = _impl.self_weight_sum
best_match_weight_sum = _impl.best_match_weight_sum
max_clique_size = _impl.max_clique_size
