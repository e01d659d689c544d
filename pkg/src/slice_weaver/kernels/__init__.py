"""Hot inner loops with a numba path and a pure-numpy fallback.

The numba path is used when numba imports cleanly, unless the environment
variable ``SLICE_WEAVER_DISABLE_NUMBA`` is set to a truthy value ("1",
"true", "yes"). The flag is read once at import time. Both implementations
stay importable as ``kernels.numpy_impl`` and ``kernels.numba_impl`` (the
latter is ``None`` without numba) so tests and benchmarks can compare them.
"""

import os

from . import _numpy as numpy_impl

DISABLE_ENV = "SLICE_WEAVER_DISABLE_NUMBA"

try:
    from . import _numba as numba_impl
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba_impl = None


def _numba_requested() -> bool:
    return os.environ.get(DISABLE_ENV, "").strip().lower() not in {"1", "true", "yes", "on"}


USING_NUMBA = numba_impl is not None and _numba_requested()
BACKEND = "numba" if USING_NUMBA else "numpy"
_impl = numba_impl if USING_NUMBA else numpy_impl

count_colorings = _impl.count_colorings
is_colorable = _impl.is_colorable
max_clique_size = _impl.max_clique_size
factor_loads = _impl.factor_loads
shifted_mean_var = _impl.shifted_mean_var
objective_batch = _impl.objective_batch

__all__ = [
    "BACKEND",
    "USING_NUMBA",
    "count_colorings",
    "is_colorable",
    "max_clique_size",
    "factor_loads",
    "shifted_mean_var",
    "objective_batch",
    "numpy_impl",
    "numba_impl",
]
