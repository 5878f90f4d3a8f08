"""Hot-kernel backend selection.

The compiled extension (charsum.kernels._fast) is preferred when it has
been built; otherwise the NumPy reference (_ref) is used.  Set
CHARSUM_PURE_PYTHON=1 to force the fallback.  Both backends implement the
same contracts; benchmarks/bench_kernels.py compares them.
"""

from __future__ import annotations

import os

import numpy as np

from charsum.kernels import _ref

if os.environ.get("CHARSUM_PURE_PYTHON", "") not in ("", "0"):
    _impl = _ref
else:
    try:
        from charsum.kernels import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _ref

BACKEND: str = _impl.BACKEND_NAME

kahan_sum = _impl.kahan_sum
comp_cumsum = _impl.comp_cumsum
nonsmooth_count = _impl.nonsmooth_count
half_model_sum = _impl.half_model_sum


def comp_cumsum_complex(z: np.ndarray) -> np.ndarray:
    """Compensated running sums of a complex array along the last axis."""
    z = np.asarray(z)
    return comp_cumsum(np.ascontiguousarray(z.real)) + 1j * comp_cumsum(
        np.ascontiguousarray(z.imag)
    )
