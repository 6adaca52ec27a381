"""Select the compiled kernels when available, the pure-Python ones otherwise.

Set ``SELBERGLAB_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("SELBERGLAB_PURE_PYTHON", "") not in ("", "0"):
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        kernels = _kernels_py
        BACKEND = "python"

loggamma = kernels.loggamma
rgamma_real = kernels.rgamma_real
qseries_sum = kernels.qseries_sum
mittag_leffler_sum = kernels.mittag_leffler_sum

__all__ = ["BACKEND", "kernels", "loggamma", "rgamma_real", "qseries_sum", "mittag_leffler_sum"]
