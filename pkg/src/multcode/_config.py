"""Runtime switches read once at import time.

``MULTCODE_KERNELS`` selects the kernel implementation: ``numba`` (default when
numba imports) or ``numpy`` (vectorized pure-numpy fallback).
"""

import os

KERNELS = os.environ.get("MULTCODE_KERNELS", "numba").strip().lower()

if KERNELS not in ("numba", "numpy"):
    raise ImportError(f"MULTCODE_KERNELS must be 'numba' or 'numpy', got {KERNELS!r}")

if KERNELS == "numba":
    try:
        import numba  # noqa: F401
    except ImportError:  # pragma: no cover - numba is a declared dependency
        KERNELS = "numpy"

USE_NUMBA = KERNELS == "numba"

numba_default = {
    "nogil": True,
    "cache": True,
    "fastmath": False,
    "boundscheck": False,
    "error_model": "numpy",
}

# schoolbook below this length, Karatsuba above
KARATSUBA_THRESHOLD = int(os.environ.get("MULTCODE_KARATSUBA_THRESHOLD", "32"))
