"""Backend selection for the numeric kernels.

Set ``SCHUBDEG_NUMBA=0`` to force the pure-numpy code paths even when
numba is importable.
"""

import os

ENV_FLAG = "SCHUBDEG_NUMBA"

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def numba_enabled() -> bool:
    return HAVE_NUMBA and os.environ.get(ENV_FLAG, "1").strip().lower() not in ("0", "false", "no", "off")


def resolve(backend: str = "auto") -> str:
    if backend == "auto":
        return "numba" if numba_enabled() else "numpy"
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    return backend
