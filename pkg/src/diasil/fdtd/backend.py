"""Kernel backend selection.

The compiled extension (`diasil.fdtd._kernels`, Cython) is preferred; the
pure-numpy fallback (`kernels_py`) is selected automatically when the
extension is missing, or explicitly via DIASIL_BACKEND=python|cython.
Both backends are bit-identical; `benchmarks/bench_backends.py` compares
their speed.
"""

from __future__ import annotations

import os

from . import kernels_py

try:
    from . import kernels_cy

    _HAVE_CYTHON = kernels_cy.AVAILABLE
except ImportError:  # pragma: no cover
    kernels_cy = None
    _HAVE_CYTHON = False


def available_backends() -> list[str]:
    out = ["python"]
    if _HAVE_CYTHON:
        out.append("cython")
    return out


def get_backend(name: str | None = None):
    name = name or os.environ.get("DIASIL_BACKEND", "")
    name = name.lower() or ("cython" if _HAVE_CYTHON else "python")
    if name == "cython":
        if not _HAVE_CYTHON:
            raise RuntimeError(
                "cython backend requested but the compiled extension is "
                "unavailable; reinstall the package or use DIASIL_BACKEND=python"
            )
        return kernels_cy
    if name == "python":
        return kernels_py
    raise ValueError(f"unknown backend {name!r}; use 'python' or 'cython'")


ACTIVE_BACKEND = get_backend().BACKEND_NAME
