"""Backend selection for the simulation kernels.

The compiled extension is used when it was built and EXACTSYNTH_PURE_PYTHON
is not set; otherwise the pure-Python module is used. Both expose the same
functions; see _kernels_py for the buffer layout.
"""
from __future__ import annotations

import os
from array import array

from . import _kernels_py as py

compiled = None
if not os.environ.get("EXACTSYNTH_PURE_PYTHON"):
    try:
        from . import _kernels_c as compiled  # type: ignore[no-redef]
    except ImportError:
        compiled = None

default = compiled if compiled is not None else py
BACKEND = "compiled" if compiled is not None else "python"


def new_buffer(backend, values):
    """Allocate a coefficient buffer suitable for backend."""
    if backend is py:
        return list(values)
    return array("q", values)


def to_python(buf):
    return list(buf)
