"""Selects the search kernel backend at import.

The compiled kernel is used when it was built; setting
``AMDFAM_PURE_PYTHON=1`` forces the Python twin.  Both expose the same
``search`` function with identical results.
"""

import os

from . import _kernel_py

DONE, FIRST, BUDGET = _kernel_py.DONE, _kernel_py.FIRST, _kernel_py.BUDGET

try:
    from . import _kernel_c
except ImportError:  # pragma: no cover - depends on the build
    _kernel_c = None

if _kernel_c is not None and os.environ.get("AMDFAM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    search = _kernel_c.search
    BACKEND = "cython"
else:
    search = _kernel_py.search
    BACKEND = "python"

BACKENDS = {"python": _kernel_py.search}
if _kernel_c is not None:
    BACKENDS["cython"] = _kernel_c.search
