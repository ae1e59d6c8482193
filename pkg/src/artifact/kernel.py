"""Pick the compiled closure kernel when it was built, else the Python one."""

import os

from artifact import _closure_py

try:
    if os.environ.get("ARTIFACT_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from artifact import _closure as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _closure_py
    BACKEND = "python"

closure = _impl.closure
closure_many = _impl.closure_many
