"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
module is used.  Setting ``HOMCONJ_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernels_py as python_backend

if os.environ.get("HOMCONJ_PURE_PYTHON"):
    compiled_backend = None
else:
    try:
        from . import _kernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND = backend.BACKEND

sylvester_reading = backend.sylvester_reading
sylvester_left_branch = backend.sylvester_left_branch
schema_neighbors = backend.schema_neighbors
compile_rules = backend.compile_rules
reduce_once = backend.reduce_once
normal_form = backend.normal_form
side_index = backend.side_index
relation_neighbors = backend.relation_neighbors
class_closure = backend.class_closure

__all__ = [
    "BACKEND", "backend", "python_backend", "compiled_backend",
    "sylvester_reading", "sylvester_left_branch", "schema_neighbors",
    "compile_rules", "reduce_once", "normal_form", "side_index",
    "relation_neighbors", "class_closure",
]
