"""Hot-loop backend: the compiled extension when importable, else numpy/pure Python.

Set ``NRTOCA_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("NRTOCA_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_backend  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "compiled" if compiled_backend is not None else "python"

coverage_extremes = _active.coverage_extremes
uncovered_words = _active.uncovered_words
search_cover = _active.search_cover
