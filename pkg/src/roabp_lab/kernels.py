"""Elimination kernel selection.

The compiled ``_kernels`` extension is used when it was built; otherwise
the pure-Python twin in ``_kernels_py``. Setting ``ROABP_LAB_PURE=1`` in
the environment forces the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("ROABP_LAB_PURE", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

rank_mod_p = _impl.rank_mod_p
rank_integer = _impl.rank_integer


def backends():
    """Every importable backend, as ``{name: module}``."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels

        found["compiled"] = _kernels
    except ImportError:
        pass
    return found
