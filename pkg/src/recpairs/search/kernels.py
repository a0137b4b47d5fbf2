"""Backend selection for the search kernels.

The compiled module is used when it imports; setting ``RECPAIRS_PURE_PYTHON=1``
forces the pure-Python fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels


def _load_compiled() -> ModuleType | None:
    if os.environ.get("RECPAIRS_PURE_PYTHON", "").strip() not in ("", "0"):
        return None
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


_compiled = _load_compiled()
default = _compiled if _compiled is not None else _pykernels
BACKEND = default.BACKEND


def available() -> dict[str, ModuleType]:
    """All importable backends by name (the fallback is always present)."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out


def get(name: str | None = None) -> ModuleType:
    if name is None:
        return default
    backends = available()
    if name not in backends:
        raise ValueError(f"search backend {name!r} is not available (have {sorted(backends)})")
    return backends[name]
