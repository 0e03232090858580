"""Hot-loop kernels with a compiled core and a NumPy fallback.

The compiled extension (`_fastcore`, Cython) is preferred; if it is not
available the pure-NumPy reference implementation is used.  Both expose the
same batch API and produce results that agree to machine precision.  Set
DCTADJUST_BACKEND=python to force the fallback (e.g. for the benchmark's
backend comparison).
"""
from __future__ import annotations

import contextlib
import os

from . import _pyref

_FORCED = os.environ.get("DCTADJUST_BACKEND", "").strip().lower()

if _FORCED in ("", "c", "compiled"):
    try:
        from . import _fastcore as _impl
    except ImportError:
        if _FORCED:
            raise ImportError(
                "DCTADJUST_BACKEND requested the compiled backend, "
                "but dctadjust.kernels._fastcore is not built"
            )
        _impl = _pyref
elif _FORCED in ("py", "python"):
    _impl = _pyref
else:
    raise ValueError(f"unknown DCTADJUST_BACKEND value {_FORCED!r}")

BACKEND = _impl.BACKEND_NAME

dct2 = _impl.dct2
idct2 = _impl.idct2
dst3 = _impl.dst3
idst3 = _impl.idst3
band = _impl.band
subblock = _impl.subblock
dense = _impl.dense


def available_backends() -> dict[str, object]:
    """Importable backend modules keyed by name (for the benchmark comparison)."""
    out = {"python": _pyref}
    try:
        from . import _fastcore
        out["compiled"] = _fastcore
    except ImportError:
        pass
    return out


@contextlib.contextmanager
def use_backend(name: str):
    """Temporarily rebind the exported kernels to another backend.

    Consumers look the functions up as module attributes at call time, so
    everything built on this package follows the switch.
    """
    global dct2, idct2, dst3, idst3, band, subblock, dense, BACKEND
    mod = available_backends().get(name)
    if mod is None:
        raise ValueError(f"backend {name!r} is not available")
    saved = (dct2, idct2, dst3, idst3, band, subblock, dense, BACKEND)
    dct2, idct2, dst3, idst3 = mod.dct2, mod.idct2, mod.dst3, mod.idst3
    band, subblock, dense = mod.band, mod.subblock, mod.dense
    BACKEND = mod.BACKEND_NAME
    try:
        yield mod
    finally:
        dct2, idct2, dst3, idst3, band, subblock, dense, BACKEND = saved
