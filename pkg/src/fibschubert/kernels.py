"""Backend selection for the hot kernels.

The compiled extension is used when it imports; set ``FIBSCHUBERT_PURE=1``
to force the pure-Python fallback.
"""

from __future__ import annotations

import os

from . import _purekernels as pure

if os.environ.get("FIBSCHUBERT_PURE", "") not in ("", "0"):
    _impl = pure
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _impl = pure

BACKEND: str = _impl.BACKEND
poly_mul = _impl.poly_mul
poly_lincomb = _impl.poly_lincomb
echelon = _impl.echelon

__all__ = ["BACKEND", "poly_mul", "poly_lincomb", "echelon", "pure"]
