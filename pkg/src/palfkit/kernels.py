"""Backend selection for the hot kernels.

The compiled ``_ckernels`` extension is used when it was built; otherwise
(or with ``PALFKIT_PURE_PYTHON=1``) the pure-Python versions run.  Both
expose the same functions and return identical results.
"""

from __future__ import annotations

import os

from palfkit import _pykernels

_ckernels = None
if not os.environ.get("PALFKIT_PURE_PYTHON"):
    try:
        from palfkit import _ckernels
    except ImportError:  # extension not built
        _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"


def smith(rows):
    if _ckernels is not None:
        try:
            return _ckernels.smith(rows)
        except OverflowError:
            pass
    return _pykernels.smith(rows)


def sanov_descent(a, b, c, d, z):
    if _ckernels is not None:
        try:
            return _ckernels.sanov_descent(a, b, c, d, z)
        except OverflowError:
            pass
    return _pykernels.sanov_descent(a, b, c, d, z)
