"""Hot kernels with an optional compiled core.

The Cython module ``_ckernels`` is used when it was built; otherwise the
pure-Python ``_pykernels`` module is loaded.  Setting ``FROBTHICK_PURE=1``
forces the Python implementation.

Functions
---------
poly_mul(a, b, p, q)
    Product of two homogeneous term dicts, dropping terms in m^[q] (q=0: none).
poly_pow_small(f, k, nvars, p, q)
    f^k by repeated multiplication with truncation applied at every step.
frobenius_shifts(g, shifts, p, q)
    For each exponent b, the terms of x^(p*b)*g lying outside m^[q].
echelon(rows, ncols, p, full)
    Row echelon (``full``: reduced) form over F_p and the pivot columns.
"""

import os

from . import _pykernels as python

compiled = None
if not os.environ.get("FROBTHICK_PURE"):
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

_active = compiled if compiled is not None else python

BACKEND = _active.BACKEND
poly_mul = _active.poly_mul
poly_pow_small = _active.poly_pow_small
frobenius_shifts = _active.frobenius_shifts
echelon = _active.echelon

__all__ = [
    "BACKEND",
    "compiled",
    "echelon",
    "frobenius_shifts",
    "poly_mul",
    "poly_pow_small",
    "python",
]
