"""Backend selection for the star-product kernels.

The compiled extension is used when it was built; otherwise the pure-Python
module is used. Setting ``WKBCALC_PURE=1`` forces the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
star_terms = _kernels_py.star_terms
adjoint_terms = _kernels_py.adjoint_terms

if os.environ.get("WKBCALC_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        star_terms = _ckernels.star_terms
        adjoint_terms = _ckernels.adjoint_terms
