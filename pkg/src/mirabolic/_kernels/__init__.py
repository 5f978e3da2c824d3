"""Hot inner loops for the coefficient oracles.

At import time the Cython extension is preferred; the numpy reference
implementation is the fallback.  Both expose the same functions:

    grid_exp_sum(d, r)    full-grid exponential sum over (Z/d)^{len(r)}
    bf_weighted_sum(...)  weighted sum over d of grid_exp_sum terms

Set the environment variable MIRABOLIC_NO_EXT=1 to force the fallback.
"""

import os

from . import _ref

if os.environ.get("MIRABOLIC_NO_EXT"):
    _impl = _ref
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _ref

grid_exp_sum = _impl.grid_exp_sum
bf_weighted_sum = _impl.bf_weighted_sum
IMPLEMENTATION = getattr(_impl, "IMPLEMENTATION", "reference")

__all__ = ["grid_exp_sum", "bf_weighted_sum", "IMPLEMENTATION", "_ref"]
