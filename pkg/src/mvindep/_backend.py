"""Pick the compiled kernels when available, else the numpy fallback.

Set ``MVINDEP_BACKEND=python`` to force the fallback, or ``compiled`` to
fail loudly when the extension is missing.
"""
import os

_requested = os.environ.get("MVINDEP_BACKEND", "auto").lower()

if _requested == "python":
    from . import _kernels_py as kernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels
        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        from . import _kernels_py as kernels
        BACKEND = "python"

hhg_statistic = kernels.hhg_statistic
mgc_local_map = kernels.mgc_local_map

__all__ = ["BACKEND", "hhg_statistic", "mgc_local_map"]
