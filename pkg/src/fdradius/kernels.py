"""Backend selection for the hot kernels.

The compiled ``_core`` extension is used when it imports cleanly; setting
``FDR_PURE_PYTHON=1`` forces the numpy fallback. Custom (non-power) gauges
always run on the fallback since the compiled ascent is specialised to
``t**p``.
"""

import os

from . import _core_py

FORM = _core_py.FORM
VECTOR = _core_py.VECTOR

_compiled = None
if os.environ.get("FDR_PURE_PYTHON", "") != "1":
    try:
        from . import _core as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def moduli(mats, X):
    if _compiled is not None:
        return _compiled.moduli(mats, X)
    return _core_py.moduli(mats, X)


def ascend(mats, X0, objective, level_c, gauge, max_iters, step0, tol, eps):
    """Run the multi-start ascent for ``gauge``; see ``_core_py.ascend`` for outputs."""
    if gauge.is_power:
        if _compiled is not None:
            return _compiled.ascend(mats, X0, objective, level_c, max_iters, step0, tol, eps, gauge.p)
        return _core_py.ascend(mats, X0, objective, level_c, max_iters, step0, tol, eps, p=gauge.p)
    return _core_py.ascend(mats, X0, objective, level_c, max_iters, step0, tol, eps,
                           f=gauge.__call__, fprime=gauge.derivative)
