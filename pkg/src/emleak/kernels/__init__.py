"""Hot-kernel dispatch: compiled extension when built, NumPy fallback otherwise.

Set EMLEAK_KERNELS=python to force the fallback (used by the benchmark and to
cross-check both paths).
"""

import os

from . import _pyref

if os.environ.get("EMLEAK_KERNELS", "").lower() == "python":
    _impl = _pyref
    BACKEND = "python"
else:
    try:
        from . import _native as _impl

        BACKEND = "native"
    except ImportError:
        _impl = _pyref
        BACKEND = "python"

dtft = _impl.dtft
fold_linear = _impl.fold_linear
resample_linear = _impl.resample_linear
render_pulses = _impl.render_pulses

__all__ = ["BACKEND", "dtft", "fold_linear", "resample_linear", "render_pulses"]
