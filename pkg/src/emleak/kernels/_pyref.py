"""Pure-NumPy reference implementations of the hot kernels.

These are the fallback used when the compiled extension is unavailable; the
native module in _native.pyx must match them numerically (same formulas,
floating-point order may differ in the last ulps).
"""

from __future__ import annotations

import numpy as np

_DTFT_CHUNK = 65536


def dtft(values: np.ndarray, nu: np.ndarray) -> np.ndarray:
    """Sum_n values[n] * exp(-2j*pi*nu*n) for each normalized frequency nu."""
    x = np.asarray(values, dtype=np.float64)
    nu = np.asarray(nu, dtype=np.float64)
    out = np.zeros(nu.shape, dtype=np.complex128)
    for start in range(0, x.size, _DTFT_CHUNK):
        n = np.arange(start, min(start + _DTFT_CHUNK, x.size), dtype=np.float64)
        # (freqs, chunk) phase matrix; chunked to bound memory
        out += np.exp(-2j * np.pi * np.outer(nu, n)) @ x[start : start + _DTFT_CHUNK]
    return out


def fold_linear(
    samples: np.ndarray, spl: float, n_rows: int, cols: int, start: float = 0.0
) -> np.ndarray:
    """Fold a 1-D complex stream into rows advancing exactly `spl` samples per
    row starting at `start`, linear interpolation at fractional offsets."""
    x = np.asarray(samples, dtype=np.complex128)
    pos = start + np.arange(n_rows)[:, None] * spl + np.arange(cols)[None, :]
    i0 = pos.astype(np.int64)
    frac = pos - i0
    i1 = np.minimum(i0 + 1, x.size - 1)
    return (1.0 - frac) * x[i0] + frac * x[i1]


def resample_linear(samples: np.ndarray, step: float, n_out: int) -> np.ndarray:
    """y[m] = samples interpolated linearly at position m * step."""
    x = np.asarray(samples, dtype=np.complex128)
    pos = np.arange(n_out) * step
    i0 = pos.astype(np.int64)
    frac = pos - i0
    i1 = np.minimum(i0 + 1, x.size - 1)
    return (1.0 - frac) * x[i0] + frac * x[i1]


def render_pulses(values: np.ndarray, oversample: int, n_high: int) -> np.ndarray:
    """Expand each pixel value into `oversample` grid samples, the first
    `n_high` at the pixel value and the rest at zero."""
    x = np.asarray(values, dtype=np.float64)
    out = np.repeat(x, oversample).reshape(x.size, oversample)
    out[:, n_high:] = 0.0
    return out.reshape(-1)
