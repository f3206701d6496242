"""Benchmark the compiled kernels against the pure-NumPy fallback.

Run: python benchmarks/bench_kernels.py [--repeats N]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from emleak.kernels import _pyref

try:
    from emleak.kernels import _native
except ImportError:
    _native = None


def _bench(label, fn_py, fn_nat, repeats):
    t_py = min(timeit.repeat(fn_py, number=1, repeat=repeats))
    if fn_nat is None:
        print(f"{label:<28} python {t_py * 1e3:8.2f} ms   native (not built)")
        return
    t_nat = min(timeit.repeat(fn_nat, number=1, repeat=repeats))
    print(
        f"{label:<28} python {t_py * 1e3:8.2f} ms   native {t_nat * 1e3:8.2f} ms   "
        f"speedup {t_py / t_nat:5.2f}x"
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    pixels = rng.random(50 * 40 * 60)  # one second of the synthetic mode
    nu = rng.random(17 * 4)
    stream = rng.standard_normal(500_000) + 1j * rng.standard_normal(500_000)
    spl = 1200.37

    cases = [
        (
            "dtft (120k px, 68 freqs)",
            lambda: _pyref.dtft(pixels, nu),
            (lambda: _native.dtft(pixels, nu)) if _native else None,
        ),
        (
            "fold_linear (500k samples)",
            lambda: _pyref.fold_linear(stream, spl, 400, 1200, start=0.5),
            (lambda: _native.fold_linear(stream, spl, 400, 1200, start=0.5)) if _native else None,
        ),
        (
            "resample_linear (500k)",
            lambda: _pyref.resample_linear(stream, 1.337, 370_000),
            (lambda: _native.resample_linear(stream, 1.337, 370_000)) if _native else None,
        ),
        (
            "render_pulses (120k px x8)",
            lambda: _pyref.render_pulses(pixels, 8, 7),
            (lambda: _native.render_pulses(pixels, 8, 7)) if _native else None,
        ),
    ]
    for label, f_py, f_nat in cases:
        _bench(label, f_py, f_nat, args.repeats)


if __name__ == "__main__":
    main()
