"""Emission synthesis: pulse-shaped pixel train, its spectrum building blocks,
harmonic downconversion to complex baseband at SDR rate, and the scalar
attenuation + AWGN channel.

The emitted signal is modeled as a train of rectangular pulses scaled by the
scan-order pixel intensities; its spectrum is the pulse spectrum times the
DTFT of the pixel sequence, which repeats at every multiple of the pixel rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.signal import fftconvolve, firwin, resample_poly

from . import kernels
from .capture_io import BasebandCapture, CaptureMeta
from .errors import EmptySequence, InvalidArgument, NumericalOverflow
from .frame import PixelSequence
from .timing import pixel_period, pixel_rate

KAISER_BETA = 8.6
TAPS_PER_PHASE = 64
MAX_RATIO_DENOMINATOR = 10000


@dataclass(frozen=True)
class PulseSpec:
    """Pixel pulse shape; width is duty * pixel period."""

    duty: float = 0.9
    shape: str = "rect"

    def __post_init__(self):
        if not (0.0 < self.duty <= 1.0):
            raise InvalidArgument(f"duty must be in (0, 1], got {self.duty}")
        if self.shape != "rect":
            raise InvalidArgument(f"unsupported pulse shape {self.shape!r}")


@dataclass(frozen=True)
class ChannelSpec:
    """Scalar propagation stand-in: attenuation plus complex AWGN.

    snr_db=None means noiseless.  Noise is drawn from numpy's default
    PCG64-backed Generator so a fixed seed reproduces the capture exactly.
    """

    attenuation_db: float = 0.0
    snr_db: float | None = None
    seed: int = 0

    def __post_init__(self):
        if not math.isfinite(self.attenuation_db) or self.attenuation_db < 0:
            raise InvalidArgument(f"attenuation_db must be finite and >= 0, got {self.attenuation_db}")


def pulse_spectrum(pulse: PulseSpec, mode, freq_hz):
    """Spectrum of the pixel pulse at freq_hz (scalar or array).

    Rect pulse of width duty*T_p centered at the origin:
    P(f) = duty*T_p * sinc(f * duty * T_p), so P(0) = duty*T_p and P has nulls
    at multiples of f_p when duty is 1.
    """
    tp = pixel_period(mode)
    width = pulse.duty * tp
    f = np.asarray(freq_hz, dtype=np.float64)
    out = width * np.sinc(f * width)  # np.sinc is sin(pi x)/(pi x)
    return complex(out) if np.isscalar(freq_hz) else out.astype(np.complex128)


def dtft_pixels(pixseq: PixelSequence, freqs_hz) -> np.ndarray:
    """DTFT of the pixel sequence: sum_n x[n] exp(-2j pi f n T_p)."""
    values = np.asarray(pixseq.values, dtype=np.float64)
    if values.size == 0:
        raise EmptySequence("pixel sequence is empty")
    tp = pixel_period(pixseq.mode)
    nu = np.asarray(freqs_hz, dtype=np.float64) * tp
    return kernels.dtft(values, np.atleast_1d(nu))


def predicted_spectrum(pixseq: PixelSequence, pulse: PulseSpec, freqs_hz) -> np.ndarray:
    """X(f): pulse spectrum times the pixel-sequence DTFT."""
    freqs = np.atleast_1d(np.asarray(freqs_hz, dtype=np.float64))
    return pulse_spectrum(pulse, pixseq.mode, freqs) * dtft_pixels(pixseq, freqs)


def _resampler_filter(up: int, down: int) -> np.ndarray:
    m = max(up, down)
    return firwin(TAPS_PER_PHASE * m + 1, 1.0 / m, window=("kaiser", KAISER_BETA))


def _resample(mixed: np.ndarray, ratio: float) -> np.ndarray:
    """Low-pass + rate change by `ratio` <= 1: rational polyphase when the
    ratio is (near-)exactly rational with a small denominator, else a
    windowed-sinc low-pass followed by linear phase-accumulator interpolation."""
    if abs(ratio - 1.0) < 1e-12:
        return mixed
    frac = Fraction(ratio).limit_denominator(MAX_RATIO_DENOMINATOR)
    if frac.numerator > 0 and abs(float(frac) - ratio) <= 1e-12 * ratio:
        h = _resampler_filter(frac.numerator, frac.denominator)
        return resample_poly(mixed, frac.numerator, frac.denominator, window=h)
    # irrational ratio: anti-alias at the grid rate, then interpolate
    decim = int(math.ceil(1.0 / ratio))
    h = firwin(TAPS_PER_PHASE * decim + 1, ratio, window=("kaiser", KAISER_BETA))
    filtered = fftconvolve(mixed, h, mode="same")
    n_out = int(round(mixed.size * ratio))
    return kernels.resample_linear(filtered, 1.0 / ratio, n_out)


def synthesize_baseband(
    pixseq: PixelSequence,
    pulse: PulseSpec,
    harmonic_k: int,
    sample_rate_hz: float,
    n_frames: int = 1,
    oversample: int = 4,
    channel: ChannelSpec = ChannelSpec(),
    edge_emphasis: bool = False,
) -> BasebandCapture:
    """Render the pulse train at oversample*f_p, mix the k-th pixel-clock
    harmonic to 0 Hz, band-limit and resample to the SDR rate, then apply the
    attenuation + AWGN channel.

    Frame repetition is phase continuous (free-running display).  With
    edge_emphasis the circular first difference of the pixel stream is
    rendered instead of the raw intensities.
    """
    if harmonic_k < 0:
        raise InvalidArgument(f"harmonic_k must be >= 0, got {harmonic_k}")
    if n_frames < 1:
        raise InvalidArgument(f"n_frames must be >= 1, got {n_frames}")
    if oversample < 1:
        raise InvalidArgument(f"oversample must be >= 1, got {oversample}")
    mode = pixseq.mode
    fp = pixel_rate(mode)
    f_grid = oversample * fp
    if sample_rate_hz <= 0 or sample_rate_hz > f_grid * (1 + 1e-12):
        raise InvalidArgument(
            f"sample_rate_hz must be in (0, oversample*f_p] = (0, {f_grid:g}], "
            f"got {sample_rate_hz:g}"
        )

    values = np.asarray(pixseq.values, dtype=np.float64)
    if values.size == 0:
        raise EmptySequence("pixel sequence is empty")
    if edge_emphasis:
        values = values - np.roll(values, 1)

    n_high = max(1, round(oversample * pulse.duty))
    frame_grid = kernels.render_pulses(values, oversample, n_high)
    grid = np.tile(frame_grid, n_frames)
    del frame_grid

    if harmonic_k == 0:
        mixed = grid.astype(np.complex128)
    else:
        # the mixer exp(-2j pi k f_p t) sampled at oversample*f_p is periodic
        # with period `oversample`, and frames are a multiple of it
        pattern = np.exp(-2j * np.pi * harmonic_k * np.arange(oversample) / oversample)
        mixed = (grid.reshape(-1, oversample) * pattern).reshape(-1)
    del grid

    out = _resample(mixed, sample_rate_hz / f_grid)
    del mixed

    out *= 10.0 ** (-channel.attenuation_db / 20.0)
    if channel.snr_db is not None:
        sig_power = float(np.mean(np.abs(out) ** 2))
        noise_power = sig_power / 10.0 ** (channel.snr_db / 10.0)
        rng = np.random.default_rng(channel.seed)
        sigma = math.sqrt(noise_power / 2.0)
        out = out + sigma * (
            rng.standard_normal(out.size) + 1j * rng.standard_normal(out.size)
        )
    if not np.all(np.isfinite(out)):
        raise NumericalOverflow("non-finite samples in synthesized capture")

    meta = CaptureMeta(
        sample_rate_hz=float(sample_rate_hz),
        center_freq_hz=harmonic_k * fp,
        mode_name=mode.name,
        n_frames=n_frames,
        seed=channel.seed,
        description=f"synthesized k={harmonic_k} duty={pulse.duty:g} oversample={oversample}",
    )
    return BasebandCapture(out, meta)
