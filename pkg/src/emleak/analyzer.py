"""Offline signature pre-characterization and capture measurement.

The signature of a display is predicted from public information alone (its
timing mode and a published interface image): per-harmonic band power of the
modeled emission spectrum.  Capture-side measurements (Welch PSD, harmonic
comb detection, rate estimation, signature matching) verify and exploit it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.signal import welch

from .capture_io import BasebandCapture
from .errors import InvalidArgument, NoVisibleHarmonics, TooShort
from .frame import FrameImage, compose_pixel_sequence
from .synth import PulseSpec, predicted_spectrum
from .timing import DisplayMode, line_rate, pixel_rate

PROBE_COUNT = 17  # probe frequencies per harmonic band (odd: includes center)
PSD_FLOOR_DB = -300.0
_PSD_FLOOR_LIN = 10.0 ** (PSD_FLOOR_DB / 10.0)
RATE_QUALITY_THRESHOLD = 1.2


@dataclass(frozen=True)
class SignatureEntry:
    k: int
    center_freq_hz: float
    predicted_rel_power: float


@dataclass(frozen=True)
class SpectralSignature:
    mode_name: str
    pixel_rate_hz: float
    entries: tuple[SignatureEntry, ...]
    line_rate_hz: float
    frame_rate_hz: float

    def to_dict(self) -> dict:
        return {
            "mode_name": self.mode_name,
            "pixel_rate_hz": self.pixel_rate_hz,
            "line_rate_hz": self.line_rate_hz,
            "frame_rate_hz": self.frame_rate_hz,
            "entries": [
                {
                    "k": e.k,
                    "center_freq_hz": e.center_freq_hz,
                    "predicted_rel_power": e.predicted_rel_power,
                }
                for e in self.entries
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "SpectralSignature":
        return cls(
            mode_name=doc["mode_name"],
            pixel_rate_hz=float(doc["pixel_rate_hz"]),
            entries=tuple(
                SignatureEntry(int(e["k"]), float(e["center_freq_hz"]), float(e["predicted_rel_power"]))
                for e in doc["entries"]
            ),
            line_rate_hz=float(doc["line_rate_hz"]),
            frame_rate_hz=float(doc["frame_rate_hz"]),
        )


def write_signature(sig: SpectralSignature, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(sig.to_dict(), fh, indent=2)
        fh.write("\n")


def read_signature(path: str) -> SpectralSignature:
    with open(path, "r", encoding="utf-8") as fh:
        return SpectralSignature.from_dict(json.load(fh))


@dataclass(frozen=True)
class Psd:
    freqs_hz: np.ndarray  # ascending, relative to capture center
    power_db: np.ndarray  # per-bin power (density * bin width), dB
    resolution_hz: float


@dataclass(frozen=True)
class RateEstimate:
    """Estimated rate with a peak-to-off-peak autocorrelation quality ratio;
    values below RATE_QUALITY_THRESHOLD indicate no usable periodicity."""

    freq_hz: float
    quality: float

    @property
    def flagged(self) -> bool:
        return self.quality < RATE_QUALITY_THRESHOLD

    def __float__(self) -> float:
        return self.freq_hz


def signature_from_public_image(
    frame: FrameImage, mode: DisplayMode, pulse: PulseSpec, k_max: int
) -> SpectralSignature:
    """Predict per-harmonic band power from the public image and timing mode.

    Band power at harmonic k is the mean modeled |X(f)|^2 over PROBE_COUNT
    equispaced frequencies within one line rate of k*f_p, normalized so the
    strongest harmonic is 1 (all-zero predictions stay all zero).
    """
    if k_max < 1:
        raise InvalidArgument(f"k_max must be >= 1, got {k_max}")
    pixseq = compose_pixel_sequence(frame, mode)
    fp = pixel_rate(mode)
    fh = line_rate(mode)
    probes = np.concatenate(
        [np.linspace(k * fp - fh, k * fp + fh, PROBE_COUNT) for k in range(1, k_max + 1)]
    )
    spectrum = predicted_spectrum(pixseq, pulse, probes)
    band_powers = np.mean(
        np.abs(spectrum.reshape(k_max, PROBE_COUNT)) ** 2, axis=1
    )
    peak = band_powers.max()
    rel = band_powers / peak if peak > 0 else band_powers
    entries = tuple(
        SignatureEntry(k, k * fp, float(rel[k - 1])) for k in range(1, k_max + 1)
    )
    return SpectralSignature(
        mode_name=mode.name,
        pixel_rate_hz=fp,
        entries=entries,
        line_rate_hz=fh,
        frame_rate_hz=mode.refresh_hz,
    )


def psd(capture: BasebandCapture, segment_len: int, overlap_fraction: float = 0.5) -> Psd:
    """Welch-averaged two-sided PSD, Hann window, window power compensated.

    Frequencies are relative to the capture center and span (-fs/2, fs/2].
    Per-bin powers sum to the time-domain mean-square power (Parseval).
    """
    x = capture.samples
    if segment_len < 8 or len(x) < segment_len:
        raise TooShort(
            f"need capture length >= segment_len >= 8 (got {len(x)} and {segment_len})"
        )
    if not (0.0 <= overlap_fraction < 1.0):
        raise InvalidArgument(f"overlap_fraction must be in [0, 1), got {overlap_fraction}")
    fs = capture.meta.sample_rate_hz
    freqs, pxx = welch(
        x,
        fs=fs,
        window="hann",
        nperseg=segment_len,
        noverlap=int(overlap_fraction * segment_len),
        detrend=False,
        return_onesided=False,
        scaling="density",
    )
    df = fs / segment_len
    power = np.fft.fftshift(pxx) * df
    freqs = np.fft.fftshift(freqs)
    if segment_len % 2 == 0:
        # move the -fs/2 bin to +fs/2 so the span is (-fs/2, fs/2]
        freqs = np.concatenate([freqs[1:], [-freqs[0]]])
        power = np.concatenate([power[1:], [power[0]]])
    power_db = 10.0 * np.log10(np.maximum(power, _PSD_FLOOR_LIN))
    return Psd(freqs_hz=freqs, power_db=power_db, resolution_hz=df)


def detect_harmonic_comb(
    spectrum: Psd,
    mode: DisplayMode,
    capture_center_hz: float,
    k_range,
    min_prominence_db: float,
) -> list[tuple[int, float, float]]:
    """Find pixel-clock harmonics in a PSD.

    For each k whose k*f_p falls inside the PSD span after recentring, the
    local maximum within +-2 line rates is compared against the median of a
    wider +-8 line-rate neighborhood; entries whose prominence exceeds
    min_prominence_db are returned as (k, measured_freq_hz, prominence_db).
    """
    fp = pixel_rate(mode)
    fh = line_rate(mode)
    freqs = spectrum.freqs_hz
    out = []
    for k in k_range:
        offset = k * fp - capture_center_hz
        if offset < freqs[0] or offset > freqs[-1]:
            continue
        peak_sel = np.abs(freqs - offset) <= 2 * fh
        local_sel = np.abs(freqs - offset) <= 8 * fh
        if not peak_sel.any():
            peak_sel = np.abs(freqs - offset) <= spectrum.resolution_hz
        if np.count_nonzero(local_sel) < 8:
            local_sel = slice(None)
        peak_idx = np.flatnonzero(peak_sel)
        best = peak_idx[np.argmax(spectrum.power_db[peak_idx])]
        prominence = spectrum.power_db[best] - float(np.median(spectrum.power_db[local_sel]))
        if prominence > min_prominence_db:
            out.append((int(k), float(freqs[best]), float(prominence)))
    return out


def _parabolic_refine(y: np.ndarray, i: int) -> float:
    if 0 < i < len(y) - 1:
        denom = y[i - 1] - 2.0 * y[i] + y[i + 1]
        if denom < 0:
            delta = 0.5 * (y[i - 1] - y[i + 1]) / denom
            return i + float(np.clip(delta, -1.0, 1.0))
    return float(i)


def _integer_lag_autocorr(env: np.ndarray, lag_lo: int, lag_hi: int) -> np.ndarray:
    """Per-lag-normalized linear autocorrelation on integer lags, via FFT."""
    n = env.size
    if n - lag_hi - 1 < 2:
        raise TooShort("capture too short for the requested rate search span")
    nfft = 1 << int(np.ceil(np.log2(n + lag_hi + 1)))
    spectrum = np.fft.rfft(env, nfft)
    r = np.fft.irfft(np.abs(spectrum) ** 2, nfft)[lag_lo : lag_hi + 1]
    counts = n - np.arange(lag_lo, lag_hi + 1)
    return r / counts


def _rate_search(
    samples: np.ndarray,
    fs: float,
    nominal_hz: float,
    span_hz: float,
    n_candidates: int,
    period_multiple: int = 1,
) -> RateEstimate:
    env = np.abs(samples)
    env = env - env.mean()
    r0 = float(np.dot(env, env) / env.size)
    if r0 <= 0.0:
        return RateEstimate(nominal_hz, 0.0)
    candidates = np.linspace(nominal_hz - span_hz, nominal_hz + span_hz, n_candidates)
    lags = period_multiple * fs / candidates
    # candidate lags are fractional: evaluate the autocorrelation on integer
    # lags (plus a half-period reference for the quality ratio) and spline it,
    # which avoids the integer-lag bias of interpolating the envelope itself
    off_factor = (period_multiple + 0.5) / period_multiple
    lag_lo = int(np.floor(lags.min())) - 2
    lag_hi = int(np.ceil(lags.max() * off_factor)) + 2
    if lag_lo < 0:
        raise TooShort("rate search span reaches non-positive lags")
    r = _integer_lag_autocorr(env, lag_lo, lag_hi)
    r_at = CubicSpline(np.arange(lag_lo, lag_hi + 1), r)
    corr = r_at(lags)
    best = int(np.argmax(corr))
    refined = _parabolic_refine(corr, best)
    freq = float(np.interp(refined, np.arange(n_candidates), candidates))
    # quality: peak correlation against the half-period (off-peak) correlation
    c_peak = corr[best] / r0
    c_off = float(r_at(min(period_multiple * fs / freq * off_factor, lag_hi))) / r0
    quality = (1.0 + c_peak) / (1.0 + max(c_off, -0.99))
    return RateEstimate(freq, float(quality))


def estimate_frame_rate(
    capture: BasebandCapture, nominal_hz: float, span_hz: float, n_candidates: int = 41
) -> RateEstimate:
    """Grid search over candidate frame rates maximizing the magnitude-envelope
    autocorrelation at one frame lag, with parabolic refinement."""
    if nominal_hz <= 0 or span_hz < 0:
        raise InvalidArgument("nominal_hz must be > 0 and span_hz >= 0")
    fs = capture.meta.sample_rate_hz
    if len(capture.samples) < 2 * fs / nominal_hz:
        raise TooShort("capture must cover at least two frames at the nominal rate")
    if span_hz == 0 or n_candidates <= 1:
        return RateEstimate(nominal_hz, float("inf"))
    return _rate_search(capture.samples, fs, nominal_hz, span_hz, n_candidates)


def estimate_line_rate(
    capture: BasebandCapture, mode: DisplayMode, span_hz: float, n_candidates: int = 41
) -> RateEstimate:
    """Same autocorrelation search around the mode's line rate.

    A single line period is too short a lag to resolve sub-Hz offsets, so the
    correlation lag is an integer multiple of the line period: the largest
    multiple that both fits in half the capture and keeps the rate ambiguity
    (one full line of lag slip) outside the search span.
    """
    nominal = line_rate(mode)
    fs = capture.meta.sample_rate_hz
    if len(capture.samples) < 2 * fs / nominal:
        raise TooShort("capture must cover at least two lines at the nominal rate")
    if span_hz == 0 or n_candidates <= 1:
        return RateEstimate(nominal, float("inf"))
    fit_limit = int(len(capture.samples) * (nominal - span_hz) / (2 * fs))
    ambiguity_limit = int(nominal / (2 * span_hz))
    multiple = max(1, min(fit_limit, ambiguity_limit))
    return _rate_search(
        capture.samples, fs, nominal, span_hz, n_candidates, period_multiple=multiple
    )


def signature_match(sig: SpectralSignature, capture: BasebandCapture) -> float:
    """Pearson correlation between the predicted per-harmonic powers and the
    measured band powers over the harmonics visible in the capture.

    With a single visible harmonic the score degenerates to +-1: +1 when the
    band's presence above the noise floor agrees with a nonzero prediction.
    """
    fs = capture.meta.sample_rate_hz
    center = capture.meta.center_freq_hz
    fh = sig.line_rate_hz
    visible = [
        e for e in sig.entries if abs(e.center_freq_hz - center) + fh <= fs / 2.0
    ]
    if not visible:
        raise NoVisibleHarmonics(
            f"no signature harmonic falls inside the capture span (center {center:g} Hz)"
        )
    segment_len = 64
    while segment_len * 2 <= len(capture.samples) // 4 and fs / segment_len > fh / 2:
        segment_len *= 2
    spectrum = psd(capture, segment_len=min(segment_len, len(capture.samples)))
    power_lin = 10.0 ** (spectrum.power_db / 10.0)

    measured = []
    for e in visible:
        offset = e.center_freq_hz - center
        sel = np.abs(spectrum.freqs_hz - offset) <= fh
        if not sel.any():
            sel = np.abs(spectrum.freqs_hz - offset) <= spectrum.resolution_hz
        measured.append(float(np.mean(power_lin[sel])))
    measured = np.array(measured)
    predicted = np.array([e.predicted_rel_power for e in visible])

    if len(visible) == 1:
        floor = float(np.median(power_lin))
        band_present = measured[0] > 2.0 * floor
        return 1.0 if band_present == (predicted[0] > 0) else -1.0
    if np.ptp(predicted) == 0 or np.ptp(measured) == 0:
        return 0.0
    return float(np.corrcoef(predicted, measured)[0, 1])
