"""Line-raster views of IQ captures and screen image reconstruction.

A capture folded at the line period lines up the raster structure row by row;
the line-wise DFT view reproduces the receiver-side raster display (DC bin in
the center column).  Averaging frames coherently raises the SNR before the
image is cropped and resampled back to the active resolution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .capture_io import BasebandCapture
from .errors import InvalidArgument, TooShort
from .frame import FrameImage, write_pgm
from .timing import DisplayMode, pixel_rate, samples_per_line


@dataclass(frozen=True)
class RasterImage:
    rows: int
    cols: int
    values: np.ndarray  # shape (rows, cols), non-negative magnitudes
    seconds_per_col: float

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64).reshape(self.rows, self.cols)
        object.__setattr__(self, "values", arr)


def _fold_complex(
    samples: np.ndarray, spl: float, start: float = 0.0, max_rows: int | None = None
) -> np.ndarray:
    """Phase-accumulator fold of a complex stream into rows of round(spl)
    columns; the trailing partial row is discarded."""
    cols = round(spl)
    n = samples.size
    last_pos = n - 1
    n_rows = int(np.floor((last_pos - start - (cols - 1)) / spl)) + 1
    if max_rows is not None:
        n_rows = min(n_rows, max_rows)
    if n_rows < 1:
        raise TooShort("capture too short to fold a single complete line")
    return kernels.fold_linear(samples, spl, n_rows, cols, start=start)


def fold_lines(capture: BasebandCapture, samples_per_line: float) -> RasterImage:
    """Fold the capture at the (possibly fractional) line period; magnitudes."""
    if samples_per_line <= 1:
        raise InvalidArgument(f"samples_per_line must be > 1, got {samples_per_line}")
    if len(capture.samples) < 2 * samples_per_line:
        raise TooShort(
            f"capture of {len(capture.samples)} samples is shorter than two lines"
        )
    folded = _fold_complex(capture.samples, samples_per_line)
    return RasterImage(
        rows=folded.shape[0],
        cols=folded.shape[1],
        values=np.abs(folded),
        seconds_per_col=1.0 / capture.meta.sample_rate_hz,
    )


def line_dft_raster(
    capture: BasebandCapture, samples_per_line: int, dc_centered: bool = True
) -> RasterImage:
    """Per-line magnitude DFT (unnormalized); with dc_centered the DC bin sits
    at column floor(spl/2)."""
    spl = int(samples_per_line)
    n_rows = len(capture.samples) // spl
    if n_rows < 2:
        raise TooShort(
            f"capture of {len(capture.samples)} samples has fewer than two "
            f"complete {spl}-sample lines"
        )
    rows = capture.samples[: n_rows * spl].reshape(n_rows, spl)
    mag = np.abs(np.fft.fft(rows, axis=1))
    if dc_centered:
        mag = np.fft.fftshift(mag, axes=1)
    return RasterImage(
        rows=n_rows, cols=spl, values=mag, seconds_per_col=1.0 / capture.meta.sample_rate_hz
    )


def _average_frames_complex(
    capture: BasebandCapture, mode: DisplayMode, n_frames: int
) -> np.ndarray:
    if n_frames < 1:
        raise InvalidArgument(f"n_frames must be >= 1, got {n_frames}")
    fs = capture.meta.sample_rate_hz
    frame_len = fs / mode.refresh_hz  # samples per frame, fractional in general
    if len(capture.samples) + 1 < n_frames * frame_len:
        raise TooShort(
            f"capture of {len(capture.samples)} samples does not cover "
            f"{n_frames} frames ({n_frames * frame_len:.0f} samples)"
        )
    spl = samples_per_line(mode, fs)
    acc = None
    for i in range(n_frames):
        folded = _fold_complex(
            capture.samples, spl, start=i * frame_len, max_rows=mode.total_height
        )
        if folded.shape[0] < mode.total_height:
            raise TooShort(f"frame {i} is incomplete in the capture")
        acc = folded if acc is None else acc + folded
    return acc / n_frames


def average_frames(
    capture: BasebandCapture, mode: DisplayMode, n_frames: int
) -> RasterImage:
    """Coherent complex average of n_frames rasters, folded at the line period
    with fractional-phase alignment at each frame start."""
    avg = _average_frames_complex(capture, mode, n_frames)
    return RasterImage(
        rows=avg.shape[0],
        cols=avg.shape[1],
        values=np.abs(avg),
        seconds_per_col=1.0 / capture.meta.sample_rate_hz,
    )


def reconstruct_image(
    capture: BasebandCapture,
    mode: DisplayMode,
    n_frames: int,
    output_path: str | None = None,
) -> FrameImage:
    """Frame-averaged magnitude raster cropped to the active region, resampled
    to the active width and min-max normalized; optionally written as PGM."""
    fs = capture.meta.sample_rate_hz
    raster = average_frames(capture, mode, n_frames)
    active_cols = round(mode.active_width * fs / pixel_rate(mode))
    active = raster.values[: mode.active_height, :active_cols]
    # resample columns back to pixel positions (column c covers pixel c*f_p/f_s)
    step = fs / pixel_rate(mode)
    positions = np.arange(mode.active_width) * step
    src = np.arange(active_cols, dtype=np.float64)
    img = np.vstack([np.interp(positions, src, row) for row in active])
    lo, hi = img.min(), img.max()
    img = (img - lo) / (hi - lo) if hi > lo else np.zeros_like(img)
    frame = FrameImage(mode.active_width, mode.active_height, img)
    if output_path is not None:
        write_pgm(frame, output_path)
    return frame


def raster_to_csv(raster: RasterImage, path: str) -> None:
    np.savetxt(path, raster.values, delimiter=",", fmt="%.8g")
