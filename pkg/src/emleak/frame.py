"""Interface images and their blanking-aware scan-order pixel sequences."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyFrame, FormatError, InvalidArgument, IoError
from .timing import DisplayMode

TEST_CARD_KINDS = ("black", "white", "bars", "ballot_card")


@dataclass(frozen=True)
class FrameImage:
    """Grayscale image, row-major intensities in [0, 1]."""

    width: int
    height: int
    intensity: np.ndarray  # shape (height, width), float64

    def __post_init__(self):
        arr = np.asarray(self.intensity, dtype=np.float64).reshape(self.height, self.width)
        object.__setattr__(self, "intensity", arr)
        if not np.all(np.isfinite(arr)):
            raise InvalidArgument("image intensities must be finite")
        if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
            raise InvalidArgument("image intensities must lie in [0, 1]")


@dataclass(frozen=True)
class PixelSequence:
    """One frame of scan-order pixel values, blanking slots included."""

    mode: DisplayMode
    values: np.ndarray  # length total_width * total_height, float64


@dataclass(frozen=True)
class ContrastReport:
    rms_contrast: float
    edge_density: float
    mean_level: float


def _read_pgm(data: bytes) -> FrameImage:
    # P5 header: magic, width, height, maxval, single whitespace, then payload.
    pos = 0

    def token():
        nonlocal pos
        while True:
            while pos < len(data) and data[pos : pos + 1].isspace():
                pos += 1
            if pos < len(data) and data[pos : pos + 1] == b"#":
                while pos < len(data) and data[pos : pos + 1] != b"\n":
                    pos += 1
                continue
            break
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise FormatError("truncated PGM header")
        return data[start:pos]

    if token() != b"P5":
        raise FormatError("not a binary PGM (magic is not P5)")
    try:
        width = int(token())
        height = int(token())
        maxval = int(token())
    except ValueError:
        raise FormatError("malformed PGM header") from None
    if maxval != 255:
        raise FormatError(f"only maxval 255 PGM supported, got {maxval}")
    pos += 1  # single whitespace after maxval
    payload = data[pos : pos + width * height]
    if len(payload) != width * height:
        raise FormatError(
            f"truncated PGM payload: expected {width * height} bytes, got {len(payload)}"
        )
    arr = np.frombuffer(payload, dtype=np.uint8).astype(np.float64) / 255.0
    return FrameImage(width, height, arr.reshape(height, width))


def load_image(path: str) -> FrameImage:
    """Load an 8-bit grayscale PGM (P5) or 8-bit PNG (RGB converted by luma)."""
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise IoError(f"cannot read image {path!r}: {exc}") from None
    if data[:2] == b"P5":
        return _read_pgm(data)
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        from PIL import Image

        try:
            with Image.open(path) as img:
                if img.mode in ("RGB", "RGBA", "P"):
                    img = img.convert("RGB")
                    rgb = np.asarray(img, dtype=np.float64)
                    gray = (
                        0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
                    )
                elif img.mode in ("L", "LA"):
                    gray = np.asarray(img.convert("L"), dtype=np.float64)
                else:
                    raise FormatError(f"unsupported PNG mode {img.mode!r}")
        except FormatError:
            raise
        except Exception as exc:
            raise FormatError(f"bad PNG {path!r}: {exc}") from None
        h, w = gray.shape
        return FrameImage(w, h, np.clip(gray / 255.0, 0.0, 1.0))
    raise FormatError(f"unrecognized image format in {path!r}")


def write_pgm(frame: FrameImage, path: str) -> None:
    """Write a binary PGM (P5, maxval 255); values rounded from [0,1] to 0..255."""
    payload = np.rint(np.clip(frame.intensity, 0.0, 1.0) * 255.0).astype(np.uint8)
    header = f"P5\n{frame.width} {frame.height}\n255\n".encode("ascii")
    try:
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(payload.tobytes())
    except OSError as exc:
        raise IoError(f"cannot write image {path!r}: {exc}") from None


def test_card(kind: str, mode: DisplayMode) -> FrameImage:
    """Deterministic test image at the mode's active resolution.

    `bars` is 8 equal vertical bars alternating black/white starting black.
    `ballot_card` mimics a high-contrast voting interface: white field, a black
    header band, and three black text-surrogate rectangles.
    """
    w, h = mode.active_width, mode.active_height
    if kind == "black":
        img = np.zeros((h, w))
    elif kind == "white":
        img = np.ones((h, w))
    elif kind == "bars":
        cols = np.arange(w)
        bar = cols * 8 // w
        img = np.broadcast_to((bar % 2).astype(np.float64), (h, w)).copy()
    elif kind == "ballot_card":
        img = np.ones((h, w))

        def rows(a, b):
            return slice(round(a * h), round(b * h))

        c0, c1 = round(0.10 * w), round(0.45 * w)
        img[rows(0.05, 0.12), :] = 0.0  # header band
        for r0, r1 in ((0.25, 0.30), (0.40, 0.45), (0.55, 0.60)):
            img[rows(r0, r1), c0:c1] = 0.0
    else:
        raise InvalidArgument(f"unknown test card kind {kind!r}; choose from {TEST_CARD_KINDS}")
    return FrameImage(w, h, img)


def compose_pixel_sequence(
    frame: FrameImage, mode: DisplayMode, blanking_level: float = 0.0
) -> PixelSequence:
    """Insert blanking slots: each active line is padded to total_width, then
    blanking lines pad the frame to total_height."""
    if (frame.width, frame.height) != (mode.active_width, mode.active_height):
        raise DimensionMismatch(
            f"frame is {frame.width}x{frame.height}, mode active area is "
            f"{mode.active_width}x{mode.active_height}"
        )
    if not (0.0 <= blanking_level <= 1.0):
        raise InvalidArgument(f"blanking_level must be in [0, 1], got {blanking_level}")
    grid = np.full((mode.total_height, mode.total_width), blanking_level)
    grid[: mode.active_height, : mode.active_width] = frame.intensity
    return PixelSequence(mode, grid.reshape(-1))


def contrast_metrics(frame: FrameImage) -> ContrastReport:
    """RMS contrast, horizontal edge density (|delta| > 0.5) and mean level."""
    img = frame.intensity
    if img.size == 0:
        raise EmptyFrame("cannot compute contrast metrics of an empty frame")
    if frame.width > 1:
        edges = np.abs(np.diff(img, axis=1)) > 0.5
        edge_density = float(np.count_nonzero(edges)) / edges.size
    else:
        edge_density = 0.0
    return ContrastReport(
        rms_contrast=float(np.std(img)),
        edge_density=edge_density,
        mean_level=float(np.mean(img)),
    )
