"""Display timing model: pixel clock, line/frame rates and their harmonics.

The pixel rate of a raster display is the product of the total (blanking
inclusive) horizontal and vertical dimensions and the refresh rate.  All
derived quantities are computed from the stored totals so there is a single
source of truth.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import FormatError, InvalidArgument, UnknownMode

MODE_TABLE_ENV = "EMLEAK_MODE_TABLE"


@dataclass(frozen=True)
class DisplayMode:
    """Video timing record; totals include blanking pixels/lines."""

    name: str
    active_width: int
    active_height: int
    total_width: int
    total_height: int
    refresh_hz: float

    def __post_init__(self):
        if not (0 < self.active_width <= self.total_width):
            raise InvalidArgument(
                f"active_width {self.active_width} must be in (0, total_width]"
            )
        if not (0 < self.active_height <= self.total_height):
            raise InvalidArgument(
                f"active_height {self.active_height} must be in (0, total_height]"
            )
        if not self.refresh_hz > 0:
            raise InvalidArgument(f"refresh_hz must be > 0, got {self.refresh_hz}")


# Totals per the published CVT/DMT timings; the 40x30 entry is a synthetic
# desk-scale mode (pixel rate 120 kHz) for fast tests.
_BUILTIN_MODES = [
    DisplayMode("640x480@60", 640, 480, 800, 525, 60.0),
    DisplayMode("1280x720@60", 1280, 720, 1650, 750, 60.0),
    DisplayMode("1920x1080@60", 1920, 1080, 2200, 1125, 60.0),
    DisplayMode("40x30@60", 40, 30, 50, 40, 60.0),
]


def parse_mode_table(text: str) -> list[DisplayMode]:
    """Parse a mode-table file: `name active_w active_h total_w total_h refresh`
    per line, `#` comments allowed."""
    modes = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 6:
            raise FormatError(f"mode table line {lineno}: expected 6 fields, got {len(parts)}")
        name = parts[0]
        try:
            aw, ah, tw, th = (int(p) for p in parts[1:5])
            refresh = float(parts[5])
        except ValueError as exc:
            raise FormatError(f"mode table line {lineno}: {exc}") from None
        modes.append(DisplayMode(name, aw, ah, tw, th, refresh))
    return modes


def load_mode_table(path: str) -> list[DisplayMode]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_mode_table(fh.read())


def available_modes() -> list[DisplayMode]:
    """Built-in table plus any extra file named by EMLEAK_MODE_TABLE."""
    modes = list(_BUILTIN_MODES)
    extra = os.environ.get(MODE_TABLE_ENV)
    if extra:
        modes.extend(load_mode_table(extra))
    return modes


def lookup_mode(active_width: int, active_height: int, refresh_hz: float) -> DisplayMode:
    modes = available_modes()
    for mode in modes:
        if (
            mode.active_width == active_width
            and mode.active_height == active_height
            and mode.refresh_hz == refresh_hz
        ):
            return mode
    supported = ", ".join(m.name for m in modes)
    raise UnknownMode(
        f"no timing entry for {active_width}x{active_height}@{refresh_hz:g}; "
        f"supported: {supported}"
    )


def pixel_rate(mode: DisplayMode) -> float:
    """Pixel clock in Hz: total_width * total_height * refresh_hz."""
    return mode.total_width * mode.total_height * mode.refresh_hz


def pixel_period(mode: DisplayMode) -> float:
    return 1.0 / pixel_rate(mode)


def line_rate(mode: DisplayMode) -> float:
    return mode.total_height * mode.refresh_hz


def frame_rate(mode: DisplayMode) -> float:
    return mode.refresh_hz


def samples_per_line(mode: DisplayMode, sample_rate_hz: float) -> float:
    """Receiver samples spanning one raster line; fractional in general."""
    if not sample_rate_hz > 0:
        raise InvalidArgument(f"sample_rate_hz must be > 0, got {sample_rate_hz}")
    return mode.total_width * sample_rate_hz / pixel_rate(mode)


def harmonics(mode: DisplayMode, k_max: int) -> list[float]:
    """Centers of the pixel-clock harmonics k*f_p for k = 1..k_max, ascending."""
    if k_max < 1:
        raise InvalidArgument(f"k_max must be >= 1, got {k_max}")
    fp = pixel_rate(mode)
    return [k * fp for k in range(1, k_max + 1)]
