"""Electromagnetic display-leakage toolkit: pre-characterize, synthesize,
analyze and jam-plan the compromising emission of a video display."""

from .analyzer import (
    Psd,
    RateEstimate,
    SpectralSignature,
    detect_harmonic_comb,
    estimate_frame_rate,
    estimate_line_rate,
    psd,
    signature_from_public_image,
    signature_match,
)
from .capture_io import BasebandCapture, CaptureMeta, read_capture, write_capture
from .errors import EmleakError
from .frame import (
    ContrastReport,
    FrameImage,
    PixelSequence,
    compose_pixel_sequence,
    contrast_metrics,
    load_image,
    test_card,
    write_pgm,
)
from .jammer import DeviceProfile, JamPlan, plan_jamming, rank_compromising_frequencies
from .kernels import BACKEND as KERNEL_BACKEND
from .raster import (
    RasterImage,
    average_frames,
    fold_lines,
    line_dft_raster,
    reconstruct_image,
)
from .synth import (
    ChannelSpec,
    PulseSpec,
    dtft_pixels,
    predicted_spectrum,
    pulse_spectrum,
    synthesize_baseband,
)
from .timing import (
    DisplayMode,
    harmonics,
    line_rate,
    lookup_mode,
    pixel_period,
    pixel_rate,
    samples_per_line,
)

__version__ = "0.1.0"
