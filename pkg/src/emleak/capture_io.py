"""IQ capture container and file I/O.

On disk a capture is interleaved IEEE-754 binary32 little-endian I/Q pairs
(the de facto SDR cf32 convention) plus a JSON metadata sidecar at
`<path>.meta.json`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import FormatError, IoError, MissingMeta

META_SUFFIX = ".meta.json"
_META_KEYS = ("sample_rate_hz", "center_freq_hz", "mode_name", "n_frames", "seed", "description")


@dataclass
class CaptureMeta:
    sample_rate_hz: float
    center_freq_hz: float = 0.0
    mode_name: str = "unknown"
    n_frames: int = 0
    seed: int | None = None
    description: str = ""
    extra: dict = field(default_factory=dict)  # unknown sidecar keys, preserved

    def __post_init__(self):
        if not self.sample_rate_hz > 0:
            raise FormatError(f"sample_rate_hz must be > 0, got {self.sample_rate_hz}")
        if self.center_freq_hz < 0:
            raise FormatError(f"center_freq_hz must be >= 0, got {self.center_freq_hz}")


@dataclass
class BasebandCapture:
    """In-memory captures hold complex128 samples; files quantize to cf32."""

    samples: np.ndarray  # complex, 1-D
    meta: CaptureMeta

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.complex128).reshape(-1)

    def __len__(self):
        return len(self.samples)


def _meta_path(path: str) -> str:
    return path + META_SUFFIX


def write_capture(capture: BasebandCapture, path: str) -> None:
    iq = np.empty(2 * len(capture.samples), dtype="<f4")
    iq[0::2] = capture.samples.real
    iq[1::2] = capture.samples.imag
    meta = capture.meta
    doc = dict(meta.extra)
    doc.update(
        sample_rate_hz=meta.sample_rate_hz,
        center_freq_hz=meta.center_freq_hz,
        mode_name=meta.mode_name,
        n_frames=meta.n_frames,
        seed=meta.seed,
        description=meta.description,
    )
    try:
        with open(path, "wb") as fh:
            fh.write(iq.tobytes())
        with open(_meta_path(path), "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        raise IoError(f"cannot write capture {path!r}: {exc}") from None


def read_capture(path: str, sample_rate_hz: float | None = None) -> BasebandCapture:
    """Inverse of write_capture.  With no sidecar, `sample_rate_hz` must be
    supplied and the mode is reported as "unknown"."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise IoError(f"cannot read capture {path!r}: {exc}") from None
    if len(raw) % 8 != 0:
        raise FormatError(
            f"cf32 file length {len(raw)} is not a multiple of 8 bytes (I/Q float32 pairs)"
        )
    iq = np.frombuffer(raw, dtype="<f4").astype(np.float64)
    samples = np.empty(len(iq) // 2, dtype=np.complex128)
    samples.real = iq[0::2]
    samples.imag = iq[1::2]

    meta_file = _meta_path(path)
    try:
        with open(meta_file, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        if sample_rate_hz is None:
            raise MissingMeta(
                f"no sidecar {meta_file!r} and no sample_rate_hz override given"
            ) from None
        return BasebandCapture(samples, CaptureMeta(sample_rate_hz=sample_rate_hz))
    except OSError as exc:
        raise IoError(f"cannot read sidecar {meta_file!r}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed sidecar {meta_file!r}: {exc}") from None

    if not isinstance(doc, dict) or "sample_rate_hz" not in doc:
        raise FormatError(f"sidecar {meta_file!r} lacks sample_rate_hz")
    extra = {k: v for k, v in doc.items() if k not in _META_KEYS}
    meta = CaptureMeta(
        sample_rate_hz=float(doc["sample_rate_hz"]),
        center_freq_hz=float(doc.get("center_freq_hz", 0.0)),
        mode_name=str(doc.get("mode_name", "unknown")),
        n_frames=int(doc.get("n_frames") or 0),
        seed=doc.get("seed"),
        description=str(doc.get("description", "")),
        extra=extra,
    )
    if sample_rate_hz is not None:
        meta.sample_rate_hz = float(sample_rate_hz)
    return BasebandCapture(samples, meta)
