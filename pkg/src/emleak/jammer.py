"""Jamming frequency planning from a public device profile.

Each pixel-clock harmonic becomes a candidate jamming band centered at k*f_p;
bands are prioritized by the pre-characterized emission power so a jammer can
target the most compromising frequencies first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .analyzer import SpectralSignature, signature_from_public_image
from .errors import InvalidArgument
from .frame import FrameImage, load_image, test_card
from .synth import PulseSpec
from .timing import DisplayMode, line_rate


@dataclass(frozen=True)
class DeviceProfile:
    """Publicly known facts about a device model."""

    model_name: str
    mode: DisplayMode
    interface_image_path: str | None = None
    environment_notes: str = ""


@dataclass(frozen=True)
class JamBand:
    center_freq_hz: float
    bandwidth_hz: float
    priority: int  # 1 = most compromising


@dataclass(frozen=True)
class JamPlan:
    bands: tuple[JamBand, ...]
    source_signature: SpectralSignature
    notes: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "bands": [
                {
                    "center_freq_hz": b.center_freq_hz,
                    "bandwidth_hz": b.bandwidth_hz,
                    "priority": b.priority,
                }
                for b in self.bands
            ],
            "source_signature": self.source_signature.to_dict(),
            "notes": list(self.notes),
        }


def write_plan(plan: JamPlan, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(plan.to_dict(), fh, indent=2)
        fh.write("\n")


def write_plan_flat(plan: JamPlan, path: str) -> None:
    """Flat `center_hz bandwidth_hz priority` per-line export for jammer
    controllers, ordered by priority."""
    ordered = sorted(plan.bands, key=lambda b: b.priority)
    with open(path, "w", encoding="utf-8") as fh:
        for b in ordered:
            fh.write(f"{b.center_freq_hz:.6f} {b.bandwidth_hz:.6f} {b.priority}\n")


def plan_jamming(
    profile: DeviceProfile,
    pulse: PulseSpec = PulseSpec(),
    k_max: int = 3,
    guard_factor: float = 3.0,
) -> JamPlan:
    """Rank the first k_max harmonics by predicted emission power.

    Band k covers guard_factor * 2 line rates around k*f_p.  With no interface
    image on file the worst-case all-white frame is used and noted.
    """
    if k_max < 1:
        raise InvalidArgument(f"k_max must be >= 1, got {k_max}")
    if guard_factor < 1:
        raise InvalidArgument(f"guard_factor must be >= 1, got {guard_factor}")
    notes = []
    if profile.interface_image_path is not None:
        frame = load_image(profile.interface_image_path)
    else:
        frame = test_card("white", profile.mode)
        notes.append("no interface image on file; worst-case white frame assumed")
    sig = signature_from_public_image(frame, profile.mode, pulse, k_max)
    if all(e.predicted_rel_power == 0 for e in sig.entries):
        notes.append("zero predicted power at every harmonic (blank interface)")
    bandwidth = guard_factor * 2.0 * line_rate(profile.mode)
    # priority: predicted power descending, ties to the lower harmonic
    order = sorted(sig.entries, key=lambda e: (-e.predicted_rel_power, e.k))
    priority = {e.k: rank for rank, e in enumerate(order, start=1)}
    bands = tuple(
        JamBand(e.center_freq_hz, bandwidth, priority[e.k]) for e in sig.entries
    )
    return JamPlan(bands=bands, source_signature=sig, notes=tuple(notes))


def rank_compromising_frequencies(
    sig: SpectralSignature, noise_floor_rel: float
) -> list[tuple[int, float]]:
    """Harmonics with predicted power above the floor, strongest first."""
    if not (0.0 <= noise_floor_rel <= 1.0):
        raise InvalidArgument(f"noise_floor_rel must be in [0, 1], got {noise_floor_rel}")
    above = [e for e in sig.entries if e.predicted_rel_power > noise_floor_rel]
    above.sort(key=lambda e: (-e.predicted_rel_power, e.k))
    return [(e.k, e.center_freq_hz) for e in above]
