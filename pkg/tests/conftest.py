import numpy as np
import pytest

from emleak import (
    ChannelSpec,
    PulseSpec,
    compose_pixel_sequence,
    lookup_mode,
    synthesize_baseband,
    test_card,
)

# synthetic desk-scale mode: 40x30 active, 50x40 totals, pixel rate 120 kHz
SYNTH_FS = 96000.0  # 0.8 * f_p, same undersampling flavor as the case study


@pytest.fixture(scope="session")
def synth_mode():
    return lookup_mode(40, 30, 60)


@pytest.fixture(scope="session")
def case_study_mode():
    return lookup_mode(1280, 720, 60)


@pytest.fixture(scope="session")
def ballot_sequence(synth_mode):
    return compose_pixel_sequence(test_card("ballot_card", synth_mode), synth_mode)


@pytest.fixture(scope="session")
def fullscale_capture(case_study_mode):
    """The case-study configuration: ballot card at 1650x750@60, k=1,
    duty 0.9, 54 MS/s, SNR 30 dB, 10 frames.  Synthesized once per session."""
    seq = compose_pixel_sequence(test_card("ballot_card", case_study_mode), case_study_mode)
    return synthesize_baseband(
        seq,
        PulseSpec(duty=0.9),
        harmonic_k=1,
        sample_rate_hz=54e6,
        n_frames=10,
        oversample=4,
        channel=ChannelSpec(snr_db=30.0, seed=3),
    )


def ncc(a: np.ndarray, b: np.ndarray) -> float:
    """Normalized (zero-mean) cross-correlation of two equal-shape images."""
    a = a - a.mean()
    b = b - b.mean()
    denom = np.linalg.norm(a) * np.linalg.norm(b)
    return float((a * b).sum() / denom) if denom > 0 else 0.0
