import json

import numpy as np
import pytest

from emleak.capture_io import (
    META_SUFFIX,
    BasebandCapture,
    CaptureMeta,
    read_capture,
    write_capture,
)
from emleak.errors import FormatError, IoError, MissingMeta


def _capture(n=64, seed=0, fs=48000.0):
    rng = np.random.default_rng(seed)
    samples = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    meta = CaptureMeta(
        sample_rate_hz=fs,
        center_freq_hz=74.25e6,
        mode_name="1280x720@60",
        n_frames=2,
        seed=seed,
        description="test capture",
    )
    return BasebandCapture(samples, meta)


def test_roundtrip_preserves_meta(tmp_path):
    cap = _capture()
    path = str(tmp_path / "cap.cf32")
    write_capture(cap, path)
    back = read_capture(path)
    assert back.meta.sample_rate_hz == cap.meta.sample_rate_hz
    assert back.meta.center_freq_hz == cap.meta.center_freq_hz
    assert back.meta.mode_name == cap.meta.mode_name
    assert back.meta.n_frames == cap.meta.n_frames
    assert back.meta.seed == cap.meta.seed
    assert back.meta.description == cap.meta.description
    assert len(back) == len(cap)


def test_roundtrip_float32_exact(tmp_path):
    # disk format is cf32: the roundtrip equals the float32-quantized samples
    cap = _capture(seed=1)
    path = str(tmp_path / "cap.cf32")
    write_capture(cap, path)
    back = read_capture(path)
    want = cap.samples.real.astype(np.float32).astype(np.float64) + 1j * cap.samples.imag.astype(
        np.float32
    ).astype(np.float64)
    assert np.array_equal(back.samples, want)


def test_float32_representable_samples_roundtrip_exactly(tmp_path):
    samples = (np.arange(16, dtype=np.float64) - 8.0) * 0.25 + 1j * 0.5
    cap = BasebandCapture(samples, CaptureMeta(sample_rate_hz=1000.0))
    path = str(tmp_path / "exact.cf32")
    write_capture(cap, path)
    assert np.array_equal(read_capture(path).samples, samples)


def test_disk_layout_is_interleaved_le(tmp_path):
    cap = BasebandCapture(
        np.array([1.0 + 2.0j, 3.0 - 4.0j]), CaptureMeta(sample_rate_hz=100.0)
    )
    path = str(tmp_path / "layout.cf32")
    write_capture(cap, path)
    raw = np.frombuffer(open(path, "rb").read(), dtype="<f4")
    assert np.array_equal(raw, [1.0, 2.0, 3.0, -4.0])


def test_sidecar_is_json_with_expected_keys(tmp_path):
    cap = _capture()
    path = str(tmp_path / "cap.cf32")
    write_capture(cap, path)
    doc = json.load(open(path + META_SUFFIX))
    assert doc["sample_rate_hz"] == 48000.0
    assert doc["mode_name"] == "1280x720@60"


def test_unknown_sidecar_keys_preserved(tmp_path):
    cap = _capture()
    path = str(tmp_path / "cap.cf32")
    write_capture(cap, path)
    doc = json.load(open(path + META_SUFFIX))
    doc["antenna"] = "discone"
    doc["gain_db"] = 32
    json.dump(doc, open(path + META_SUFFIX, "w"))
    back = read_capture(path)
    assert back.meta.extra == {"antenna": "discone", "gain_db": 32}
    # a second write keeps them
    out2 = str(tmp_path / "copy.cf32")
    write_capture(back, out2)
    doc2 = json.load(open(out2 + META_SUFFIX))
    assert doc2["antenna"] == "discone"
    assert doc2["gain_db"] == 32


def test_missing_sidecar_requires_rate(tmp_path):
    path = str(tmp_path / "bare.cf32")
    open(path, "wb").write(np.zeros(8, dtype="<f4").tobytes())
    with pytest.raises(MissingMeta):
        read_capture(path)
    back = read_capture(path, sample_rate_hz=12345.0)
    assert back.meta.sample_rate_hz == 12345.0
    assert back.meta.mode_name == "unknown"


def test_rate_override_wins_over_sidecar(tmp_path):
    cap = _capture()
    path = str(tmp_path / "cap.cf32")
    write_capture(cap, path)
    back = read_capture(path, sample_rate_hz=96000.0)
    assert back.meta.sample_rate_hz == 96000.0
    assert back.meta.mode_name == "1280x720@60"  # rest of sidecar still applies


def test_truncated_file_rejected(tmp_path):
    path = str(tmp_path / "bad.cf32")
    open(path, "wb").write(b"\x00" * 13)
    with pytest.raises(FormatError):
        read_capture(path, sample_rate_hz=1.0)


def test_malformed_sidecar_rejected(tmp_path):
    path = str(tmp_path / "cap.cf32")
    open(path, "wb").write(np.zeros(4, dtype="<f4").tobytes())
    open(path + META_SUFFIX, "w").write("{not json")
    with pytest.raises(FormatError):
        read_capture(path)


def test_sidecar_without_rate_rejected(tmp_path):
    path = str(tmp_path / "cap.cf32")
    open(path, "wb").write(np.zeros(4, dtype="<f4").tobytes())
    json.dump({"mode_name": "x"}, open(path + META_SUFFIX, "w"))
    with pytest.raises(FormatError):
        read_capture(path)


def test_missing_file_raises_io_error(tmp_path):
    with pytest.raises(IoError):
        read_capture(str(tmp_path / "nothing.cf32"), sample_rate_hz=1.0)


def test_meta_validation():
    with pytest.raises(FormatError):
        CaptureMeta(sample_rate_hz=0.0)
    with pytest.raises(FormatError):
        CaptureMeta(sample_rate_hz=1.0, center_freq_hz=-5.0)


def test_in_memory_samples_are_complex128():
    cap = BasebandCapture(np.ones(4, dtype=np.complex64), CaptureMeta(sample_rate_hz=1.0))
    assert cap.samples.dtype == np.complex128


def test_empty_capture_roundtrip(tmp_path):
    cap = BasebandCapture(np.zeros(0, dtype=np.complex128), CaptureMeta(sample_rate_hz=1.0))
    path = str(tmp_path / "empty.cf32")
    write_capture(cap, path)
    assert len(read_capture(path)) == 0
