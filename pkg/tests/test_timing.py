import pytest

from emleak import timing
from emleak.errors import FormatError, InvalidArgument, UnknownMode
from emleak.timing import (
    DisplayMode,
    harmonics,
    line_rate,
    lookup_mode,
    parse_mode_table,
    pixel_period,
    pixel_rate,
    samples_per_line,
)

MODE_720 = lookup_mode(1280, 720, 60)
MODE_1080 = lookup_mode(1920, 1080, 60)
UNIT = DisplayMode("unit", 1, 1, 1, 1, 1.0)


def test_lookup_case_study_mode():
    assert (MODE_720.total_width, MODE_720.total_height) == (1650, 750)
    assert MODE_720.refresh_hz == 60.0


def test_lookup_1080p():
    assert (MODE_1080.total_width, MODE_1080.total_height) == (2200, 1125)


def test_lookup_unknown_lists_supported():
    with pytest.raises(UnknownMode) as exc:
        lookup_mode(123, 456, 60)
    assert "1280x720@60" in str(exc.value)


def test_pixel_rate_values():
    assert pixel_rate(MODE_720) == 74_250_000.0
    assert pixel_rate(MODE_1080) == 148_500_000.0
    assert pixel_rate(UNIT) == 1.0


def test_pixel_period():
    assert pixel_period(MODE_720) == pytest.approx(1.34680e-8, rel=1e-5)
    assert pixel_period(MODE_1080) == pytest.approx(6.73401e-9, rel=1e-5)
    assert pixel_period(UNIT) == 1.0


def test_rate_period_reciprocal():
    for mode in timing.available_modes():
        assert pixel_rate(mode) * pixel_period(mode) == pytest.approx(1.0, rel=1e-12)


def test_line_rate():
    assert line_rate(MODE_720) == 45_000.0
    assert line_rate(MODE_1080) == 67_500.0
    assert line_rate(UNIT) == 1.0


def test_samples_per_line_case_study():
    assert samples_per_line(MODE_720, 54e6) == 1200.0
    assert samples_per_line(MODE_1080, 54e6) == 800.0


def test_samples_per_line_unit_resampling():
    for mode in timing.available_modes():
        spl = samples_per_line(mode, pixel_rate(mode))
        assert spl == pytest.approx(mode.total_width, rel=1e-12)


def test_samples_per_line_ratio_property():
    for mode in timing.available_modes():
        for fs in (1e4, 54e6, 2.5e8):
            lhs = samples_per_line(mode, fs) / mode.total_width
            assert lhs == pytest.approx(fs / pixel_rate(mode), rel=1e-12)


def test_samples_per_line_bad_rate():
    with pytest.raises(InvalidArgument):
        samples_per_line(MODE_720, 0.0)


def test_harmonics():
    assert harmonics(MODE_720, 3) == [74.25e6, 148.5e6, 222.75e6]
    assert harmonics(UNIT, 1) == [1.0]


def test_harmonics_exact_and_increasing():
    hs = harmonics(MODE_1080, 8)
    fp = pixel_rate(MODE_1080)
    for k, h in enumerate(hs, start=1):
        assert h == pytest.approx(k * fp, rel=1e-12)
    assert all(a < b for a, b in zip(hs, hs[1:]))


def test_harmonics_invalid():
    with pytest.raises(InvalidArgument):
        harmonics(MODE_720, 0)


def test_mode_invariants_enforced():
    with pytest.raises(InvalidArgument):
        DisplayMode("bad", 100, 100, 90, 120, 60.0)
    with pytest.raises(InvalidArgument):
        DisplayMode("bad", 10, 10, 10, 10, 0.0)


def test_parse_mode_table():
    text = "# comment line\ncustom 320 240 400 260 75  # trailing comment\n\n"
    (mode,) = parse_mode_table(text)
    assert mode == DisplayMode("custom", 320, 240, 400, 260, 75.0)


def test_parse_mode_table_bad_field_count():
    with pytest.raises(FormatError):
        parse_mode_table("broken 1 2 3\n")


def test_mode_table_env(tmp_path, monkeypatch):
    path = tmp_path / "modes.txt"
    path.write_text("extra 100 80 120 90 50\n")
    monkeypatch.setenv(timing.MODE_TABLE_ENV, str(path))
    mode = lookup_mode(100, 80, 50)
    assert (mode.total_width, mode.total_height) == (120, 90)
