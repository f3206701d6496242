import numpy as np
import pytest

from emleak.errors import (
    DimensionMismatch,
    EmptyFrame,
    FormatError,
    InvalidArgument,
    IoError,
)
from emleak.frame import (
    FrameImage,
    compose_pixel_sequence,
    contrast_metrics,
    load_image,
    test_card as make_card,
    write_pgm,
)
from emleak.timing import DisplayMode, lookup_mode

MODE = lookup_mode(40, 30, 60)


def test_frame_image_validates_range():
    with pytest.raises(InvalidArgument):
        FrameImage(2, 2, np.array([[0.0, 1.5], [0.0, 0.0]]))
    with pytest.raises(InvalidArgument):
        FrameImage(2, 2, np.array([[0.0, -0.1], [0.0, 0.0]]))
    with pytest.raises(InvalidArgument):
        FrameImage(1, 1, np.array([[np.nan]]))


def test_frame_image_reshapes_flat_input():
    img = FrameImage(3, 2, np.linspace(0, 1, 6))
    assert img.intensity.shape == (2, 3)


def test_card_black_white():
    assert np.all(make_card("black", MODE).intensity == 0.0)
    assert np.all(make_card("white", MODE).intensity == 1.0)


def test_card_bars():
    img = make_card("bars", MODE).intensity
    # 8 bars over 40 columns: 5 columns each, alternating starting black
    assert np.all(img[:, 0:5] == 0.0)
    assert np.all(img[:, 5:10] == 1.0)
    assert np.all(img[:, 35:40] == 1.0)
    assert np.all(img == img[0])  # rows identical


def test_card_ballot_layout():
    img = make_card("ballot_card", MODE).intensity
    h, w = img.shape
    assert (h, w) == (30, 40)
    # header rows [5%, 12%) of 30 -> rows 2..3 full width black
    assert np.all(img[2:4, :] == 0.0)
    assert np.all(img[0:2, :] == 1.0)
    # first rectangle: cols [10%, 45%) of 40 -> 4..17, rows [25%, 30%) of 30 -> 8
    assert np.all(img[8:9, 4:18] == 0.0)
    assert np.all(img[8:9, 18:] == 1.0)
    # field elsewhere stays white
    assert np.all(img[-1, :] == 1.0)


def test_card_unknown_kind():
    with pytest.raises(InvalidArgument):
        make_card("plaid", MODE)


def test_pgm_roundtrip(tmp_path):
    src = make_card("ballot_card", MODE)
    path = str(tmp_path / "card.pgm")
    write_pgm(src, path)
    back = load_image(path)
    assert (back.width, back.height) == (src.width, src.height)
    # 8-bit quantization is exact for 0/1 images
    assert np.array_equal(back.intensity, src.intensity)


def test_pgm_quantization_bound(tmp_path):
    rng = np.random.default_rng(7)
    src = FrameImage(16, 16, rng.random((16, 16)))
    path = str(tmp_path / "gray.pgm")
    write_pgm(src, path)
    back = load_image(path)
    assert np.max(np.abs(back.intensity - src.intensity)) <= 0.5 / 255.0 + 1e-12


def test_pgm_comment_header(tmp_path):
    path = tmp_path / "c.pgm"
    path.write_bytes(b"P5\n# a comment\n2 2\n255\n\x00\xff\x80\x00")
    img = load_image(str(path))
    assert img.intensity[0, 1] == 1.0
    assert img.intensity[1, 0] == pytest.approx(128 / 255)


def test_pgm_truncated_payload(tmp_path):
    path = tmp_path / "t.pgm"
    path.write_bytes(b"P5\n4 4\n255\n\x00\x00")
    with pytest.raises(FormatError):
        load_image(str(path))


def test_pgm_bad_maxval(tmp_path):
    path = tmp_path / "m.pgm"
    path.write_bytes(b"P5\n1 1\n65535\n\x00\x00")
    with pytest.raises(FormatError):
        load_image(str(path))


def test_load_image_missing_file(tmp_path):
    with pytest.raises(IoError):
        load_image(str(tmp_path / "nope.pgm"))


def test_load_image_unknown_format(tmp_path):
    path = tmp_path / "x.bin"
    path.write_bytes(b"\x00\x01\x02\x03")
    with pytest.raises(FormatError):
        load_image(str(path))


def test_load_png_gray(tmp_path):
    from PIL import Image

    arr = np.arange(256, dtype=np.uint8).reshape(16, 16)
    path = str(tmp_path / "g.png")
    Image.fromarray(arr, mode="L").save(path)
    img = load_image(path)
    assert (img.width, img.height) == (16, 16)
    assert np.allclose(img.intensity, arr / 255.0)


def test_load_png_rgb_luma(tmp_path):
    from PIL import Image

    rgb = np.zeros((4, 4, 3), dtype=np.uint8)
    rgb[..., 1] = 255  # pure green
    path = str(tmp_path / "rgb.png")
    Image.fromarray(rgb, mode="RGB").save(path)
    img = load_image(path)
    assert np.allclose(img.intensity, 0.587, atol=1e-3)


def test_compose_pixel_sequence_layout():
    seq = compose_pixel_sequence(make_card("white", MODE), MODE)
    grid = seq.values.reshape(MODE.total_height, MODE.total_width)
    assert grid.shape == (40, 50)
    assert np.all(grid[:30, :40] == 1.0)
    assert np.all(grid[:, 40:] == 0.0)
    assert np.all(grid[30:, :] == 0.0)


def test_compose_pixel_sequence_blanking_level():
    seq = compose_pixel_sequence(make_card("black", MODE), MODE, blanking_level=0.25)
    grid = seq.values.reshape(MODE.total_height, MODE.total_width)
    assert np.all(grid[:30, :40] == 0.0)
    assert np.all(grid[:, 40:] == 0.25)


def test_compose_pixel_sequence_size_mismatch():
    other = lookup_mode(640, 480, 60)
    with pytest.raises(DimensionMismatch):
        compose_pixel_sequence(make_card("white", other), MODE)


def test_compose_pixel_sequence_bad_blanking():
    with pytest.raises(InvalidArgument):
        compose_pixel_sequence(make_card("white", MODE), MODE, blanking_level=1.5)


def test_contrast_metrics_flat():
    rep = contrast_metrics(make_card("white", MODE))
    assert rep.rms_contrast == 0.0
    assert rep.edge_density == 0.0
    assert rep.mean_level == 1.0


def test_contrast_metrics_bars_vs_flat():
    bars = contrast_metrics(make_card("bars", MODE))
    assert bars.rms_contrast == pytest.approx(0.5)
    assert bars.edge_density > 0.0
    assert bars.mean_level == pytest.approx(0.5)


def test_contrast_metrics_ranks_cards():
    ballot = contrast_metrics(make_card("ballot_card", MODE))
    flat = contrast_metrics(make_card("black", MODE))
    assert ballot.rms_contrast > flat.rms_contrast
    assert ballot.edge_density > flat.edge_density


def test_contrast_metrics_empty_frame():
    empty = FrameImage(0, 0, np.zeros((0, 0)))
    with pytest.raises(EmptyFrame):
        contrast_metrics(empty)


def test_contrast_single_column_has_zero_edges():
    col = FrameImage(1, 4, np.array([[0.0], [1.0], [0.0], [1.0]]))
    assert contrast_metrics(col).edge_density == 0.0
