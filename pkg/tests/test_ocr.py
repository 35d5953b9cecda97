import os
import stat
import sys

import numpy as np
import pytest

from payscan.imgproc import BinaryImage
from payscan.ocr import (BuiltinOcrEngine, ExternalOcrEngine, GlyphAtlas,
                         OcrChar, OcrEngineError, OcrResult, builtin_match,
                         default_atlas, parse_engine_tsv)


def stamp(ch, scale=3, margin=5, atlas=None):
    atlas = atlas or default_atlas()
    bm = atlas.glyphs[ch]
    big = np.repeat(np.repeat(bm, scale, 0), scale, 1)
    canvas = np.zeros((big.shape[0] + 2 * margin, big.shape[1] + 2 * margin), bool)
    canvas[margin:margin + big.shape[0], margin:margin + big.shape[1]] = big
    return BinaryImage.from_mask(canvas)


def test_blank_image_empty_result():
    img = BinaryImage(np.zeros((20, 20), np.uint8))
    assert builtin_match(img, default_atlas()).text == ""


def test_atlas_round_trip_all_glyphs():
    atlas = default_atlas()
    for ch in sorted(atlas.charset):
        res = builtin_match(stamp(ch), atlas)
        assert res.text == ch, f"glyph {ch!r} read as {res.text!r}"
        assert res.chars[0].conf == 100.0


def test_single_seven_high_confidence():
    res = builtin_match(stamp("7"), default_atlas())
    assert res.text == "7"
    assert res.chars[0].conf >= 95.0


def test_noisy_seven_still_wins():
    atlas = default_atlas()
    img = stamp("7", scale=4)
    rng = np.random.default_rng(42)
    mask = img.mask()
    ys, xs = np.nonzero(mask)
    # flip 10% of the pixels inside the glyph's own bounding box
    box = np.zeros_like(mask)
    box[ys.min():ys.max() + 1, xs.min():xs.max() + 1] = True
    flip = (rng.random(mask.shape) < 0.10) & box
    noisy = np.where(flip, ~mask, mask)
    res = builtin_match(BinaryImage.from_mask(noisy), atlas)
    assert res.text == "7", f"expected a 7, got {res.text!r}"
    assert res.chars[0].conf < 100.0


def test_wide_gap_inserts_space():
    atlas = default_atlas()
    a = atlas.glyphs["1"]
    big = np.repeat(np.repeat(a, 3, 0), 3, 1)
    h, w = big.shape
    canvas = np.zeros((h + 10, w * 2 + 200), bool)
    canvas[5:5 + h, 5:5 + w] = big
    canvas[5:5 + h, 5 + w + 150:5 + 2 * w + 150] = big
    res = builtin_match(BinaryImage.from_mask(canvas), atlas)
    assert res.text == "1 1"
    assert res.chars[1] == OcrChar(" ", 100.0)


def test_small_specks_discarded():
    img = stamp("5", scale=3)
    px = img.px.copy()
    px[1, 1] = 255  # lone pixel, below the 4 px^2 floor
    res = builtin_match(BinaryImage(px), default_atlas())
    assert res.text == "5"


def test_deterministic():
    img = stamp("8", scale=2)
    atlas = default_atlas()
    r1 = builtin_match(img, atlas)
    r2 = builtin_match(img, atlas)
    assert r1 == r2


def test_confidence_never_rises_with_nested_noise():
    """Salt-and-pepper with a fixed seed and growing density flips a nested
    pixel set, so the true glyph's match score must be non-increasing."""
    atlas = default_atlas()
    base = stamp("8", scale=4).mask()
    rng = np.random.default_rng(7)
    u = rng.random(base.shape)
    v = rng.integers(0, 2, base.shape).astype(bool)
    idx = atlas._chars.index("8")
    prev = 101.0
    for density in (0.0, 0.05, 0.10, 0.15, 0.20):
        hits = u < density
        noisy = np.where(hits, v, base)
        res = builtin_match(BinaryImage.from_mask(noisy), atlas)
        comps = [c for c in res.chars if c.ch != " "]
        assert comps, "glyph vanished under noise"
        # score of the true glyph on the (single) main component
        from payscan.ocr import _component_boxes, _merge_stacked, _resize_bool
        from payscan.imgproc import connected_components
        boxes = _merge_stacked(_component_boxes(
            connected_components(BinaryImage.from_mask(noisy))))
        boxes.sort(key=lambda c: -(c["box"][2] - c["box"][0]))
        cw, ch = atlas.cell
        norm = _resize_bool(boxes[0]["mask"], ch, cw)
        score = 100.0 * (atlas._templates[idx] == norm).mean()
        assert score <= prev + 1e-9
        prev = score


def test_atlas_validation():
    with pytest.raises(ValueError):
        GlyphAtlas((16, 24), {"A": np.zeros((10, 10), bool)})
    with pytest.raises(ValueError):
        GlyphAtlas((16, 24), {"A": np.zeros((24, 16), bool)})  # no ink


# ---------------------------------------------------------------------------
# external adapter
# ---------------------------------------------------------------------------

def test_parse_tsv_basic():
    res = parse_engine_tsv(b"1\t91.5\n2\t88.0\n")
    assert res.text == "12"
    assert [c.conf for c in res.chars] == [92.0, 88.0]


def test_parse_tsv_empty():
    assert parse_engine_tsv(b"") == OcrResult(())


def test_parse_tsv_nan_rejected():
    with pytest.raises(ValueError, match="line 1"):
        parse_engine_tsv(b"A\tNaN\n")


def test_parse_tsv_malformed_row():
    with pytest.raises(ValueError, match="line 2"):
        parse_engine_tsv(b"A\t50\nBC\t10\n")


def test_parse_tsv_out_of_range():
    with pytest.raises(ValueError, match="line 1"):
        parse_engine_tsv(b"A\t101\n")


def _write_engine(tmp_path, body, name="engine.py"):
    path = tmp_path / name
    path.write_text(f"#!{sys.executable}\n" + body)
    path.chmod(path.stat().st_mode | stat.S_IXUSR)
    return str(path)


def test_external_engine_round_trip(tmp_path):
    cmd = _write_engine(tmp_path, (
        "import sys\n"
        "assert sys.argv[1].endswith('.png')\n"
        "sys.stdout.write('4\\t90\\n2\\t85.5\\n')\n"))
    engine = ExternalOcrEngine(cmd)
    res = engine.recognize(BinaryImage(np.zeros((5, 5), np.uint8)))
    assert res.text == "42"
    assert [c.conf for c in res.chars] == [90.0, 86.0]


def test_external_engine_failure(tmp_path):
    cmd = _write_engine(tmp_path, "import sys\nsys.exit(3)\n")
    with pytest.raises(OcrEngineError):
        ExternalOcrEngine(cmd).recognize(BinaryImage(np.zeros((5, 5), np.uint8)))


def test_external_engine_bad_output(tmp_path):
    cmd = _write_engine(tmp_path, "print('garbage with no tab')\n")
    with pytest.raises(OcrEngineError):
        ExternalOcrEngine(cmd).recognize(BinaryImage(np.zeros((5, 5), np.uint8)))


def test_builtin_engine_wrapper():
    res = BuiltinOcrEngine().recognize(stamp("9"))
    assert res.text == "9"
