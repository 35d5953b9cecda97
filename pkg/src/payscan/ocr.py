"""Character recognition boundary: a hermetic glyph-matching engine for
deterministic runs, plus an adapter for external engines speaking a simple
per-character TSV protocol.
"""

from __future__ import annotations

import math
import os
import subprocess
import tempfile
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from . import glyphs as _glyphs
from .imgproc import BinaryImage, connected_components


class OcrEngineError(RuntimeError):
    """External engine crashed, timed out or produced garbage."""


@dataclass(frozen=True)
class OcrChar:
    ch: str
    conf: float  # 0-100

    def __post_init__(self):
        if not 0.0 <= self.conf <= 100.0:
            raise ValueError(f"confidence out of range: {self.conf}")


@dataclass(frozen=True)
class OcrResult:
    chars: tuple[OcrChar, ...]

    @property
    def text(self) -> str:
        return "".join(c.ch for c in self.chars)

    def __len__(self):
        return len(self.chars)


EMPTY_RESULT = OcrResult(())


def _resize_bool(mask: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Nearest-neighbor resample with half-pixel centers (same mapping as
    resize_nearest, so integer-upscaled bitmaps survive the round trip)."""
    h, w = mask.shape
    ys = np.minimum(((np.arange(out_h) + 0.5) * h / out_h).astype(np.int64), h - 1)
    xs = np.minimum(((np.arange(out_w) + 0.5) * w / out_w).astype(np.int64), w - 1)
    return mask[ys[:, None], xs[None, :]]


def _tight_crop(mask: np.ndarray) -> np.ndarray:
    ys, xs = np.nonzero(mask)
    return mask[ys.min():ys.max() + 1, xs.min():xs.max() + 1]


class GlyphAtlas:
    """Fixed-cell glyph bitmaps shared by the built-in matcher and the
    synthetic renderer.

    Matching happens in a normalized space: the component's ink is cropped to
    its bounding box and stretched onto the cell, and compared against each
    glyph's ink treated the same way.
    """

    def __init__(self, cell: tuple[int, int], glyph_bitmaps: dict[str, np.ndarray]):
        cw, ch = cell
        if cw < 2 or ch < 2:
            raise ValueError(f"cell too small: {cell}")
        self.cell = (cw, ch)
        self.glyphs: dict[str, np.ndarray] = {}
        for c, bm in glyph_bitmaps.items():
            bm = np.asarray(bm, dtype=bool)
            if bm.shape != (ch, cw):
                raise ValueError(f"glyph {c!r} bitmap is {bm.shape}, expected {(ch, cw)}")
            if not bm.any():
                raise ValueError(f"glyph {c!r} has no ink")
            self.glyphs[c] = bm
        self._chars = sorted(self.glyphs)  # codepoint order fixes ties
        self._templates = np.stack(
            [_resize_bool(_tight_crop(self.glyphs[c]), ch, cw) for c in self._chars])

    @property
    def charset(self) -> frozenset:
        return frozenset(self.glyphs)

    @classmethod
    def default(cls, cell: tuple[int, int] = (16, 24)) -> "GlyphAtlas":
        cw, ch = cell
        bitmaps = {c: _resize_bool(pat, ch, cw)
                   for c, pat in _glyphs.build_patterns().items()}
        return cls(cell, bitmaps)


_default_atlas: GlyphAtlas | None = None


def default_atlas() -> GlyphAtlas:
    global _default_atlas
    if _default_atlas is None:
        _default_atlas = GlyphAtlas.default()
    return _default_atlas


# ---------------------------------------------------------------------------
# built-in matcher
# ---------------------------------------------------------------------------

_MIN_COMPONENT_PX = 4
_SPACE_GAP_FACTOR = 0.5
_MERGE_OVERLAP = 0.6


def _component_boxes(labels: np.ndarray) -> list[dict]:
    n = int(labels.max())
    if n == 0:
        return []
    ys, xs = np.nonzero(labels)
    labs = labels[ys, xs]
    counts = np.bincount(labs, minlength=n + 1)
    x0 = np.full(n + 1, np.iinfo(np.int64).max)
    y0 = np.full(n + 1, np.iinfo(np.int64).max)
    x1 = np.full(n + 1, -1)
    y1 = np.full(n + 1, -1)
    np.minimum.at(x0, labs, xs)
    np.minimum.at(y0, labs, ys)
    np.maximum.at(x1, labs, xs)
    np.maximum.at(y1, labs, ys)
    comps = []
    for lab in range(1, n + 1):
        if counts[lab] < _MIN_COMPONENT_PX:
            continue
        box = (int(x0[lab]), int(y0[lab]), int(x1[lab]), int(y1[lab]))
        mask = labels[box[1]:box[3] + 1, box[0]:box[2] + 1] == lab
        comps.append({"box": box, "mask": mask})
    return comps


def _merge_stacked(comps: list[dict]) -> list[dict]:
    """Merge components whose boxes overlap horizontally by >= 60% of the
    narrower one (detached accents, colon dots)."""
    changed = True
    while changed:
        changed = False
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                bi, bj = comps[i]["box"], comps[j]["box"]
                overlap = min(bi[2], bj[2]) - max(bi[0], bj[0]) + 1
                narrower = min(bi[2] - bi[0], bj[2] - bj[0]) + 1
                if overlap <= 0 or overlap / narrower < _MERGE_OVERLAP:
                    continue
                x0, y0 = min(bi[0], bj[0]), min(bi[1], bj[1])
                x1, y1 = max(bi[2], bj[2]), max(bi[3], bj[3])
                mask = np.zeros((y1 - y0 + 1, x1 - x0 + 1), dtype=bool)
                for b, m in ((bi, comps[i]["mask"]), (bj, comps[j]["mask"])):
                    mask[b[1] - y0:b[3] - y0 + 1, b[0] - x0:b[2] - x0 + 1] |= m
                comps[i] = {"box": (x0, y0, x1, y1), "mask": mask}
                del comps[j]
                changed = True
                break
            if changed:
                break
    return comps


def builtin_match(img: BinaryImage, atlas: GlyphAtlas) -> OcrResult:
    """Deterministic glyph matching over connected components.

    Components are read left to right; a horizontal gap of at least half the
    median component width becomes a space (confidence 100).
    """
    labels = connected_components(img)
    comps = _merge_stacked(_component_boxes(labels))
    if not comps:
        return EMPTY_RESULT
    comps.sort(key=lambda c: (c["box"][0], c["box"][1]))
    widths = [c["box"][2] - c["box"][0] + 1 for c in comps]
    space_gap = _SPACE_GAP_FACTOR * float(np.median(widths))

    cw, ch = atlas.cell
    total = cw * ch
    chars: list[OcrChar] = []
    prev_end = None
    for comp in comps:
        x0, _, x1, _ = comp["box"]
        if prev_end is not None and (x0 - prev_end - 1) >= space_gap:
            chars.append(OcrChar(" ", 100.0))
        prev_end = x1
        normalized = _resize_bool(comp["mask"], ch, cw)
        scores = (atlas._templates == normalized).reshape(len(atlas._chars), -1).sum(axis=1)
        best = int(np.argmax(scores))  # argmax keeps the lowest codepoint on ties
        chars.append(OcrChar(atlas._chars[best], float(100.0 * scores[best] / total)))
    return OcrResult(tuple(chars))


class OcrEngine(Protocol):
    def recognize(self, img: BinaryImage) -> OcrResult: ...


@dataclass
class BuiltinOcrEngine:
    atlas: GlyphAtlas = field(default_factory=default_atlas)

    def recognize(self, img: BinaryImage) -> OcrResult:
        return builtin_match(img, self.atlas)


# ---------------------------------------------------------------------------
# external engine adapter
# ---------------------------------------------------------------------------

def parse_engine_tsv(raw: bytes) -> OcrResult:
    """Parse the external-engine contract: one `<char>\\t<conf>` row per
    character, confidence 0-100, rounded half-up."""
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ValueError(f"engine output is not UTF-8: {e}") from None
    chars = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 2 or len(fields[0]) != 1:
            raise ValueError(f"line {lineno}: expected '<char>\\t<conf>', got {line!r}")
        try:
            conf = float(fields[1])
        except ValueError:
            raise ValueError(f"line {lineno}: unparsable confidence {fields[1]!r}") from None
        if not math.isfinite(conf) or not 0.0 <= conf <= 100.0:
            raise ValueError(f"line {lineno}: confidence out of range: {fields[1]!r}")
        chars.append(OcrChar(fields[0], float(math.floor(conf + 0.5))))
    return OcrResult(tuple(chars))


class ExternalOcrEngine:
    """Runs one engine process per call: PNG path as argv[1], TSV on stdout."""

    def __init__(self, command: str, timeout: float = 10.0):
        self.command = command
        self.timeout = timeout

    def recognize(self, img: BinaryImage) -> OcrResult:
        from .pngio import save_gray  # local import to avoid a cycle

        fd, path = tempfile.mkstemp(suffix=".png")
        try:
            os.close(fd)
            save_gray(img, path)
            try:
                proc = subprocess.run(
                    [self.command, path], capture_output=True, timeout=self.timeout)
            except subprocess.TimeoutExpired:
                raise OcrEngineError(f"engine timed out after {self.timeout}s")
            except OSError as e:
                raise OcrEngineError(f"failed to run engine: {e}")
            if proc.returncode != 0:
                raise OcrEngineError(
                    f"engine exited with {proc.returncode}: {proc.stderr.decode(errors='replace')[:200]}")
            try:
                return parse_engine_tsv(proc.stdout)
            except ValueError as e:
                raise OcrEngineError(f"bad engine output: {e}")
        finally:
            os.unlink(path)
