"""Deterministic synthetic screen renderer.

Renders POS / PIN-pad style frames from the same glyph atlas the built-in
OCR matches against, so end-to-end tests get exact ground truth without a
photo dataset.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .imgproc import GrayImage, RectI, box_blur
from .ocr import GlyphAtlas, default_atlas

BACKGROUND_SHADE = 12
SHADES = {
    # (panel, ink)
    "bright_on_dark": (96, 232),   # POS: bright text on a dim panel
    "dark_on_bright": (200, 40),   # PIN pad: dark text on a backlit panel
}

CHAR_GAP_CELLS = 3  # horizontal advance padding between glyph cells


@dataclass(frozen=True)
class TextLine:
    text: str
    x: int          # panel coordinates of the block's top-left corner
    y: int
    scale: int = 2
    weight: str = "normal"  # "normal" | "thin"

    def __post_init__(self):
        if self.scale < 1:
            raise ValueError("scale must be >= 1")
        if self.weight not in ("normal", "thin"):
            raise ValueError(f"unknown stroke weight {self.weight!r}")


@dataclass(frozen=True)
class SceneSpec:
    frame_w: int
    frame_h: int
    screen: RectI
    angle: float = 0.0
    polarity: str = "bright_on_dark"
    lines: tuple[TextLine, ...] = ()
    salt_pepper: float = 0.0
    noise_sigma: float = 0.0
    blur_radius: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.polarity not in SHADES:
            raise ValueError(f"unknown polarity {self.polarity!r}")
        if not 0.0 <= self.salt_pepper < 1.0:
            raise ValueError("salt_pepper must be in [0, 1)")

    def to_json(self) -> str:
        d = {k: getattr(self, k) for k in
             ("frame_w", "frame_h", "angle", "polarity", "salt_pepper",
              "noise_sigma", "blur_radius", "seed")}
        d["screen"] = {"x": self.screen.x, "y": self.screen.y,
                       "w": self.screen.w, "h": self.screen.h}
        d["lines"] = [{"text": ln.text, "x": ln.x, "y": ln.y,
                       "scale": ln.scale, "weight": ln.weight}
                      for ln in self.lines]
        return json.dumps(d, ensure_ascii=False)

    @classmethod
    def from_json(cls, s: str) -> "SceneSpec":
        d = json.loads(s)
        d["screen"] = RectI(**d["screen"])
        d["lines"] = tuple(TextLine(**ln) for ln in d["lines"])
        return cls(**d)


@dataclass(frozen=True)
class LineTruth:
    text: str
    rect: RectI | None  # frame coordinates after screen rotation


def _dot_grid(shape: tuple[int, int]) -> np.ndarray:
    """Scanline mask for the thin stroke weight: 4-px ink bands with 2-px
    breaks, like a cheap backlit LCD raster.

    The breaks slice glyphs into stacked slivers (the unconnected-stroke
    failure mode of PIN-pad displays).  They are wide enough to survive the
    pipeline's median filter, and axis-aligned so one 3x3 cross dilation
    fuses the glyph back together.
    """
    yy = np.indices(shape)[0]
    return yy % 6 < 4


def _stamp_line(mask: np.ndarray, line: TextLine, atlas: GlyphAtlas) -> None:
    cw, ch = atlas.cell
    s = line.scale
    advance = (cw + CHAR_GAP_CELLS) * s
    x = line.x
    for chr_ in line.text:
        if chr_ != " ":
            bm = atlas.glyphs[chr_]
            big = np.repeat(np.repeat(bm, s, axis=0), s, axis=1)
            if line.weight == "thin":
                big = big & _dot_grid(big.shape)
            y0, x0 = line.y, x
            y1, x1 = y0 + big.shape[0], x0 + big.shape[1]
            cy0, cx0 = max(y0, 0), max(x0, 0)
            cy1, cx1 = min(y1, mask.shape[0]), min(x1, mask.shape[1])
            if cy0 < cy1 and cx0 < cx1:
                mask[cy0:cy1, cx0:cx1] |= big[cy0 - y0:cy1 - y0, cx0 - x0:cx1 - x0]
        x += advance


def render(spec: SceneSpec, atlas: GlyphAtlas | None = None) -> tuple[GrayImage, list[LineTruth]]:
    """Render the scene and return the frame plus per-line ground truth."""
    atlas = atlas or default_atlas()
    for ln in spec.lines:
        missing = set(ln.text) - atlas.charset - {" "}
        if missing:
            raise ValueError(f"characters not in atlas: {sorted(missing)}")

    panel_shade, ink_shade = SHADES[spec.polarity]
    scr = spec.screen
    panel = np.full((scr.h, scr.w), panel_shade, dtype=np.uint8)
    line_masks = []
    for ln in spec.lines:
        m = np.zeros(panel.shape, dtype=bool)
        _stamp_line(m, ln, atlas)
        panel[m] = ink_shade
        line_masks.append(m)

    frame = np.full((spec.frame_h, spec.frame_w), BACKGROUND_SHADE, dtype=np.uint8)
    theta = math.radians(spec.angle)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    cpx, cpy = (scr.w - 1) / 2.0, (scr.h - 1) / 2.0
    cfx, cfy = scr.x + cpx, scr.y + cpy

    # frame-space bounding box of the rotated panel
    corners = []
    for qx, qy in ((0, 0), (scr.w - 1, 0), (0, scr.h - 1), (scr.w - 1, scr.h - 1)):
        px = cos_t * (qx - cpx) - sin_t * (qy - cpy) + cfx
        py = sin_t * (qx - cpx) + cos_t * (qy - cpy) + cfy
        corners.append((px, py))
    bx0 = max(0, int(math.floor(min(c[0] for c in corners))) - 1)
    by0 = max(0, int(math.floor(min(c[1] for c in corners))) - 1)
    bx1 = min(spec.frame_w - 1, int(math.ceil(max(c[0] for c in corners))) + 1)
    by1 = min(spec.frame_h - 1, int(math.ceil(max(c[1] for c in corners))) + 1)

    truths: list[LineTruth] = []
    if bx1 >= bx0 and by1 >= by0:
        pxs = np.arange(bx0, bx1 + 1, dtype=np.float64)
        pys = np.arange(by0, by1 + 1, dtype=np.float64)[:, None]
        qx = cos_t * (pxs - cfx) + sin_t * (pys - cfy) + cpx
        qy = -sin_t * (pxs - cfx) + cos_t * (pys - cfy) + cpy
        qxi = np.floor(qx + 0.5).astype(np.int64)
        qyi = np.floor(qy + 0.5).astype(np.int64)
        inside = (qxi >= 0) & (qxi < scr.w) & (qyi >= 0) & (qyi < scr.h)
        qxc = np.clip(qxi, 0, scr.w - 1)
        qyc = np.clip(qyi, 0, scr.h - 1)
        region = frame[by0:by1 + 1, bx0:bx1 + 1]
        region[inside] = panel[qyc, qxc][inside]
        for ln, m in zip(spec.lines, line_masks):
            hit = m[qyc, qxc] & inside
            ys, xs = np.nonzero(hit)
            if len(xs) == 0:
                truths.append(LineTruth(ln.text, None))
            else:
                truths.append(LineTruth(ln.text, RectI(
                    bx0 + int(xs.min()), by0 + int(ys.min()),
                    int(xs.max() - xs.min()) + 1, int(ys.max() - ys.min()) + 1)))
    else:
        truths = [LineTruth(ln.text, None) for ln in spec.lines]

    img = GrayImage(frame)
    if spec.blur_radius > 0:
        img = box_blur(img, spec.blur_radius)
    rng = np.random.default_rng(spec.seed)
    if spec.noise_sigma > 0:
        noisy = img.px.astype(np.float64) + rng.normal(0.0, spec.noise_sigma, img.px.shape)
        img = GrayImage(np.clip(np.rint(noisy), 0, 255).astype(np.uint8))
    if spec.salt_pepper > 0:
        hits = rng.random(img.px.shape) < spec.salt_pepper
        values = rng.integers(0, 2, img.px.shape).astype(np.uint8) * 255
        px = img.px.copy()
        px[hits] = values[hits]
        img = GrayImage(px)
    return img, truths
