"""Text-region candidates inside a detected, rotation-corrected screen."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .imgproc import (GrayImage, Kernel, RectI, bounding_rect, crop,
                      find_contours, gray_dilate, otsu_threshold,
                      resize_nearest, white_top_hat)


@dataclass(frozen=True)
class RoiConfig:
    # top-hat kernel: nearly square, sized from the half-scale screen height
    tophat_kernel_frac: float = 0.09
    tophat_aspect: float = 1.1
    # dilation kernel: wide and short, to bridge glyphs into line blobs
    dilate_w_frac: float = 0.08    # of the half-scale screen width
    dilate_h_frac: float = 0.012   # of the full-scale screen height
    pad: int = 10                  # full-scale padding on every side
    area_min_frac: float = 0.001
    area_max_frac: float = 0.25

    def __post_init__(self):
        if not 0.0 < self.area_min_frac < self.area_max_frac <= 1.0:
            raise ValueError("need 0 < area_min_frac < area_max_frac <= 1")
        if self.pad < 0:
            raise ValueError("pad must be >= 0")


@dataclass(frozen=True)
class TextRegion:
    rect: RectI        # full-scale screen coordinates, padding included
    image: GrayImage   # crop of the screen

    @property
    def order_key(self) -> tuple[int, int]:
        return (self.rect.y, self.rect.x)


def _odd_at_least(value: float, floor_: int) -> int:
    n = max(floor_, int(math.floor(value + 0.5)))
    return n if n % 2 == 1 else n + 1


def detect_regions(screen: GrayImage, cfg: RoiConfig) -> list[TextRegion]:
    """Locate horizontal text-line candidates.

    Half-scale top-hat isolates small bright structure, a wide dilation fuses
    glyphs into line blobs, and Otsu + contours turn the blobs into rects,
    which are projected back to full scale, padded and filtered.
    """
    half = resize_nearest(screen, max(1, screen.height // 2))
    kh = _odd_at_least(cfg.tophat_kernel_frac * half.height, 9)
    kw = _odd_at_least(kh * cfg.tophat_aspect, 9)
    tophat = white_top_hat(half, Kernel("rect", kw, kh))
    dw = _odd_at_least(cfg.dilate_w_frac * half.width, 9)
    dh = _odd_at_least(cfg.dilate_h_frac * screen.height, 3)
    fused = gray_dilate(tophat, Kernel("rect", dw, dh))
    _, binary = otsu_threshold(fused)

    sx = screen.width / half.width
    sy = screen.height / half.height
    screen_area = screen.width * screen.height
    regions = []
    for contour in find_contours(binary):
        r = bounding_rect(contour)
        x0 = math.floor(r.x * sx) - cfg.pad
        y0 = math.floor(r.y * sy) - cfg.pad
        x1 = math.ceil((r.x + r.w) * sx) + cfg.pad
        y1 = math.ceil((r.y + r.h) * sy) + cfg.pad
        rect = RectI(x0, y0, max(1, x1 - x0), max(1, y1 - y0)).clamped(
            screen.width, screen.height)
        if rect.w <= rect.h:
            continue
        if not (cfg.area_min_frac * screen_area <= rect.area
                <= cfg.area_max_frac * screen_area):
            continue
        regions.append(TextRegion(rect=rect, image=crop(screen, rect)))
    regions.sort(key=lambda reg: reg.order_key)
    return regions
