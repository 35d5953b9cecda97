"""Per-frame screen detection and the positioning-feedback state machine."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .imgproc import (GrayImage, RectI, RotatedRect, bounding_rect,
                      find_contours, laplacian_variance, min_area_rect,
                      otsu_threshold, resize_nearest)

# Calibrated on the reference synthetic scene with scripts/calibrate_focus.py:
# geometric midpoint of the focus scores at box-blur radii 1 (19.5) and 2 (5.4).
DEFAULT_FOCUS_MIN = 10.3


@dataclass(frozen=True)
class ScreenDetection:
    rect: RectI            # original-image coordinates
    rrect: RotatedRect     # original-image coordinates
    angle: float           # degrees, (-45, 45]
    focus: float           # Laplacian variance of the downscaled frame


class FrameFeedback(enum.Enum):
    NO_SCREEN = "NoScreen"
    OUT_OF_FOCUS = "OutOfFocus"
    TOO_FAR = "TooFar"
    TOO_CLOSE = "TooClose"
    OFF_CENTER = "OffCenter"
    VALID = "Valid"


@dataclass(frozen=True)
class ScreenConfig:
    work_height: int = 640
    focus_min: float = DEFAULT_FOCUS_MIN
    area_min_frac: float = 0.10
    area_max_frac: float = 0.80
    edge_margin_frac: float = 0.03

    def __post_init__(self):
        if not 0.0 < self.area_min_frac < self.area_max_frac <= 1.0:
            raise ValueError("need 0 < area_min_frac < area_max_frac <= 1")
        if not 0.0 <= self.edge_margin_frac < 0.5:
            raise ValueError("edge_margin_frac must be in [0, 0.5)")
        if self.work_height < 3:
            raise ValueError("work_height too small")


def detect_screen(frame: GrayImage, cfg: ScreenConfig) -> ScreenDetection | None:
    """Find the largest bright region and project it back to full scale.

    Returns None when the thresholded frame has no foreground at all.
    """
    small = resize_nearest(frame, cfg.work_height)
    focus = laplacian_variance(small)
    _, binary = otsu_threshold(small)
    contours = find_contours(binary)
    if not contours:
        return None
    best = max(contours, key=lambda c: c.area)  # first wins on ties
    rect_s = bounding_rect(best)
    rrect_s = min_area_rect(best)
    rx = frame.width / small.width
    ry = frame.height / small.height
    # floor origin / ceil extent so the projected contour stays enclosed
    x0 = math.floor(rect_s.x * rx)
    y0 = math.floor(rect_s.y * ry)
    x1 = math.ceil((rect_s.x + rect_s.w) * rx)
    y1 = math.ceil((rect_s.y + rect_s.h) * ry)
    rect = RectI(x0, y0, x1 - x0, y1 - y0).clamped(frame.width, frame.height)
    rrect = RotatedRect(rrect_s.cx * rx, rrect_s.cy * ry,
                        rrect_s.w * rx, rrect_s.h * ry, rrect_s.angle)
    return ScreenDetection(rect=rect, rrect=rrect, angle=rrect.angle, focus=focus)


def assess_frame(det: ScreenDetection | None, frame_dims: tuple[int, int],
                 cfg: ScreenConfig) -> FrameFeedback:
    """Positioning feedback with fixed precedence:
    NoScreen > OutOfFocus > TooFar > TooClose > OffCenter > Valid."""
    if det is None:
        return FrameFeedback.NO_SCREEN
    if det.focus < cfg.focus_min:
        return FrameFeedback.OUT_OF_FOCUS
    fw, fh = frame_dims
    frame_area = fw * fh
    if det.rect.area < cfg.area_min_frac * frame_area:
        return FrameFeedback.TOO_FAR
    if det.rect.area > cfg.area_max_frac * frame_area:
        return FrameFeedback.TOO_CLOSE
    mx = cfg.edge_margin_frac * fw
    my = cfg.edge_margin_frac * fh
    r = det.rect
    if (r.x < mx or r.y < my
            or fw - (r.x + r.w) < mx or fh - (r.y + r.h) < my):
        return FrameFeedback.OFF_CENTER
    return FrameFeedback.VALID


@dataclass(frozen=True)
class FeedbackTracker:
    consecutive_valid: int = 0
    required: int = 5


def tracker_update(t: FeedbackTracker, fb: FrameFeedback) -> tuple[FeedbackTracker, bool]:
    """Advance the consecutive-valid counter; fires (and resets) at 5."""
    if fb is not FrameFeedback.VALID:
        return FeedbackTracker(0, t.required), False
    count = t.consecutive_valid + 1
    if count >= t.required:
        return FeedbackTracker(0, t.required), True
    return FeedbackTracker(count, t.required), False
