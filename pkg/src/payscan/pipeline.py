"""Full recognition flow over a confirmed frame: crop, denoise, straighten,
find text regions, binarize, OCR in two passes (plain and thickened), and
pick the best value/operation across everything."""

from __future__ import annotations

from dataclasses import dataclass, field

from .extract import (ExtractConfig, RegionDebug, extract_value,
                      match_operation, select_best, RecognitionOutcome)
from .imgproc import GrayImage, Kernel, crop, dilate, erode, invert, \
    median_filter, otsu_threshold, rotate_about_center
from .ocr import BuiltinOcrEngine, ExternalOcrEngine, OcrEngine, OcrEngineError
from .roi import RoiConfig, detect_regions
from .screen import ScreenConfig, ScreenDetection

MAX_ROTATION = 45.0


@dataclass
class PipelineConfig:
    rotation_gate: float = 4.0
    median_k: int = 3
    thicken_kernel: Kernel = Kernel("ellipse", 3, 3)
    # strokes are thickened by default; "erode" is the experimental
    # alternative for bold, bleeding displays
    thicken_mode: str = "dilate"
    passes: int = 2
    screen: ScreenConfig = field(default_factory=ScreenConfig)
    roi: RoiConfig = field(default_factory=RoiConfig)
    extract: ExtractConfig = field(default_factory=ExtractConfig)
    ocr: str = "builtin"  # "builtin" | "external:<path>"

    def __post_init__(self):
        if not 0.0 <= self.rotation_gate <= MAX_ROTATION:
            raise ValueError("rotation_gate must be within [0, 45]")
        if self.passes < 1:
            raise ValueError("passes must be >= 1")
        if self.thicken_mode not in ("dilate", "erode"):
            raise ValueError(f"unknown thicken_mode {self.thicken_mode!r}")

    def make_engine(self) -> OcrEngine:
        if self.ocr == "builtin":
            return BuiltinOcrEngine()
        if self.ocr.startswith("external:"):
            return ExternalOcrEngine(self.ocr.split(":", 1)[1])
        raise ValueError(f"unknown OCR engine {self.ocr!r}")


def recognize(frame: GrayImage, det: ScreenDetection,
              cfg: PipelineConfig | None = None) -> RecognitionOutcome:
    """Recognize value and operation on a frame with a confirmed screen.

    Regions are processed independently and deterministically; an OCR engine
    failure silently drops that region's pass.
    """
    cfg = cfg or PipelineConfig()
    engine = cfg.make_engine()
    work = median_filter(crop(frame, det.rect), cfg.median_k)
    if abs(det.angle) > cfg.rotation_gate:
        work = rotate_about_center(work, -det.angle)
    regions = detect_regions(work, cfg.roi)

    per_region = []
    debug = []
    for region in regions:
        img = region.image
        if float(img.px.mean()) > 128.0:  # dark-on-bright (PIN pad): flip
            img = invert(img)
        _, binary = otsu_threshold(img)
        morph = dilate if cfg.thicken_mode == "dilate" else erode
        for pass_index in range(cfg.passes):
            if pass_index > 0:
                binary = morph(binary, cfg.thicken_kernel)
            try:
                result = engine.recognize(binary)
            except OcrEngineError:
                debug.append(RegionDebug(region.rect, pass_index, "", None, 0.0))
                continue
            value = extract_value(result)
            operation = match_operation(result, cfg.extract)
            per_region.append((value, operation))
            debug.append(RegionDebug(
                region.rect, pass_index, result.text,
                None if value is None else value.conf, operation.conf))
    return select_best(per_region, cfg.extract,
                       regions_examined=len(regions), debug=tuple(debug))
