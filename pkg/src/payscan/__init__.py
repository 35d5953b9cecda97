"""payscan: POS / PIN-pad payment-screen reader pipeline.

Detects the screen in a camera frame, guides positioning, extracts text
regions, recognizes the monetary value and operation with a pluggable OCR
engine, and ships an evaluation harness for accuracy and timing studies.
"""

from .extract import (ExtractConfig, OperationCandidate, RecognitionOutcome,
                      UNKNOWN, ValueCandidate)
from .imgproc import BinaryImage, Contour, GrayImage, Kernel, RectI, RotatedRect
from .ocr import BuiltinOcrEngine, ExternalOcrEngine, GlyphAtlas, OcrChar, \
    OcrEngineError, OcrResult
from .pipeline import PipelineConfig, recognize
from .roi import RoiConfig, TextRegion, detect_regions
from .screen import (FeedbackTracker, FrameFeedback, ScreenConfig,
                     ScreenDetection, assess_frame, detect_screen,
                     tracker_update)

__version__ = "0.1.0"

__all__ = [
    "BinaryImage", "BuiltinOcrEngine", "Contour", "ExternalOcrEngine",
    "ExtractConfig", "FeedbackTracker", "FrameFeedback", "GlyphAtlas",
    "GrayImage", "Kernel", "OcrChar", "OcrEngineError", "OcrResult",
    "OperationCandidate", "PipelineConfig", "RecognitionOutcome", "RectI",
    "RoiConfig", "RotatedRect", "ScreenConfig", "ScreenDetection",
    "TextRegion", "UNKNOWN", "ValueCandidate", "assess_frame",
    "detect_regions", "detect_screen", "recognize", "tracker_update",
]
