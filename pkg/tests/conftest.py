import numpy as np
import pytest

from payscan.imgproc import GrayImage, RectI
from payscan.synth import SceneSpec, TextLine, render


def pos_scene(angle=0.0, value_text="123,45", operation="CREDITO",
              noise_sigma=0.0, blur_radius=0, seed=0,
              frame=(1920, 2560), screen=RectI(350, 700, 1200, 900),
              scale=4, weight="normal", polarity="bright_on_dark"):
    """Standard POS-style scene; text lines placed proportionally so the
    layout works for any screen size."""
    x = int(screen.w * 0.07)
    return SceneSpec(
        frame_w=frame[0], frame_h=frame[1], screen=screen, angle=angle,
        polarity=polarity,
        lines=(TextLine("VALOR: " + value_text, x, int(screen.h * 0.28),
                        scale=scale, weight=weight),
               TextLine(operation, x, int(screen.h * 0.56),
                        scale=scale, weight=weight)),
        noise_sigma=noise_sigma, blur_radius=blur_radius, seed=seed)


@pytest.fixture(scope="session")
def straight_frame():
    frame, truths = render(pos_scene())
    return frame, truths


@pytest.fixture(scope="session")
def text_image():
    """Small sharp text image for focus/rotation experiments."""
    spec = SceneSpec(
        frame_w=853, frame_h=640, screen=RectI(150, 160, 560, 330),
        lines=(TextLine("VALOR: 123,45", 30, 60, scale=1),
               TextLine("CREDITO", 30, 180, scale=1)))
    frame, _ = render(spec)
    return frame


def random_binary(rng, w=32, h=32, p=0.5):
    from payscan.imgproc import BinaryImage
    return BinaryImage.from_mask(rng.random((h, w)) < p)


def as_gray(arr) -> GrayImage:
    return GrayImage(np.asarray(arr, dtype=np.uint8))
