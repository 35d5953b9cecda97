"""PNG load/save for 8-bit grayscale and RGB rasters."""

from __future__ import annotations

import io

import numpy as np
from PIL import Image

from .imgproc import GrayImage, to_grayscale


def load_gray(path) -> GrayImage:
    """Load a PNG as grayscale; RGB inputs go through BT.601 conversion."""
    with Image.open(path) as im:
        if im.mode == "L":
            return GrayImage(np.asarray(im, dtype=np.uint8))
        rgb = np.asarray(im.convert("RGB"), dtype=np.uint8)
    return to_grayscale(rgb)


def save_gray(img: GrayImage, path) -> None:
    Image.fromarray(img.px, mode="L").save(path, format="PNG")


def encode_png(img: GrayImage) -> bytes:
    buf = io.BytesIO()
    Image.fromarray(img.px, mode="L").save(buf, format="PNG")
    return buf.getvalue()


def decode_png(data: bytes) -> GrayImage:
    with Image.open(io.BytesIO(data)) as im:
        if im.mode == "L":
            return GrayImage(np.asarray(im, dtype=np.uint8))
        rgb = np.asarray(im.convert("RGB"), dtype=np.uint8)
    return to_grayscale(rgb)
