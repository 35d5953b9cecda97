#!/usr/bin/env python3
"""Calibrate the out-of-focus threshold.

Renders the reference text scene at the detector's working height, measures
the Laplacian-variance focus score under box blur radii 0..6, and proposes
the threshold as the geometric midpoint between radius 1 (acceptably sharp)
and radius 2 (blurred).  The resulting value ships as
payscan.screen.DEFAULT_FOCUS_MIN.
"""

import math

from payscan.imgproc import RectI, box_blur, laplacian_variance
from payscan.synth import SceneSpec, TextLine, render


def reference_frame():
    spec = SceneSpec(
        frame_w=853, frame_h=640, screen=RectI(150, 160, 560, 330),
        lines=(TextLine("VALOR: 123,45", 30, 60, scale=1),
               TextLine("CREDITO", 30, 180, scale=1)))
    frame, _ = render(spec)
    return frame


def main():
    frame = reference_frame()
    scores = []
    for radius in range(0, 7):
        score = laplacian_variance(box_blur(frame, radius))
        scores.append(score)
        print(f"box blur radius {radius}: focus score {score:.2f}")
    knee = math.sqrt(scores[1] * scores[2])
    print(f"\nknee between radius 1 ({scores[1]:.2f}) and radius 2 ({scores[2]:.2f})")
    print(f"proposed focus_min: {knee:.1f}")


if __name__ == "__main__":
    main()
