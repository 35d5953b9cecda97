"""Image primitives: grayscale rasters, filtering, thresholding, morphology,
contour extraction and rotated-rectangle geometry.

Everything operates on 8-bit single-channel images held in numpy arrays.
All functions are pure; images are never mutated in place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


# ---------------------------------------------------------------------------
# image types
# ---------------------------------------------------------------------------

class GrayImage:
    """8-bit single-channel raster, row-major, shape (height, width)."""

    __slots__ = ("px",)

    def __init__(self, px: np.ndarray):
        px = np.asarray(px)
        if px.ndim != 2:
            raise ValueError(f"expected 2-d array, got shape {px.shape}")
        if px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError(f"zero-dimension image: {px.shape}")
        if px.dtype != np.uint8:
            if np.issubdtype(px.dtype, np.integer) and px.min() >= 0 and px.max() <= 255:
                px = px.astype(np.uint8)
            else:
                raise ValueError(f"expected uint8 pixels, got {px.dtype}")
        self.px = px

    @property
    def width(self) -> int:
        return self.px.shape[1]

    @property
    def height(self) -> int:
        return self.px.shape[0]

    def at(self, x: int, y: int) -> int:
        """Bounds-checked pixel access (negative indices are rejected)."""
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(f"pixel ({x},{y}) outside {self.width}x{self.height}")
        return int(self.px[y, x])

    def copy(self) -> "GrayImage":
        return type(self)(self.px.copy())

    def __repr__(self):
        return f"{type(self).__name__}({self.width}x{self.height})"


class BinaryImage(GrayImage):
    """GrayImage restricted to values {0, 255}; 255 is foreground."""

    def __init__(self, px: np.ndarray):
        super().__init__(px)
        bad = (self.px != 0) & (self.px != 255)
        if bad.any():
            raise ValueError("binary image contains values other than 0/255")

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "BinaryImage":
        return cls(np.where(mask, 255, 0).astype(np.uint8))

    def mask(self) -> np.ndarray:
        return self.px == 255


@dataclass(frozen=True)
class Kernel:
    """Structuring element with centered anchor; width/height must be odd."""

    shape: str  # "rect" | "ellipse"
    width: int
    height: int

    def __post_init__(self):
        if self.shape not in ("rect", "ellipse"):
            raise ValueError(f"unknown kernel shape {self.shape!r}")
        if self.width < 1 or self.height < 1 or self.width % 2 == 0 or self.height % 2 == 0:
            raise ValueError(f"kernel dims must be odd and >=1, got {self.width}x{self.height}")

    def row_halfwidths(self) -> list[int]:
        """Horizontal half-extent of the element for each dy in [-ry, ry]."""
        rx, ry = self.width // 2, self.height // 2
        if self.shape == "rect":
            return [rx] * (2 * ry + 1)
        out = []
        for dy in range(-ry, ry + 1):
            t = 1.0 - (dy / ry) ** 2 if ry > 0 else 1.0
            out.append(int(math.floor(rx * math.sqrt(max(t, 0.0)) + 1e-9)))
        return out

    def mask_array(self) -> np.ndarray:
        rx, ry = self.width // 2, self.height // 2
        m = np.zeros((self.height, self.width), dtype=bool)
        for i, hw in enumerate(self.row_halfwidths()):
            m[i, rx - hw:rx + hw + 1] = True
        return m


@dataclass(frozen=True)
class RectI:
    """Axis-aligned integer rectangle; (x, y) is the top-left pixel."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.w <= 0 or self.h <= 0:
            raise ValueError(f"rect must have positive extent, got {self.w}x{self.h}")

    @property
    def area(self) -> int:
        return self.w * self.h

    def clamped(self, width: int, height: int) -> "RectI":
        x0 = min(max(self.x, 0), width - 1)
        y0 = min(max(self.y, 0), height - 1)
        x1 = min(max(self.x + self.w, x0 + 1), width)
        y1 = min(max(self.y + self.h, y0 + 1), height)
        return RectI(x0, y0, x1 - x0, y1 - y0)

    def padded(self, pad: int) -> "RectI":
        return RectI(self.x - pad, self.y - pad, self.w + 2 * pad, self.h + 2 * pad)


@dataclass(frozen=True)
class RotatedRect:
    """Sub-pixel rotated rectangle; angle in degrees, normalized to (-45, 45]."""

    cx: float
    cy: float
    w: float
    h: float
    angle: float

    @staticmethod
    def normalized(cx: float, cy: float, w: float, h: float, angle: float) -> "RotatedRect":
        while angle > 45.0:
            angle -= 90.0
            w, h = h, w
        while angle <= -45.0:
            angle += 90.0
            w, h = h, w
        return RotatedRect(cx, cy, w, h, angle)


class Contour:
    """Ordered outer boundary of one 8-connected foreground component."""

    __slots__ = ("points", "area")

    def __init__(self, points: np.ndarray):
        points = np.asarray(points, dtype=np.int64)
        if points.ndim != 2 or points.shape[1] != 2 or len(points) == 0:
            raise ValueError("contour needs an (N,2) point array, N >= 1")
        self.points = points
        self.area = max(_shoelace(points), float(len(np.unique(points, axis=0))))

    def __len__(self):
        return len(self.points)


def _shoelace(points: np.ndarray) -> float:
    x = points[:, 0].astype(np.float64)
    y = points[:, 1].astype(np.float64)
    return abs(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)) / 2.0


# ---------------------------------------------------------------------------
# conversion, resize, linear filters
# ---------------------------------------------------------------------------

def to_grayscale(rgb: np.ndarray) -> GrayImage:
    """BT.601 luma conversion of an (H, W, 3) 8-bit RGB raster."""
    rgb = np.asarray(rgb)
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise ValueError(f"expected (H, W, 3) array, got {rgb.shape}")
    if rgb.shape[0] < 1 or rgb.shape[1] < 1:
        raise ValueError("zero-dimension input")
    f = rgb.astype(np.float64)
    luma = 0.299 * f[:, :, 0] + 0.587 * f[:, :, 1] + 0.114 * f[:, :, 2]
    return GrayImage(np.clip(np.floor(luma + 0.5), 0, 255).astype(np.uint8))


def resize_nearest(img: GrayImage, target_h: int) -> GrayImage:
    """Nearest-neighbor resize to a target height, preserving aspect ratio."""
    if target_h < 1:
        raise ValueError(f"target height must be >= 1, got {target_h}")
    h, w = img.height, img.width
    out_w = max(1, int(math.floor(w * target_h / h + 0.5)))
    # half-pixel centers, floor to the nearest source index
    ys = np.minimum((np.arange(target_h) + 0.5) * h / target_h, h - 1).astype(np.int64)
    xs = np.minimum((np.arange(out_w) + 0.5) * w / out_w, w - 1).astype(np.int64)
    return GrayImage(img.px[ys[:, None], xs[None, :]])


def median_filter(img: GrayImage, k: int) -> GrayImage:
    """Median over a k x k window (k odd); borders are edge-replicated."""
    if k < 1 or k % 2 == 0:
        raise ValueError(f"window size must be odd and >= 1, got {k}")
    if k == 1:
        return img.copy()
    r = k // 2
    ap = np.pad(img.px, r, mode="edge")
    out = np.empty_like(img.px)
    # chunk rows so the window view never materializes more than ~32 MB
    chunk = max(1, (32 << 20) // max(1, img.width * k * k))
    for y0 in range(0, img.height, chunk):
        y1 = min(y0 + chunk, img.height)
        win = sliding_window_view(ap[y0:y1 + 2 * r], (k, k))
        out[y0:y1] = np.median(win, axis=(2, 3)).astype(np.uint8)
    return GrayImage(out)


def box_blur(img: GrayImage, radius: int) -> GrayImage:
    """Mean filter over a (2r+1)^2 window via summed-area table, edge-replicated."""
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    if radius == 0:
        return img.copy()
    k = 2 * radius + 1
    ap = np.pad(img.px, radius, mode="edge").astype(np.float64)
    sat = np.cumsum(np.cumsum(ap, axis=0), axis=1)
    sat = np.pad(sat, ((1, 0), (1, 0)))
    h, w = img.height, img.width
    total = (sat[k:k + h, k:k + w] - sat[0:h, k:k + w]
             - sat[k:k + h, 0:w] + sat[0:h, 0:w])
    return GrayImage(np.clip(np.floor(total / (k * k) + 0.5), 0, 255).astype(np.uint8))


def laplacian_variance(img: GrayImage) -> float:
    """Focus score: population variance of the 4-neighbor Laplacian response."""
    if img.height < 3 or img.width < 3:
        raise ValueError(f"image must be at least 3x3, got {img.width}x{img.height}")
    p = np.pad(img.px, 1, mode="edge").astype(np.int32)
    resp = (p[:-2, 1:-1] + p[2:, 1:-1] + p[1:-1, :-2] + p[1:-1, 2:]
            - 4 * p[1:-1, 1:-1])
    return float(np.var(resp.astype(np.float64)))


# ---------------------------------------------------------------------------
# Otsu threshold
# ---------------------------------------------------------------------------

def otsu_threshold(img: GrayImage) -> tuple[int, BinaryImage]:
    """Global threshold maximizing inter-class variance (smallest tie wins).

    Pixels strictly above the threshold become foreground (255).  A constant
    image is a degenerate single-class case: its intensity is returned as the
    threshold and the output is all background.
    """
    hist = np.bincount(img.px.ravel(), minlength=256).astype(np.float64)
    nonzero = np.flatnonzero(hist)
    if len(nonzero) == 1:
        t = int(nonzero[0])
        return t, BinaryImage.from_mask(img.px > t)
    n = hist.sum()
    p = hist / n
    omega = np.cumsum(p)
    mu = np.cumsum(p * np.arange(256))
    mu_t = mu[-1]
    denom = omega * (1.0 - omega)
    with np.errstate(divide="ignore", invalid="ignore"):
        sigma_b = np.where(denom > 0, (mu_t * omega - mu) ** 2 / denom, 0.0)
    t = int(np.argmax(sigma_b))
    return t, BinaryImage.from_mask(img.px > t)


# ---------------------------------------------------------------------------
# morphology
# ---------------------------------------------------------------------------

def _window_extreme_1d(a: np.ndarray, k: int, ufunc, pad_value: int, axis: int) -> np.ndarray:
    """Running min/max over a centered window of size k along one axis.

    Sparse-table doubling: O(n log k), fully vectorized.
    """
    if k == 1:
        return a
    moved = np.moveaxis(a, axis, -1)
    r = k // 2
    ap = np.pad(moved, [(0, 0)] * (moved.ndim - 1) + [(r, r)],
                constant_values=pad_value)
    f = ap
    m = 1
    while m * 2 <= k:
        f = ufunc(f[..., :f.shape[-1] - m], f[..., m:])
        m *= 2
    width = moved.shape[-1]
    out = ufunc(f[..., :width], f[..., k - m:k - m + width])
    return np.moveaxis(out, -1, axis)


def _extreme_filter(px: np.ndarray, kernel: Kernel, ufunc, pad_value: int) -> np.ndarray:
    if kernel.shape == "rect":
        out = _window_extreme_1d(px, kernel.width, ufunc, pad_value, axis=1)
        return _window_extreme_1d(out, kernel.height, ufunc, pad_value, axis=0)
    # ellipse: combine per-row horizontal extremes shifted vertically
    ry = kernel.height // 2
    halfwidths = kernel.row_halfwidths()
    h = px.shape[0]
    out = None
    for dy in range(-ry, ry + 1):
        hw = halfwidths[dy + ry]
        row_ext = _window_extreme_1d(px, 2 * hw + 1, ufunc, pad_value, axis=1)
        shifted = np.full_like(px, pad_value)
        src0, src1 = max(dy, 0), min(h + dy, h)
        if src0 < src1:
            shifted[src0 - dy:src1 - dy] = row_ext[src0:src1]
        out = shifted if out is None else ufunc(out, shifted)
    return out


def erode(img: BinaryImage, kernel: Kernel) -> BinaryImage:
    """Set-theoretic erosion of the 255-foreground.

    Out-of-image samples are neutral for the min, so erosion and dilation stay
    exact duals and opening stays idempotent right up to the border.
    """
    return BinaryImage(_extreme_filter(img.px, kernel, np.minimum, 255))


def dilate(img: BinaryImage, kernel: Kernel) -> BinaryImage:
    """Set-theoretic dilation of the 255-foreground (background outside)."""
    return BinaryImage(_extreme_filter(img.px, kernel, np.maximum, 0))


def gray_erode(img: GrayImage, kernel: Kernel) -> GrayImage:
    """Grayscale erosion (running minimum under the structuring element)."""
    return GrayImage(_extreme_filter(img.px, kernel, np.minimum, 255))


def gray_dilate(img: GrayImage, kernel: Kernel) -> GrayImage:
    """Grayscale dilation (running maximum under the structuring element)."""
    return GrayImage(_extreme_filter(img.px, kernel, np.maximum, 0))


def _gray_opening(px: np.ndarray, kernel: Kernel) -> np.ndarray:
    eroded = _extreme_filter(px, kernel, np.minimum, 255)
    return _extreme_filter(eroded, kernel, np.maximum, 0)


def white_top_hat(img: GrayImage, kernel: Kernel) -> GrayImage:
    """Image minus its grayscale opening; keeps bright structures smaller
    than the structuring element."""
    opened = _gray_opening(img.px, kernel)
    diff = img.px.astype(np.int16) - opened.astype(np.int16)
    return GrayImage(np.maximum(diff, 0).astype(np.uint8))


def invert(img: GrayImage) -> GrayImage:
    out = (255 - img.px.astype(np.int16)).astype(np.uint8)
    return BinaryImage(out) if isinstance(img, BinaryImage) else GrayImage(out)


def crop(img: GrayImage, rect: RectI) -> GrayImage:
    r = rect.clamped(img.width, img.height)
    return GrayImage(img.px[r.y:r.y + r.h, r.x:r.x + r.w].copy())


# ---------------------------------------------------------------------------
# rotation (bicubic, Keys a = -0.5)
# ---------------------------------------------------------------------------

_CUBIC_A = -0.5


def _cubic_weights(t: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    a = _CUBIC_A
    # tap offsets -1, 0, +1, +2 relative to floor(coord); t is the fraction
    d0 = 1.0 + t
    w0 = a * d0 ** 3 - 5 * a * d0 ** 2 + 8 * a * d0 - 4 * a
    w1 = (a + 2) * t ** 3 - (a + 3) * t ** 2 + 1.0
    d2 = 1.0 - t
    w2 = (a + 2) * d2 ** 3 - (a + 3) * d2 ** 2 + 1.0
    d3 = 2.0 - t
    w3 = a * d3 ** 3 - 5 * a * d3 ** 2 + 8 * a * d3 - 4 * a
    return w0, w1, w2, w3


def _rotate_bicubic(px: np.ndarray, angle_deg: float,
                    out_shape: tuple[int, int]) -> np.ndarray:
    """Inverse-mapped bicubic rotation about the image center; zero fill."""
    h, w = px.shape
    out_h, out_w = out_shape
    theta = math.radians(angle_deg)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    cx_src, cy_src = (w - 1) / 2.0, (h - 1) / 2.0
    cx_dst, cy_dst = (out_w - 1) / 2.0, (out_h - 1) / 2.0

    padded = np.zeros((h + 4, w + 4), dtype=np.float64)
    padded[2:-2, 2:-2] = px

    out = np.empty(out_shape, dtype=np.uint8)
    xs = np.arange(out_w, dtype=np.float64) - cx_dst
    chunk = max(1, (8 << 20) // max(1, out_w))
    for y0 in range(0, out_h, chunk):
        y1 = min(y0 + chunk, out_h)
        ys = (np.arange(y0, y1, dtype=np.float64) - cy_dst)[:, None]
        # inverse rotation: destination -> source
        sx = cos_t * xs[None, :] + sin_t * ys + cx_src
        sy = -sin_t * xs[None, :] + cos_t * ys + cy_src
        bx = np.floor(sx)
        by = np.floor(sy)
        tx = sx - bx
        ty = sy - by
        wx = _cubic_weights(tx)
        wy = _cubic_weights(ty)
        ix = np.clip(bx.astype(np.int64) + 1, 0, w + 3)  # +2 pad, -1 first tap
        iy = np.clip(by.astype(np.int64) + 1, 0, h + 3)
        acc = np.zeros(sx.shape, dtype=np.float64)
        for j in range(4):
            row_idx = np.clip(iy + j, 0, h + 3)
            row_acc = np.zeros(sx.shape, dtype=np.float64)
            for i in range(4):
                col_idx = np.clip(ix + i, 0, w + 3)
                row_acc += wx[i] * padded[row_idx, col_idx]
            acc += wy[j] * row_acc
        out[y0:y1] = np.clip(np.floor(acc + 0.5), 0, 255).astype(np.uint8)
    return out


def rotate_about_center(img: GrayImage, angle: float) -> GrayImage:
    """Rotate image content by `angle` degrees (clockwise for y-down rasters)
    about the center, keeping dimensions; bicubic interpolation, zero fill."""
    if abs(angle) > 45.0:
        raise ValueError(f"rotation limited to +/-45 degrees, got {angle}")
    if angle == 0.0:
        return img.copy()
    return GrayImage(_rotate_bicubic(img.px, angle, (img.height, img.width)))


# ---------------------------------------------------------------------------
# contours
# ---------------------------------------------------------------------------

def _label_components(mask: np.ndarray) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """8-connected labeling via row runs + union-find.

    Returns the int32 label image (0 = background) and, per label, the
    topmost-leftmost pixel as (y, x).
    """
    h, w = mask.shape
    labels = np.zeros((h, w), dtype=np.int32)
    parent: list[int] = [0]  # parent[i] for union-find; index 0 unused

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    prev_runs: list[tuple[int, int, int]] = []  # (start, end_exclusive, label)
    all_runs: list[tuple[int, int, int, int]] = []  # (y, start, end, label)
    for y in range(h):
        row = mask[y]
        if not row.any():
            prev_runs = []
            continue
        bounds = np.flatnonzero(np.diff(np.concatenate(([False], row, [False]))))
        runs = []
        pi = 0
        for s, e in zip(bounds[0::2], bounds[1::2]):
            s, e = int(s), int(e)
            label = 0
            # 8-connectivity: a prev-row run [ps, pe) touches [s, e) when
            # ps <= e and pe >= s (one-pixel diagonal slack on both sides)
            while pi < len(prev_runs) and prev_runs[pi][0] <= e:
                ps, pe, pl = prev_runs[pi]
                if pe >= s:
                    root = find(pl)
                    if label == 0:
                        label = root
                    elif root != label:
                        parent[max(root, label)] = min(root, label)
                        label = min(root, label)
                if pe <= e:
                    pi += 1  # cannot touch any later run in this row
                else:
                    break
            if label == 0:
                parent.append(len(parent))
                label = len(parent) - 1
            runs.append((s, e, label))
            all_runs.append((y, s, e, label))
        prev_runs = runs
    # resolve roots and compact label ids in scan order
    remap: dict[int, int] = {}
    starts: list[tuple[int, int]] = []
    for y, s, e, label in all_runs:
        root = find(label)
        if root not in remap:
            remap[root] = len(remap) + 1
            starts.append((y, s))
        labels[y, s:e] = remap[root]
    return labels, starts


# clockwise neighbor order starting at west, for a y-down raster
_TRACE_DIRS = ((-1, 0), (-1, -1), (0, -1), (1, -1),
               (1, 0), (1, 1), (0, 1), (-1, 1))


_DIR_INDEX = {d: i for i, d in enumerate(_TRACE_DIRS)}


def _trace_boundary(labels: np.ndarray, label: int, start: tuple[int, int]) -> np.ndarray:
    """Moore-neighbor boundary trace with Jacob's stopping criterion.

    The backtrack is the background neighbor examined just before the current
    boundary pixel was found; the next scan resumes clockwise from it.
    """
    h, w = labels.shape
    sy, sx = start

    def is_fg(x: int, y: int) -> bool:
        return 0 <= x < w and 0 <= y < h and labels[y, x] == label

    cur = (sx, sy)
    back = (sx - 1, sy)  # west of the start pixel is background by construction
    initial = (cur, back)
    points = [cur]
    max_steps = 4 * int((labels == label).sum()) + 8
    for _ in range(max_steps):
        start_idx = _DIR_INDEX[(back[0] - cur[0], back[1] - cur[1])]
        found = None
        for step in range(1, 9):
            d = (start_idx + step) % 8
            nx, ny = cur[0] + _TRACE_DIRS[d][0], cur[1] + _TRACE_DIRS[d][1]
            if is_fg(nx, ny):
                prev_d = (start_idx + step - 1) % 8
                found = ((nx, ny),
                         (cur[0] + _TRACE_DIRS[prev_d][0], cur[1] + _TRACE_DIRS[prev_d][1]))
                break
        if found is None:
            break  # isolated single pixel
        cur, back = found
        if (cur, back) == initial:
            break
        points.append(cur)
    return np.array(points, dtype=np.int64)


def find_contours(img: BinaryImage) -> list[Contour]:
    """Outer boundary of every 8-connected foreground component, in scan order."""
    mask = img.mask()
    if not mask.any():
        return []
    labels, starts = _label_components(mask)
    contours = []
    for label, (y, x) in enumerate(starts, start=1):
        pts = _trace_boundary(labels, label, (y, x))
        contours.append(Contour(pts))
    return contours


def connected_components(img: BinaryImage) -> np.ndarray:
    """Label image of the 8-connected foreground components (0 = background)."""
    return _label_components(img.mask())[0]


def bounding_rect(c: Contour) -> RectI:
    """Tightest axis-aligned rectangle containing every contour point."""
    xs, ys = c.points[:, 0], c.points[:, 1]
    x0, y0 = int(xs.min()), int(ys.min())
    return RectI(x0, y0, int(xs.max()) - x0 + 1, int(ys.max()) - y0 + 1)


# ---------------------------------------------------------------------------
# minimum-area rotated rectangle
# ---------------------------------------------------------------------------

def _convex_hull(points: np.ndarray) -> np.ndarray:
    """Monotone-chain convex hull, counterclockwise, no duplicate endpoint."""
    pts = np.unique(points, axis=0).astype(np.float64)
    if len(pts) <= 2:
        return pts
    # already sorted lexicographically by np.unique

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[np.ndarray] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[np.ndarray] = []
    for p in pts[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def min_area_rect(c: Contour) -> RotatedRect:
    """Smallest-area enclosing rotated rectangle via rotating calipers.

    The angle is normalized into (-45, 45] by 90-degree steps with the width
    and height swapped accordingly.
    """
    hull = _convex_hull(c.points)
    if len(hull) == 1:
        return RotatedRect(float(hull[0][0]), float(hull[0][1]), 0.0, 0.0, 0.0)
    if len(hull) == 2:
        d = hull[1] - hull[0]
        cx, cy = (hull[0] + hull[1]) / 2.0
        return RotatedRect.normalized(cx, cy, float(np.hypot(*d)), 0.0,
                                      math.degrees(math.atan2(d[1], d[0])))
    best = None
    edges = np.roll(hull, -1, axis=0) - hull
    for ex, ey in edges:
        norm = math.hypot(ex, ey)
        if norm == 0:
            continue
        ux, uy = ex / norm, ey / norm
        proj_u = hull[:, 0] * ux + hull[:, 1] * uy
        proj_v = -hull[:, 0] * uy + hull[:, 1] * ux
        w = proj_u.max() - proj_u.min()
        h = proj_v.max() - proj_v.min()
        area = w * h
        if best is None or area < best[0]:
            mu = (proj_u.max() + proj_u.min()) / 2.0
            mv = (proj_v.max() + proj_v.min()) / 2.0
            cx = mu * ux - mv * uy
            cy = mu * uy + mv * ux
            best = (area, cx, cy, w, h, math.degrees(math.atan2(uy, ux)))
    _, cx, cy, w, h, angle = best
    return RotatedRect.normalized(cx, cy, w, h, angle)
