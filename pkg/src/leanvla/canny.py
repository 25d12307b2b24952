"""Edge detection used to find spatially critical image patches.

The pipeline is the classical one — Gaussian blur, Sobel gradients,
non-maximum suppression along the quantized gradient direction, double
thresholding relative to the peak gradient magnitude, then hysteresis that
keeps weak pixels only when they are 8-connected to a strong pixel.

Conventions pinned here (and mirrored by the test oracles):

* borders are handled by edge replication for both blur and Sobel;
* the y gradient is positive downward (row index grows downward);
* gradient direction is quantized to {0, 45, 90, 135} degrees modulo 180;
* suppression keeps a pixel whose magnitude is >= both neighbours along the
  gradient direction, with out-of-image neighbours treated as magnitude 0;
* thresholds are fractions of the maximum gradient magnitude, so global
  brightness offsets and contrast scalings leave the mask unchanged up to
  floating-point tie-breaking at exactly equal magnitudes;
* a field whose peak magnitude is at or below ``EPS_FLAT`` is flat: both
  threshold masks come back empty.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "GrayImage",
    "CannyParams",
    "EPS_FLAT",
    "gaussian_blur",
    "sobel_gradients",
    "non_max_suppression",
    "double_threshold",
    "hysteresis",
    "canny_edges",
]


@dataclass(frozen=True)
class GrayImage:
    """Grayscale image: uint8 intensities, shape (height, width)."""

    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise DomainError(f"image dimensions must be positive, got {self.width}x{self.height}")
        px = np.asarray(self.pixels)
        if px.shape != (self.height, self.width):
            raise DomainError(
                f"pixel array shape {px.shape} does not match {self.height}x{self.width}"
            )
        if px.dtype != np.uint8:
            raise DomainError(f"pixels must be uint8, got {px.dtype}")

    @staticmethod
    def from_array(px: np.ndarray) -> "GrayImage":
        px = np.asarray(px, dtype=np.uint8)
        h, w = px.shape
        return GrayImage(width=w, height=h, pixels=px)


@dataclass(frozen=True)
class CannyParams:
    sigma: float = 1.4
    kernel_size: int = 5
    low_ratio: float = 0.1
    high_ratio: float = 0.3

    def __post_init__(self):
        if self.sigma <= 0:
            raise DomainError(f"blur sigma must be positive, got {self.sigma}")
        if self.kernel_size < 3 or self.kernel_size % 2 == 0:
            raise DomainError(f"kernel size must be odd and >= 3, got {self.kernel_size}")
        if not 0.0 < self.low_ratio < self.high_ratio < 1.0:
            raise DomainError(
                f"need 0 < low_ratio < high_ratio < 1, got ({self.low_ratio}, {self.high_ratio})"
            )


def _gaussian_kernel(sigma: float, size: int) -> np.ndarray:
    half = size // 2
    ax = np.arange(-half, half + 1, dtype=float)
    xx, yy = np.meshgrid(ax, ax)
    k = np.exp(-(xx * xx + yy * yy) / (2.0 * sigma * sigma))
    return k / k.sum()


def _convolve_replicate(img: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Correlate a 2-D float image with a small kernel, replicating the border."""
    kh, kw = kernel.shape
    ph, pw = kh // 2, kw // 2
    padded = np.pad(img, ((ph, ph), (pw, pw)), mode="edge")
    out = np.zeros_like(img, dtype=float)
    h, w = img.shape
    for dy in range(kh):
        for dx in range(kw):
            out += kernel[dy, dx] * padded[dy : dy + h, dx : dx + w]
    return out


def gaussian_blur(img: GrayImage, sigma: float, kernel_size: int) -> np.ndarray:
    """Blurred intensities as floats; the kernel is normalized to sum 1."""
    if sigma <= 0:
        raise DomainError(f"blur sigma must be positive, got {sigma}")
    if kernel_size < 3 or kernel_size % 2 == 0:
        raise DomainError(f"kernel size must be odd and >= 3, got {kernel_size}")
    return _convolve_replicate(img.pixels.astype(float), _gaussian_kernel(sigma, kernel_size))


_SOBEL_X = np.array([[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]])
_SOBEL_Y = np.array([[-1.0, -2.0, -1.0], [0.0, 0.0, 0.0], [1.0, 2.0, 1.0]])


def sobel_gradients(img: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-pixel (gx, gy, magnitude) from 3x3 Sobel with edge replication.

    Accepts a float intensity array (normally the blur output).  Magnitude is
    the Euclidean norm of the two components.
    """
    arr = np.asarray(img, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DomainError(f"expected a 2-D intensity array, got shape {arr.shape}")
    gx = _convolve_replicate(arr, _SOBEL_X)
    gy = _convolve_replicate(arr, _SOBEL_Y)
    mag = np.hypot(gx, gy)
    return gx, gy, mag


def _quantize_direction(gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Gradient direction binned to 0 (0deg), 1 (45deg), 2 (90deg), 3 (135deg)."""
    ang = np.degrees(np.arctan2(gy, gx)) % 180.0
    bins = np.zeros(ang.shape, dtype=np.int8)
    bins[(ang >= 22.5) & (ang < 67.5)] = 1
    bins[(ang >= 67.5) & (ang < 112.5)] = 2
    bins[(ang >= 112.5) & (ang < 157.5)] = 3
    return bins


def _shift(mag: np.ndarray, dr: int, dc: int) -> np.ndarray:
    """Magnitude array shifted by (dr, dc) with zeros flowing in from outside."""
    out = np.zeros_like(mag)
    h, w = mag.shape
    src_r = slice(max(0, -dr), min(h, h - dr))
    src_c = slice(max(0, -dc), min(w, w - dc))
    dst_r = slice(max(0, dr), min(h, h + dr))
    dst_c = slice(max(0, dc), min(w, w + dc))
    out[dst_r, dst_c] = mag[src_r, src_c]
    return out


# Neighbour offsets along the gradient for each quantized direction bin.
_NEIGHBOURS = {
    0: ((0, -1), (0, 1)),  # horizontal gradient -> vertical edge
    1: ((-1, -1), (1, 1)),  # diagonal
    2: ((-1, 0), (1, 0)),  # vertical gradient -> horizontal edge
    3: ((-1, 1), (1, -1)),  # anti-diagonal
}


def non_max_suppression(gx: np.ndarray, gy: np.ndarray, mag: np.ndarray) -> np.ndarray:
    """Zero out pixels that are not local maxima along their gradient direction."""
    bins = _quantize_direction(gx, gy)
    keep = np.zeros(mag.shape, dtype=bool)
    for b, ((r1, c1), (r2, c2)) in _NEIGHBOURS.items():
        sel = bins == b
        n1 = _shift(mag, -r1, -c1)  # value of the neighbour at offset (r1, c1)
        n2 = _shift(mag, -r2, -c2)
        keep |= sel & (mag >= n1) & (mag >= n2)
    return np.where(keep, mag, 0.0)


EPS_FLAT = 1e-9
"""Peak magnitudes at or below this are treated as a flat field.

The blur/Sobel cascade leaves ~1e-13 rounding crumbs on constant regions
(the Gaussian kernel sums to 1 only to the last ulp); relative thresholds
would otherwise promote those crumbs to edges.  Real edges in 8-bit imagery
sit many orders of magnitude above this.
"""


def double_threshold(
    suppressed: np.ndarray, low_ratio: float, high_ratio: float
) -> tuple[np.ndarray, np.ndarray]:
    """Split surviving pixels into strong and weak sets.

    Thresholds are ``ratio * max_magnitude``.  A flat gradient field (peak
    at or below ``EPS_FLAT``) yields two empty masks rather than marking
    everything.
    """
    if not 0.0 < low_ratio < high_ratio < 1.0:
        raise DomainError(f"need 0 < low_ratio < high_ratio < 1, got ({low_ratio}, {high_ratio})")
    peak = float(suppressed.max(initial=0.0))
    if peak <= EPS_FLAT:
        empty = np.zeros(suppressed.shape, dtype=bool)
        return empty, empty.copy()
    high = high_ratio * peak
    low = low_ratio * peak
    strong = suppressed >= high
    weak = (suppressed >= low) & ~strong
    return strong, weak


def hysteresis(strong: np.ndarray, weak: np.ndarray) -> np.ndarray:
    """Final mask: strong pixels plus weak pixels 8-connected to them.

    Connectivity may pass through chains of weak pixels; isolated weak
    pixels are dropped.
    """
    strong = np.asarray(strong, dtype=bool)
    weak = np.asarray(weak, dtype=bool)
    if strong.shape != weak.shape:
        raise DomainError("strong/weak masks must share a shape")
    allowed = strong | weak
    reached = strong.copy()
    while True:
        grown = reached.copy()
        for dr in (-1, 0, 1):
            for dc in (-1, 0, 1):
                if dr == 0 and dc == 0:
                    continue
                grown |= _shift(reached, dr, dc)
        grown &= allowed
        if np.array_equal(grown, reached):
            return reached
        reached = grown


def canny_edges(img: GrayImage, params: CannyParams) -> np.ndarray:
    """Boolean edge mask, shape (height, width)."""
    blurred = gaussian_blur(img, params.sigma, params.kernel_size)
    gx, gy, mag = sobel_gradients(blurred)
    suppressed = non_max_suppression(gx, gy, mag)
    strong, weak = double_threshold(suppressed, params.low_ratio, params.high_ratio)
    return hysteresis(strong, weak)
