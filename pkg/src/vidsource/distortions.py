"""The four reference distortions the IQM features are measured against.

Each operation preserves frame dimensions, rounds to the nearest gray
level, clamps to [0, 255] and is a deterministic function of
(input, parameters, seed).  Default strengths live in
:class:`DistortionConfig` and are deliberately mild: the features need a
stable measurement channel, not heavy degradation.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np
import scipy.ndimage

from .errors import InvalidParameterError
from .imaging import haar_forward3, haar_inverse3, validate_frame
from .jpeg import jpeg_roundtrip_frame


class DistortionKind(enum.Enum):
    NOISE = "noise"
    GAUSSIAN_FILTER = "gauss"
    JPEG = "jpeg"
    WAVELET_COMPRESSION = "wave"


#: Canonical distortion order used by the 40-feature IQM block.
DISTORTION_ORDER = (
    DistortionKind.NOISE,
    DistortionKind.GAUSSIAN_FILTER,
    DistortionKind.JPEG,
    DistortionKind.WAVELET_COMPRESSION,
)


@dataclass(frozen=True)
class DistortionConfig:
    """Parameters of the four distortion channels."""

    noise_sigma: float = 2.0
    filter_kernel_size: int = 3
    filter_sigma: float = 0.5
    jpeg_quality: int = 75
    wavelet_retention: float = 0.10

    def validate(self) -> "DistortionConfig":
        if self.noise_sigma <= 0:
            raise InvalidParameterError(f"noise_sigma must be > 0, got {self.noise_sigma}")
        if self.filter_kernel_size < 3 or self.filter_kernel_size % 2 == 0:
            raise InvalidParameterError(
                f"filter_kernel_size must be odd >= 3, got {self.filter_kernel_size}")
        if self.filter_sigma <= 0:
            raise InvalidParameterError(f"filter_sigma must be > 0, got {self.filter_sigma}")
        if not 1 <= self.jpeg_quality <= 100:
            raise InvalidParameterError(
                f"jpeg_quality must be in [1, 100], got {self.jpeg_quality}")
        if not 0 < self.wavelet_retention <= 1:
            raise InvalidParameterError(
                f"wavelet_retention must be in (0, 1], got {self.wavelet_retention}")
        return self


@dataclass(frozen=True)
class DistortedSet:
    """A reference frame and its four distorted versions."""

    reference: np.ndarray
    distorted: dict  # DistortionKind -> frame

    def __post_init__(self):
        if set(self.distorted) != set(DISTORTION_ORDER):
            raise InvalidParameterError("distorted set must hold exactly the 4 kinds")


def _finish(values: np.ndarray) -> np.ndarray:
    return np.clip(np.round(values), 0, 255).astype(np.uint8)


def add_gaussian_noise(frame, sigma: float, seed: int) -> np.ndarray:
    """Perturb every sample with i.i.d. zero-mean Gaussian noise."""
    arr = validate_frame(frame)
    if sigma <= 0:
        raise InvalidParameterError(f"sigma must be > 0, got {sigma}")
    rng = np.random.default_rng(seed)
    noise = rng.normal(0.0, sigma, size=arr.shape)
    return _finish(arr.astype(np.float64) + noise)


def gaussian_kernel2d(kernel_size: int, sigma: float) -> np.ndarray:
    """Normalized 2-D Gaussian kernel (sums to 1)."""
    if kernel_size < 3 or kernel_size % 2 == 0:
        raise InvalidParameterError(f"kernel size must be odd >= 3, got {kernel_size}")
    if sigma <= 0:
        raise InvalidParameterError(f"sigma must be > 0, got {sigma}")
    radius = kernel_size // 2
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    g = np.exp(-(x ** 2) / (2.0 * sigma ** 2))
    kernel = np.outer(g, g)
    return kernel / kernel.sum()


def gaussian_filter(frame, kernel_size: int, sigma: float) -> np.ndarray:
    """Per-band convolution with a normalized Gaussian, symmetric edges."""
    arr = validate_frame(frame).astype(np.float64)
    kernel = gaussian_kernel2d(kernel_size, sigma)
    out = np.empty_like(arr)
    for band in range(arr.shape[2]):
        out[:, :, band] = scipy.ndimage.convolve(arr[:, :, band], kernel, mode="reflect")
    return _finish(out)


def jpeg_roundtrip(frame, quality: int) -> np.ndarray:
    """Baseline JPEG encode/decode round-trip at the given quality."""
    return jpeg_roundtrip_frame(frame, quality)


def wavelet_compress(frame, retention: float) -> np.ndarray:
    """Keep only the largest-magnitude Haar coefficients per band.

    Each band goes through a packed level-3 Haar transform; all but the
    top ceil(retention * N) coefficients by magnitude are zeroed (ties
    broken by raster position in the coefficient layout) before the
    inverse transform.  Dimensions not divisible by 8 keep their
    bottom/right remainder untouched; the transform covers the largest
    top-left multiple-of-8 region.
    """
    arr = validate_frame(frame)
    if not 0 < retention <= 1:
        raise InvalidParameterError(f"retention must be in (0, 1], got {retention}")
    h, w = arr.shape[:2]
    ch, cw = h - h % 8, w - w % 8
    out = arr.copy()
    region = arr[:ch, :cw].astype(np.float64)
    n_keep = math.ceil(retention * ch * cw)
    for band in range(arr.shape[2]):
        coeffs = haar_forward3(region[:, :, band])
        flat = coeffs.ravel()
        if n_keep < flat.size:
            # stable sort on -|c| keeps raster order among equal magnitudes
            order = np.argsort(-np.abs(flat), kind="stable")
            mask = np.zeros(flat.size, dtype=bool)
            mask[order[:n_keep]] = True
            flat = np.where(mask, flat, 0.0)
        restored = haar_inverse3(flat.reshape(coeffs.shape))
        out[:ch, :cw, band] = _finish(restored)
    return out


def make_distorted_set(frame, config: DistortionConfig, seed: int) -> DistortedSet:
    """Reference frame plus its four configured distortions."""
    arr = validate_frame(frame)
    config.validate()
    distorted = {
        DistortionKind.NOISE: add_gaussian_noise(arr, config.noise_sigma, seed),
        DistortionKind.GAUSSIAN_FILTER: gaussian_filter(
            arr, config.filter_kernel_size, config.filter_sigma),
        DistortionKind.JPEG: jpeg_roundtrip(arr, config.jpeg_quality),
        DistortionKind.WAVELET_COMPRESSION: wavelet_compress(
            arr, config.wavelet_retention),
    }
    return DistortedSet(reference=arr, distorted=distorted)
