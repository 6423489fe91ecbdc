"""The 36 higher-order wavelet statistics.

Mean, variance, skewness and kurtosis of each of the 9 detail sub-bands
of a level-3 orthonormal Haar decomposition of the luminance plane.
Variance uses the (N-1) divisor; skewness and kurtosis divide the
central moment *sum* by N * sigma^3 (resp. N * sigma^4, minus 3) with
sigma the square root of that variance.  A flat band (sigma = 0) yields
skewness = kurtosis = 0 so the features stay finite on degenerate
frames.
"""

import numpy as np

from ..errors import InvalidInputError
from ..imaging import HAAR_SUBBANDS, haar_decompose_level3, luminance

#: Canonical names of the 36 wavelet features.
HOWS_FEATURE_NAMES = [
    f"hows_l{level}_{orient}_{stat}"
    for level, orient in HAAR_SUBBANDS
    for stat in ("mean", "var", "skew", "kurt")
]


def subband_stats(band):
    """(mean, variance, skewness, kurtosis) of one sub-band."""
    values = np.asarray(band, dtype=np.float64).ravel()
    n = values.size
    if n < 2:
        raise InvalidInputError("sub-band statistics need at least 2 samples")
    mean = values.mean()
    centered = values - mean
    variance = np.sum(centered ** 2) / (n - 1)
    sigma = np.sqrt(variance)
    if sigma == 0:
        return float(mean), 0.0, 0.0, 0.0
    skewness = np.sum(centered ** 3) / (n * sigma ** 3)
    kurtosis = np.sum(centered ** 4) / (n * sigma ** 4) - 3.0
    return float(mean), float(variance), float(skewness), float(kurtosis)


def hows_vector(frame) -> np.ndarray:
    """The 36 wavelet features of a frame, in canonical order.

    The luminance plane is cropped at the bottom/right to dimensions
    divisible by 8 before decomposition.
    """
    luma = luminance(frame)
    h, w = luma.shape
    luma = luma[:h - h % 8, :w - w % 8]
    bands = haar_decompose_level3(luma)
    stats = [subband_stats(bands[key]) for key in HAAR_SUBBANDS]
    return np.array([v for quad in stats for v in quad], dtype=np.float64)
