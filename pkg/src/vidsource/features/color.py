"""The 12 single-frame color and histogram features.

Channel means, the three pairwise Pearson correlations, the three
channel energy ratios and the per-channel histogram center-of-mass
shift.  Degenerate frames stay finite: a zero-variance channel yields
correlation 0, and a zero-energy ratio denominator is clamped to 1
(the 0/0 case maps to 1, equal empty energies).

The center-of-mass formula operates on 1-based histogram slices over
bins 1..256 (bin b+1 counting gray level b) and is implemented verbatim,
asymmetric slice bounds included:

    hg1 = sum((hg(2:254) - hg(1:253)) + (hg(2:254) + hg(3:255)))
    hg2 = sum((hg(3:255) - hg(2:254)) + (hg(3:255) + hg(4:256)))
    COM = hg1 - hg2
"""

import numpy as np

from ..imaging import histogram256, validate_frame

#: Canonical names of the 12 color features.
COLOR_FEATURE_NAMES = [
    "color_mean_r", "color_mean_g", "color_mean_b",
    "color_corr_rg", "color_corr_gb", "color_corr_br",
    "color_eratio_gb", "color_eratio_gr", "color_eratio_br",
    "color_com_r", "color_com_g", "color_com_b",
]


def channel_means(frame):
    """Arithmetic mean of each channel."""
    arr = validate_frame(frame).astype(np.float64)
    means = arr.mean(axis=(0, 1))
    return float(means[0]), float(means[1]), float(means[2])


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    xc = x - x.mean()
    yc = y - y.mean()
    denom = np.sqrt(np.sum(xc ** 2)) * np.sqrt(np.sum(yc ** 2))
    if denom == 0:
        return 0.0
    return float(np.sum(xc * yc) / denom)


def pairwise_correlations(frame):
    """Pearson correlations (R,G), (G,B), (B,R); zero variance maps to 0."""
    arr = validate_frame(frame).astype(np.float64)
    r, g, b = arr[:, :, 0], arr[:, :, 1], arr[:, :, 2]
    return _pearson(r, g), _pearson(g, b), _pearson(b, r)


def energy_ratios(frame):
    """(E_G/E_B, E_G/E_R, E_B/E_R) with E_X the channel sample sum."""
    arr = validate_frame(frame).astype(np.float64)
    e_r, e_g, e_b = arr.sum(axis=(0, 1))

    def ratio(num, den):
        if den == 0:
            return 1.0 if num == 0 else num / 1.0
        return num / den

    return float(ratio(e_g, e_b)), float(ratio(e_g, e_r)), float(ratio(e_b, e_r))


def _com(hist: np.ndarray) -> float:
    hg = hist.astype(np.float64)
    # 1-based slices a:b == 0-based hg[a-1:b]
    hg1 = np.sum((hg[1:254] - hg[0:253]) + (hg[1:254] + hg[2:255]))
    hg2 = np.sum((hg[2:255] - hg[1:254]) + (hg[2:255] + hg[3:256]))
    return float(hg1 - hg2)


def neighbor_com(frame):
    """Histogram neighborhood center-of-mass shift per channel."""
    arr = validate_frame(frame)
    return tuple(_com(histogram256(arr[:, :, band])) for band in range(3))


def color_vector(frame) -> np.ndarray:
    """The 12 color features in canonical order."""
    values = channel_means(frame) + pairwise_correlations(frame) \
        + energy_ratios(frame) + neighbor_com(frame)
    return np.array(values, dtype=np.float64)
