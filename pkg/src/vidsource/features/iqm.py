"""The ten image quality measures M1-M10 and the 40-feature IQM block.

Every measure compares a reference frame against one distorted version
and is implemented exactly as the governing formulas are displayed,
including their quirks: M2 is a band-averaged root-mean-square error,
M4 is one minus a reference-normalized squared error, M8 compares
magnitudes of principal-value phases, and M9's numerator is a plain
(unsquared) difference sum, so M9 may be negative.

Degenerate-input conventions (all keep the features finite, and make
identical inputs behave like the non-degenerate identity case):

- M3: a pixel where both vectors are all-zero contributes 0;
- M4: a zero-energy reference band with zero difference contributes the
  identity value; otherwise the denominator is clamped to 1;
- M5: a zero-energy reference band contributes 1 when the distorted band
  is also all-zero, else 0;
- M6: a pixel where either vector is zero contributes angle 0;
- M9, M10: a zero denominator makes the whole measure 0.
"""

from functools import lru_cache

import numpy as np

from ..distortions import DISTORTION_ORDER, DistortedSet
from ..errors import InvalidInputError
from ..imaging import dct2, dft2_magnitude_phase, frame_bands, idct2, validate_frame

#: Canonical names of the 40 IQM features, distortion-major.
IQM_FEATURE_NAMES = [
    f"iqm_{kind.value}_m{m:02d}"
    for kind in DISTORTION_ORDER
    for m in range(1, 11)
]


def _check_pair(ref, dist):
    r = validate_frame(ref)
    d = validate_frame(dist)
    if r.shape != d.shape:
        raise InvalidInputError(f"frame shapes differ: {r.shape} vs {d.shape}")
    return r, d


@lru_cache(maxsize=8)
def hvs_filter(height: int, width: int) -> np.ndarray:
    """Bandpass weighting H(rho) on the zero-based DCT index grid.

    H(rho) = 0.05 * exp(rho^0.554)                          for rho < 7
           = exp(-9 * |log10(rho) - log10(9)|^2.3)          for rho >= 7
    with rho = sqrt(u^2 + v^2).
    """
    u = np.arange(height, dtype=np.float64)[:, np.newaxis]
    v = np.arange(width, dtype=np.float64)[np.newaxis, :]
    rho = np.sqrt(u * u + v * v)
    low = 0.05 * np.exp(rho ** 0.554)
    with np.errstate(divide="ignore"):
        log_rho = np.where(rho > 0, np.log10(np.where(rho > 0, rho, 1.0)), 0.0)
    high = np.exp(-9.0 * np.abs(log_rho - np.log10(9.0)) ** 2.3)
    return np.where(rho < 7.0, low, high)


def hvs_bandpass(plane: np.ndarray) -> np.ndarray:
    """U[.] = IDCT{ H(rho) x DCT(plane) }."""
    return idct2(hvs_filter(*plane.shape) * dct2(plane))


def laplacian_interior(plane: np.ndarray) -> np.ndarray:
    """4-neighbor Laplacian response on the interior pixels."""
    if plane.shape[0] < 3 or plane.shape[1] < 3:
        raise InvalidInputError("Laplacian needs a plane of at least 3x3")
    return (plane[2:, 1:-1] + plane[:-2, 1:-1]
            + plane[1:-1, 2:] + plane[1:-1, :-2]
            - 4.0 * plane[1:-1, 1:-1])


def _minkowsky(ref_bands, dist_bands):
    diff = ref_bands - dist_bands
    m1 = np.mean(np.abs(diff))
    m2 = np.mean(np.sqrt(np.mean(diff ** 2, axis=(1, 2))))
    return float(m1), float(m2)


def _correlation(ref_bands, dist_bands):
    # per-pixel across-band sums for the Czekanowski and angle terms
    mins = np.minimum(ref_bands, dist_bands).sum(axis=0)
    sums = (ref_bands + dist_bands).sum(axis=0)
    cz = np.where(sums > 0, 1.0 - 2.0 * mins / np.where(sums > 0, sums, 1.0), 0.0)
    m3 = float(np.mean(cz))

    diff_sq = ((ref_bands - dist_bands) ** 2).sum(axis=(1, 2))
    cross = (ref_bands * dist_bands).sum(axis=(1, 2))
    ref_energy = (ref_bands ** 2).sum(axis=(1, 2))
    dist_zero = np.all(dist_bands == 0, axis=(1, 2))
    safe = np.where(ref_energy > 0, ref_energy, 1.0)
    m4 = float(1.0 - np.mean(diff_sq / safe))
    m5_terms = np.where((ref_energy == 0) & dist_zero, 1.0, cross / safe)
    m5 = float(np.mean(m5_terms))

    dot = (ref_bands * dist_bands).sum(axis=0)
    norms = np.sqrt((ref_bands ** 2).sum(axis=0) * (dist_bands ** 2).sum(axis=0))
    cosine = np.where(norms > 0, dot / np.where(norms > 0, norms, 1.0), 1.0)
    angles = np.arccos(np.clip(cosine, -1.0, 1.0))
    m6 = float(1.0 - np.mean(2.0 / np.pi * angles))
    return m3, m4, m5, m6


def _ref_spectra(ref_bands):
    mags, phases = [], []
    for band in ref_bands:
        mag, phase = dft2_magnitude_phase(band)
        mags.append(mag)
        phases.append(phase)
    return np.array(mags), np.array(phases)


def _spectral(ref_mags, ref_phases, dist_bands):
    m7 = 0.0
    m8 = 0.0
    for k, band in enumerate(dist_bands):
        mag, phase = dft2_magnitude_phase(band)
        m7 += np.sum((ref_mags[k] - mag) ** 2)
        m8 += np.sum((np.abs(ref_phases[k]) - np.abs(phase)) ** 2)
    n = dist_bands.size
    return float(m7 / n), float(m8 / n)


def _hvs(ref_u, ref_lap, dist_bands):
    m9 = 0.0
    lap_num = 0.0
    lap_den = 0.0
    for k, band in enumerate(dist_bands):
        u_dist = hvs_bandpass(band)
        den = np.sum(ref_u[k] ** 2)
        if den > 0:
            m9 += np.sum(ref_u[k] - u_dist) / den
        lap = laplacian_interior(band)
        lap_num += np.sum((ref_lap[k] - lap) ** 2)
        lap_den += np.sum(ref_lap[k] ** 2)
    m9 /= len(dist_bands)
    m10 = lap_num / lap_den if lap_den > 0 else 0.0
    return float(m9), float(m10)


class _ReferenceSide:
    """Reference-frame transforms shared across the four distortions."""

    def __init__(self, ref):
        self.bands = frame_bands(ref)
        self.mags, self.phases = _ref_spectra(self.bands)
        self.u = np.array([hvs_bandpass(b) for b in self.bands])
        self.lap = np.array([laplacian_interior(b) for b in self.bands])


def _all_measures(refside: _ReferenceSide, dist) -> np.ndarray:
    dist_bands = frame_bands(dist)
    if dist_bands.shape != refside.bands.shape:
        raise InvalidInputError(
            f"frame shapes differ: {refside.bands.shape} vs {dist_bands.shape}")
    m1, m2 = _minkowsky(refside.bands, dist_bands)
    m3, m4, m5, m6 = _correlation(refside.bands, dist_bands)
    m7, m8 = _spectral(refside.mags, refside.phases, dist_bands)
    m9, m10 = _hvs(refside.u, refside.lap, dist_bands)
    return np.array([m1, m2, m3, m4, m5, m6, m7, m8, m9, m10])


def minkowsky_measures(ref, dist):
    """(M1, M2): mean absolute error and band-averaged RMSE."""
    r, d = _check_pair(ref, dist)
    return _minkowsky(frame_bands(r), frame_bands(d))


def correlation_measures(ref, dist):
    """(M3, M4, M5, M6): Czekanowski, cross-correlation pair, pixel angles."""
    r, d = _check_pair(ref, dist)
    return _correlation(frame_bands(r), frame_bands(d))


def spectral_measures(ref, dist):
    """(M7, M8): spectral magnitude and phase distortion."""
    r, d = _check_pair(ref, dist)
    ref_bands = frame_bands(r)
    mags, phases = _ref_spectra(ref_bands)
    return _spectral(mags, phases, frame_bands(d))


def hvs_measures(ref, dist):
    """(M9, M10): DCT-domain bandpass measure and Laplacian MSE."""
    r, d = _check_pair(ref, dist)
    ref_bands = frame_bands(r)
    ref_u = np.array([hvs_bandpass(b) for b in ref_bands])
    ref_lap = np.array([laplacian_interior(b) for b in ref_bands])
    return _hvs(ref_u, ref_lap, frame_bands(d))


def iqm_measures(ref, dist) -> np.ndarray:
    """All ten measures for one (reference, distorted) pair."""
    r, d = _check_pair(ref, dist)
    return _all_measures(_ReferenceSide(r), d)


def iqm_vector(dset: DistortedSet) -> np.ndarray:
    """The 40 IQM features of a distorted set, in canonical order."""
    refside = _ReferenceSide(dset.reference)
    values = [_all_measures(refside, dset.distorted[kind])
              for kind in DISTORTION_ORDER]
    return np.concatenate(values)
