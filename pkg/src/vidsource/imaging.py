"""Raster, transform and histogram primitives shared by the feature extractors.

Conventions used throughout the package:

- a *frame* is an ``(height, width, 3)`` uint8 array in R,G,B band order,
  at least 8x8 pixels;
- a *plane* is a 2-D float64 array holding one band (or luminance) during
  transform work;
- all transform math runs in double precision regardless of input depth.

The 2-D DCT is the orthonormal type-II transform, the DFT is the
unnormalized complex transform, and the Haar decomposition is orthonormal
(energy preserving), so inverse and Parseval identities hold to machine
precision and are asserted in the test suite.
"""

import numpy as np
import scipy.fft

from .errors import InvalidInputError

BANDS = 3

#: Detail sub-band order of the level-3 Haar decomposition:
#: (level, orientation) with h = horizontal, v = vertical, d = diagonal.
HAAR_SUBBANDS = [
    (level, orient) for level in (1, 2, 3) for orient in ("h", "v", "d")
]


def validate_frame(frame) -> np.ndarray:
    """Check the frame invariants and return the array unchanged.

    Raises
    ------
    InvalidInputError
        If the array is not (h, w, 3) with h, w >= 8 and all samples
        inside [0, 255].
    """
    arr = np.asarray(frame)
    if arr.ndim != 3 or arr.shape[2] != BANDS:
        raise InvalidInputError(
            f"frame must have shape (h, w, {BANDS}), got {arr.shape}")
    h, w = arr.shape[:2]
    if h < 8 or w < 8:
        raise InvalidInputError(f"frame must be at least 8x8, got {h}x{w}")
    if arr.dtype != np.uint8:
        if not np.issubdtype(arr.dtype, np.integer):
            raise InvalidInputError(f"frame samples must be integers, got {arr.dtype}")
        if arr.min() < 0 or arr.max() > 255:
            raise InvalidInputError("frame samples must lie in [0, 255]")
    return arr


def frame_bands(frame) -> np.ndarray:
    """Frame as a (3, h, w) float64 stack of band planes."""
    return np.moveaxis(validate_frame(frame).astype(np.float64), 2, 0)


def luminance(frame) -> np.ndarray:
    """ITU-R BT.601 luminance plane, float64."""
    arr = validate_frame(frame).astype(np.float64)
    return 0.299 * arr[:, :, 0] + 0.587 * arr[:, :, 1] + 0.114 * arr[:, :, 2]


def _check_plane(plane) -> np.ndarray:
    arr = np.asarray(plane, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise InvalidInputError(f"expected a non-empty 2-D plane, got shape {arr.shape}")
    return arr


def dct2(plane) -> np.ndarray:
    """Orthonormal 2-D type-II DCT of a plane."""
    return scipy.fft.dctn(_check_plane(plane), type=2, norm="ortho")


def idct2(plane) -> np.ndarray:
    """Inverse of :func:`dct2` (orthonormal type-III DCT)."""
    return scipy.fft.idctn(_check_plane(plane), type=2, norm="ortho")


def dft2_magnitude_phase(plane):
    """Magnitude and phase of the unnormalized 2-D DFT.

    Phase angles lie in (-pi, pi]; the phase of a zero bin is 0.  A bin
    counts as zero when its magnitude is below 64 ulps of the plane's
    total absolute mass -- the roundoff envelope of any floating
    transform.  Without that floor, a bin that cancels exactly in exact
    arithmetic would report the angle of accumulated rounding noise,
    and the phase-difference measure built on top of it would depend on
    the transform algorithm rather than on the image.

    Returns
    -------
    (magnitude, phase) : pair of float64 planes
    """
    p = _check_plane(plane)
    spectrum = np.fft.fft2(p)
    magnitude = np.abs(spectrum)
    tol = 64.0 * np.finfo(np.float64).eps * float(np.abs(p).sum())
    zero = magnitude <= tol
    magnitude[zero] = 0.0
    return magnitude, np.where(zero, 0.0, np.angle(spectrum))


def haar_step(plane):
    """One orthonormal 2-D Haar analysis step.

    Splits a plane with even dimensions into half-size (approx,
    horizontal, vertical, diagonal) bands.  For a 2x2 block
    [[a, b], [c, d]] the horizontal detail is (a + b - c - d) / 2.
    """
    p = _check_plane(plane)
    if p.shape[0] % 2 or p.shape[1] % 2:
        raise InvalidInputError(f"plane dimensions must be even, got {p.shape}")
    tl = p[0::2, 0::2]
    tr = p[0::2, 1::2]
    bl = p[1::2, 0::2]
    br = p[1::2, 1::2]
    approx = (tl + tr + bl + br) / 2.0
    horiz = (tl + tr - bl - br) / 2.0
    vert = (tl - tr + bl - br) / 2.0
    diag = (tl - tr - bl + br) / 2.0
    return approx, horiz, vert, diag


def haar_step_inverse(approx, horiz, vert, diag) -> np.ndarray:
    """Inverse of :func:`haar_step`."""
    a = np.asarray(approx, dtype=np.float64)
    out = np.empty((a.shape[0] * 2, a.shape[1] * 2), dtype=np.float64)
    out[0::2, 0::2] = (a + horiz + vert + diag) / 2.0
    out[0::2, 1::2] = (a + horiz - vert - diag) / 2.0
    out[1::2, 0::2] = (a - horiz + vert - diag) / 2.0
    out[1::2, 1::2] = (a - horiz - vert + diag) / 2.0
    return out


def haar_decompose_level3(plane):
    """Nine detail sub-bands of the 3-level orthonormal Haar decomposition.

    The approximation band of each level feeds the next; the final
    level-3 approximation is discarded.  Dimensions must be divisible
    by 8 (callers crop the bottom/right remainder beforehand).

    Returns
    -------
    dict mapping (level, orientation) -> detail plane, keys as in
    :data:`HAAR_SUBBANDS`.
    """
    p = _check_plane(plane)
    if p.shape[0] % 8 or p.shape[1] % 8:
        raise InvalidInputError(
            f"plane dimensions must be divisible by 8, got {p.shape}")
    bands = {}
    approx = p
    for level in (1, 2, 3):
        approx, horiz, vert, diag = haar_step(approx)
        bands[(level, "h")] = horiz
        bands[(level, "v")] = vert
        bands[(level, "d")] = diag
    return bands


def haar_forward3(plane) -> np.ndarray:
    """Packed 3-level orthonormal Haar transform of a plane.

    Layout per level, recursively on the top-left quadrant::

        [[approx, vert ],
         [horiz,  diag ]]
    """
    p = _check_plane(plane)
    if p.shape[0] % 8 or p.shape[1] % 8:
        raise InvalidInputError(
            f"plane dimensions must be divisible by 8, got {p.shape}")
    out = p.copy()
    h, w = p.shape
    for _ in range(3):
        approx, horiz, vert, diag = haar_step(out[:h, :w])
        h2, w2 = h // 2, w // 2
        out[:h2, :w2] = approx
        out[:h2, w2:w] = vert
        out[h2:h, :w2] = horiz
        out[h2:h, w2:w] = diag
        h, w = h2, w2
    return out


def haar_inverse3(coeffs) -> np.ndarray:
    """Inverse of :func:`haar_forward3`."""
    c = _check_plane(coeffs)
    out = c.copy()
    full_h, full_w = c.shape
    for level in (3, 2, 1):
        h = full_h >> (level - 1)
        w = full_w >> (level - 1)
        h2, w2 = h // 2, w // 2
        block = haar_step_inverse(
            out[:h2, :w2], out[h2:h, :w2], out[:h2, w2:w], out[h2:h, w2:w])
        out[:h, :w] = block
    return out


def histogram256(plane) -> np.ndarray:
    """256-bin histogram of an integer-valued plane; bin b counts value b."""
    arr = np.asarray(plane)
    if arr.size == 0:
        raise InvalidInputError("cannot histogram an empty plane")
    values = arr.ravel()
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(values == np.floor(values)):
            raise InvalidInputError("histogram input must be integer-valued")
        values = values.astype(np.int64)
    if values.min() < 0 or values.max() > 255:
        raise InvalidInputError("histogram input must lie in [0, 255]")
    return np.bincount(values.astype(np.int64), minlength=256)
