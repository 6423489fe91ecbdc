"""Pinned baseline JPEG round-trip (4:4:4, Annex-K quantization tables).

The distortion bank needs the *decoded* frame a baseline sequential JPEG
codec would reproduce at a given quality, bit-identically across
platforms.  Entropy coding is lossless, so the round-trip is fully
determined by the lossy stages implemented here: RGB -> YCbCr (BT.601
full range), per-component 8x8 orthonormal block DCT, quantization with
the standard luminance/chrominance tables scaled by the usual quality
mapping (quality < 50: 5000/q, else 200 - 2q, entries clamped to
[1, 255]), dequantization, inverse DCT and color conversion.

Intermediate YCbCr planes are kept in double precision (no 8-bit
rounding between stages), which makes quality 100 exactly lossless on
constant frames.
"""

import numpy as np
import scipy.fft

from .errors import InvalidParameterError
from .imaging import validate_frame

# Standard luminance / chrominance quantization tables.
LUMA_TABLE = np.array([
    [16, 11, 10, 16, 24, 40, 51, 61],
    [12, 12, 14, 19, 26, 58, 60, 55],
    [14, 13, 16, 24, 40, 57, 69, 56],
    [14, 17, 22, 29, 51, 87, 80, 62],
    [18, 22, 37, 56, 68, 109, 103, 77],
    [24, 35, 55, 64, 81, 104, 113, 92],
    [49, 64, 78, 87, 103, 121, 120, 101],
    [72, 92, 95, 98, 112, 100, 103, 99],
], dtype=np.float64)

CHROMA_TABLE = np.array([
    [17, 18, 24, 47, 99, 99, 99, 99],
    [18, 21, 26, 66, 99, 99, 99, 99],
    [24, 26, 56, 99, 99, 99, 99, 99],
    [47, 66, 99, 99, 99, 99, 99, 99],
    [99, 99, 99, 99, 99, 99, 99, 99],
    [99, 99, 99, 99, 99, 99, 99, 99],
    [99, 99, 99, 99, 99, 99, 99, 99],
    [99, 99, 99, 99, 99, 99, 99, 99],
], dtype=np.float64)


def quantization_tables(quality: int):
    """Quality-scaled (luma, chroma) tables with entries in [1, 255]."""
    if not isinstance(quality, (int, np.integer)) or not 1 <= quality <= 100:
        raise InvalidParameterError(f"jpeg quality must be in [1, 100], got {quality!r}")
    scale = 5000.0 / quality if quality < 50 else 200.0 - 2.0 * quality
    tables = []
    for base in (LUMA_TABLE, CHROMA_TABLE):
        scaled = np.floor((base * scale + 50.0) / 100.0)
        tables.append(np.clip(scaled, 1.0, 255.0))
    return tables[0], tables[1]


def _rgb_to_ycbcr(rgb: np.ndarray) -> np.ndarray:
    r, g, b = rgb[:, :, 0], rgb[:, :, 1], rgb[:, :, 2]
    y = 0.299 * r + 0.587 * g + 0.114 * b
    cb = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b
    cr = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b
    return np.stack([y, cb, cr], axis=2)


def _ycbcr_to_rgb(ycc: np.ndarray) -> np.ndarray:
    y, cb, cr = ycc[:, :, 0], ycc[:, :, 1] - 128.0, ycc[:, :, 2] - 128.0
    r = y + 1.402 * cr
    g = y - 0.344136 * cb - 0.714136 * cr
    b = y + 1.772 * cb
    return np.stack([r, g, b], axis=2)


def _pad_to_blocks(plane: np.ndarray) -> np.ndarray:
    h, w = plane.shape
    pad_h = (-h) % 8
    pad_w = (-w) % 8
    if pad_h or pad_w:
        plane = np.pad(plane, ((0, pad_h), (0, pad_w)), mode="edge")
    return plane


def _blockwise(plane: np.ndarray):
    h, w = plane.shape
    return plane.reshape(h // 8, 8, w // 8, 8)


def _quantize_roundtrip(plane: np.ndarray, table: np.ndarray) -> np.ndarray:
    h, w = plane.shape
    padded = _pad_to_blocks(plane - 128.0)
    blocks = _blockwise(padded)
    coeffs = scipy.fft.dctn(blocks, type=2, norm="ortho", axes=(1, 3))
    quantized = np.round(coeffs / table[np.newaxis, :, np.newaxis, :])
    coeffs = quantized * table[np.newaxis, :, np.newaxis, :]
    blocks = scipy.fft.idctn(coeffs, type=2, norm="ortho", axes=(1, 3))
    out = blocks.reshape(padded.shape)
    return out[:h, :w] + 128.0


def jpeg_roundtrip_frame(frame, quality: int) -> np.ndarray:
    """Encode a frame to baseline JPEG at `quality` and decode it back."""
    arr = validate_frame(frame).astype(np.float64)
    luma_q, chroma_q = quantization_tables(quality)
    ycc = _rgb_to_ycbcr(arr)
    out = np.empty_like(ycc)
    out[:, :, 0] = _quantize_roundtrip(ycc[:, :, 0], luma_q)
    out[:, :, 1] = _quantize_roundtrip(ycc[:, :, 1], chroma_q)
    out[:, :, 2] = _quantize_roundtrip(ycc[:, :, 2], chroma_q)
    rgb = _ycbcr_to_rgb(out)
    return np.clip(np.round(rgb), 0, 255).astype(np.uint8)
