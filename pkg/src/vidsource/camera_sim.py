"""Synthetic camera bank: seeded clips with device-specific artifacts.

Scene content (what is in front of the camera) and device behaviour
(what the camera does to it) are deliberately decoupled.  A scene is a
smoothly varying colored field — a few octaves of wrapped value noise
blended between two random tints, panning over time, with a moving
brightness gradient — drawn from a scene seed.  Every camera draws its
scenes from the same distribution, so the only class signal available
to a classifier is the processing pipeline itself:

    scene -> CFA mosaic -> PRNU gain -> read noise -> demosaic
          -> color matrix -> gamma encoding -> quantize -> JPEG

The PRNU gain plane is fixed per device (profile seed); read noise is
redrawn per frame.  Rendering is a pure function of
(profile, scene_seed): same profile and seeds give byte-identical
clips, and profiles differing only in their id render identically.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .imaging import validate_frame
from .jpeg import jpeg_roundtrip_frame
from .seeds import derive_seed, make_rng

CFA_PATTERNS = ("RGGB", "BGGR", "GRBG", "GBRG")
DEMOSAIC_METHODS = ("nearest", "bilinear")

_CHANNEL = {"R": 0, "G": 1, "B": 2}
_CFA_SITES = ((0, 0), (0, 1), (1, 0), (1, 1))

#: Interpolation kernel for bilinear demosaicing (normalized per site
#: by the local mask weight, so each CFA geometry is handled uniformly).
_BILINEAR_KERNEL = np.array([[1.0, 2.0, 1.0],
                             [2.0, 4.0, 2.0],
                             [1.0, 2.0, 1.0]]) / 4.0


@dataclass(frozen=True)
class CameraProfile:
    name: str
    cfa_pattern: str
    demosaic: str
    prnu_sigma: float        # relative std of the fixed gain plane
    color_matrix: tuple      # 3 rows of 3 floats, rows sum to ~1
    gamma: float
    read_noise_sigma: float  # in 8-bit counts, redrawn per frame
    jpeg_quality: int
    seed: int                # device identity: fixes the PRNU plane

    def validate(self) -> None:
        if self.cfa_pattern not in CFA_PATTERNS:
            raise InvalidParameterError(
                f"cfa_pattern must be one of {CFA_PATTERNS}, "
                f"got {self.cfa_pattern!r}")
        if self.demosaic not in DEMOSAIC_METHODS:
            raise InvalidParameterError(
                f"demosaic must be one of {DEMOSAIC_METHODS}, "
                f"got {self.demosaic!r}")
        if self.prnu_sigma < 0.0:
            raise InvalidParameterError(
                f"prnu_sigma must be >= 0, got {self.prnu_sigma}")
        if self.gamma <= 0.0:
            raise InvalidParameterError(f"gamma must be > 0, got {self.gamma}")
        if self.read_noise_sigma < 0.0:
            raise InvalidParameterError(
                f"read_noise_sigma must be >= 0, got {self.read_noise_sigma}")
        if not 1 <= self.jpeg_quality <= 100:
            raise InvalidParameterError(
                f"jpeg_quality must be in [1, 100], got {self.jpeg_quality}")
        matrix = np.asarray(self.color_matrix, dtype=float)
        if matrix.shape != (3, 3):
            raise InvalidParameterError(
                f"color_matrix must be 3x3, got shape {matrix.shape}")
        sums = matrix.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > 0.2):
            raise InvalidParameterError(
                f"color_matrix rows must sum to 1 +- 0.2, got {sums.tolist()}")


@dataclass(frozen=True)
class SyntheticClip:
    clip_id: str
    camera_id: str
    clip_seed: int
    frames: tuple  # (h, w, 3) uint8 arrays


def _wrapped_bilinear(lattice: np.ndarray, ys: np.ndarray,
                      xs: np.ndarray) -> np.ndarray:
    """Sample a value lattice at fractional coordinates with wrap-around."""
    m, n = lattice.shape
    y0 = np.floor(ys).astype(int)
    x0 = np.floor(xs).astype(int)
    fy = ys - y0
    fx = xs - x0
    v00 = lattice[y0 % m, x0 % n]
    v01 = lattice[y0 % m, (x0 + 1) % n]
    v10 = lattice[(y0 + 1) % m, x0 % n]
    v11 = lattice[(y0 + 1) % m, (x0 + 1) % n]
    return ((1 - fy) * (1 - fx) * v00 + (1 - fy) * fx * v01
            + fy * (1 - fx) * v10 + fy * fx * v11)


class Scene:
    """Deterministic moving scene; ``frame(t)`` is pure in (seed, t)."""

    OCTAVES = 4

    def __init__(self, scene_seed: int, height: int, width: int):
        self.height = height
        self.width = width
        rng = make_rng(scene_seed, "scene-params")
        self.lattices = [
            rng.random((4 * 2 ** o, 4 * 2 ** o)) for o in range(self.OCTAVES)
        ]
        # lattice cells per frame of panning motion, one velocity per octave
        self.velocities = rng.uniform(-0.15, 0.15, size=(self.OCTAVES, 2))
        # Tints are a shared gray level plus small chroma offsets: scene
        # brightness varies a lot between clips, scene chroma only mildly,
        # as after in-camera white balance.  Device color renditions stay
        # detectable above the scene-to-scene color variation this way.
        self.tint_a = (rng.uniform(0.35, 0.75)
                       + rng.uniform(-0.06, 0.06, size=3))
        self.tint_b = (rng.uniform(0.35, 0.75)
                       + rng.uniform(-0.06, 0.06, size=3))
        self.grad_dir = rng.uniform(0.0, 2.0 * np.pi)
        self.grad_speed = rng.uniform(0.02, 0.08)
        self.grad_phase = rng.uniform(0.0, 1.0)

    def frame(self, t: int) -> np.ndarray:
        """Linear-light RGB scene in [0, 1], shape (h, w, 3)."""
        h, w = self.height, self.width
        yy, xx = np.meshgrid(np.arange(h, dtype=float),
                             np.arange(w, dtype=float), indexing="ij")
        field = np.zeros((h, w))
        weight_sum = 0.0
        for o, lattice in enumerate(self.lattices):
            dim = lattice.shape[0]
            vy, vx = self.velocities[o]
            ys = yy / h * dim + vy * t
            xs = xx / w * dim + vx * t
            weight = 0.5 ** o
            field += weight * _wrapped_bilinear(lattice, ys, xs)
            weight_sum += weight
        field /= weight_sum
        phase = self.grad_phase + self.grad_speed * t
        ramp = (np.cos(self.grad_dir) * xx / w
                + np.sin(self.grad_dir) * yy / h + phase)
        brightness = 0.75 + 0.25 * np.sin(2.0 * np.pi * ramp)
        rgb = (field[:, :, None] * self.tint_a[None, None, :]
               + (1.0 - field)[:, :, None] * self.tint_b[None, None, :])
        return np.clip(rgb * brightness[:, :, None], 0.0, 1.0)


def cfa_masks(pattern: str, height: int, width: int) -> np.ndarray:
    """Boolean site masks, shape (3, h, w), one per RGB channel."""
    masks = np.zeros((3, height, width), dtype=bool)
    for letter, (dy, dx) in zip(pattern, _CFA_SITES):
        masks[_CHANNEL[letter], dy::2, dx::2] = True
    return masks


def _demosaic_nearest(raw: np.ndarray, pattern: str) -> np.ndarray:
    """Each channel copies its first-in-raster-order site per 2x2 cell."""
    sites = {}
    for letter, (dy, dx) in zip(pattern, _CFA_SITES):
        sites.setdefault(_CHANNEL[letter], (dy, dx))
    planes = []
    for c in range(3):
        dy, dx = sites[c]
        cell = raw[dy::2, dx::2]
        planes.append(np.repeat(np.repeat(cell, 2, axis=0), 2, axis=1))
    return np.stack(planes, axis=-1)


def _demosaic_bilinear(raw: np.ndarray, pattern: str) -> np.ndarray:
    from scipy.ndimage import convolve

    h, w = raw.shape
    masks = cfa_masks(pattern, h, w)
    planes = []
    for c in range(3):
        mask = masks[c].astype(float)
        num = convolve(raw * mask, _BILINEAR_KERNEL, mode="reflect")
        den = convolve(mask, _BILINEAR_KERNEL, mode="reflect")
        planes.append(num / den)
    return np.stack(planes, axis=-1)


def prnu_plane(profile: CameraProfile, height: int, width: int) -> np.ndarray:
    """Fixed per-device unit-variance gain fluctuation pattern."""
    rng = make_rng(profile.seed, "prnu", height, width)
    return rng.standard_normal((height, width))


def render_frame(profile: CameraProfile, scene_rgb: np.ndarray,
                 noise_seed: int) -> np.ndarray:
    h, w, _ = scene_rgb.shape
    masks = cfa_masks(profile.cfa_pattern, h, w)
    raw = np.zeros((h, w))
    for c in range(3):
        raw[masks[c]] = scene_rgb[:, :, c][masks[c]]
    raw = raw * (1.0 + profile.prnu_sigma * prnu_plane(profile, h, w))
    noise = make_rng(noise_seed).normal(0.0, profile.read_noise_sigma / 255.0,
                                        size=raw.shape)
    raw = np.clip(raw + noise, 0.0, 1.0)
    if profile.demosaic == "nearest":
        rgb = _demosaic_nearest(raw, profile.cfa_pattern)
    else:
        rgb = _demosaic_bilinear(raw, profile.cfa_pattern)
    matrix = np.asarray(profile.color_matrix, dtype=float)
    rgb = np.clip(rgb @ matrix.T, 0.0, 1.0)
    rgb = rgb ** (1.0 / profile.gamma)
    frame = np.clip(np.round(rgb * 255.0), 0, 255).astype(np.uint8)
    return jpeg_roundtrip_frame(frame, profile.jpeg_quality)


def render_clip(profile: CameraProfile, scene_seed: int, n_frames: int,
                width: int, height: int,
                clip_id: str = None) -> SyntheticClip:
    profile.validate()
    if height < 64 or width < 64 or height % 8 or width % 8:
        raise InvalidParameterError(
            f"frame dims must be >= 64x64 and divisible by 8, "
            f"got {height}x{width}")
    if n_frames < 1:
        raise InvalidParameterError(f"n_frames must be >= 1, got {n_frames}")
    scene = Scene(scene_seed, height, width)
    frames = []
    for t in range(n_frames):
        noise_seed = derive_seed(profile.seed, "read", scene_seed, t)
        frame = render_frame(profile, scene.frame(t), noise_seed)
        validate_frame(frame)
        frames.append(frame)
    return SyntheticClip(
        clip_id=clip_id if clip_id is not None else f"clip{scene_seed:08x}",
        camera_id=profile.name,
        clip_seed=scene_seed,
        frames=tuple(frames),
    )


def default_profile_bank() -> tuple:
    """Five devices differing in CFA layout, demosaic method, PRNU
    strength, color rendition, tone curve, sensor noise and
    recompression quality.

    Devices a and c are deliberate near-twins: they share the same
    acquisition bundle (bilinear demosaic, low noise, mild
    recompression), so no texture statistic tells them apart, and
    differ in color rendition only (warm vs cool channel gains).
    Device b repeats the warm rendition and d the cool one, so color
    statistics in turn collapse {a, b} and {c, d}.  Devices b, d and e
    are spread along the texture axis (nearest-site demosaic with
    distinct noise and recompression levels).  No single scalar feature
    separates all five — a texture cue and a color cue must be
    combined — while the joint signature keeps the classes separable.
    """
    warm = ((1.18, -0.04, 0.00),
            (0.00, 1.00, 0.00),
            (0.00, 0.04, 0.80))
    cool = ((0.80, 0.04, 0.00),
            (0.00, 1.00, 0.00),
            (0.00, -0.04, 1.18))
    neutral = ((1.00, 0.01, -0.01),
               (0.01, 1.00, -0.01),
               (-0.01, 0.01, 1.00))

    def profile(name, **kwargs):
        return CameraProfile(name=name, seed=derive_seed("camera", name),
                             **kwargs)

    return (
        profile("cam_a", cfa_pattern="RGGB", demosaic="bilinear",
                prnu_sigma=0.020, color_matrix=warm,
                gamma=2.05, read_noise_sigma=1.5, jpeg_quality=85),
        profile("cam_b", cfa_pattern="BGGR", demosaic="nearest",
                prnu_sigma=0.035, color_matrix=warm,
                gamma=2.05, read_noise_sigma=3.0, jpeg_quality=75),
        profile("cam_c", cfa_pattern="GRBG", demosaic="bilinear",
                prnu_sigma=0.020, color_matrix=cool,
                gamma=1.95, read_noise_sigma=1.5, jpeg_quality=85),
        profile("cam_d", cfa_pattern="GBRG", demosaic="nearest",
                prnu_sigma=0.050, color_matrix=cool,
                gamma=1.95, read_noise_sigma=4.5, jpeg_quality=70),
        profile("cam_e", cfa_pattern="RGGB", demosaic="nearest",
                prnu_sigma=0.030, color_matrix=neutral,
                gamma=2.00, read_noise_sigma=1.8, jpeg_quality=88),
    )


def simulate_clips(profiles, master_seed: int, clips_per_profile: int,
                   frames_per_clip: int, height: int, width: int):
    """Yield labeled clips for every profile, profiles in given order."""
    for profile in profiles:
        for clip_index in range(clips_per_profile):
            scene_seed = derive_seed(master_seed, "scene", profile.name,
                                     clip_index)
            yield render_clip(
                profile, scene_seed, frames_per_clip, width, height,
                clip_id=f"{profile.name}_clip{clip_index:03d}")
