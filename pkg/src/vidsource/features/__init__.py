"""Per-frame forensic feature extraction: the canonical 88-vector.

Feature order is fixed: 40 IQM features (distortion-major), then the 12
color features, then the 36 higher-order wavelet statistics.  The same
order is the column order of every feature matrix file.
"""

import numpy as np

from ..distortions import DistortionConfig, make_distorted_set
from ..seeds import derive_seed
from .color import COLOR_FEATURE_NAMES, color_vector
from .iqm import IQM_FEATURE_NAMES, iqm_vector
from .wavelet import HOWS_FEATURE_NAMES, hows_vector

#: Canonical names of all 88 features, in extraction order.
FEATURE_NAMES = IQM_FEATURE_NAMES + COLOR_FEATURE_NAMES + HOWS_FEATURE_NAMES

assert len(FEATURE_NAMES) == 88


def noise_seed(master_seed: int, clip_id: str, frame_index: int) -> int:
    """Seed of the noise-distortion draw for one frame.

    Derived from (master seed, clip, frame) so extraction is
    reproducible and independent of the order frames are processed in.
    """
    return derive_seed(master_seed, clip_id, frame_index, "noise")


def extract_frame_features(frame, config: DistortionConfig, seed: int) -> np.ndarray:
    """The 88 features of one frame against its four distortions."""
    dset = make_distorted_set(frame, config, seed)
    return np.concatenate([iqm_vector(dset), color_vector(frame), hows_vector(frame)])
