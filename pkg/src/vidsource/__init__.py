"""Blind source-camera identification for video frames.

The toolkit turns a video frame into an 88-dimensional forensic
signature — image-quality measures of the frame against re-distorted
copies of itself, color statistics, and higher-order wavelet-domain
statistics — then selects, trains and evaluates classifiers that
attribute frames and clips to the camera that produced them.
"""

from .features import FEATURE_NAMES, extract_frame_features

__version__ = "0.1.0"

__all__ = ["FEATURE_NAMES", "extract_frame_features", "__version__"]
