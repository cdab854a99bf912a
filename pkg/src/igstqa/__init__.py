"""IGSTQA: reduced-reference quality assessment of synthesized textures."""

from .codec import RRPayload, decode, encode
from .errors import (DegenerateInputError, FeatureMismatchError, IGSTQAError, InputError,
                     InsufficientDataError, PayloadError)
from .image_core import gradient_magnitude, load_image, save_image, to_grayscale
from .index import Config, DeltaSet, QualityScore, delta_spatial, delta_stat, igstqa, score_pair
from .texture_features import (RRFeatureSet, SubbandFeatures, detect_peak_distances,
                               extract_rr_features, granularity_regularity, subband_statistics)
from .uwt import WaveletPyramid, decompose

__version__ = "0.1.0"

__all__ = [
    "Config", "DeltaSet", "DegenerateInputError", "FeatureMismatchError", "IGSTQAError",
    "InputError", "InsufficientDataError", "PayloadError", "QualityScore", "RRFeatureSet",
    "RRPayload", "SubbandFeatures", "WaveletPyramid", "decode", "decompose", "delta_spatial",
    "delta_stat", "detect_peak_distances", "encode", "extract_rr_features",
    "granularity_regularity", "gradient_magnitude", "igstqa", "load_image", "save_image",
    "score_pair", "subband_statistics", "to_grayscale",
]
