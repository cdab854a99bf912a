"""Reduced-reference payload: the features a sender ships instead of the image.

Payloads are canonical JSON (fixed key order, shortest round-trip float
repr, UTF-8, LF) stored in ``*.igstqa.json`` files.  Decoding reproduces
every float bit for bit.
"""

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import PayloadError
from .texture_features import (DOMAINS, ORIENTATIONS, RRFeatureSet, SubbandFeatures,
                               extract_rr_features)
from .uwt import WAVELET_ID

FORMAT_VERSION = 1
PAYLOAD_SUFFIX = ".igstqa.json"
FEATURE_NAMES = SubbandFeatures.names()


@dataclass
class RRPayload:
    levels: int
    alpha: float
    image_id: str
    feature_sets: list = field(default_factory=list)
    wavelet_id: str = WAVELET_ID + ":symmetric"
    format_version: int = FORMAT_VERSION

    @property
    def domains(self):
        return tuple(fs.domain for fs in self.feature_sets)

    @property
    def boundary(self):
        return self.wavelet_id.partition(":")[2] or "symmetric"

    def scalar_count(self):
        return sum(fs.scalar_count() for fs in self.feature_sets)


def image_id(img):
    """SHA-256 of the normalized pixel data (shape + little-endian float64)."""
    arr = np.ascontiguousarray(img, dtype="<f8")
    h = hashlib.sha256()
    h.update(("%dx%d;" % arr.shape).encode("ascii"))
    h.update(arr.tobytes())
    return "sha256:" + h.hexdigest()


def payload_from_image(img, config):
    feature_sets = extract_rr_features(img, config.levels, config.domains, config.boundary)
    return RRPayload(levels=config.levels, alpha=float(config.alpha), image_id=image_id(img),
                     feature_sets=feature_sets,
                     wavelet_id=f"{WAVELET_ID}:{config.boundary}")


def _check_finite(x):
    x = float(x)
    if not math.isfinite(x):
        raise PayloadError("non-finite feature")
    return x


def encode(payload):
    """Canonical UTF-8 JSON bytes for ``payload``."""
    sets = []
    for fs in payload.feature_sets:
        if fs.levels != payload.levels or not fs.is_complete():
            raise PayloadError("corrupt payload")
        subbands = []
        for x, j in fs.keys():
            entry = {"orientation": x, "level": j}
            feats = fs.features[(x, j)]
            for name in FEATURE_NAMES:
                entry[name] = _check_finite(getattr(feats, name))
            subbands.append(entry)
        sets.append({"domain": fs.domain, "subbands": subbands})
    doc = {
        "format_version": int(payload.format_version),
        "wavelet_id": payload.wavelet_id,
        "levels": int(payload.levels),
        "alpha": _check_finite(payload.alpha),
        "image_id": payload.image_id,
        "feature_sets": sets,
    }
    return (json.dumps(doc, indent=1, ensure_ascii=False, allow_nan=False) + "\n").encode("utf-8")


def decode(data):
    """Inverse of :func:`encode`; validates version and scalar counts."""
    try:
        doc = json.loads(data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise PayloadError(f"parse error: {exc}") from exc
    if not isinstance(doc, dict):
        raise PayloadError("parse error: payload is not a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise PayloadError("unsupported payload version")
    try:
        levels = doc["levels"]
        if not isinstance(levels, int) or levels < 1:
            raise PayloadError("corrupt payload")
        feature_sets = []
        scalars = 0
        for entry in doc["feature_sets"]:
            fs = RRFeatureSet(domain=entry["domain"], levels=levels)
            for sb in entry["subbands"]:
                vals = {}
                for name in FEATURE_NAMES:
                    if name in sb:
                        vals[name] = _check_finite(sb[name])
                scalars += len(vals)
                if len(vals) != len(FEATURE_NAMES):
                    continue
                key = (sb["orientation"], sb["level"])
                if key in fs.features:
                    raise PayloadError("corrupt payload")
                fs.features[key] = SubbandFeatures(**vals)
            feature_sets.append(fs)
        payload = RRPayload(
            levels=levels,
            alpha=_check_finite(doc["alpha"]),
            image_id=str(doc["image_id"]),
            feature_sets=feature_sets,
            wavelet_id=str(doc["wavelet_id"]),
            format_version=doc["format_version"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, PayloadError):
            raise
        raise PayloadError(f"corrupt payload: {exc}") from exc

    domains = [fs.domain for fs in feature_sets]
    expected = len(FEATURE_NAMES) * len(ORIENTATIONS) * levels * len(domains)
    if (scalars != expected or not domains or len(set(domains)) != len(domains)
            or not all(fs.is_complete() for fs in feature_sets)
            or any(d not in DOMAINS for d in domains)):
        raise PayloadError("corrupt payload")
    return payload


def is_payload_path(path):
    return str(path).endswith(PAYLOAD_SUFFIX)


def write_payload(path, payload):
    data = encode(payload)
    Path(path).write_bytes(data)
    return len(data)


def read_payload(path):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise PayloadError(f"cannot read payload {path}: {exc}") from exc
    return decode(data)
