"""Aggregation of reference/synthesized features into the IGSTQA score.

Per domain, the four statistical features are compared by their mean
absolute difference over all subbands, and the two spatial features by
half the largest per-level difference in each orientation.  The score sums
``log(1 + alpha * total)`` over domains; 0 means identical features and the
value grows with distortion.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import FeatureMismatchError, InputError
from .image_core import as_gray_image
from .texture_features import DOMAINS, extract_rr_features, normalize_domains

STAT_FEATURES = ("kurt", "sigma", "skew", "entropy")
SPATIAL_FEATURES = ("g", "r")
DEFAULT_LEVELS = 4
DEFAULT_ALPHA = 100.0


@dataclass(frozen=True)
class Config:
    levels: int = DEFAULT_LEVELS
    alpha: float = DEFAULT_ALPHA
    domains: tuple = DOMAINS
    boundary: str = "symmetric"

    def __post_init__(self):
        if int(self.levels) != self.levels or self.levels < 1:
            raise InputError("levels must be a positive integer")
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise InputError("invalid alpha")
        object.__setattr__(self, "domains", normalize_domains(self.domains))

    def as_dict(self):
        return {"levels": self.levels, "alpha": self.alpha,
                "domains": list(self.domains), "boundary": self.boundary}


@dataclass(frozen=True)
class DeltaSet:
    domain: str
    dk: float
    dsigma: float
    dskew: float
    dentropy: float
    dg: float
    dr: float

    def total(self):
        # summation order fixed for reproducible scores
        return self.dk + self.dsigma + self.dskew + self.dentropy + self.dg + self.dr


@dataclass(frozen=True)
class QualityScore:
    value: float
    alpha: float
    levels: int
    domains: tuple
    deltas: tuple = field(default=(), compare=False)

    def __float__(self):
        return self.value


def _check_pair(ref, syn):
    if ref.domain != syn.domain or ref.levels != syn.levels:
        raise FeatureMismatchError()
    if not (ref.is_complete() and syn.is_complete()):
        raise FeatureMismatchError()


def delta_stat(ref, syn, stat):
    """Mean absolute difference of a statistical feature over all 2L subbands."""
    if stat not in STAT_FEATURES:
        raise InputError(f"not a statistical feature: {stat!r}")
    _check_pair(ref, syn)
    diff = np.abs(ref.values(stat) - syn.values(stat))
    return float(diff.sum() / (2 * ref.levels))


def delta_spatial(ref, syn, stat):
    """Half the worst per-level difference in H plus the same for V."""
    if stat not in SPATIAL_FEATURES:
        raise InputError(f"not a spatial feature: {stat!r}")
    _check_pair(ref, syn)
    total = 0.0
    for x in ("H", "V"):
        worst = max(abs(getattr(ref.get(x, j), stat) - getattr(syn.get(x, j), stat))
                    for j in range(1, ref.levels + 1))
        total += worst / 2
    return total


def deltas(ref, syn):
    _check_pair(ref, syn)
    return DeltaSet(
        domain=ref.domain,
        dk=delta_stat(ref, syn, "kurt"),
        dsigma=delta_stat(ref, syn, "sigma"),
        dskew=delta_stat(ref, syn, "skew"),
        dentropy=delta_stat(ref, syn, "entropy"),
        dg=delta_spatial(ref, syn, "g"),
        dr=delta_spatial(ref, syn, "r"),
    )


def igstqa(ref, syn, alpha=DEFAULT_ALPHA):
    """Score lists of per-domain feature sets against each other."""
    if not (alpha > 0 and math.isfinite(alpha)):
        raise InputError("invalid alpha")
    ref = sorted(ref, key=lambda fs: DOMAINS.index(fs.domain))
    syn = sorted(syn, key=lambda fs: DOMAINS.index(fs.domain))
    if not ref or [fs.domain for fs in ref] != [fs.domain for fs in syn]:
        raise FeatureMismatchError()
    if len({fs.domain for fs in ref}) != len(ref):
        raise FeatureMismatchError()
    ds = tuple(deltas(r, s) for r, s in zip(ref, syn))
    value = 0.0
    for d in ds:
        value += math.log1p(alpha * d.total())
    return QualityScore(value=value, alpha=alpha, levels=ref[0].levels,
                        domains=tuple(d.domain for d in ds), deltas=ds)


def score_pair(ref_img, syn_img, config=None):
    """Full-pipeline score of a synthesized image against its reference image.

    The two images may differ in size.
    """
    config = config or Config()
    ref_img = as_gray_image(ref_img)
    syn_img = as_gray_image(syn_img)
    kw = dict(levels=config.levels, domains=config.domains, boundary=config.boundary)
    return igstqa(extract_rr_features(ref_img, **kw),
                  extract_rr_features(syn_img, **kw), config.alpha)
