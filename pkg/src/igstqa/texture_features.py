"""Reduced-reference texture features of a gray image.

For every level of the undecimated decomposition, each of the two high
bands yields six scalars:

* granularity ``g`` -- mean distance between adjacent local maxima of the
  coefficient magnitudes (rows of the H band, columns of the V band),
* regularity ``r`` -- population standard deviation of those distances,
* ``sigma``, ``skew``, ``kurt`` -- population moments of the signed
  coefficients (kurtosis is non-excess),
* ``entropy`` -- mean log-energy, ``mean(log(c**2))`` with ``log 0 := 0``.

Features are computed for the image itself (domain ``"I"``) and for its
gradient magnitude (domain ``"IGM"``), giving ``12 * levels`` scalars per
domain.
"""

from dataclasses import astuple, dataclass, field, fields

import numpy as np

from .errors import DegenerateInputError, InputError
from .image_core import MIN_FEATURE_SIZE, as_gray_image, gradient_magnitude
from .uwt import decompose

DOMAINS = ("I", "IGM")
ORIENTATIONS = ("H", "V")
SIGMA_EPS = 1e-12
# magnitudes below this are rounding noise of exact zeros (flat regions)
COEFF_EPS = 1e-12
# relative gap below which adjacent magnitudes form one plateau
TIE_RTOL = 1e-10


@dataclass(frozen=True)
class SubbandFeatures:
    g: float
    r: float
    sigma: float
    kurt: float
    skew: float
    entropy: float

    @classmethod
    def names(cls):
        return tuple(f.name for f in fields(cls))

    def as_tuple(self):
        return astuple(self)


@dataclass
class RRFeatureSet:
    """Features of one domain image, keyed by ``(orientation, level)``."""

    domain: str
    levels: int
    features: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise InputError(f"unknown domain {self.domain!r}")

    def get(self, orientation, level):
        return self.features[(orientation, level)]

    def keys(self):
        """Canonical ordering: H levels 1..L, then V levels 1..L."""
        return [(x, j) for x in ORIENTATIONS for j in range(1, self.levels + 1)]

    def values(self, name):
        """Array of one feature across all subbands, in canonical order."""
        return np.array([getattr(self.features[k], name) for k in self.keys()])

    def scalar_count(self):
        return len(self.features) * len(SubbandFeatures.names())

    def is_complete(self):
        return set(self.features) == set(self.keys())


def peak_mask(lines):
    """Boolean mask of local maxima along the last axis of ``lines``.

    A peak is an interior run of equal values strictly greater than the
    samples on both sides of the run; only the run's first index is marked.
    Adjacent samples within ``TIE_RTOL`` of each other count as equal, so
    exact ties perturbed by rounding stay ties.
    """
    a = np.atleast_2d(np.asarray(lines, dtype=np.float64))
    n = a.shape[-1]
    if n < 3:
        return np.zeros(a.shape, dtype=bool)
    idx = np.broadcast_to(np.arange(n), a.shape)
    lead = np.ones(a.shape[:-1] + (1,), bool)
    step = np.diff(a, axis=-1)
    scale = np.maximum(np.abs(a[..., 1:]), np.abs(a[..., :-1]))
    change = np.abs(step) > TIE_RTOL * scale
    starts = np.concatenate([lead, change], axis=-1)
    ends = np.concatenate([change, lead], axis=-1)
    run_start = np.maximum.accumulate(np.where(starts, idx, 0), axis=-1)
    run_end = np.minimum.accumulate(np.where(ends, idx, n - 1)[..., ::-1], axis=-1)[..., ::-1]

    interior = starts & (run_start > 0) & (run_end < n - 1)
    left = np.take_along_axis(a, np.maximum(run_start - 1, 0), axis=-1)
    last = np.take_along_axis(a, run_end, axis=-1)
    right = np.take_along_axis(a, np.minimum(run_end + 1, n - 1), axis=-1)
    return interior & (a > left) & (last > right)


def _flush_tiny(c):
    c = np.array(c, dtype=np.float64)
    c[np.abs(c) < COEFF_EPS] = 0.0
    return c


def _line_distances(lines):
    """Pooled distances between adjacent peaks, row by row."""
    rows, cols = np.nonzero(peak_mask(lines))
    same_line = rows[1:] == rows[:-1]
    return np.diff(cols)[same_line]


def detect_peak_distances(line):
    """Distances between consecutive local maxima of a 1-D magnitude profile.

    >>> detect_peak_distances([0, 1, 0, 0, 1, 0, 1, 0])
    [3, 2]
    """
    line = np.asarray(line, dtype=np.float64)
    if line.ndim != 1:
        raise InputError("expected a 1-D line")
    return [int(d) for d in _line_distances(line[np.newaxis, :])]


def granularity_regularity(subband, orientation):
    """Mean and population std of the pooled peak distances of ``|subband|``.

    Orientation ``"H"`` scans rows, ``"V"`` scans columns.  Magnitudes below
    ``COEFF_EPS`` count as zero.  Returns ``(0.0, 0.0)`` when no line holds
    two peaks.
    """
    mag = np.abs(_flush_tiny(subband))
    if orientation == "H":
        lines = mag
    elif orientation == "V":
        lines = mag.T
    else:
        raise InputError(f"unknown orientation {orientation!r}")
    dist = _line_distances(lines).astype(np.float64)
    if dist.size == 0:
        return 0.0, 0.0
    g = float(dist.mean())
    r = float(np.sqrt(np.mean((dist - g) ** 2))) if dist.size > 1 else 0.0
    return g, r


def log_energy_entropy(coeffs):
    """Mean of ``log(c**2)`` over all coefficients.

    Coefficients with ``|c| < COEFF_EPS`` count as exact zeros and contribute
    0, otherwise float noise in flat regions adds about -78 per sample.
    """
    c = _flush_tiny(np.ravel(coeffs))
    energy = c * c
    nz = energy > 0
    logs = np.zeros_like(energy)
    logs[nz] = np.log(energy[nz])
    return float(logs.sum() / c.size)


def subband_statistics(subband):
    """Return ``(sigma, kurt, skew, entropy)`` of the signed coefficients."""
    c = np.ravel(np.asarray(subband, dtype=np.float64))
    if c.size < 2:
        raise DegenerateInputError("degenerate subband")
    entropy = log_energy_entropy(c)
    dev = c - c.mean()
    m2 = np.mean(dev ** 2)
    sigma = float(np.sqrt(m2))
    if sigma < SIGMA_EPS:
        return 0.0, 0.0, 0.0, entropy
    skew = float(np.mean(dev ** 3) / sigma ** 3)
    kurt = float(np.mean(dev ** 4) / m2 ** 2)
    return sigma, kurt, skew, entropy


def subband_features(subband, orientation):
    g, r = granularity_regularity(subband, orientation)
    sigma, kurt, skew, entropy = subband_statistics(subband)
    return SubbandFeatures(g=g, r=r, sigma=sigma, kurt=kurt, skew=skew, entropy=entropy)


def domain_image(img, domain, boundary="symmetric"):
    if domain == "I":
        return img
    if domain == "IGM":
        return gradient_magnitude(img, boundary)
    raise InputError(f"unknown domain {domain!r}")


def extract_rr_features(img, levels=4, domains=DOMAINS, boundary="symmetric"):
    """Extract one :class:`RRFeatureSet` per requested domain, in ``I, IGM`` order."""
    img = as_gray_image(img, min_size=MIN_FEATURE_SIZE)
    domains = normalize_domains(domains)
    out = []
    for domain in domains:
        pyr = decompose(domain_image(img, domain, boundary), levels, boundary=boundary)
        fs = RRFeatureSet(domain=domain, levels=levels)
        for orientation, j, band in pyr.bands():
            fs.features[(orientation, j)] = subband_features(band, orientation)
        out.append(fs)
    return out


def normalize_domains(domains):
    """Deduplicate and order a domain selection; accepts CLI aliases."""
    aliases = {"both": DOMAINS, "spatial": ("I",), "gradient": ("IGM",)}
    if isinstance(domains, str):
        domains = aliases.get(domains, (domains,))
    chosen = set(domains)
    unknown = chosen - set(DOMAINS)
    if unknown:
        raise InputError(f"unknown domain(s) {sorted(unknown)}")
    if not chosen:
        raise InputError("no domains selected")
    return tuple(d for d in DOMAINS if d in chosen)


def feature_vector(feature_sets):
    """Flatten feature sets to a 1-D array (domain, orientation, level, feature)."""
    vals = []
    for fs in feature_sets:
        for key in fs.keys():
            vals.extend(fs.features[key].as_tuple())
    return np.array(vals, dtype=np.float64)
