"""Controlled texture degradations: blur, tile shuffling and row misalignment.

Each degradation is parameterized by a single severity scalar so that
monotonicity of the quality score can be checked without subjective data.
Stochastic kinds draw from a Philox counter-based generator, which gives
the same stream on every platform for a given seed.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import correlate1d

from .errors import InputError
from .image_core import as_gray_image

KINDS = ("blur", "tile_shuffle", "misalign")


def _rng(seed):
    return np.random.Generator(np.random.Philox(int(seed) & (2 ** 64 - 1)))


def gaussian_kernel(sigma):
    radius = int(math.ceil(3 * sigma))
    k = np.arange(-radius, radius + 1, dtype=np.float64)
    w = np.exp(-0.5 * (k / sigma) ** 2)
    return w / w.sum()


def gaussian_blur(img, sigma):
    """Separable Gaussian blur with mirror boundaries; ``sigma == 0`` is a no-op."""
    img = as_gray_image(img)
    if not (sigma >= 0 and math.isfinite(sigma)):
        raise InputError("blur sigma must be a finite nonnegative number")
    if sigma > min(img.shape) / 4:
        raise InputError("blur too large")
    if sigma == 0:
        return img.copy()
    w = gaussian_kernel(sigma)
    # scipy's "reflect" repeats the edge sample (d c b a | a b c d)
    out = correlate1d(img, w, axis=0, mode="reflect")
    return correlate1d(out, w, axis=1, mode="reflect")


def tile_shuffle(img, block, seed=0):
    """Permute the full ``block`` x ``block`` tiles; partial edge tiles stay put."""
    img = as_gray_image(img)
    block = int(block)
    if block < 1:
        raise InputError("block must be a positive integer")
    if block > min(img.shape):
        raise InputError("block too large")
    nr, nc = img.shape[0] // block, img.shape[1] // block
    out = img.copy()
    tiles = (img[:nr * block, :nc * block]
             .reshape(nr, block, nc, block).swapaxes(1, 2).reshape(nr * nc, block, block))
    order = _rng(seed).permutation(nr * nc)
    out[:nr * block, :nc * block] = (tiles[order].reshape(nr, nc, block, block)
                                     .swapaxes(1, 2).reshape(nr * block, nc * block))
    return out


def misalign(img, max_shift, seed=0):
    """Circularly shift each row by a uniform integer in ``[-max_shift, max_shift]``."""
    img = as_gray_image(img)
    max_shift = int(max_shift)
    rows, cols = img.shape
    if not 0 <= max_shift < cols:
        raise InputError("max_shift must satisfy 0 <= max_shift < cols")
    if max_shift == 0:
        return img.copy()
    shifts = _rng(seed).integers(-max_shift, max_shift, size=rows, endpoint=True)
    src = (np.arange(cols)[np.newaxis, :] - shifts[:, np.newaxis]) % cols
    return np.take_along_axis(img, src, axis=1)


@dataclass(frozen=True)
class DistortionSpec:
    kind: str
    magnitude: float
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown distortion kind {self.kind!r}")
        if not (self.magnitude >= 0 and math.isfinite(self.magnitude)):
            raise InputError("distortion magnitude must be finite and nonnegative")
        if self.kind != "blur" and self.magnitude != int(self.magnitude):
            raise InputError(f"{self.kind} magnitude must be an integer")

    @classmethod
    def parse(cls, text):
        """Parse ``kind:magnitude[:seed]``, e.g. ``tile_shuffle:16:7``."""
        parts = text.strip().split(":")
        if len(parts) not in (2, 3):
            raise InputError(f"bad distortion spec {text!r}; expected kind:magnitude[:seed]")
        try:
            magnitude = float(parts[1])
            seed = int(parts[2]) if len(parts) == 3 else 0
        except ValueError:
            raise InputError(f"bad distortion spec {text!r}") from None
        return cls(parts[0], magnitude, seed)

    def __str__(self):
        mag = f"{self.magnitude:g}"
        return f"{self.kind}:{mag}" if self.kind == "blur" else f"{self.kind}:{mag}:{self.seed}"

    def apply(self, img):
        if self.kind == "blur":
            return gaussian_blur(img, self.magnitude)
        if self.kind == "tile_shuffle":
            return tile_shuffle(img, int(self.magnitude), self.seed)
        return misalign(img, int(self.magnitude), self.seed)
