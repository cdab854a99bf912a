"""Undecimated (a trous) Haar wavelet decomposition.

Each level splits the previous lowpass image into a horizontal-high band
(highpass along rows, lowpass along columns), a vertical-high band (lowpass
along rows, highpass along columns) and the next lowpass image.  Nothing is
downsampled: level ``j`` inserts ``2**(j-1) - 1`` zeros between filter taps
instead, so every band keeps the input shape.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .image_core import as_gray_image

HAAR_LOWPASS = (0.5, 0.5)
HAAR_HIGHPASS = (0.5, -0.5)
WAVELET_ID = "haar"

BOUNDARY_MODES = {"symmetric": "symmetric", "periodic": "wrap"}


@dataclass
class WaveletPyramid:
    """Bands of an undecimated decomposition; ``hh[j-1]`` is level ``j``."""

    levels: int
    hh: list = field(default_factory=list)
    vh: list = field(default_factory=list)
    ll: np.ndarray = None
    boundary: str = "symmetric"

    def bands(self):
        """Yield ``(orientation, level, band)`` in H-then-V, fine-to-coarse order."""
        for j, band in enumerate(self.hh, start=1):
            yield "H", j, band
        for j, band in enumerate(self.vh, start=1):
            yield "V", j, band


def max_levels(shape, taps=2):
    """Deepest level whose dilated filter reach fits inside the image."""
    n = min(shape)
    levels = 0
    while (taps - 1) * 2 ** levels <= n:
        levels += 1
    return levels


def atrous_filter(x, taps, step, axis, boundary="symmetric"):
    """Convolve ``x`` along ``axis`` with ``taps`` spaced ``step`` samples apart.

    Computes ``y[n] = sum_k taps[k] * x[n - k*step]``, extending the signal
    on the leading side by ``(len(taps) - 1) * step`` samples.
    """
    reach = (len(taps) - 1) * step
    pad = [(0, 0)] * x.ndim
    pad[axis] = (reach, 0)
    xp = np.pad(x, pad, mode=BOUNDARY_MODES[boundary])
    n = x.shape[axis]
    out = np.zeros_like(x)
    for k, t in enumerate(taps):
        start = reach - k * step
        sl = [slice(None)] * x.ndim
        sl[axis] = slice(start, start + n)
        out += t * xp[tuple(sl)]
    return out


def decompose(img, levels=4, boundary="symmetric"):
    """L-level undecimated Haar decomposition of ``img``.

    ``boundary`` is ``"symmetric"`` (mirror extension) for real use or
    ``"periodic"``, which makes the transform exactly shift covariant under
    circular shifts.
    """
    img = as_gray_image(img)
    if levels < 1:
        raise InputError("levels must be at least 1")
    if boundary not in BOUNDARY_MODES:
        raise InputError(f"unknown boundary mode {boundary!r}")
    if levels > max_levels(img.shape, len(HAAR_LOWPASS)):
        raise InputError("too many decomposition levels for image size")

    pyr = WaveletPyramid(levels=levels, boundary=boundary)
    ll = img
    for j in range(1, levels + 1):
        step = 2 ** (j - 1)
        lo_cols = atrous_filter(ll, HAAR_LOWPASS, step, 0, boundary)
        hi_cols = atrous_filter(ll, HAAR_HIGHPASS, step, 0, boundary)
        pyr.hh.append(atrous_filter(lo_cols, HAAR_HIGHPASS, step, 1, boundary))
        pyr.vh.append(atrous_filter(hi_cols, HAAR_LOWPASS, step, 1, boundary))
        ll = atrous_filter(lo_cols, HAAR_LOWPASS, step, 1, boundary)
    pyr.ll = ll
    return pyr
