"""Image loading, normalization and gradient magnitude.

Gray images travel through the pipeline as plain 2-D ``float64`` numpy arrays
with intensities nominally in [0, 1].  The same carrier holds both the
spatial image and its gradient magnitude.
"""

from pathlib import Path

import numpy as np
from PIL import Image

from .errors import InputError

LUMA_WEIGHTS = (0.299, 0.587, 0.114)

# smallest image accepted by feature extraction at the default depth
MIN_FEATURE_SIZE = 8


def as_gray_image(img, min_size=1):
    """Validate ``img`` and return it as a C-contiguous float64 array."""
    arr = np.ascontiguousarray(img, dtype=np.float64)
    if arr.ndim != 2:
        raise InputError(f"expected a 2-D gray image, got shape {arr.shape}")
    if arr.size == 0:
        raise InputError("empty input")
    if min(arr.shape) < min_size:
        raise InputError(
            f"image {arr.shape[0]}x{arr.shape[1]} smaller than {min_size}x{min_size}")
    if not np.all(np.isfinite(arr)):
        raise InputError("image contains non-finite values")
    return arr


def to_grayscale(rgb):
    """Convert an 8-bit RGB array of shape (rows, cols, 3) to [0, 1] luma."""
    rgb = np.asarray(rgb)
    if rgb.size == 0:
        raise InputError("empty input")
    if rgb.ndim != 3 or rgb.shape[2] < 3:
        raise InputError(f"expected an RGB image, got shape {rgb.shape}")
    r, g, b = (rgb[..., k].astype(np.float64) for k in range(3))
    wr, wg, wb = LUMA_WEIGHTS
    return np.clip((wr * r + wg * g + wb * b) / 255.0, 0.0, 1.0)


def gradient_magnitude(img, boundary="symmetric"):
    """Root mean square of the two Sobel directional gradients.

    Uses the /8-normalized 3x3 Sobel pair with mirror boundary extension and
    returns ``sqrt((gx**2 + gy**2) / 2)``.  Differences are taken before the
    smoothing pass so a constant offset cancels exactly for representable
    inputs.  ``boundary="periodic"`` wraps instead (shift-covariance tests).
    """
    img = as_gray_image(img)
    if min(img.shape) < 3:
        raise InputError("image too small for gradient kernel")
    if boundary not in ("symmetric", "periodic"):
        raise InputError(f"unknown boundary mode {boundary!r}")
    p = np.pad(img, 1, mode="symmetric" if boundary == "symmetric" else "wrap")
    # convolution with [-1, 0, 1] along an axis gives x[n-1] - x[n+1]
    dx = p[:, :-2] - p[:, 2:]
    dy = p[:-2, :] - p[2:, :]
    gx = (dx[:-2, :] + 2.0 * dx[1:-1, :] + dx[2:, :]) / 8.0
    gy = (dy[:, :-2] + 2.0 * dy[:, 1:-1] + dy[:, 2:]) / 8.0
    # hypot avoids underflow of the squares for very low-contrast images
    return np.hypot(gx, gy) / np.sqrt(2.0)


def load_image(path, return_depth=False):
    """Read a PNG or binary PGM file as a normalized gray image.

    Samples are divided by the maximum of their sample type (255 or 65535).
    Color images are converted with BT.601 luma weights.  With
    ``return_depth`` the source bit depth (8 or 16) is returned as well.
    """
    path = Path(path)
    try:
        with Image.open(path) as im:
            im.load()
            mode = im.mode
            if mode in ("I;16", "I;16B", "I;16L", "I"):
                data = np.asarray(im, dtype=np.float64) / 65535.0
                depth = 16
            elif mode == "L":
                data = np.asarray(im, dtype=np.float64) / 255.0
                depth = 8
            elif mode in ("1", "LA"):
                data = np.asarray(im.convert("L"), dtype=np.float64) / 255.0
                depth = 8
            else:
                data = to_grayscale(np.asarray(im.convert("RGB")))
                depth = 8
    except (OSError, SyntaxError) as exc:
        raise InputError(f"cannot read image {path}: {exc}") from exc
    img = as_gray_image(np.clip(data, 0.0, 1.0))
    if return_depth:
        return img, depth
    return img


def save_image(path, img, bit_depth=8):
    """Write ``img`` (values clipped to [0, 1]) as an 8- or 16-bit gray PNG/PGM."""
    img = as_gray_image(img)
    if bit_depth == 8:
        out = Image.fromarray(np.rint(np.clip(img, 0, 1) * 255).astype(np.uint8))
    elif bit_depth == 16:
        out = Image.fromarray(np.rint(np.clip(img, 0, 1) * 65535).astype(np.uint16))
    else:
        raise InputError(f"unsupported bit depth {bit_depth}")
    out.save(Path(path))
