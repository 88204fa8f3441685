"""Separable 3D discrete Fourier transform and Gaussian smoothing.

Conventions: the forward transform is the plain unnormalized sum

    Y(u,v,w) = sum_t sum_i sum_j X(i,j,t) exp(-i 2 pi (ui/M + vj/N + wt/T))

and the inverse carries the full 1/(MNT) factor, so
``inverse_dft3(forward_dft3(x))`` reproduces ``x``. Both are computed as
three passes of 1D transforms, one per axis; arbitrary (non power of
two) axis lengths are supported. All arithmetic is double precision.
"""

from __future__ import annotations

import math
import os

import numpy as np
import scipy.fft as _fft
from scipy.ndimage import convolve1d

from .volume import ComplexVolume, Volume

_WORKERS = os.cpu_count() or 1


def forward_dft3(x: Volume) -> ComplexVolume:
    """Unnormalized forward 3D DFT of a real volume."""
    out = x.data.astype(np.complex128)
    for axis in range(3):
        out = _fft.fft(out, axis=axis, workers=_WORKERS)
    return ComplexVolume(out)


def inverse_dft3(y: ComplexVolume) -> ComplexVolume:
    """Inverse 3D DFT with 1/(MNT) normalization."""
    out = y.data
    for axis in range(3):
        out = _fft.ifft(out, axis=axis, workers=_WORKERS)
    return ComplexVolume(out)


def gaussian_kernel(sigma: float) -> np.ndarray:
    """Sampled Gaussian, truncated at radius ceil(3*sigma), unit sum."""
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    radius = math.ceil(3.0 * sigma)
    taps = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-0.5 * (taps / sigma) ** 2)
    return k / k.sum()


def gaussian_smooth3(x: Volume, sigma_spatial: float, sigma_temporal: float) -> Volume:
    """Separable Gaussian smoothing: ``sigma_spatial`` on the two image
    axes, ``sigma_temporal`` on the frame axis. A sigma of 0 skips that
    axis. Boundaries use mirror (reflected, edge-inclusive) padding.
    """
    if sigma_spatial < 0 or sigma_temporal < 0:
        raise ValueError(f"sigmas must be >= 0, got ({sigma_spatial}, {sigma_temporal})")
    out = x.data
    for axis, sigma in ((0, sigma_spatial), (1, sigma_spatial), (2, sigma_temporal)):
        if sigma > 0:
            out = convolve1d(out, gaussian_kernel(sigma), axis=axis, mode="reflect")
    return Volume(out)
