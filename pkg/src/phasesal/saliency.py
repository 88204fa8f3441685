"""Phase-only spectrum saliency for video volumes.

The core map is the squared modulus of the inverse transform of the
phase-normalized (unit-modulus) spectrum, followed by Gaussian
smoothing. Regular content occupies strong spectral bands that the
normalization flattens, so temporally or spatially anomalous regions
pop out. A sliding rectangular window along the frame axis gives a
short-time variant; multiple feature channels are combined by summing
their per-channel maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .transform import forward_dft3, gaussian_smooth3, inverse_dft3
from .volume import ComplexVolume, SaliencyMap, Volume


@dataclass(frozen=True)
class SmoothSpec:
    """Gaussian smoothing widths: pixels on the image axes, frames on
    the time axis. Zero skips that axis."""

    sigma_spatial: float = 3.0
    sigma_temporal: float = 1.5

    def __post_init__(self):
        if self.sigma_spatial < 0 or self.sigma_temporal < 0:
            raise ValueError(f"smoothing sigmas must be >= 0, got {self}")


@dataclass(frozen=True)
class WindowSpec:
    """Rectangular temporal window: `length` frames advanced by `hop`."""

    length: int
    hop: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError(f"window length must be >= 1, got {self.length}")
        if not 1 <= self.hop <= self.length:
            raise ValueError(f"hop must be in [1, length], got hop={self.hop} length={self.length}")


def phase_normalize(y: ComplexVolume, eps: float | None = None) -> ComplexVolume:
    """Project every spectral bin onto the unit circle (Y/|Y|).

    Bins with modulus at or below `eps` map to exactly 0: they carry no
    meaningful phase and normalizing them would only amplify noise.
    Default eps is 1e-12 * max(1, max|Y|).
    """
    mod = np.abs(y.data)
    if eps is None:
        eps = 1e-12 * max(1.0, float(mod.max()))
    elif eps <= 0:
        raise ValueError(f"eps must be > 0, got {eps}")
    out = np.zeros_like(y.data)
    np.divide(y.data, mod, out=out, where=mod > eps)
    return ComplexVolume(out)


def phase_saliency(x: Volume, smooth: SmoothSpec = SmoothSpec()) -> SaliencyMap:
    """Full-span phase-only saliency of one channel.

    Squared modulus of the inverse transform of the phase-normalized
    spectrum, then Gaussian smoothing. Before smoothing the map sums to
    K/(MNT) where K is the number of spectral bins that survive the
    eps guard (Parseval on a unit-modulus spectrum).
    """
    spectrum = phase_normalize(forward_dft3(x))
    recon = inverse_dft3(spectrum).data
    z = recon.real ** 2 + recon.imag ** 2
    smoothed = gaussian_smooth3(Volume(z), smooth.sigma_spatial, smooth.sigma_temporal)
    return SaliencyMap(smoothed.data)


def windowed_saliency(x: Volume, win: WindowSpec, smooth: SmoothSpec = SmoothSpec()) -> SaliencyMap:
    """Short-time phase saliency with a sliding temporal window.

    Each window placement is scored independently with
    :func:`phase_saliency`; placements are accumulated into the
    full-length map and every frame is divided by the number of windows
    that covered it. The final placement is clamped so the last frames
    are always covered. ``hop == length`` tiles the video without
    overlap; smaller hops overlap-average.
    """
    t_total = x.dims[2]
    if win.length > t_total:
        raise ValueError(
            f"window length {win.length} exceeds the {t_total}-frame volume; "
            "use phase_saliency for full-span analysis")
    starts = list(range(0, t_total - win.length + 1, win.hop))
    if starts[-1] != t_total - win.length:
        starts.append(t_total - win.length)
    acc = np.zeros(x.dims)
    coverage = np.zeros(t_total)
    for s0 in starts:
        sub = Volume(x.data[:, :, s0:s0 + win.length])
        acc[:, :, s0:s0 + win.length] += phase_saliency(sub, smooth).data
        coverage[s0:s0 + win.length] += 1.0
    acc /= coverage[np.newaxis, np.newaxis, :]
    return SaliencyMap(acc)


def multi_channel_saliency(channels: Sequence[Volume], win: WindowSpec | None = None,
                           smooth: SmoothSpec = SmoothSpec()) -> SaliencyMap:
    """Sum of per-channel saliency maps (windowed when `win` is given).

    Channels are processed independently and reduced in list order, so
    the result is deterministic and additive.
    """
    if not channels:
        raise ValueError("need at least one channel")
    dims = channels[0].dims
    if any(ch.dims != dims for ch in channels):
        raise ValueError("all channels must share dimensions")
    total = np.zeros(dims)
    for ch in channels:
        if win is None:
            total += phase_saliency(ch, smooth).data
        else:
            total += windowed_saliency(ch, win, smooth).data
    return SaliencyMap(total)


# sRGB (D65) -> XYZ matrix rows for X, Y, Z
_SRGB_TO_XYZ = np.array([
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
])
_WHITE_D65 = np.array([0.95047, 1.0, 1.08883])


def rgb_to_lab(rgb: np.ndarray) -> tuple[Volume, Volume, Volume]:
    """Convert byte RGB frames to CIE L*a*b* channel volumes.

    `rgb` has shape (M, N, T, 3) with values in [0, 255]. Uses the
    standard sRGB transfer curve and D65 white point; L is in [0, 100].
    """
    a = np.asarray(rgb, dtype=np.float64)
    if a.ndim != 4 or a.shape[-1] != 3:
        raise ValueError(f"expected (M, N, T, 3) RGB data, got shape {a.shape}")
    if a.min() < 0 or a.max() > 255:
        raise ValueError("RGB values must lie in [0, 255]")
    c = a / 255.0
    linear = np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)
    xyz = np.einsum("rc,mntc->mntr", _SRGB_TO_XYZ, linear) / _WHITE_D65
    delta = 6.0 / 29.0
    f = np.where(xyz > delta ** 3, np.cbrt(xyz), xyz / (3 * delta ** 2) + 4.0 / 29.0)
    lum = 116.0 * f[..., 1] - 16.0
    a_ch = 500.0 * (f[..., 0] - f[..., 1])
    b_ch = 200.0 * (f[..., 1] - f[..., 2])
    return Volume(lum), Volume(a_ch), Volume(b_ch)


def downsample_spatial(x: Volume, factor: int) -> Volume:
    """Box-average each frame by an integer factor; frame count is
    unchanged. Edge rows/cols beyond the largest multiple are dropped."""
    if factor < 1:
        raise ValueError(f"downsample factor must be >= 1, got {factor}")
    if factor == 1:
        return x
    m, n, t = x.dims
    mk, nk = m // factor, n // factor
    if mk == 0 or nk == 0:
        raise ValueError(f"factor {factor} exceeds frame size {m}x{n}")
    trimmed = x.data[:mk * factor, :nk * factor, :]
    blocks = trimmed.reshape(mk, factor, nk, factor, t)
    return Volume(blocks.mean(axis=(1, 3)))
