"""Quaternion-FFT saliency on 4-channel images versus per-channel sums.

Treats a 4-channel image as one quaternion per pixel and transforms it
with a left quaternion Fourier transform (kernel exp(-mu*theta)),
computed by symplectic decomposition: the quaternion splits into two
complex planes with respect to the transform axis, each running
through an ordinary 2D FFT. Phase-only saliency of the quaternion
spectrum is compared, via Pearson correlation, against the sum of the
four per-channel phase-only maps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .saliency import SmoothSpec, multi_channel_saliency, phase_normalize
from .transform import forward_dft3, gaussian_smooth3, inverse_dft3
from .volume import ComplexVolume, SaliencyMap, Volume

DEFAULT_AXIS = np.array([1.0, 1.0, 1.0]) / np.sqrt(3.0)


@dataclass(frozen=True)
class QuaternionImage:
    """(rows, cols, 4) array: one (q0, q1, q2, q3) quaternion per pixel."""

    data: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.data, dtype=np.float64)
        if a.ndim != 3 or a.shape[2] != 4 or a.shape[0] == 0 or a.shape[1] == 0:
            raise ValueError(f"QuaternionImage must be (rows, cols, 4), got shape {a.shape}")
        if not np.isfinite(a).all():
            raise ValueError("QuaternionImage data must be finite")
        a = np.ascontiguousarray(a)
        a.setflags(write=False)
        object.__setattr__(self, "data", a)

    @property
    def dims(self) -> tuple[int, int]:
        return self.data.shape[:2]


def _axis_frame(axis: np.ndarray | None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Orthonormal pure-quaternion frame (mu1, mu2, mu3) with mu1 the
    transform axis; rejects non-unit or non-pure axes."""
    if axis is None:
        mu1 = DEFAULT_AXIS
    else:
        a = np.asarray(axis, dtype=np.float64).ravel()
        if a.size == 4:
            if abs(a[0]) > 1e-9:
                raise ValueError("transform axis must be a pure quaternion (zero scalar part)")
            a = a[1:]
        elif a.size != 3:
            raise ValueError(f"transform axis must have 3 (or 4) components, got {a.size}")
        if abs(np.linalg.norm(a) - 1.0) > 1e-9:
            raise ValueError("transform axis must have unit norm")
        mu1 = a
    ref = np.array([1.0, 0.0, 0.0])
    if np.linalg.norm(np.cross(mu1, ref)) < 1e-6:
        ref = np.array([0.0, 1.0, 0.0])
    mu2 = ref - np.dot(ref, mu1) * mu1
    mu2 /= np.linalg.norm(mu2)
    mu3 = np.cross(mu1, mu2)
    return mu1, mu2, mu3


def _decompose(q: np.ndarray, frame) -> tuple[np.ndarray, np.ndarray]:
    """q -> (s1, s2) complex planes with q = s1 + s2 * mu2, both s in
    the complex subfield spanned by {1, mu1}."""
    mu1, mu2, mu3 = frame
    vec = q[..., 1:]
    s1 = q[..., 0] + 1j * (vec @ mu1)
    s2 = (vec @ mu2) + 1j * (vec @ mu3)
    return s1, s2


def _recompose(s1: np.ndarray, s2: np.ndarray, frame) -> np.ndarray:
    mu1, mu2, mu3 = frame
    out = np.empty((*s1.shape, 4))
    out[..., 0] = s1.real
    out[..., 1:] = (s1.imag[..., None] * mu1 + s2.real[..., None] * mu2
                    + s2.imag[..., None] * mu3)
    return out


def qft2(img: QuaternionImage, axis: np.ndarray | None = None) -> np.ndarray:
    """Left quaternion 2D DFT (unnormalized), as a (rows, cols, 4) array."""
    frame = _axis_frame(axis)
    s1, s2 = _decompose(img.data, frame)
    return _recompose(np.fft.fft2(s1), np.fft.fft2(s2), frame)


def inverse_qft2(spectrum: np.ndarray, axis: np.ndarray | None = None) -> np.ndarray:
    """Inverse of :func:`qft2`, carrying the full 1/(rows*cols) factor."""
    a = np.asarray(spectrum, dtype=np.float64)
    if a.ndim != 3 or a.shape[2] != 4:
        raise ValueError(f"quaternion spectrum must be (rows, cols, 4), got shape {a.shape}")
    frame = _axis_frame(axis)
    s1, s2 = _decompose(a, frame)
    return _recompose(np.fft.ifft2(s1), np.fft.ifft2(s2), frame)


def _unit_modulus(spectrum: np.ndarray, eps: float | None = None) -> np.ndarray:
    mod = np.sqrt((spectrum ** 2).sum(axis=-1))
    if eps is None:
        eps = 1e-12 * max(1.0, float(mod.max()))
    out = np.zeros_like(spectrum)
    np.divide(spectrum, mod[..., None], out=out, where=(mod > eps)[..., None])
    return out


def qft_saliency(img: QuaternionImage, smooth: SmoothSpec = SmoothSpec(),
                 axis: np.ndarray | None = None) -> SaliencyMap:
    """Phase-only saliency of the quaternion spectrum (a T=1 map).

    The spectrum is normalized to unit quaternion modulus per bin (zero
    bins stay zero, same eps rule as :func:`phase_normalize`), inverse
    transformed, squared, and smoothed spatially.
    """
    spectrum = _unit_modulus(qft2(img, axis))
    recon = inverse_qft2(spectrum, axis)
    z = (recon ** 2).sum(axis=-1)
    smoothed = gaussian_smooth3(Volume(z[:, :, None]), smooth.sigma_spatial, 0.0)
    return SaliencyMap(smoothed.data)


def channel_sum_saliency(img: QuaternionImage, smooth: SmoothSpec = SmoothSpec()) -> SaliencyMap:
    """Sum of the four per-channel phase-only maps (T=1 per channel)."""
    channels = [Volume(np.ascontiguousarray(img.data[:, :, c])[:, :, None]) for c in range(4)]
    smooth_2d = SmoothSpec(smooth.sigma_spatial, 0.0)
    return multi_channel_saliency(channels, win=None, smooth=smooth_2d)


def cross_correlation(a: SaliencyMap, b: SaliencyMap) -> float:
    """Pearson correlation of two same-shaped maps over all voxels."""
    if a.dims != b.dims:
        raise ValueError(f"maps must share dims, got {a.dims} vs {b.dims}")
    av = a.data.ravel() - a.data.mean()
    bv = b.data.ravel() - b.data.mean()
    denom = np.linalg.norm(av) * np.linalg.norm(bv)
    if denom == 0:
        raise ValueError("cross_correlation needs nonzero variance in both maps")
    return float(np.dot(av, bv) / denom)


@dataclass(frozen=True)
class ComparisonTrial:
    trial: int
    rows: int
    cols: int
    corr_raw: float      # NaN when the trial was skipped (degenerate size)
    corr_smoothed: float

    @property
    def skipped(self) -> bool:
        return not np.isfinite(self.corr_raw)


@dataclass(frozen=True)
class ComparisonResult:
    trials: list[ComparisonTrial]
    mean_raw: float
    mean_smoothed: float
    n_skipped: int


def run_qft_comparison(n_trials: int, size_range: tuple[int, int] = (8, 128),
                       smooth: SmoothSpec = SmoothSpec(2.0, 0.0),
                       seed: int = 0) -> ComparisonResult:
    """Random-image comparison of QFT saliency against the channel sum.

    Each trial draws a uniform [0, 1) image of random size within
    `size_range` (inclusive) and correlates the two maps before and
    after smoothing. Trials whose maps have no variance (1x1 images)
    are skipped and reported as such; means cover the rest.
    """
    if n_trials < 1:
        raise ValueError(f"n_trials must be >= 1, got {n_trials}")
    lo, hi = size_range
    if not 1 <= lo <= hi:
        raise ValueError(f"invalid size range {size_range}")
    rng = np.random.default_rng(seed)
    no_smooth = SmoothSpec(0.0, 0.0)
    trials: list[ComparisonTrial] = []
    raws, smooths = [], []
    for k in range(n_trials):
        rows = int(rng.integers(lo, hi + 1))
        cols = int(rng.integers(lo, hi + 1))
        img = QuaternionImage(rng.random((rows, cols, 4)))
        try:
            raw = cross_correlation(qft_saliency(img, no_smooth),
                                    channel_sum_saliency(img, no_smooth))
            sm = cross_correlation(qft_saliency(img, smooth),
                                   channel_sum_saliency(img, smooth))
        except ValueError:
            trials.append(ComparisonTrial(k, rows, cols, np.nan, np.nan))
            continue
        trials.append(ComparisonTrial(k, rows, cols, raw, sm))
        raws.append(raw)
        smooths.append(sm)
    mean_raw = float(np.mean(raws)) if raws else np.nan
    mean_smoothed = float(np.mean(smooths)) if smooths else np.nan
    return ComparisonResult(trials, mean_raw, mean_smoothed, n_trials - len(raws))
