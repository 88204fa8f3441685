"""Saliency interest points: 3D non-maximum suppression plus a
multi-scale subblock gradient descriptor.

A point is kept where the saliency is at least a threshold (absolute,
or a multiple of the volume mean) and is the maximum over its full
neighborhood box, clipped at the borders. Each point is described at
one or more (side, frames) scales by splitting the box into 3x3x2
subblocks and concatenating per-subblock 4-bin histograms of spatial
gradient orientation, magnitude-weighted and l1-normalized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.ndimage import maximum_filter

from .volume import SaliencyMap, Volume

SUBBLOCK_GRID = (3, 3, 2)  # (y blocks, x blocks, t blocks)
ORIENTATION_BINS = 4
DESCRIPTOR_LEN = SUBBLOCK_GRID[0] * SUBBLOCK_GRID[1] * SUBBLOCK_GRID[2] * ORIENTATION_BINS


@dataclass(frozen=True)
class InterestPoint:
    x: int  # column
    y: int  # row
    t: int  # frame
    score: float


@dataclass(frozen=True)
class NmsConfig:
    """Threshold and neighborhood for non-maximum suppression.

    Exactly one of `rho` (absolute) or `rho_mult` (multiplier on the
    volume mean) applies; with neither given, rho_mult defaults to 2.
    `neighborhood` holds half-extents (rx, ry, rt).
    """

    rho: float | None = None
    rho_mult: float | None = None
    neighborhood: tuple[int, int, int] = (5, 5, 3)

    def __post_init__(self):
        if self.rho is not None and self.rho_mult is not None:
            raise ValueError("set only one of rho / rho_mult")
        if self.rho is None and self.rho_mult is None:
            object.__setattr__(self, "rho_mult", 2.0)
        if any(r < 1 for r in self.neighborhood):
            raise ValueError(f"neighborhood half-extents must be >= 1, got {self.neighborhood}")


@dataclass(frozen=True)
class DescriptorScale:
    """Descriptor box geometry: `sigma` px square side, `tau` frames."""

    sigma: int
    tau: int

    def __post_init__(self):
        if self.sigma < 2 or self.tau < 2:
            raise ValueError(f"scale extents must be >= 2, got {self}")


DEFAULT_SCALES = (DescriptorScale(18, 10), DescriptorScale(25, 14), DescriptorScale(36, 20))


def detect_points(z: SaliencyMap, cfg: NmsConfig = NmsConfig()) -> list[InterestPoint]:
    """Non-maximum suppression over the saliency volume.

    Keeps voxels that reach the threshold and are maximal over the
    (2rx+1) x (2ry+1) x (2rt+1) box around them (clipped at borders).
    When equal-valued candidates fall inside each other's box, only the
    one earliest in (t, y, x) order survives. Points are returned in
    (t, y, x) order.
    """
    data = z.data
    rho = cfg.rho if cfg.rho is not None else cfg.rho_mult * float(data.mean())
    rx, ry, rt = cfg.neighborhood
    box_max = maximum_filter(data, size=(2 * ry + 1, 2 * rx + 1, 2 * rt + 1),
                             mode="constant", cval=-np.inf)
    cand = np.argwhere((data >= rho) & (data >= box_max))  # rows of (y, x, t)
    if cand.size == 0:
        return []
    order = np.lexsort((cand[:, 1], cand[:, 0], cand[:, 2]))  # by (t, y, x)
    cand = cand[order]
    seen = np.zeros(data.shape, dtype=bool)
    points: list[InterestPoint] = []
    for y, x, t in cand:
        window = seen[max(y - ry, 0):y + ry + 1,
                      max(x - rx, 0):x + rx + 1,
                      max(t - rt, 0):t + rt + 1]
        if not window.any():
            points.append(InterestPoint(int(x), int(y), int(t), float(data[y, x, t])))
        seen[y, x, t] = True
    return points


def _box_slices(dims: tuple[int, int, int], p: InterestPoint,
                scale: DescriptorScale) -> tuple[slice, slice, slice] | None:
    """Clip the scale box centered at p to the volume; None when any
    axis degenerates below 2 voxels."""
    extents = (scale.sigma, scale.sigma, scale.tau)
    center = (p.y, p.x, p.t)
    out = []
    for size, ext, c in zip(dims, extents, center):
        lo = max(c - ext // 2, 0)
        hi = min(c - ext // 2 + ext, size)
        if hi - lo < 2:
            return None
        out.append(slice(lo, hi))
    return tuple(out)


def _split_bounds(n: int, parts: int) -> list[int]:
    # even split, remainder assigned to the last part
    base = n // parts
    return [base * k for k in range(parts)] + [n]


def describe(x: Volume | SaliencyMap, p: InterestPoint, scale: DescriptorScale) -> np.ndarray:
    """Subblock gradient-orientation descriptor of the box around p.

    The 3D gradient uses central differences (one-sided at the box
    boundary). Gradient magnitude sqrt(gx^2+gy^2+gt^2) accumulates into
    four quadrant bins of the spatial orientation atan2(gy, gx); each
    subblock histogram is l1-normalized (all-zero blocks stay zero) and
    blocks concatenate in (t-block, y-block, x-block) order, giving 72
    values.
    """
    slices = _box_slices(x.dims, p, scale)
    if slices is None:
        raise ValueError(f"descriptor box at {p} with scale {scale} degenerates at the border")
    box = x.data[slices]
    gy, gx, gt = np.gradient(box)
    magnitude = np.sqrt(gx ** 2 + gy ** 2 + gt ** 2)
    # quadrants of [-pi, pi]: [-pi,-pi/2) [-pi/2,0) [0,pi/2) [pi/2,pi]
    bins = np.digitize(np.arctan2(gy, gx), (-np.pi / 2, 0.0, np.pi / 2))
    yb = _split_bounds(box.shape[0], SUBBLOCK_GRID[0])
    xb = _split_bounds(box.shape[1], SUBBLOCK_GRID[1])
    tb = _split_bounds(box.shape[2], SUBBLOCK_GRID[2])
    descriptor = np.zeros(DESCRIPTOR_LEN)
    pos = 0
    for kt in range(SUBBLOCK_GRID[2]):
        for ky in range(SUBBLOCK_GRID[0]):
            for kx in range(SUBBLOCK_GRID[1]):
                sub_bins = bins[yb[ky]:yb[ky + 1], xb[kx]:xb[kx + 1], tb[kt]:tb[kt + 1]]
                sub_mag = magnitude[yb[ky]:yb[ky + 1], xb[kx]:xb[kx + 1], tb[kt]:tb[kt + 1]]
                hist = np.bincount(sub_bins.ravel(), weights=sub_mag.ravel(),
                                   minlength=ORIENTATION_BINS)
                total = hist.sum()
                if total > 0:
                    hist = hist / total
                descriptor[pos:pos + ORIENTATION_BINS] = hist
                pos += ORIENTATION_BINS
    return descriptor


def extract_all(x: Volume | SaliencyMap, points: Sequence[InterestPoint],
                scales: Sequence[DescriptorScale] = DEFAULT_SCALES,
                ) -> list[tuple[InterestPoint, DescriptorScale, np.ndarray]]:
    """Describe every (point, scale) pair, in point-major then
    scale-major order, skipping boxes that degenerate at the border.
    The source may be the video volume or its saliency map."""
    out = []
    for p in points:
        for scale in scales:
            if _box_slices(x.dims, p, scale) is None:
                continue
            out.append((p, scale, describe(x, p, scale)))
    return out
