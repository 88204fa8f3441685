"""Abnormality detection from saliency maps; no training stage.

Frames score by their mean saliency; a frame is abnormal when its
score exceeds a threshold, and abnormal regions are voxels above a
multiple of the whole-volume mean saliency. For dataset evaluation the
raw frame scores feed the ROC/EER sweep in :mod:`phasesal.metrics`.
"""

from __future__ import annotations

import numpy as np

from .volume import BinaryVolume, SaliencyMap


def frame_scores(z: SaliencyMap) -> np.ndarray:
    """Per-frame score series: the mean saliency over each frame's pixels."""
    return z.data.mean(axis=(0, 1))


def abnormal_frames(scores: np.ndarray, threshold: float) -> np.ndarray:
    """Flag frames whose score strictly exceeds the threshold."""
    s = np.asarray(scores, dtype=np.float64)
    if not np.isfinite(threshold):
        raise ValueError(f"threshold must be finite, got {threshold}")
    return s > threshold


def abnormal_regions(z: SaliencyMap, k: float = 4.0) -> BinaryVolume:
    """Flag voxels whose saliency strictly exceeds k times the mean
    saliency of the whole volume (default k = 4)."""
    if k <= 0:
        raise ValueError(f"k must be > 0, got {k}")
    return BinaryVolume(z.data > k * z.data.mean())
