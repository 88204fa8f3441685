"""Threshold-sweep classification metrics: ROC, AUC, F-measure, EER."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ScoredSamples:
    """Paired detector scores and binary ground-truth labels."""

    scores: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.scores, dtype=np.float64).ravel()
        l = np.asarray(self.labels).ravel()
        if s.size != l.size:
            raise ValueError(f"scores ({s.size}) and labels ({l.size}) must have equal length")
        if s.size == 0:
            raise ValueError("need at least one sample")
        if not np.isfinite(s).all():
            raise ValueError("scores must be finite")
        if l.dtype != np.bool_:
            if not np.isin(l, (0, 1)).all():
                raise ValueError("labels must be binary (0/1)")
            l = l.astype(bool)
        for a in (s, l):
            a.setflags(write=False)
        object.__setattr__(self, "scores", s)
        object.__setattr__(self, "labels", l)


@dataclass(frozen=True)
class RocCurve:
    """Sweep points ordered from highest to lowest threshold.

    The first point is (+inf, TPR 0, FPR 0); the last (min score,
    TPR 1, FPR 1). Tied scores share a single threshold.
    """

    thresholds: np.ndarray
    tpr: np.ndarray
    fpr: np.ndarray

    def __len__(self) -> int:
        return self.thresholds.size


def _require_both_classes(samples: ScoredSamples) -> tuple[int, int]:
    npos = int(samples.labels.sum())
    nneg = samples.labels.size - npos
    if npos == 0 or nneg == 0:
        raise ValueError("ROC-based metrics need at least one positive and one negative label")
    return npos, nneg


def roc(samples: ScoredSamples) -> RocCurve:
    """Standard ROC sweep over the distinct score values, descending."""
    npos, nneg = _require_both_classes(samples)
    order = np.argsort(-samples.scores, kind="stable")
    s = samples.scores[order]
    hits = samples.labels[order]
    # last index of each tie group
    last = np.r_[np.nonzero(np.diff(s))[0], s.size - 1]
    tp = np.cumsum(hits)[last]
    fp = np.cumsum(~hits)[last]
    thresholds = np.r_[np.inf, s[last]]
    tpr = np.r_[0.0, tp / npos]
    fpr = np.r_[0.0, fp / nneg]
    return RocCurve(thresholds, tpr, fpr)


def auc(curve: RocCurve) -> float:
    """Area under the ROC curve (trapezoidal rule over FPR)."""
    return float(np.trapezoid(curve.tpr, curve.fpr))


def auc_score(scores: np.ndarray, labels: np.ndarray) -> float:
    """AUC straight from samples via the rank-sum identity.

    Equal to ``auc(roc(ScoredSamples(scores, labels)))`` (ties counted
    as half) but O(n log n) with small constants, which matters when
    scoring every voxel of a video volume.
    """
    samples = ScoredSamples(scores, labels)
    _require_both_classes(samples)
    pos = samples.scores[samples.labels]
    neg = np.sort(samples.scores[~samples.labels])
    below = np.searchsorted(neg, pos, side="left")
    tied = np.searchsorted(neg, pos, side="right") - below
    u = below.sum(dtype=np.float64) + 0.5 * tied.sum(dtype=np.float64)
    return float(u / (pos.size * neg.size))


def f_measure(samples: ScoredSamples, threshold: float | None = None,
              mode: str = "f1") -> float:
    """F-measure at a threshold (predicted positive when score >= t).

    mode "f1" is the standard harmonic mean of precision and recall;
    mode "tpr-fpr" is the harmonic mean of TPR and FPR instead. When no
    threshold is given, the sweep maximum is returned. Undefined cases
    (no predicted positives, or a zero denominator) score 0.
    """
    if mode not in ("f1", "tpr-fpr"):
        raise ValueError(f"unknown f_measure mode {mode!r}")
    if threshold is None:
        npos, nneg = _require_both_classes(samples)
        curve = roc(samples)
        tpr, fpr = curve.tpr[1:], curve.fpr[1:]
        if mode == "f1":
            tp, fp = tpr * npos, fpr * nneg
            with np.errstate(invalid="ignore"):
                f = np.where(tp > 0, 2.0 * tp / (2.0 * tp + fp + (npos - tp)), 0.0)
        else:
            denom = tpr + fpr
            with np.errstate(invalid="ignore"):
                f = np.where(denom > 0, 2.0 * tpr * fpr / np.where(denom > 0, denom, 1.0), 0.0)
        return float(f.max())
    predicted = samples.scores >= threshold
    tp = int((predicted & samples.labels).sum())
    fp = int((predicted & ~samples.labels).sum())
    fn = int((~predicted & samples.labels).sum())
    if mode == "f1":
        if tp == 0:
            return 0.0
        precision = tp / (tp + fp)
        recall = tp / (tp + fn)
        return 2.0 * precision * recall / (precision + recall)
    npos, nneg = _require_both_classes(samples)
    tpr = tp / npos
    fpr = fp / nneg
    if tpr + fpr == 0:
        return 0.0
    return 2.0 * tpr * fpr / (tpr + fpr)


def eer(samples: ScoredSamples) -> float:
    """Equal-error rate: the common rate where FPR crosses the miss
    rate (1 - TPR), located by linear interpolation between adjacent
    sweep points."""
    curve = roc(samples)
    fnr = 1.0 - curve.tpr
    gap = curve.fpr - fnr  # monotone nondecreasing, from -1 to +1
    i = int(np.searchsorted(gap, 0.0, side="left"))
    if gap[i] == 0.0:
        return float(curve.fpr[i])
    frac = -gap[i - 1] / (gap[i] - gap[i - 1])
    return float(fnr[i - 1] + frac * (fnr[i] - fnr[i - 1]))
