"""Dense 3D volume containers.

A volume is a real or complex scalar field over (rows, cols, frames),
stored as a numpy array of shape (M, N, T) and indexed ``[i, j, t]``.
All containers validate on construction and are immutable afterwards,
so they can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def _check_shape(a: np.ndarray, what: str) -> None:
    if a.ndim != 3:
        raise ValueError(f"{what} must be 3-dimensional (rows, cols, frames), got shape {a.shape}")
    if a.size == 0:
        raise ValueError(f"{what} must have at least one voxel per axis, got shape {a.shape}")


@dataclass(frozen=True)
class Volume:
    """Real-valued (M, N, T) scalar field, e.g. one video channel."""

    data: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.data, dtype=np.float64)
        _check_shape(a, "Volume")
        if not np.isfinite(a).all():
            raise ValueError("Volume data must be finite (no NaN/Inf)")
        object.__setattr__(self, "data", _frozen(a))

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.data.shape


@dataclass(frozen=True)
class ComplexVolume:
    """Complex (M, N, T) field, same layout as Volume; holds spectra."""

    data: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.data, dtype=np.complex128)
        _check_shape(a, "ComplexVolume")
        if not np.isfinite(a).all():
            raise ValueError("ComplexVolume data must be finite (no NaN/Inf)")
        object.__setattr__(self, "data", _frozen(a))

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.data.shape


@dataclass(frozen=True)
class SaliencyMap:
    """Nonnegative real (M, N, T) field produced by the saliency engine."""

    data: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.data, dtype=np.float64)
        _check_shape(a, "SaliencyMap")
        if not np.isfinite(a).all():
            raise ValueError("SaliencyMap data must be finite (no NaN/Inf)")
        if a.min() < 0:
            raise ValueError("SaliencyMap data must be nonnegative")
        object.__setattr__(self, "data", _frozen(a))

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.data.shape


@dataclass(frozen=True)
class BinaryVolume:
    """Boolean (M, N, T) mask, e.g. a ground-truth target mask."""

    data: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.data)
        if a.dtype != np.bool_:
            if not np.isin(a, (0, 1)).all():
                raise ValueError("BinaryVolume data must contain only 0/1 values")
            a = a.astype(bool)
        _check_shape(a, "BinaryVolume")
        object.__setattr__(self, "data", _frozen(a))

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.data.shape
