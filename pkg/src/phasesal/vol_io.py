"""Volume and image-sequence file I/O.

VOL1 is the raw container used for all volume data: an ASCII header
line ``VOL1 M N T C dtype\\n`` (dtype f32 or f64, C channels) followed
by a little-endian payload ordered channel-major, then frame-major,
then row-major within each frame.

Frame sequences are binary PGM (P5) / PPM (P6) files with maxval 255,
read in sorted filename order.

All writers go through a temp-file + rename so a failed run never
leaves a partial output behind.
"""

from __future__ import annotations

import os
import re
from typing import Sequence

import numpy as np

from .volume import BinaryVolume, Volume

_DTYPES = {"f32": np.dtype("<f4"), "f64": np.dtype("<f8")}


def atomic_write_bytes(path: str, payload: bytes) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(payload)
    os.replace(tmp, path)


def atomic_write_text(path: str, text: str) -> None:
    atomic_write_bytes(path, text.encode("utf-8"))


# ---------------------------------------------------------------------------
# VOL1


def _payload_order(data: np.ndarray) -> np.ndarray:
    # (M, N, T) -> frame-major, row-major
    return np.ascontiguousarray(np.moveaxis(data, 2, 0))


def write_vol1(path: str, channels: Volume | BinaryVolume | Sequence[Volume | BinaryVolume],
               dtype: str = "f64") -> None:
    """Write one or more same-shaped channels to a VOL1 file."""
    if isinstance(channels, (Volume, BinaryVolume)):
        channels = [channels]
    if dtype not in _DTYPES:
        raise ValueError(f"dtype must be one of {sorted(_DTYPES)}, got {dtype!r}")
    if not channels:
        raise ValueError("need at least one channel")
    dims = channels[0].dims
    if any(ch.dims != dims for ch in channels):
        raise ValueError("all channels must share dimensions")
    m, n, t = dims
    header = f"VOL1 {m} {n} {t} {len(channels)} {dtype}\n".encode("ascii")
    body = b"".join(
        _payload_order(ch.data.astype(_DTYPES[dtype])).tobytes() for ch in channels
    )
    atomic_write_bytes(path, header + body)


def read_vol1(path: str) -> list[Volume]:
    """Read a VOL1 file; returns one Volume per channel."""
    with open(path, "rb") as fh:
        header = fh.readline(128)
        body = fh.read()
    parts = header.decode("ascii", errors="replace").split()
    if len(parts) != 6 or parts[0] != "VOL1":
        raise ValueError(f"{path}: not a VOL1 file (bad header {header!r})")
    try:
        m, n, t, c = (int(v) for v in parts[1:5])
    except ValueError:
        raise ValueError(f"{path}: malformed VOL1 dimensions {parts[1:5]}") from None
    dtype = parts[5]
    if dtype not in _DTYPES:
        raise ValueError(f"{path}: unknown VOL1 dtype {dtype!r}")
    if min(m, n, t, c) <= 0:
        raise ValueError(f"{path}: VOL1 dimensions must be positive, got {m}x{n}x{t}x{c}")
    want = m * n * t * c * _DTYPES[dtype].itemsize
    if len(body) != want:
        raise ValueError(f"{path}: payload is {len(body)} bytes, expected {want}")
    raw = np.frombuffer(body, dtype=_DTYPES[dtype]).reshape(c, t, m, n)
    return [Volume(np.moveaxis(raw[k], 0, 2).astype(np.float64)) for k in range(c)]


def read_vol1_mask(path: str) -> BinaryVolume:
    """Read a binary mask stored as VOL1 (nonzero means set)."""
    channels = read_vol1(path)
    if len(channels) != 1:
        raise ValueError(f"{path}: mask file must have exactly one channel")
    return BinaryVolume(channels[0].data > 0.5)


# ---------------------------------------------------------------------------
# PGM / PPM frames


def _read_pnm_tokens(blob: bytes, count: int) -> tuple[list[int], int]:
    """Read `count` ASCII integer tokens (skipping '#' comments); returns
    (values, offset just past the single whitespace after the last one)."""
    vals, pos = [], 0
    while len(vals) < count:
        if pos >= len(blob):
            raise ValueError("truncated PNM header")
        ch = blob[pos:pos + 1]
        if ch == b"#":
            pos = blob.find(b"\n", pos)
            if pos < 0:
                raise ValueError("truncated PNM comment")
            pos += 1
        elif ch.isspace():
            pos += 1
        else:
            m = re.match(rb"\d+", blob[pos:])
            if not m:
                raise ValueError(f"bad PNM header token at byte {pos}")
            vals.append(int(m.group()))
            pos += m.end()
    if pos >= len(blob) or not blob[pos:pos + 1].isspace():
        raise ValueError("missing whitespace after PNM header")
    return vals, pos + 1


def read_pnm(path: str) -> np.ndarray:
    """Read a binary PGM (P5) or PPM (P6); returns uint8 (rows, cols) or
    (rows, cols, 3)."""
    with open(path, "rb") as fh:
        blob = fh.read()
    magic = blob[:2]
    if magic not in (b"P5", b"P6"):
        raise ValueError(f"{path}: unsupported PNM magic {magic!r} (want P5/P6)")
    (width, height, maxval), offset = _read_pnm_tokens(blob[2:], 3)
    offset += 2
    if maxval != 255:
        raise ValueError(f"{path}: only maxval 255 supported, got {maxval}")
    nchan = 1 if magic == b"P5" else 3
    want = width * height * nchan
    pixels = np.frombuffer(blob, dtype=np.uint8, count=want, offset=offset) \
        if len(blob) - offset >= want else None
    if pixels is None:
        raise ValueError(f"{path}: truncated pixel data")
    img = pixels.reshape(height, width) if nchan == 1 else pixels.reshape(height, width, 3)
    return img.copy()


def write_pgm(path: str, image: np.ndarray) -> None:
    img = np.asarray(image)
    if img.ndim != 2 or img.dtype != np.uint8:
        raise ValueError("write_pgm expects a 2D uint8 array")
    header = f"P5\n{img.shape[1]} {img.shape[0]}\n255\n".encode("ascii")
    atomic_write_bytes(path, header + img.tobytes())


def read_frame_dir(path: str) -> list[Volume]:
    """Read a directory of PGM/PPM frames (sorted by filename) into
    per-channel volumes: one Volume for grayscale, three for color,
    with byte values stored as floats in [0, 255]."""
    names = sorted(f for f in os.listdir(path) if f.lower().endswith((".pgm", ".ppm")))
    if not names:
        raise ValueError(f"{path}: no .pgm/.ppm frames found")
    frames = [read_pnm(os.path.join(path, name)) for name in names]
    shape = frames[0].shape
    for name, frame in zip(names, frames):
        if frame.shape != shape:
            raise ValueError(f"{path}/{name}: frame shape {frame.shape} != {shape}")
    stack = np.stack(frames, axis=-1).astype(np.float64)  # (M, N[, 3], T)
    if stack.ndim == 3:
        return [Volume(stack)]
    return [Volume(np.ascontiguousarray(stack[:, :, ch, :])) for ch in range(3)]


def export_pgm_frames(dirpath: str, data: np.ndarray, prefix: str = "frame") -> tuple[float, float]:
    """Write a (M, N, T) array as 8-bit PGM frames, min-max normalized
    over the whole volume. Returns (lo, hi); they are also recorded in
    a ``normalization.txt`` sidecar."""
    os.makedirs(dirpath, exist_ok=True)
    lo, hi = float(data.min()), float(data.max())
    scale = 255.0 / (hi - lo) if hi > lo else 0.0
    for t in range(data.shape[2]):
        frame = np.floor((data[:, :, t] - lo) * scale + 0.5).astype(np.uint8)
        write_pgm(os.path.join(dirpath, f"{prefix}_{t:06d}.pgm"), frame)
    atomic_write_text(os.path.join(dirpath, "normalization.txt"),
                      f"min {lo!r}\nmax {hi!r}\n")
    return lo, hi
