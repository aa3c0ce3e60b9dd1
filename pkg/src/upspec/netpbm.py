"""Binary Netpbm (P5/P6) writing and reading.

Arrays are min-max normalized to 0..255 on write (constant arrays map to
0), with a single-space header "P5 <w> <h> 255\\n". Reading back yields
the quantized bytes exactly, so write -> read -> write is byte-stable.
"""

from __future__ import annotations

import numpy as np


def quantize(array) -> np.ndarray:
    """Min-max normalize to uint8; constant input maps to all zeros."""
    arr = np.asarray(array, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("array values must be finite")
    lo = float(arr.min())
    hi = float(arr.max())
    if hi == lo:
        return np.zeros(arr.shape, dtype=np.uint8)
    return np.rint((arr - lo) / (hi - lo) * 255.0).astype(np.uint8)


def write_netpbm(array, path) -> None:
    """Write a 2D array as P5 or an (H, W, 3) array as P6."""
    arr = np.asarray(array)
    if arr.ndim == 3 and arr.shape[2] == 1:
        arr = arr[:, :, 0]
    if arr.ndim == 2:
        magic = b"P5"
    elif arr.ndim == 3 and arr.shape[2] == 3:
        magic = b"P6"
    else:
        raise ValueError(f"expected (H, W) or (H, W, 3) array, got shape {arr.shape}")
    data = quantize(arr)
    h, w = data.shape[:2]
    header = b"%s %d %d 255\n" % (magic, w, h)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(data.tobytes())


def read_netpbm(path) -> np.ndarray:
    """Read a binary P5/P6 file; returns uint8 (H, W) or (H, W, 3)."""
    with open(path, "rb") as fh:
        data = fh.read()
    magic, pos = _token(data, 0)
    if magic not in (b"P5", b"P6"):
        raise ValueError(f"unsupported Netpbm magic {magic!r}")
    w, pos = _token(data, pos)
    h, pos = _token(data, pos)
    maxval, pos = _token(data, pos)
    width, height, maxval = int(w), int(h), int(maxval)
    if maxval != 255:
        raise ValueError(f"only maxval 255 is supported, got {maxval}")
    channels = 1 if magic == b"P5" else 3
    count = width * height * channels
    raster = data[pos:pos + count]
    if len(raster) != count:
        raise ValueError(f"truncated raster: expected {count} bytes, got {len(raster)}")
    arr = np.frombuffer(raster, dtype=np.uint8)
    if channels == 1:
        return arr.reshape(height, width).copy()
    return arr.reshape(height, width, 3).copy()


def _token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Next whitespace-delimited header token, skipping '#' comments."""
    while pos < len(data):
        if data[pos:pos + 1].isspace():
            pos += 1
        elif data[pos:pos + 1] == b"#":
            end = data.find(b"\n", pos)
            pos = len(data) if end < 0 else end + 1
        else:
            break
    start = pos
    while pos < len(data) and not data[pos:pos + 1].isspace():
        pos += 1
    if start == pos:
        raise ValueError("unexpected end of Netpbm header")
    return data[start:pos], pos + 1
