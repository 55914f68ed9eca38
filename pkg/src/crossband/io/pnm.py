"""Binary PGM (P5) and PPM (P6) with maxval 255 or 65535.

Samples map to [0, 1] by division by maxval. 16-bit samples are
big-endian, as the format requires.
"""

from __future__ import annotations

import os
import re

import numpy as np

from crossband.errors import (
    MalformedHeader,
    TruncatedPayload,
    UnsupportedMaxval,
    UnsupportedVariant,
)
from crossband.image import SpectralImage, as_array

_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _tokens(buf: bytes, n: int) -> tuple[list[bytes], int]:
    pos, out = 0, []
    for _ in range(n):
        m = _TOKEN.match(buf, pos)
        if not m:
            raise MalformedHeader("PNM header ends early")
        out.append(m.group(1))
        pos = m.end()
    # exactly one whitespace byte separates maxval from the raster
    if pos >= len(buf) or buf[pos:pos + 1] not in b" \t\r\n":
        raise MalformedHeader("missing whitespace after PNM header")
    return out, pos + 1


def parse_pnm(buf: bytes) -> tuple[np.ndarray, int]:
    """Raw integer samples ``(H, W)`` or ``(H, W, 3)`` and the maxval."""
    magic = buf[:2]
    if magic not in (b"P5", b"P6"):
        if magic[:1] == b"P" and magic[1:2].isdigit():
            raise UnsupportedVariant(f"only binary P5/P6 are supported, got {magic!r}")
        raise MalformedHeader("not a PNM file")
    try:
        toks, pos = _tokens(buf[2:], 3)
        width, height, maxval = (int(t) for t in toks)
    except ValueError:
        raise MalformedHeader("non-numeric PNM header field") from None
    pos += 2
    if width <= 0 or height <= 0:
        raise MalformedHeader(f"bad PNM size {width}x{height}")
    if maxval not in (255, 65535):
        raise UnsupportedMaxval(f"maxval {maxval} is not 255 or 65535")
    channels = 3 if magic == b"P6" else 1
    dtype = np.dtype(np.uint8) if maxval == 255 else np.dtype(">u2")
    nbytes = width * height * channels * dtype.itemsize
    payload = buf[pos:pos + nbytes]
    if len(payload) < nbytes:
        raise TruncatedPayload(f"expected {nbytes} raster bytes, found {len(payload)}")
    a = np.frombuffer(payload, dtype=dtype).astype(np.uint16 if maxval > 255 else np.uint8)
    shape = (height, width, 3) if channels == 3 else (height, width)
    return a.reshape(shape), maxval


def read_pnm_raw(path) -> tuple[np.ndarray, int]:
    with open(path, "rb") as f:
        return parse_pnm(f.read())


def read_pnm(path: str | os.PathLike) -> tuple[SpectralImage, ...]:
    """One plane for P5, three (R, G, B) for P6."""
    raw, maxval = read_pnm_raw(path)
    a = raw.astype(np.float64) / maxval
    if a.ndim == 2:
        return (SpectralImage(a),)
    return tuple(SpectralImage(a[:, :, i], c) for i, c in enumerate("RGB"))


def encode_pnm(image, depth: int = 16) -> bytes:
    """Quantize [0, 1] data to ``depth`` bits.

    ``image`` is a :class:`SpectralImage`, a 2-D array, a sequence of three
    planes, or an ``(H, W, 3)`` array.
    """
    if depth not in (8, 16):
        raise UnsupportedMaxval(f"depth must be 8 or 16, got {depth}")
    if isinstance(image, (list, tuple)):
        a = np.stack([as_array(p) for p in image], axis=-1)
    elif isinstance(image, SpectralImage):
        a = image.pixels
    else:
        a = np.asarray(image, dtype=np.float64)
    if a.ndim == 3 and a.shape[2] == 1:
        a = a[:, :, 0]
    if not (a.ndim == 2 or (a.ndim == 3 and a.shape[2] == 3)):
        raise UnsupportedVariant(f"cannot store shape {a.shape} as PNM")
    maxval = 255 if depth == 8 else 65535
    q = np.floor(np.clip(a, 0.0, 1.0) * maxval + 0.5)
    data = q.astype(np.uint8 if depth == 8 else ">u2")
    magic = "P5" if a.ndim == 2 else "P6"
    h, w = a.shape[:2]
    return f"{magic}\n{w} {h}\n{maxval}\n".encode("ascii") + data.tobytes()


def encode_pnm_bytes(raster: np.ndarray) -> bytes:
    """Write an 8-bit integer raster as-is (used for rendered colour maps)."""
    r = np.asarray(raster, dtype=np.uint8)
    magic = "P5" if r.ndim == 2 else "P6"
    h, w = r.shape[:2]
    return f"{magic}\n{w} {h}\n255\n".encode("ascii") + np.ascontiguousarray(r).tobytes()


def write_pnm(image, path: str | os.PathLike, depth: int = 16) -> None:
    with open(path, "wb") as f:
        f.write(encode_pnm(image, depth))
