"""Portable float map (PFM) reading and writing.

Layout: ``Pf`` (one channel) or ``PF`` (three channels) on the first line,
``width height`` on the second, a scale whose sign gives the byte order
(negative = little-endian) on the third, then raw float32 samples with the
bottom row first. Writes always use ``-1.0`` (little-endian).
"""

from __future__ import annotations

import os

import numpy as np

from crossband.errors import MalformedHeader, TruncatedPayload, UnsupportedVariant
from crossband.image import DisparityMap, SpectralImage


def _header_line(buf: bytes, pos: int) -> tuple[str, int]:
    end = buf.find(b"\n", pos)
    if end < 0:
        raise MalformedHeader("PFM header ends before the payload")
    try:
        return buf[pos:end].decode("ascii").strip(), end + 1
    except UnicodeDecodeError:
        raise MalformedHeader("PFM header is not ASCII") from None


def parse_pfm(buf: bytes) -> np.ndarray:
    magic, pos = _header_line(buf, 0)
    if magic not in ("Pf", "PF"):
        if magic[:1] == "P":
            raise UnsupportedVariant(f"unsupported PFM variant {magic!r}")
        raise MalformedHeader(f"not a PFM file (magic {magic!r})")
    dims, pos = _header_line(buf, pos)
    try:
        width, height = (int(t) for t in dims.split())
        scale_text, pos = _header_line(buf, pos)
        scale = float(scale_text)
    except ValueError:
        raise MalformedHeader("bad PFM dimensions or scale line") from None
    if width <= 0 or height <= 0 or scale == 0:
        raise MalformedHeader(f"bad PFM header values {width}x{height}, scale {scale}")
    channels = 3 if magic == "PF" else 1
    count = width * height * channels
    payload = buf[pos:pos + 4 * count]
    if len(payload) < 4 * count:
        raise TruncatedPayload(f"expected {4 * count} payload bytes, found {len(payload)}")
    dtype = np.dtype("<f4") if scale < 0 else np.dtype(">f4")
    data = np.frombuffer(payload, dtype=dtype).astype(np.float32)
    shape = (height, width, 3) if channels == 3 else (height, width)
    return np.flipud(data.reshape(shape)).copy()


def read_pfm(path: str | os.PathLike) -> np.ndarray:
    """Float32 array, ``(H, W)`` for ``Pf`` or ``(H, W, 3)`` for ``PF``."""
    with open(path, "rb") as f:
        return parse_pfm(f.read())


def read_pfm_disparity(path) -> DisparityMap:
    a = read_pfm(path)
    if a.ndim == 3:
        raise UnsupportedVariant("color PFM cannot hold a disparity map")
    return DisparityMap(a)


def read_pfm_planes(path) -> tuple[SpectralImage, ...]:
    """Image planes of a PFM file; ``PF`` files are split into R, G, B."""
    a = read_pfm(path)
    if a.ndim == 2:
        return (SpectralImage(a),)
    return tuple(SpectralImage(a[:, :, i], c) for i, c in enumerate("RGB"))


def encode_pfm(data) -> bytes:
    if isinstance(data, DisparityMap):
        a = data.values
    elif isinstance(data, SpectralImage):
        a = data.pixels
    else:
        a = np.asarray(data)
    a = np.asarray(a, dtype="<f4")
    if a.ndim == 2:
        magic = "Pf"
    elif a.ndim == 3 and a.shape[2] == 3:
        magic = "PF"
    else:
        raise UnsupportedVariant(f"cannot store shape {a.shape} as PFM")
    h, w = a.shape[:2]
    header = f"{magic}\n{w} {h}\n-1.0\n".encode("ascii")
    return header + np.ascontiguousarray(np.flipud(a)).tobytes()


def write_pfm(data, path: str | os.PathLike) -> None:
    with open(path, "wb") as f:
        f.write(encode_pfm(data))
