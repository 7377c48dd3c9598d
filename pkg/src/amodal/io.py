"""Reading and writing grayscale images: binary PGM (P5) and PNG."""
from __future__ import annotations

from pathlib import Path

import numpy as np


def _pgm_tokens(data: bytes, count: int) -> tuple[list[int], int]:
    """First ``count`` header integers after the magic number, and the raster offset."""
    tokens: list[int] = []
    pos = 2
    while len(tokens) < count:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and data[pos : pos + 1].isdigit():
            pos += 1
        if start == pos:
            raise ValueError("malformed PGM header")
        tokens.append(int(data[start:pos]))
    # exactly one whitespace byte separates the header from the raster
    return tokens, pos + 1


def read_pgm(path) -> np.ndarray:
    """Binary PGM, 8 or 16 bit (big-endian), as uint8 or uint16."""
    data = Path(path).read_bytes()
    if data[:2] != b"P5":
        raise ValueError(f"{path}: not a binary PGM (P5) file")
    (width, height, maxval), offset = _pgm_tokens(data, 3)
    if not 0 < maxval < 65536:
        raise ValueError(f"{path}: bad maxval {maxval}")
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
    need = width * height * dtype.itemsize
    raster = data[offset : offset + need]
    if len(raster) != need:
        raise ValueError(f"{path}: truncated raster")
    img = np.frombuffer(raster, dtype=dtype).reshape(height, width)
    return img.astype(np.uint16 if maxval > 255 else np.uint8)


def write_pgm(path, image) -> None:
    """Write a 2D integer image as binary PGM; 16 bit when any value exceeds 255."""
    img = np.asarray(image)
    if img.ndim != 2:
        raise ValueError("PGM images are two-dimensional")
    if img.dtype == bool:
        img = img.astype(np.uint8) * 255
    if img.size and (img.min() < 0 or img.max() > 65535):
        raise ValueError("pixel values must lie in [0, 65535]")
    wide = img.dtype.itemsize > 1 and img.size and img.max() > 255
    maxval = 65535 if wide else 255
    raster = img.astype(">u2" if wide else np.uint8).tobytes()
    header = f"P5\n{img.shape[1]} {img.shape[0]}\n{maxval}\n".encode("ascii")
    Path(path).write_bytes(header + raster)


def write_mask(path, mask) -> None:
    """A boolean mask as an 8-bit PGM with values 0 and 255."""
    write_pgm(path, np.asarray(mask, dtype=bool))


def read_mask(path) -> np.ndarray:
    return read_pgm(path) > 0


def read_image(path) -> np.ndarray:
    """Grayscale image from a PGM or PNG file (PNGs are converted to luminance)."""
    path = Path(path)
    with open(path, "rb") as fh:
        magic = fh.read(8)
    if magic[:2] == b"P5":
        return read_pgm(path)
    if magic == b"\x89PNG\r\n\x1a\n":
        from PIL import Image

        with Image.open(path) as im:
            if im.mode in ("I;16", "I;16B", "I"):
                return np.asarray(im).astype(np.uint16)
            return np.asarray(im.convert("L"))
    raise ValueError(f"{path}: unsupported image format (expected PGM P5 or PNG)")
