"""Synthetic two-object scenes used by the tests and demos."""
from __future__ import annotations

import numpy as np


def disk(shape, center, radius) -> np.ndarray:
    """Rasterised disk: pixel centres within ``radius`` of ``center`` = (row, col)."""
    rr, cc = np.mgrid[: shape[0], : shape[1]]
    return (rr - center[0]) ** 2 + (cc - center[1]) ** 2 <= radius**2


def ellipse(shape, center, radii) -> np.ndarray:
    """Axis-aligned ellipse with ``radii`` = (row semi-axis, col semi-axis)."""
    rr, cc = np.mgrid[: shape[0], : shape[1]]
    return ((rr - center[0]) / radii[0]) ** 2 + ((cc - center[1]) / radii[1]) ** 2 <= 1.0


def rectangle(shape, top, left, height, width) -> np.ndarray:
    out = np.zeros(shape, dtype=bool)
    out[top : top + height, left : left + width] = True
    return out


def abutting_rectangles(size=128):
    """Two rectangles, 40x30 above 40x20, sharing their 40-pixel edge."""
    shape = (size, size)
    top = rectangle(shape, 34, 44, 30, 40)
    bottom = rectangle(shape, 64, 44, 20, 40)
    return top, bottom


def square_over_disk(size=128, radius=28, side=40, corner_offset=6):
    """A square covering the lower-right quadrant of a disk.

    Returns ``(square, visible_disk_part, full_disk)``. The square's corner sits
    ``corner_offset`` pixels below and right of the disk centre; with offset 0
    the hidden arc turns exactly 90 degrees, the knife edge of relatability.
    """
    shape = (size, size)
    c = (size // 2 - 8, size // 2 - 8)
    full = disk(shape, c, radius)
    square = rectangle(shape, c[0] + corner_offset, c[1] + corner_offset, side, side)
    return square, full & ~square, full


def ellipse_behind_bar(size=128):
    """Top and bottom caps of an ellipse whose middle band is hidden by a bar."""
    shape = (size, size)
    full = ellipse(shape, (size // 2, size // 2), (40, 22))
    bar = rectangle(shape, size // 2 - 12, 16, 24, size - 32)
    return full & ~bar, bar


def offset_bars_behind_bar(size=128):
    """Two vertical bars on either side of an occluding bar, horizontally offset.

    Their contours cannot be joined by a monotone smooth curve: no endpoint
    pair is relatable.
    """
    shape = (size, size)
    bar = rectangle(shape, size // 2 - 12, 16, 24, size - 32)
    upper = rectangle(shape, 20, 30, size // 2 - 12 - 20, 16)
    lower = rectangle(shape, size // 2 + 12, 82, size // 2 - 12 - 20, 16)
    return upper | lower, bar
