"""Pixel-grid primitives: components, boundaries, signed distance and diffusion.

Masks are boolean ``numpy`` arrays indexed ``[row, col]``. Pixel sets (boundaries,
components) are represented the same way, as boolean arrays with the shape of
the scene, which keeps set algebra to ``&``, ``|`` and ``~``.
"""
from __future__ import annotations

from functools import lru_cache
import math

import numpy as np
from scipy import ndimage

_STRUCT4 = ndimage.generate_binary_structure(2, 1)
_STRUCT8 = ndimage.generate_binary_structure(2, 2)


class NoBoundaryError(ValueError):
    """Raised when a mask is uniform and therefore has no boundary."""


def as_mask(values) -> np.ndarray:
    """Return ``values`` as a 2-D boolean array, validating 0/1 content."""
    arr = np.asarray(values)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"mask must be a non-empty 2-D grid, got shape {arr.shape}")
    if arr.dtype != bool:
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("mask values must be 0 or 1")
        arr = arr.astype(bool)
    return arr


def label_components(mask, connectivity: int = 4) -> tuple[np.ndarray, int]:
    """Label connected components; labels increase in row-major order of first pixel."""
    if connectivity not in (4, 8):
        raise ValueError("connectivity must be 4 or 8")
    struct = _STRUCT4 if connectivity == 4 else _STRUCT8
    # ndimage.label scans in raster order, so label k is the component whose
    # smallest row-major member is the k-th such minimum.
    labels, n = ndimage.label(as_mask(mask), structure=struct)
    return labels, n


def connected_components(mask, connectivity: int = 4) -> list[np.ndarray]:
    """Split the 1-pixels of ``mask`` into maximal connected sets.

    Each component is returned as a boolean array. Components are ordered by
    their smallest member in row-major order.
    """
    labels, n = label_components(mask, connectivity)
    return [labels == k for k in range(1, n + 1)]


def count_components(mask, connectivity: int = 4) -> int:
    return label_components(mask, connectivity)[1]


def external_boundary(mask) -> np.ndarray:
    """1-pixels with at least one 4-neighbour that is 0 or off the grid."""
    mask = as_mask(mask)
    interior = ndimage.binary_erosion(mask, structure=_STRUCT4, border_value=0)
    return mask & ~interior


def dilate8(pixels) -> np.ndarray:
    """Pixel set grown by one step of 8-adjacency (the set plus its 8-neighbours)."""
    return ndimage.binary_dilation(as_mask(pixels), structure=_STRUCT8)


def _edt_squared(features: np.ndarray) -> np.ndarray:
    """Exact squared Euclidean distance to the nearest True pixel (Meijster et al.).

    Phase 1 runs the column scans vectorised over all columns; phase 2 builds
    the lower envelope of parabolas independently for every row.
    """
    m, n = features.shape
    inf = m + n
    g = np.empty((m, n), dtype=np.int64)
    g[0] = np.where(features[0], 0, inf)
    for y in range(1, m):
        g[y] = np.where(features[y], 0, g[y - 1] + 1)
    for y in range(m - 2, -1, -1):
        closer = g[y + 1] < g[y]
        g[y] = np.where(closer, g[y + 1] + 1, g[y])

    out = np.empty((m, n), dtype=np.int64)
    s = [0] * n
    t = [0] * n
    for y in range(m):
        gy = [int(v) for v in g[y]]
        sq = [v * v for v in gy]
        q = 0
        s[0] = 0
        t[0] = 0
        for u in range(1, n):
            while q >= 0 and (t[q] - s[q]) ** 2 + sq[s[q]] > (t[q] - u) ** 2 + sq[u]:
                q -= 1
            if q < 0:
                q = 0
                s[0] = u
            else:
                w = 1 + ((u * u - s[q] * s[q] + sq[u] - sq[s[q]]) // (2 * (u - s[q])))
                if w < n:
                    q += 1
                    s[q] = u
                    t[q] = w
        row = out[y]
        for u in range(n - 1, -1, -1):
            row[u] = (u - s[q]) ** 2 + sq[s[q]]
            if u == t[q]:
                q -= 1
    return out


def signed_distance(mask) -> np.ndarray:
    """Exact Euclidean distance to the nearest pixel of the opposite value.

    Negative inside the mask, positive outside. No pixel is zero: a pixel next
    to the boundary holds +-1.
    """
    mask = as_mask(mask)
    if mask.all() or not mask.any():
        raise NoBoundaryError("no boundary: mask is uniform")
    d_out = np.sqrt(_edt_squared(mask).astype(float))
    d_in = np.sqrt(_edt_squared(~mask).astype(float))
    return np.where(mask, -d_in, d_out)


def _neumann_laplacian_1d(n: int) -> np.ndarray:
    lap = np.zeros((n, n))
    if n == 1:
        return lap
    idx = np.arange(n)
    lap[idx, idx] = -2.0
    lap[idx[:-1], idx[:-1] + 1] = 1.0
    lap[idx[1:], idx[1:] - 1] = 1.0
    lap[0, 0] = lap[-1, -1] = -1.0
    return lap


@lru_cache(maxsize=None)
def _eigh_laplacian_1d(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.linalg.eigh(_neumann_laplacian_1d(n))


@lru_cache(maxsize=64)
def _propagator_1d(n: int, t: float) -> np.ndarray:
    """exp(t * L) for the 1-D second difference with reflecting ends."""
    lam, vec = _eigh_laplacian_1d(n)
    prop = (vec * np.exp(t * lam)) @ vec.T
    # Round-off can leave entries of order -1e-17 where the true kernel is tiny
    # and positive; clip so nonnegative fields stay nonnegative.
    np.maximum(prop, 0.0, out=prop)
    prop.setflags(write=False)
    return prop


def diffuse(field, t: float) -> np.ndarray:
    """Solve the discrete heat equation ``dv/dt = L v`` up to time ``t``.

    ``L`` is the 5-point Laplacian with zero-flux walls. It splits into row and
    column second differences that commute, so the flow is exactly
    ``exp(t L_rows) @ field @ exp(t L_cols)``, i.e. Lindeberg's discrete
    scale-space with reflecting boundary.
    """
    if t < 0:
        raise ValueError(f"diffusion time must be >= 0, got {t}")
    field = np.asarray(field, dtype=float)
    if t == 0:
        return field.copy()
    m, n = field.shape
    return _propagator_1d(m, float(t)) @ field @ _propagator_1d(n, float(t))


def heat_convolve(field, s: float) -> np.ndarray:
    """Gaussian smoothing ``G_s * field`` where ``G_s`` is the heat kernel at time ``s**2``."""
    if s < 0 or not math.isfinite(s):
        raise ValueError(f"diffusion scale must be finite and >= 0, got {s}")
    return diffuse(field, s * s)


# Clockwise in image coordinates (row axis points down), starting north.
_MOORE = ((-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1))
_MOORE_INDEX = {d: k for k, d in enumerate(_MOORE)}


def trace_boundary(component) -> np.ndarray:
    """Ordered outer contour of one 8-connected component (Moore-neighbour tracing).

    Returns an ``(n, 2)`` integer array of ``(row, col)`` pixels, clockwise on
    screen, starting at the component's first pixel in row-major order. The
    contour is closed implicitly (last pixel neighbours the first). Pixels on
    one-pixel-thick parts appear more than once.
    """
    comp = as_mask(component)
    if not comp.any():
        return np.empty((0, 2), dtype=int)
    padded = np.pad(comp, 1)
    rows, cols = np.nonzero(padded)
    start = (int(rows[0]), int(cols[0]))
    # The west neighbour of the first raster pixel is background.
    back = _MOORE_INDEX[(0, -1)]
    contour = [start]
    current = start
    first_move = None
    while True:
        for i in range(1, 9):
            k = (back + i) % 8
            dr, dc = _MOORE[k]
            nxt = (current[0] + dr, current[1] + dc)
            if padded[nxt]:
                break
        else:
            break  # isolated pixel
        prev_bg = _MOORE[(k - 1) % 8]
        # Background pixel examined just before the hit, seen from the new pixel.
        rel = (current[0] + prev_bg[0] - nxt[0], current[1] + prev_bg[1] - nxt[1])
        move = (current, k)
        if first_move is None:
            first_move = move
        elif move == first_move:
            contour.pop()  # start pixel re-added on the closing move
            break
        back = _MOORE_INDEX[rel]
        current = nxt
        contour.append(current)
    return np.asarray(contour, dtype=int) - 1
