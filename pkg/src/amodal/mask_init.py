"""Initial fill of the inpainting mask from relatable contour pairs.

Every endpoint of every relatable pair casts one vote on each mask pixel lying
in the closed half-plane bounded by its tangent line, on the side of the known
object. Votes are then thresholded at a rank-order value, lowered until the
fill creates no new connected component.
"""
from __future__ import annotations

import numpy as np

from .geometry import ContourEndpoint, find_endpoints, relatable_pairs
from .raster import as_mask, count_components

START_PERCENTILE = 75.0


def _known_halfplanes(pair, shape, visible: np.ndarray) -> list[np.ndarray]:
    """Closed half-planes through each endpoint of ``pair`` on the known object's side."""
    rows, cols = np.mgrid[: shape[0], : shape[1]]
    vis_x = cols[visible].astype(float)
    vis_y = rows[visible].astype(float)
    planes = []
    for ep in pair:
        nx, ny = ep.normal
        px, py = ep.point
        side = nx * (cols - px) + ny * (rows - py)
        vis_side = nx * (vis_x - px) + ny * (vis_y - py)
        # The known object's side: where most of its pixels are.
        if np.count_nonzero(vis_side >= 0) >= np.count_nonzero(vis_side <= 0):
            planes.append(side >= 0)
        else:
            planes.append(side <= 0)
    return planes


def halfspace_votes(
    pairs: list[tuple[ContourEndpoint, ContourEndpoint]],
    inpaint_mask,
    visible,
) -> np.ndarray:
    """Integer vote image, nonzero only inside ``inpaint_mask``."""
    mask = as_mask(inpaint_mask)
    visible = as_mask(visible)
    votes = np.zeros(mask.shape, dtype=np.int64)
    for pair in pairs:
        for plane in _known_halfplanes(pair, mask.shape, visible):
            votes += plane & mask
    return votes


def hidden_pairs(pairs, inpaint_mask, visible) -> list[tuple[ContourEndpoint, ContourEndpoint]]:
    """Pairs whose half-plane intersection reaches into the mask.

    A smooth convex join of the two contours stays inside both half-planes.
    When they share no mask pixel the join runs through known pixels, so the
    pair says nothing about what is hidden.
    """
    mask = as_mask(inpaint_mask)
    visible = as_mask(visible)
    kept = []
    for pair in pairs:
        a, b = _known_halfplanes(pair, mask.shape, visible)
        if (a & b & mask).any():
            kept.append(pair)
    return kept


def binarize_votes(votes, inpaint_mask, visible, percentile: float = START_PERCENTILE) -> np.ndarray:
    """Threshold the votes; return ``visible`` united with the accepted fill.

    The threshold starts at the given percentile of the positive votes and
    steps down through the distinct lower vote values while the fill would add
    a 4-connected component to ``visible``. If no threshold qualifies, the fill
    is empty.
    """
    votes = np.asarray(votes)
    mask = as_mask(inpaint_mask)
    visible = as_mask(visible)
    positive = votes[mask & (votes > 0)]
    if positive.size == 0:
        return visible.copy()
    start = np.percentile(positive, percentile, method="inverted_cdf")
    levels = np.unique(positive)
    base = count_components(visible, 4)
    for level in levels[levels <= start][::-1]:
        candidate = visible | (mask & (votes >= level))
        if count_components(candidate, 4) <= base:
            return candidate
    return visible.copy()


def accepted_threshold(votes, inpaint_mask, visible, percentile: float = START_PERCENTILE):
    """Vote level chosen by :func:`binarize_votes`, or ``None`` when the fill is empty."""
    votes = np.asarray(votes)
    mask = as_mask(inpaint_mask)
    visible = as_mask(visible)
    result = binarize_votes(votes, mask, visible, percentile)
    fill = result & mask
    if not fill.any():
        return None
    return int(votes[fill].min())


def initial_fill(visible, inpaint_mask, fit_window: int = 7) -> np.ndarray:
    """Perceptual initial fill (pixels inside the mask only) for ``visible``."""
    visible = as_mask(visible)
    mask = as_mask(inpaint_mask)
    endpoints = find_endpoints(visible, mask, fit_window)
    pairs = hidden_pairs(relatable_pairs(endpoints), mask, visible)
    votes = halfspace_votes(pairs, mask, visible)
    return binarize_votes(votes, mask, visible) & mask
