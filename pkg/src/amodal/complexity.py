"""Boundary-based shape complexity descriptor.

For each 4-connected component the outer contour is traced and four terms are
measured on it:

* distance entropy: entropy of centroid distances, scaled by the largest one;
* angle entropy: entropy of the angles at each contour point between the
  chords to the points ``stride`` steps behind and ahead;
* roughness: mean deviation of those angles from a straight angle, over pi;
* randomness: largest gap between the two contour arcs joining the most
  distant pair of points, one arc mirrored onto the other across the line
  through that pair, over the diameter.

They combine as ``(1 + R) (0.6 min(Cd, Ca) + 0.07 max(Cd, Ca) + 0.33 P)``.
Component complexities add up.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import as_mask, connected_components, trace_boundary


@dataclass(frozen=True)
class ComplexityParams:
    bins: int = 16
    stride: int = 3
    arc_samples: int = 64
    w_min: float = 0.6
    w_max: float = 0.07
    w_smooth: float = 0.33


@dataclass(frozen=True)
class ComplexityTerms:
    c_dist: float
    c_angle: float
    smoothness: float
    randomness: float

    def combine(self, params: ComplexityParams = ComplexityParams()) -> float:
        lo = min(self.c_dist, self.c_angle)
        hi = max(self.c_dist, self.c_angle)
        return (1.0 + self.randomness) * (
            params.w_min * lo + params.w_max * hi + params.w_smooth * self.smoothness
        )


def normalized_entropy(values: np.ndarray, bins: int, lo: float, hi: float) -> float:
    """Base-2 histogram entropy over [lo, hi] divided by log2(bins)."""
    counts, _ = np.histogram(values, bins=bins, range=(lo, hi))
    p = counts[counts > 0] / counts.sum()
    return float(-(p * np.log2(p)).sum() / np.log2(bins)) + 0.0


def turning_angles(contour: np.ndarray, stride: int) -> np.ndarray:
    """Angle in [0, pi] at each point between chords to its +-stride neighbours."""
    pts = contour.astype(float)
    back = np.roll(pts, stride, axis=0) - pts
    ahead = np.roll(pts, -stride, axis=0) - pts
    cross = back[:, 0] * ahead[:, 1] - back[:, 1] * ahead[:, 0]
    dot = (back * ahead).sum(axis=1)
    return np.arctan2(np.abs(cross), dot)


def _resample(arc: np.ndarray, samples: int) -> np.ndarray:
    seg = np.hypot(*np.diff(arc, axis=0).T)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    if s[-1] == 0:
        return np.repeat(arc[:1], samples, axis=0)
    u = np.linspace(0.0, 1.0, samples) * s[-1]
    return np.column_stack([np.interp(u, s, arc[:, 0]), np.interp(u, s, arc[:, 1])])


def _arc_deviation(contour: np.ndarray, i: int, j: int, samples: int) -> float:
    n = len(contour)
    a, b = contour[i].astype(float), contour[j].astype(float)
    forward = contour[[(i + k) % n for k in range((j - i) % n + 1)]].astype(float)
    backward = contour[[(i - k) % n for k in range((i - j) % n + 1)]].astype(float)
    f = _resample(forward, samples)
    g = _resample(backward, samples)
    axis = (b - a) / np.linalg.norm(b - a)
    rel = g - a
    along = rel @ axis
    mirrored = a + 2.0 * np.outer(along, axis) - rel
    return float(np.hypot(*(f - mirrored).T).max())


def randomness(contour: np.ndarray, samples: int = 64) -> float:
    """Mirror-symmetry gap between the two arcs of the contour's diameter, over the diameter.

    When several point pairs attain the diameter the largest gap is kept, which
    makes the value independent of where the tracing started.
    """
    pts = contour.astype(np.int64)
    diff = pts[:, None, :] - pts[None, :, :]
    d2 = (diff**2).sum(axis=2)
    best = d2.max()
    if best == 0:
        return 0.0
    diameter = float(np.sqrt(best))
    pairs = np.argwhere(np.triu(d2 == best, k=1))
    return max(_arc_deviation(pts, int(i), int(j), samples) for i, j in pairs) / diameter


def component_terms(component, params: ComplexityParams = ComplexityParams()) -> ComplexityTerms | None:
    """The four descriptor terms for a single component; ``None`` if it is degenerate."""
    comp = as_mask(component)
    contour = trace_boundary(comp)
    if len(np.unique(contour, axis=0)) < 3:
        return None
    rows, cols = np.nonzero(comp)
    centroid = np.array([rows.mean(), cols.mean()])
    dist = np.hypot(*(contour - centroid).T)
    c_dist = normalized_entropy(dist / dist.max(), params.bins, 0.0, 1.0)
    theta = turning_angles(contour, params.stride)
    c_angle = normalized_entropy(theta, params.bins, 0.0, np.pi)
    smooth = float(np.mean(np.abs(theta - np.pi) / np.pi))
    return ComplexityTerms(c_dist, c_angle, smooth, randomness(contour, params.arc_samples))


def shape_complexity(shape, params: ComplexityParams = ComplexityParams()) -> float:
    """Sum of the per-component complexities of ``shape`` (4-connectivity)."""
    total = 0.0
    for comp in connected_components(shape, connectivity=4):
        terms = component_terms(comp, params)
        if terms is not None:
            total += terms.combine(params)
    return total
