"""Curvature, contour endpoints, relatability and discrete elastica energy."""
from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .raster import (
    as_mask,
    connected_components,
    diffuse,
    dilate8,
    external_boundary,
    signed_distance,
    trace_boundary,
)

DEFAULT_BETA = 0.6
CURVATURE_CLAMP = 2.0
# Diffusion time applied to the signed distance before differentiating. The
# raw distance of a rasterised shape is a staircase at pixel scale and gives
# meaningless curvature on the boundary pixels themselves.
CURVATURE_SMOOTHING = 2.0
RELATABLE_TOL = 1e-9


@dataclass(frozen=True)
class ElasticaParams:
    beta: float = DEFAULT_BETA

    def __post_init__(self):
        if not self.beta >= 0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")


@dataclass(frozen=True)
class ContourEndpoint:
    """Where a visible contour meets the occluder.

    ``point`` and ``tangent`` are in ``(x, y)`` = ``(col, row)`` image
    coordinates; the tangent is a unit vector pointing into the occluded region.
    """

    point: tuple[float, float]
    tangent: tuple[float, float]

    def __post_init__(self):
        norm = math.hypot(*self.tangent)
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"tangent must be a unit vector, has norm {norm}")

    @property
    def pixel(self) -> tuple[int, int]:
        """``(row, col)`` of the endpoint."""
        return int(round(self.point[1])), int(round(self.point[0]))

    @property
    def normal(self) -> np.ndarray:
        tx, ty = self.tangent
        return np.array([-ty, tx])


def curvature_field(mask, smoothing: float = CURVATURE_SMOOTHING) -> np.ndarray:
    """Curvature ``div(grad u / |grad u|)`` of the level lines of the signed distance ``u``.

    Forward differences for the gradient, backward differences for the
    divergence (its adjoint, so the zero-flux walls of the grid are respected).
    Positive on the boundary of convex shapes. Clamped to [-2, 2].
    """
    u = signed_distance(mask)
    if smoothing:
        u = diffuse(u, smoothing)
    ux = np.zeros_like(u)
    uy = np.zeros_like(u)
    ux[:, :-1] = u[:, 1:] - u[:, :-1]
    uy[:-1, :] = u[1:, :] - u[:-1, :]
    norm = np.hypot(ux, uy)
    flat = norm < 1e-8
    norm[flat] = 1.0
    nx = np.where(flat, 0.0, ux / norm)
    ny = np.where(flat, 0.0, uy / norm)

    div = np.zeros_like(u)
    div[:, 0] += nx[:, 0]
    div[:, 1:] += nx[:, 1:] - nx[:, :-1]
    div[0, :] += ny[0, :]
    div[1:, :] += ny[1:, :] - ny[:-1, :]
    return np.clip(div, -CURVATURE_CLAMP, CURVATURE_CLAMP)


def elastica_energy(boundary, curv, params: ElasticaParams | float = DEFAULT_BETA) -> float:
    """Discrete elastica ``sum over boundary pixels of (kappa**2 + beta)``."""
    beta = params.beta if isinstance(params, ElasticaParams) else float(params)
    boundary = as_mask(boundary)
    k = np.asarray(curv, dtype=float)[boundary]
    return float(np.sum(k * k) + beta * k.size)


def _fit_tangent(points: np.ndarray, tip: np.ndarray) -> np.ndarray | None:
    """Total-least-squares direction of ``points`` (x, y), oriented towards ``tip``."""
    pts = np.unique(points, axis=0).astype(float)
    if len(pts) < 2:
        return None
    centred = pts - pts.mean(axis=0)
    _, _, vt = np.linalg.svd(centred, full_matrices=False)
    direction = vt[0]
    if np.dot(direction, tip - pts.mean(axis=0)) < 0:
        direction = -direction
    return direction / np.linalg.norm(direction)


def _cyclic_runs(flags: np.ndarray) -> list[tuple[int, int]]:
    """Maximal runs of True in a cyclic sequence as (start, end) inclusive indices."""
    n = len(flags)
    if n == 0 or not flags.any() or flags.all():
        return []
    # Rotate so index 0 is False; runs are then non-wrapping.
    offset = int(np.argmin(flags))
    f = np.roll(flags, -offset)
    runs = []
    k = 0
    while k < n:
        if f[k]:
            j = k
            while j + 1 < n and f[j + 1]:
                j += 1
            runs.append(((k + offset) % n, (j + offset) % n))
            k = j + 1
        else:
            k += 1
    return runs


def find_endpoints(visible, inpaint_mask, fit_window: int = 7) -> list[ContourEndpoint]:
    """Endpoints of visible contours arriving at the inpainting mask, with tangents.

    Each outer contour of ``visible`` is traced; the pixels 8-adjacent to the
    mask form runs along it. Both extremities of each run are endpoints. The
    tangent is the total-least-squares line through the endpoint and the
    ``fit_window`` contour pixels before it (walking away from the run),
    oriented towards the mask.
    """
    visible = as_mask(visible)
    inpaint_mask = as_mask(inpaint_mask)
    if (visible & inpaint_mask).any():
        raise ValueError("visible shape and inpainting mask must be disjoint")
    if fit_window < 1:
        raise ValueError("fit_window must be >= 1")
    near_mask = dilate8(inpaint_mask)
    endpoints: list[ContourEndpoint] = []
    for comp in connected_components(visible, connectivity=8):
        contour = trace_boundary(comp)
        n = len(contour)
        flags = near_mask[contour[:, 0], contour[:, 1]]
        for start, end in _cyclic_runs(flags):
            for idx, step in ((start, -1), (end, +1)):
                tip = contour[idx]
                window = contour[[(idx + step * j) % n for j in range(fit_window + 1)]]
                tangent = _fit_tangent(window[:, ::-1], tip[::-1].astype(float))
                if tangent is None:
                    continue
                ep = ContourEndpoint(
                    point=(float(tip[1]), float(tip[0])),
                    tangent=(float(tangent[0]), float(tangent[1])),
                )
                if not any(_same_endpoint(ep, other) for other in endpoints):
                    endpoints.append(ep)
    return endpoints


def _same_endpoint(a: ContourEndpoint, b: ContourEndpoint, max_angle_deg: float = 10.0) -> bool:
    if a.point != b.point:
        return False
    cos = float(np.dot(a.tangent, b.tangent))
    return cos >= math.cos(math.radians(max_angle_deg))


def outer_angle(a: ContourEndpoint, b: ContourEndpoint) -> float:
    """Angle in radians from ``a.tangent`` to ``-b.tangent``."""
    t1 = np.asarray(a.tangent)
    t2 = -np.asarray(b.tangent)
    cross = t1[0] * t2[1] - t1[1] * t2[0]
    return math.atan2(abs(cross), float(np.dot(t1, t2)))


def _semilines_intersect(a: ContourEndpoint, b: ContourEndpoint, eps: float = 1e-9) -> bool:
    p1, t1 = np.asarray(a.point), np.asarray(a.tangent)
    p2, t2 = np.asarray(b.point), np.asarray(b.tangent)
    d = p2 - p1
    denom = t1[0] * (-t2[1]) - t1[1] * (-t2[0])
    scale = max(1.0, float(np.abs(d).max()))
    if abs(denom) > eps:
        # p1 + lam t1 = p2 + mu t2, solved by Cramer's rule.
        lam = (d[0] * (-t2[1]) - d[1] * (-t2[0])) / denom
        mu = (t1[0] * d[1] - t1[1] * d[0]) / denom
        return lam >= -eps * scale and mu >= -eps * scale
    # Parallel: the rays meet only if they lie on one line and overlap.
    if abs(t1[0] * d[1] - t1[1] * d[0]) > eps * scale:
        return False
    if np.dot(t1, t2) > 0:
        return True
    return float(np.dot(t1, d)) >= -eps * scale


def relatable(a: ContourEndpoint, b: ContourEndpoint) -> bool:
    """Relatability of two contour endpoints.

    The rays ``x1 + l*t1`` and ``x2 + l*t2`` (l >= 0) must intersect and the
    angle from ``t1`` to ``-t2`` must be at most 90 degrees.
    """
    if outer_angle(a, b) > math.pi / 2 + RELATABLE_TOL:
        return False
    return _semilines_intersect(a, b) and _semilines_intersect(b, a)


def relatable_pairs(endpoints: list[ContourEndpoint]) -> list[tuple[ContourEndpoint, ContourEndpoint]]:
    """All unordered pairs of distinct endpoints that are relatable."""
    pairs = []
    for i in range(len(endpoints)):
        for j in range(i + 1, len(endpoints)):
            if relatable(endpoints[i], endpoints[j]):
                pairs.append((endpoints[i], endpoints[j]))
    return pairs


def boundary_curvature(mask) -> tuple[np.ndarray, np.ndarray]:
    """Convenience: the external boundary of ``mask`` and its curvature values."""
    b = external_boundary(mask)
    return b, curvature_field(mask)[b]
