"""Binary inpainting by threshold dynamics that decreases the elastica energy.

One iteration alternates a Grzibovskis-Heintz step (curvature-squared flow), a
Merriman-Bence-Osher step (length flow, weighted by ``beta``) and a fidelity
step that restores every pixel outside the inpainting mask.
"""
from __future__ import annotations

from dataclasses import dataclass
import logging
import math
from typing import Callable

import numpy as np

from .geometry import DEFAULT_BETA
from .raster import as_mask, diffuse, heat_convolve

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThresholdDynamicsConfig:
    alpha: float = 0.99
    dt: float = 12.0
    beta: float = DEFAULT_BETA
    stop_tol: float = 1e-3
    max_iters: int = 500

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.dt > 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if not self.beta >= 0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")
        if not self.stop_tol > 0:
            raise ValueError(f"stop_tol must be > 0, got {self.stop_tol}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")


@dataclass(frozen=True)
class InpaintResult:
    shape: np.ndarray
    iterations: int
    converged: bool

    @property
    def unconverged(self) -> bool:
        return not self.converged


def gh_decision(shape, cfg: ThresholdDynamicsConfig) -> np.ndarray:
    """``2a G_sqrt(dt) * 1 - 2 G_(a^2 sqrt(dt)) * 1`` for the indicator of ``shape``."""
    chi = as_mask(shape).astype(float)
    root = math.sqrt(cfg.dt)
    wide = heat_convolve(chi, root)
    narrow = heat_convolve(chi, cfg.alpha**2 * root)
    return 2.0 * cfg.alpha * wide - 2.0 * narrow


def gh_step(shape, cfg: ThresholdDynamicsConfig) -> np.ndarray:
    """Grzibovskis-Heintz step: keep pixels whose decision value is <= alpha - 1."""
    return gh_decision(shape, cfg) <= cfg.alpha - 1.0


def mbo_step(shape, cfg: ThresholdDynamicsConfig) -> np.ndarray:
    """Merriman-Bence-Osher step: diffuse for time ``beta * dt`` and threshold at 1/2."""
    chi = as_mask(shape).astype(float)
    return diffuse(chi, cfg.beta * cfg.dt) >= 0.5


def inpaint(
    visible,
    inpaint_mask,
    init_fill=None,
    cfg: ThresholdDynamicsConfig | None = None,
    callback: Callable[[int, np.ndarray], None] | None = None,
) -> InpaintResult:
    """Complete ``visible`` inside ``inpaint_mask``.

    The iteration starts from ``visible | init_fill`` and stops once the
    number of pixels that changed in one iteration is at most
    ``cfg.stop_tol``; with the default 1e-3 that is a fixed point.
    ``callback(n, shape)`` is invoked with every iterate.
    """
    cfg = cfg or ThresholdDynamicsConfig()
    visible = as_mask(visible)
    mask = as_mask(inpaint_mask)
    if visible.shape != mask.shape:
        raise ValueError("visible shape and inpainting mask differ in size")
    if (visible & mask).any():
        raise ValueError("visible shape and inpainting mask must be disjoint")
    fill = np.zeros_like(mask) if init_fill is None else as_mask(init_fill)
    if (fill & ~mask).any():
        raise ValueError("initial fill must lie inside the inpainting mask")

    known = ~mask
    current = visible | fill
    if callback is not None:
        callback(0, current)
    for n in range(1, cfg.max_iters + 1):
        gamma = mbo_step(gh_step(current, cfg), cfg)
        nxt = np.where(known, visible, gamma)
        changed = np.count_nonzero(nxt != current)
        current = nxt
        if callback is not None:
            callback(n, current)
        if changed <= cfg.stop_tol:
            return InpaintResult(current, n, True)
    log.warning("threshold dynamics did not converge in %d iterations", cfg.max_iters)
    return InpaintResult(current, cfg.max_iters, False)
