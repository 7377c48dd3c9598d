"""Command-line pipeline: image in, ranked interpretations and mask files out.

    python -m amodal scene.pgm --thresholds 64,192,256 --out results/
    python -m amodal labels.pgm --labels 3,7 --out results/ --render

Exit status is 0 on success, 1 for bad input and 2 for anything else.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
import json
import logging
from pathlib import Path
import sys

import numpy as np

from .disocclusion import ThresholdDynamicsConfig
from .hypothesis import Hypothesis, InterpretationReport, SceneInput, interpret
from .io import read_image, write_mask, write_pgm

log = logging.getLogger(__name__)


class InputError(ValueError):
    """Raised for inputs the pipeline cannot interpret."""


@dataclass(frozen=True)
class RunConfig:
    beta: float = 0.6
    alpha: float = 0.99
    dt: float = 12.0
    stop_tol: float = 1e-3
    max_iters: int = 500
    fit_window: int = 7
    thresholds: tuple[float, ...] | None = None
    label_pair: tuple[int, int] | None = None

    def __post_init__(self):
        # reuse the dynamics validation
        self.dynamics()
        if self.fit_window < 2:
            raise ValueError(f"fit_window must be >= 2, got {self.fit_window}")
        if self.thresholds is not None:
            t = np.asarray(self.thresholds, dtype=float)
            if t.size < 2 or np.any(np.diff(t) <= 0):
                raise ValueError("thresholds must be at least two strictly increasing values")
        if self.label_pair is not None and self.label_pair[0] == self.label_pair[1]:
            raise ValueError("the two labels must differ")

    def dynamics(self) -> ThresholdDynamicsConfig:
        return ThresholdDynamicsConfig(
            alpha=self.alpha,
            dt=self.dt,
            beta=self.beta,
            stop_tol=self.stop_tol,
            max_iters=self.max_iters,
        )


def _frame_count(mask: np.ndarray) -> int:
    return int(mask[0].sum() + mask[-1].sum() + mask[1:-1, 0].sum() + mask[1:-1, -1].sum())


def bilevel_sets(image, thresholds) -> list[np.ndarray]:
    """``{x : t[n] <= I(x) < t[n+1]}`` for each consecutive pair of thresholds."""
    img = np.asarray(image, dtype=float)
    t = np.asarray(thresholds, dtype=float)
    if t.size < 2 or np.any(np.diff(t) <= 0):
        raise InputError("thresholds must be at least two strictly increasing values")
    return [(img >= lo) & (img < hi) for lo, hi in zip(t[:-1], t[1:])]


def background_index(masks) -> int | None:
    """Index of the set holding the most frame pixels, or None if none touches the frame."""
    counts = [_frame_count(m) for m in masks]
    if not counts or max(counts) == 0:
        return None
    return int(np.argmax(counts))


def decompose_bilevel(image, thresholds) -> list[np.ndarray]:
    """Bi-level sets of ``image``; fails unless two non-background sets are nonempty.

    All sets are returned, background included; :func:`scene_pair` picks the
    two proximal objects from them.
    """
    masks = bilevel_sets(image, thresholds)
    bg = background_index(masks)
    objects = [m for i, m in enumerate(masks) if i != bg and m.any()]
    if len(objects) < 2:
        raise InputError("need two proximal objects")
    return masks


def scene_pair(masks) -> SceneInput:
    """The two largest non-background sets, in their threshold order."""
    bg = background_index(masks)
    candidates = [i for i, m in enumerate(masks) if i != bg and m.any()]
    if len(candidates) < 2:
        raise InputError("need two proximal objects")
    largest = sorted(candidates, key=lambda i: (-int(masks[i].sum()), i))[:2]
    a, b = sorted(largest)
    return SceneInput(masks[a], masks[b])


def default_thresholds(image) -> list[float]:
    """One level per distinct gray value."""
    values = np.unique(np.asarray(image))
    return [float(v) for v in values] + [float(values[-1]) + 1.0]


def label_scene(labels, pair) -> SceneInput:
    labels = np.asarray(labels)
    x1, x2 = labels == pair[0], labels == pair[1]
    for lab, m in zip(pair, (x1, x2)):
        if not m.any():
            raise InputError(f"label {lab} does not occur in the label map")
    return SceneInput(x1, x2)


def scene_from_image(image, config: RunConfig) -> SceneInput:
    image = np.asarray(image)
    if image.ndim != 2:
        raise InputError("expected a single-channel image")
    if config.label_pair is not None:
        return label_scene(image, config.label_pair)
    if config.thresholds is not None:
        thresholds = config.thresholds
    else:
        if len(np.unique(image)) > 3:
            raise InputError("image has more than three regions; pass --labels or --thresholds")
        thresholds = default_thresholds(image)
    return scene_pair(decompose_bilevel(image, thresholds))


def run(scene: SceneInput, config: RunConfig = RunConfig()) -> tuple[InterpretationReport, list[Hypothesis]]:
    """Build, score and select the three interpretations of ``scene``."""
    return interpret(scene, config.dynamics(), config.fit_window)


def report_json(report: InterpretationReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def composite(h: Hypothesis) -> np.ndarray:
    """Gray rendering: front layer white, the object behind it mid-gray."""
    img = np.zeros(h.layer1.shape, dtype=np.uint8)
    img[h.layer2] = 128
    img[h.layer1] = 255
    return img


def write_outputs(out_dir, report: InterpretationReport, hyps, render: bool = False) -> list[Path]:
    """Report and per-hypothesis masks; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    path = out / "report.json"
    path.write_text(report_json(report))
    written.append(path)
    for h in hyps:
        for name, mask in (("layer1", h.layer1), ("layer2", h.layer2), ("completed", h.completed)):
            path = out / f"h{h.index}_{name}.pgm"
            write_mask(path, mask)
            written.append(path)
        if render:
            path = out / f"h{h.index}_render.pgm"
            write_pgm(path, composite(h))
            written.append(path)
    return written


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _label_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected two labels, e.g. 3,7")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"labels must be integers: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="amodal", description="Rank occlusion and mosaic interpretations of a two-object image.")
    p.add_argument("image", help="grayscale PGM (P5) or PNG; a 16-bit PGM label map with --labels")
    d = RunConfig()
    p.add_argument("--beta", type=float, default=d.beta, help="length weight of the elastica")
    p.add_argument("--alpha", type=float, default=d.alpha)
    p.add_argument("--dt", type=float, default=d.dt, help="threshold dynamics time step")
    p.add_argument("--stop-tol", type=float, default=d.stop_tol, help="max changed pixels at convergence")
    p.add_argument("--max-iters", type=int, default=d.max_iters)
    p.add_argument("--fit-window", type=int, default=d.fit_window, help="contour pixels per tangent fit")
    p.add_argument("--thresholds", type=_float_list, help="increasing gray levels a,b,c for bi-level sets")
    p.add_argument("--labels", type=_label_pair, help="two labels a,b of a label map")
    p.add_argument("--out", type=Path, help="directory for report.json and mask images")
    p.add_argument("--render", action="store_true", help="also write a composite image per hypothesis")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # bad flags, or --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        config = RunConfig(
            beta=args.beta,
            alpha=args.alpha,
            dt=args.dt,
            stop_tol=args.stop_tol,
            max_iters=args.max_iters,
            fit_window=args.fit_window,
            thresholds=args.thresholds,
            label_pair=args.labels,
        )
        scene = scene_from_image(read_image(args.image), config)
    except (OSError, ValueError) as exc:
        print(f"amodal: error: {exc}", file=sys.stderr)
        return 1
    try:
        report, hyps = run(scene, config)
        if args.out is not None:
            write_outputs(args.out, report, hyps, args.render)
        else:
            sys.stdout.write(report_json(report))
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error")
        print(f"amodal: internal error: {exc}", file=sys.stderr)
        return 2
    return 0
