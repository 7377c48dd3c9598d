"""Distal hypotheses for a two-object scene and their Bayesian scores.

Hypothesis 1 puts ``X1`` in front and completes ``X2`` behind it, hypothesis 2
the reverse, and hypothesis 3 is the mosaic: both regions as they are, fitted
together at one depth. Each is scored by

* a likelihood ``exp(-w1 E)`` where ``E`` is the elastica of its common and
  disoccluded boundaries and ``w1 = 1 / max E``;
* a prior ``exp(-w2 T)`` where ``T`` is the summed complexity of its two
  objects and ``w2 = 1 / max T``.

Posteriors are the normalised products.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
import math

import numpy as np

from .complexity import ComplexityParams, shape_complexity
from .disocclusion import ThresholdDynamicsConfig, inpaint
from .geometry import ElasticaParams, curvature_field, elastica_energy
from .mask_init import initial_fill
from .raster import as_mask, dilate8, external_boundary


TIE_RTOL = 1e-12


@dataclass(frozen=True)
class SceneInput:
    x1: np.ndarray
    x2: np.ndarray

    def __post_init__(self):
        x1 = as_mask(self.x1)
        x2 = as_mask(self.x2)
        if x1.shape != x2.shape:
            raise ValueError("scene masks differ in size")
        if not x1.any() or not x2.any():
            raise ValueError("both proximal regions must be nonempty")
        if (x1 & x2).any():
            raise ValueError("proximal regions overlap")
        object.__setattr__(self, "x1", x1)
        object.__setattr__(self, "x2", x2)


@dataclass
class Hypothesis:
    """One interpretation.

    ``layer1`` is the front object and ``layer2`` the (possibly completed)
    object behind it; for the mosaic both sit at one depth. ``completed`` is
    the disoccluded object ``D`` for hypotheses 1 and 2.
    """

    index: int
    occluder: np.ndarray | None
    completed: np.ndarray
    layer1: np.ndarray
    layer2: np.ndarray
    visible_part: np.ndarray | None = None
    b_common: np.ndarray | None = None
    b_disoccluded: np.ndarray | None = None
    unconverged: bool = False
    iterations: int = 0

    def objects(self) -> tuple[np.ndarray, np.ndarray]:
        """The objects containing ``X1`` and ``X2`` respectively."""
        if self.index == 1:
            return self.layer1, self.layer2
        if self.index == 2:
            return self.layer2, self.layer1
        return self.layer1, self.layer2


def _occlusion_hypothesis(index, front, behind, cfg, fit_window) -> Hypothesis:
    fill = initial_fill(behind, front, fit_window)
    result = inpaint(behind, front, fill, cfg)
    return Hypothesis(
        index=index,
        occluder=front,
        completed=result.shape,
        layer1=front,
        layer2=result.shape,
        visible_part=behind,
        unconverged=result.unconverged,
        iterations=result.iterations,
    )


def build_hypotheses(
    scene: SceneInput,
    cfg: ThresholdDynamicsConfig | None = None,
    fit_window: int = 7,
) -> list[Hypothesis]:
    """The three hypotheses of ``scene``, with boundary sets attached."""
    cfg = cfg or ThresholdDynamicsConfig()
    hyps = [
        _occlusion_hypothesis(1, scene.x1, scene.x2, cfg, fit_window),
        _occlusion_hypothesis(2, scene.x2, scene.x1, cfg, fit_window),
        Hypothesis(
            index=3,
            occluder=None,
            completed=scene.x1 | scene.x2,
            layer1=scene.x1,
            layer2=scene.x2,
        ),
    ]
    for h in hyps:
        h.b_common, h.b_disoccluded = boundary_sets(h, scene)
    return hyps


def boundary_sets(h: Hypothesis, scene: SceneInput) -> tuple[np.ndarray, np.ndarray]:
    """Common boundary ``B^c`` and disoccluded boundary ``B^d`` of a hypothesis.

    ``B^c`` holds the boundary pixels of the object containing ``X1`` that are
    8-adjacent to (or on) the boundary of the object containing ``X2``; two
    abutting shapes never share boundary pixels exactly. ``B^d`` is the
    boundary of the completed object that the visible part did not have. When
    the completion changed nothing, or for the mosaic, the objects fit
    together and ``B^d = B^c``.
    """
    a1, a2 = h.objects()
    common = external_boundary(a1) & dilate8(external_boundary(a2))
    if h.index == 3 or h.visible_part is None or np.array_equal(h.completed, h.visible_part):
        return common, common.copy()
    disoccluded = external_boundary(h.completed) & ~external_boundary(h.visible_part)
    return common, disoccluded


def hypothesis_curvatures(h: Hypothesis) -> tuple[np.ndarray, np.ndarray]:
    """Curvature fields sampled on ``B^c`` and ``B^d`` respectively.

    ``B^c`` lies on the object containing ``X1`` and is measured there; a
    genuine disoccluded boundary is measured on the completed object.
    """
    a1, _ = h.objects()
    k_common = curvature_field(a1)
    if h.index == 3 or h.visible_part is None or np.array_equal(h.completed, h.visible_part):
        return k_common, k_common
    return k_common, curvature_field(h.completed)


def boundary_energies(hyps, curvatures=None, params: ElasticaParams | float = ElasticaParams()) -> list[float]:
    """Elastica ``E`` of ``B^c`` plus ``B^d`` for each hypothesis."""
    if curvatures is None:
        curvatures = [hypothesis_curvatures(h) for h in hyps]
    return [
        elastica_energy(h.b_common, kc, params) + elastica_energy(h.b_disoccluded, kd, params)
        for h, (kc, kd) in zip(hyps, curvatures)
    ]


def _normalized_exp(values) -> tuple[list[float], float]:
    top = max(values)
    omega = 1.0 / top if top > 0 else 0.0
    return [math.exp(-omega * v) for v in values], omega


def likelihood_scores(hyps, curvatures=None, params: ElasticaParams | float = ElasticaParams()):
    """``p~(I/H_i) = exp(-w1 E_i)`` with ``w1 = 1 / max E``.

    Returns ``(likelihoods, energies, w1)``.
    """
    energies = boundary_energies(hyps, curvatures, params)
    likes, omega1 = _normalized_exp(energies)
    return likes, energies, omega1


def prior_scores(hyps, params: ComplexityParams = ComplexityParams()):
    """``p~(H_i) = exp(-w2 T_i)`` with ``T_i`` the complexity of both objects.

    Returns ``(priors, complexities, w2)`` where ``complexities[i]`` is the
    pair ``(compl(layer1), compl(layer2))``.
    """
    cache: dict[bytes, float] = {}

    def compl(mask):
        key = np.packbits(mask).tobytes() + repr(mask.shape).encode()
        if key not in cache:
            cache[key] = shape_complexity(mask, params)
        return cache[key]

    pairs = [(compl(h.layer1), compl(h.layer2)) for h in hyps]
    priors, omega2 = _normalized_exp([c1 + c2 for c1, c2 in pairs])
    return priors, pairs, omega2


@dataclass
class HypothesisScore:
    index: int
    E_B: float
    compl: tuple[float, float]
    like_tilde: float
    prior_tilde: float
    posterior: float
    unconverged: bool = False


@dataclass
class InterpretationReport:
    hypotheses: list[HypothesisScore]
    selected: int
    omega1: float
    omega2: float
    config: dict = field(default_factory=dict)

    @property
    def posteriors(self) -> list[float]:
        return [h.posterior for h in self.hypotheses]

    def to_dict(self) -> dict:
        return {
            "hypotheses": [
                {
                    "index": h.index,
                    "E_B": h.E_B,
                    "compl": list(h.compl),
                    "like_tilde": h.like_tilde,
                    "prior_tilde": h.prior_tilde,
                    "posterior": h.posterior,
                    "unconverged": h.unconverged,
                }
                for h in self.hypotheses
            ],
            "selected": self.selected,
            "omega1": self.omega1,
            "omega2": self.omega2,
            "config": dict(self.config),
        }


def select(
    likes,
    priors,
    energies=None,
    complexities=None,
    omega1: float = float("nan"),
    omega2: float = float("nan"),
    unconverged=None,
    config: dict | None = None,
) -> InterpretationReport:
    """Normalise ``likes * priors`` into posteriors and pick the largest.

    Ties go to the lowest hypothesis index. Products within a relative
    ``TIE_RTOL`` of the largest count as tied, so rounding in the products
    cannot flip the choice.
    """
    products = [l * p for l, p in zip(likes, priors)]
    total = sum(products)
    if not total > 0:
        raise ValueError("likelihood-prior products must be positive")
    n = len(products)
    energies = energies if energies is not None else [float("nan")] * n
    complexities = complexities if complexities is not None else [(float("nan"),) * 2] * n
    unconverged = unconverged if unconverged is not None else [False] * n
    scores = [
        HypothesisScore(
            index=i + 1,
            E_B=float(energies[i]),
            compl=(float(complexities[i][0]), float(complexities[i][1])),
            like_tilde=float(likes[i]),
            prior_tilde=float(priors[i]),
            posterior=products[i] / total,
            unconverged=bool(unconverged[i]),
        )
        for i in range(n)
    ]
    top = max(products)
    best = next(i for i in range(n) if products[i] >= top * (1.0 - TIE_RTOL))
    return InterpretationReport(scores, best + 1, omega1, omega2, config or {})


def interpret(
    scene: SceneInput,
    cfg: ThresholdDynamicsConfig | None = None,
    fit_window: int = 7,
    complexity: ComplexityParams = ComplexityParams(),
) -> tuple[InterpretationReport, list[Hypothesis]]:
    """Build, score and rank the three hypotheses of ``scene``."""
    cfg = cfg or ThresholdDynamicsConfig()
    hyps = build_hypotheses(scene, cfg, fit_window)
    likes, energies, omega1 = likelihood_scores(hyps, params=ElasticaParams(cfg.beta))
    priors, pairs, omega2 = prior_scores(hyps, complexity)
    config = dict(asdict(cfg), fit_window=fit_window)
    report = select(
        likes,
        priors,
        energies,
        pairs,
        omega1,
        omega2,
        [h.unconverged for h in hyps],
        config,
    )
    return report, hyps
