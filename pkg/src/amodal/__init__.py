"""Amodal completion of two-object scenes by Bayesian model selection.

A scene holds two disjoint regions. Each may be hiding part of the other, or
the two may simply fit together; the package builds all three
interpretations, completes hidden shapes by curvature-driven inpainting and
ranks the interpretations by boundary energy and shape complexity.
"""
from .complexity import ComplexityParams, shape_complexity
from .disocclusion import InpaintResult, ThresholdDynamicsConfig, inpaint
from .geometry import (
    ContourEndpoint,
    ElasticaParams,
    curvature_field,
    elastica_energy,
    find_endpoints,
    outer_angle,
    relatable,
    relatable_pairs,
)
from .hypothesis import (
    Hypothesis,
    InterpretationReport,
    SceneInput,
    build_hypotheses,
    interpret,
    likelihood_scores,
    prior_scores,
    select,
)
from .mask_init import binarize_votes, halfspace_votes, initial_fill
from .raster import (
    NoBoundaryError,
    connected_components,
    diffuse,
    external_boundary,
    heat_convolve,
    signed_distance,
    trace_boundary,
)

__all__ = [
    "ComplexityParams",
    "ContourEndpoint",
    "ElasticaParams",
    "Hypothesis",
    "InpaintResult",
    "InterpretationReport",
    "NoBoundaryError",
    "SceneInput",
    "ThresholdDynamicsConfig",
    "binarize_votes",
    "build_hypotheses",
    "connected_components",
    "curvature_field",
    "diffuse",
    "elastica_energy",
    "external_boundary",
    "find_endpoints",
    "halfspace_votes",
    "heat_convolve",
    "initial_fill",
    "inpaint",
    "interpret",
    "likelihood_scores",
    "outer_angle",
    "prior_scores",
    "relatable",
    "relatable_pairs",
    "select",
    "shape_complexity",
    "signed_distance",
    "trace_boundary",
]
