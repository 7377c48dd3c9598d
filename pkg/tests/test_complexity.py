import math

import numpy as np
import pytest

from amodal.complexity import (
    ComplexityParams,
    ComplexityTerms,
    component_terms,
    normalized_entropy,
    randomness,
    shape_complexity,
    turning_angles,
)
from amodal.raster import trace_boundary
from amodal.scenes import disk, rectangle


def star(shape, center, r_in, r_out, points=5):
    rr, cc = np.mgrid[: shape[0], : shape[1]]
    ang = np.arctan2(rr - center[0], cc - center[1])
    rad = np.hypot(rr - center[0], cc - center[1])
    # radius oscillates between the inner and outer value
    limit = r_in + (r_out - r_in) * np.abs(np.cos(points * ang / 2)) ** 2
    return rad <= limit


def l_shape(shape):
    return rectangle(shape, 30, 30, 60, 24) | rectangle(shape, 66, 30, 24, 60)


SHAPE = (128, 128)
DISK = disk(SHAPE, (64, 64), 30)
SQUARE = rectangle(SHAPE, 38, 38, 53, 53)
STAR = star(SHAPE, (64, 64), 18, 44)


def test_entropy_extremes():
    assert normalized_entropy(np.full(50, 0.5), 16, 0.0, 1.0) == 0.0
    uniform = (np.arange(16) + 0.5) / 16
    assert normalized_entropy(uniform, 16, 0.0, 1.0) == pytest.approx(1.0)


def test_turning_angles_of_straight_and_square_corner():
    line = np.array([[0, i] for i in range(10)])
    closed = np.vstack([line, line[::-1][1:-1]])
    assert np.allclose(turning_angles(closed, 3)[3:7], math.pi)
    square = trace_boundary(rectangle((20, 20), 5, 5, 8, 8))
    assert turning_angles(square, 3).min() == pytest.approx(math.pi / 2)


def test_randomness_of_symmetric_shapes_is_small():
    assert randomness(trace_boundary(DISK)) < 0.05
    assert randomness(trace_boundary(SQUARE)) < 1e-9


def test_disk_simplest_among_equal_area_shapes():
    c_disk = shape_complexity(DISK)
    terms = component_terms(DISK)
    assert terms.c_dist < 0.2
    for other in (SQUARE, l_shape(SHAPE), STAR):
        assert c_disk < shape_complexity(other)


def test_star_is_more_complex_than_square():
    assert shape_complexity(STAR) > shape_complexity(SQUARE)


def test_translation_invariance():
    for m in (l_shape(SHAPE), STAR, SQUARE):
        moved = np.roll(np.roll(m, 7, axis=0), -5, axis=1)
        assert abs(shape_complexity(m) - shape_complexity(moved)) <= 1e-12


def test_rotation_invariance():
    for m in (l_shape(SHAPE), STAR, disk(SHAPE, (60, 70), 21)):
        for k in (1, 2, 3):
            assert abs(shape_complexity(m) - shape_complexity(np.rot90(m, k))) <= 1e-12


def test_components_add_up():
    a = disk(SHAPE, (30, 30), 12)
    b = rectangle(SHAPE, 70, 70, 20, 30)
    assert shape_complexity(a | b) == pytest.approx(shape_complexity(a) + shape_complexity(b), abs=1e-12)


def test_degenerate_components():
    px = np.zeros((10, 10), dtype=bool)
    px[4, 4] = True
    assert shape_complexity(px) == 0.0
    assert component_terms(px) is None


def test_combination_weights():
    t = ComplexityTerms(c_dist=0.5, c_angle=0.25, smoothness=0.1, randomness=0.2)
    expected = 1.2 * (0.6 * 0.25 + 0.07 * 0.5 + 0.33 * 0.1)
    assert t.combine(ComplexityParams()) == pytest.approx(expected, abs=1e-15)
