import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays
from scipy.linalg import expm

from amodal.raster import (
    NoBoundaryError,
    connected_components,
    diffuse,
    external_boundary,
    heat_convolve,
    label_components,
    signed_distance,
    trace_boundary,
)
from amodal.scenes import disk, rectangle

from oracles import brute_signed_distance, dense_laplacian, flood_labels


@pytest.mark.parametrize("conn", [4, 8])
def test_components_match_flood_fill(conn):
    rng = np.random.default_rng(7)
    for _ in range(100):
        shape = tuple(rng.integers(5, 40, size=2))
        mask = rng.random(shape) < rng.uniform(0.2, 0.7)
        labels, n = label_components(mask, conn)
        ref, n_ref = flood_labels(mask, conn)
        assert n == n_ref
        assert np.array_equal(labels, ref)


def test_components_disjoint_cover():
    rng = np.random.default_rng(1)
    mask = rng.random((30, 30)) < 0.5
    comps = connected_components(mask, 4)
    total = np.zeros(mask.shape, dtype=int)
    for c in comps:
        total += c
    assert np.array_equal(total, mask.astype(int))


def test_component_diagonal_pair():
    mask = np.array([[1, 0], [0, 1]], dtype=bool)
    assert len(connected_components(mask, 4)) == 2
    assert len(connected_components(mask, 8)) == 1


def test_signed_distance_matches_brute_force():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        mask = rng.random((32, 32)) < rng.uniform(0.05, 0.95)
        if mask.all() or not mask.any():
            continue
        assert np.array_equal(signed_distance(mask), brute_signed_distance(mask))


def test_signed_distance_never_zero_and_unit_at_boundary():
    mask = disk((40, 40), (20, 20), 9)
    u = signed_distance(mask)
    assert np.all(u != 0)
    assert np.all(u[external_boundary(mask)] == -1.0)


def test_signed_distance_uniform_raises():
    with pytest.raises(NoBoundaryError):
        signed_distance(np.ones((5, 5), dtype=bool))
    with pytest.raises(NoBoundaryError):
        signed_distance(np.zeros((5, 5), dtype=bool))


def test_heat_convolve_matches_matrix_exponential():
    rng = np.random.default_rng(3)
    field = rng.random((16, 16))
    s = np.sqrt(3.0)
    ref = (expm(3.0 * dense_laplacian(16, 16)) @ field.ravel()).reshape(16, 16)
    out = heat_convolve(field, s)
    assert np.abs(out - ref).max() <= 1e-6
    assert abs(out.sum() - field.sum()) <= 1e-10


def test_heat_convolve_rectangular_grid():
    rng = np.random.default_rng(4)
    field = rng.random((9, 14))
    ref = (expm(1.7 * dense_laplacian(9, 14)) @ field.ravel()).reshape(9, 14)
    assert np.abs(diffuse(field, 1.7) - ref).max() <= 1e-9


def test_heat_convolve_zero_scale_is_identity():
    field = np.arange(12.0).reshape(3, 4)
    assert np.array_equal(heat_convolve(field, 0.0), field)


def test_heat_convolve_negative_scale_raises():
    with pytest.raises(ValueError):
        heat_convolve(np.zeros((4, 4)), -1.0)


def test_heat_convolve_constant_field_fixed():
    out = heat_convolve(np.full((10, 7), 0.25), 3.0)
    assert np.allclose(out, 0.25, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(
    arrays(np.float64, (12, 10), elements=st.floats(0, 1)),
    st.floats(0.1, 5.0),
    st.floats(0.1, 5.0),
)
def test_diffusion_semigroup_and_positivity(field, t1, t2):
    a = diffuse(diffuse(field, t1), t2)
    b = diffuse(field, t1 + t2)
    assert np.abs(a - b).max() <= 1e-9
    assert diffuse(field, t1).min() >= 0.0


def test_external_boundary_of_rectangle():
    rect = rectangle((10, 10), 2, 3, 4, 5)
    b = external_boundary(rect)
    assert b.sum() == 2 * 5 + 2 * 2
    assert not b[3:5, 4:7].any()


def test_external_boundary_touches_frame():
    full = np.ones((4, 4), dtype=bool)
    assert external_boundary(full).sum() == 12


def test_trace_boundary_square():
    sq = rectangle((8, 8), 2, 2, 3, 3)
    contour = trace_boundary(sq)
    assert tuple(contour[0]) == (2, 2)
    assert len(contour) == 8
    assert {tuple(p) for p in contour} == set(map(tuple, np.argwhere(external_boundary(sq))))
    steps = np.abs(np.diff(np.vstack([contour, contour[:1]]), axis=0)).max(axis=1)
    assert np.all(steps == 1)


def test_trace_boundary_disk_is_closed_chain():
    d = disk((50, 50), (25, 25), 15)
    contour = trace_boundary(d)
    steps = np.abs(np.diff(np.vstack([contour, contour[:1]]), axis=0)).max(axis=1)
    assert np.all(steps == 1)
    assert len(np.unique(contour, axis=0)) == len(contour)


def test_trace_boundary_single_pixel():
    m = np.zeros((3, 3), dtype=bool)
    m[1, 1] = True
    assert trace_boundary(m).tolist() == [[1, 1]]
