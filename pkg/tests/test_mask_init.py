import numpy as np
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from amodal.geometry import ContourEndpoint, find_endpoints, relatable_pairs
from amodal.mask_init import (
    accepted_threshold,
    binarize_votes,
    halfspace_votes,
    hidden_pairs,
    initial_fill,
)
from amodal.raster import count_components
from amodal.scenes import ellipse_behind_bar, rectangle, square_over_disk


def stems_scene(y0=20):
    """Shape below row y0, with a mask band to its right; two horizontal stems at y0."""
    shape = (40, 60)
    mask = rectangle(shape, 0, 20, 40, 20)
    visible = rectangle(shape, y0, 0, 40 - y0, 20) | rectangle(shape, y0, 40, 40 - y0, 20)
    a = ContourEndpoint((19.0, float(y0)), (1.0, 0.0))
    b = ContourEndpoint((40.0, float(y0)), (-1.0, 0.0))
    return mask, visible, (a, b)


def test_collinear_stems_vote_twice_below():
    mask, visible, pair = stems_scene(20)
    votes = halfspace_votes([pair], mask, visible)
    assert np.all(votes[20:, 20:40] == 2)
    assert np.all(votes[:20, :] == 0)
    assert np.all(votes[~mask] == 0)


def test_votes_accumulate_over_pairs():
    mask, visible, pair = stems_scene(20)
    once = halfspace_votes([pair], mask, visible)
    twice = halfspace_votes([pair, pair], mask, visible)
    assert np.array_equal(twice, 2 * once)


def test_no_pairs_no_votes():
    mask, visible, _ = stems_scene()
    assert not halfspace_votes([], mask, visible).any()


def test_uniform_votes_fill_touching_region():
    mask, visible, _ = stems_scene()
    votes = np.where(mask, 3, 0)
    out = binarize_votes(votes, mask, visible)
    assert np.array_equal(out, visible | mask)


def test_zero_votes_empty_fill():
    mask, visible, _ = stems_scene()
    out = binarize_votes(np.zeros(mask.shape, dtype=int), mask, visible)
    assert np.array_equal(out, visible)
    assert accepted_threshold(np.zeros(mask.shape, dtype=int), mask, visible) is None


def test_threshold_descends_until_fill_attaches():
    # One visible block; the highest votes sit on an island inside the mask
    # that only the lower level connects to the block.
    shape = (20, 40)
    visible = rectangle(shape, 5, 0, 10, 10)
    mask = rectangle(shape, 0, 10, 20, 30)
    votes = np.zeros(shape, dtype=int)
    votes[5:15, 10:20] = 1
    votes[5:15, 20:30] = 3
    votes[8:12, 30:34] = 5
    # positive votes: 100 ones, 100 threes, 16 fives; 75th percentile is 3
    assert accepted_threshold(votes, mask, visible) == 1
    out = binarize_votes(votes, mask, visible)
    assert count_components(out, 4) == 1
    assert out[5:15, 10:34].sum() == votes[5:15, 10:34].astype(bool).sum()


def test_threshold_kept_when_no_new_component():
    shape = (20, 40)
    visible = rectangle(shape, 5, 0, 10, 10)
    mask = rectangle(shape, 0, 10, 20, 30)
    votes = np.zeros(shape, dtype=int)
    votes[0:20, 10:40] = 1
    votes[:, 10:30] = 4
    assert accepted_threshold(votes, mask, visible) == 4


@settings(max_examples=50, deadline=None)
@given(arrays(np.int64, (12, 16), elements=st.integers(0, 6)), st.integers(0, 11))
def test_binarized_fill_adds_no_component(votes, row):
    visible = np.zeros((12, 16), dtype=bool)
    visible[:, :4] = True
    visible[row, 4] = True
    mask = np.zeros((12, 16), dtype=bool)
    mask[:, 6:] = True
    votes = np.where(mask, votes, 0)
    out = binarize_votes(votes, mask, visible)
    assert count_components(out, 4) <= count_components(visible, 4)
    assert not (out & ~mask & ~visible).any()


@settings(max_examples=50, deadline=None)
@given(arrays(np.int64, (10, 10), elements=st.integers(0, 5)), st.integers(1, 5))
def test_thresholding_monotone_in_votes(votes, level):
    raised = votes.copy()
    raised[3, 3] += 2
    assert np.all((votes >= level) <= (raised >= level))


def test_pairs_meeting_on_known_pixels_are_dropped():
    square, visible, _ = square_over_disk()
    # Disk in front: the square's edges are relatable through its own corner.
    pairs = relatable_pairs(find_endpoints(square, visible))
    assert pairs
    assert hidden_pairs(pairs, visible, square) == []
    assert not initial_fill(square, visible).any()


def test_initial_fill_inside_mask_and_connected():
    caps, bar = ellipse_behind_bar()
    fill = initial_fill(caps, bar)
    assert fill.any()
    assert not (fill & ~bar).any()
    assert count_components(caps | fill, 4) <= count_components(caps, 4)


def test_initial_fill_seeds_hidden_quadrant():
    square, visible, full = square_over_disk()
    fill = initial_fill(visible, square)
    hidden = full & square
    assert (fill & hidden).sum() >= 0.8 * hidden.sum()
    assert (fill & hidden).sum() >= 0.7 * fill.sum()
