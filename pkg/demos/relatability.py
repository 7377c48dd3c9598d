"""Which contour endpoints can be joined behind an occluder?

Two endpoints relate when their tangent rays cross and the joining curve
turns by at most a right angle. An ellipse cut by a horizontal bar gives two
such pairs (left and right flanks). Two vertical bars offset on either side
of the occluder give none: joining them needs an S-bend.
"""
import math

from amodal import find_endpoints, outer_angle, relatable_pairs
from amodal.mask_init import halfspace_votes, initial_fill
from amodal.scenes import ellipse_behind_bar, offset_bars_behind_bar


def describe(name, visible, mask):
    eps = find_endpoints(visible, mask)
    pairs = relatable_pairs(eps)
    print(f"{name}: {len(eps)} endpoints, {len(pairs)} relatable pairs")
    for ep in eps:
        tx, ty = ep.tangent
        print(f"   endpoint at x={ep.point[0]:5.1f} y={ep.point[1]:5.1f}  heading {math.degrees(math.atan2(ty, tx)):7.1f} deg")
    for a, b in pairs:
        print(f"   pair {a.point} ~ {b.point}: turns {math.degrees(outer_angle(a, b)):.1f} deg")
    votes = halfspace_votes(pairs, mask, visible)
    fill = initial_fill(visible, mask)
    print(f"   votes range {votes.min()}..{votes.max()}, initial fill {fill.sum()} pixels\n")


describe("ellipse behind bar", *ellipse_behind_bar())
describe("offset bars", *offset_bars_behind_bar())
