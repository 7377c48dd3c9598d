"""How the length weight beta shapes a completion.

The elastica trades squared curvature against length. With small beta the
hidden arc of the disk is completed round; as beta grows, shorter and
straighter hidden boundaries win and the completed area shrinks.
"""
from amodal import ThresholdDynamicsConfig, inpaint
from amodal.mask_init import initial_fill
from amodal.scenes import square_over_disk

square, visible, full = square_over_disk()
fill = initial_fill(visible, square)
hidden = (full & square).sum()
print(f"true hidden quadrant: {hidden} pixels; initial fill {fill.sum()} pixels")
print(" beta  filled  iterations")
for beta in (0.3, 0.6, 0.9, 1.2, 1.5, 2.0):
    res = inpaint(visible, square, fill, ThresholdDynamicsConfig(beta=beta))
    print(f" {beta:4.1f}  {(res.shape & square).sum():6d}  {res.iterations:5d}")
