"""Two rectangles sharing an edge: nothing to complete, nothing to choose.

Neither rectangle can be extended behind the other, so both occlusion readings
end up with the same shapes as the mosaic. All three hypotheses then score
alike and the posterior is flat.
"""
from amodal import SceneInput, interpret
from amodal.scenes import abutting_rectangles

top, bottom = abutting_rectangles()
report, hyps = interpret(SceneInput(top, bottom))
for h, score in zip(hyps, report.hypotheses):
    changed = int((h.completed != (bottom if h.index == 1 else top)).sum()) if h.index < 3 else 0
    print(f"H{h.index}: E_B={score.E_B:.3f} like={score.like_tilde:.4f} prior={score.prior_tilde:.4f} "
          f"posterior={score.posterior:.4f} pixels changed by completion={changed}")
