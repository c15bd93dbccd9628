"""Shift matrices, pyramids and the generators of a truncated shifted twisted Yangian."""

from twyang.conventions import AI
from twyang.shifted import (ShiftMatrix, TruncatedCtx, admissible_shapes, centralizer_dimension, label_str,
                            minimal_shape, sigma_to_pyramid, truncated_pbw_generators)

sigma = ShiftMatrix.parse("0,0,2,3;0,0,2,3;2,2,0,1;3,3,1,0")
pyr = sigma_to_pyramid(sigma, 8)
print("pyramid rows:", pyr.format(), " columns:", pyr.columns())
print("minimal shape:", minimal_shape(sigma).parts)
print("admissible shapes:", [s.parts for s in admissible_shapes(sigma)])

tr = TruncatedCtx.build(AI, 2, "0,1;1,0", 5)
print("\ncontext:", tr.describe())
inv = truncated_pbw_generators(tr)
print("PBW generators:", ", ".join(label_str(g) for g in inv))
print("count", len(inv), "= centralizer dimension", centralizer_dimension(tr))
