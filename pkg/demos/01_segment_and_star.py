"""First contact: capacities, Green functions, and the star continuum.

The inverse image of [-1, 1] under a degree-n polynomial T with leading
coefficient tau is a union of analytic arcs; when it is connected it solves
the minimal-capacity problem for the simple zeros of T^2 - 1, and its
capacity is simply (2 |tau|)^(-1/n).  This script walks through the two
simplest cases: the segment itself and the 2n-spoke star of z^n.
"""

import pathlib

from chebotarev import (
    ComplexPoly,
    arcs_to_svg,
    capacity,
    factorize,
    green_function,
    min_deviation,
    trace,
)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# ---------------------------------------------------------------------------
# The segment [-1, 1]: T(z) = 2z^2 - 1 maps it onto itself twice.

T_seg = ComplexPoly([-1, 0, 2])
print("segment polynomial 2z^2 - 1")
print(f"  capacity       = {capacity(T_seg):.12f}   (the segment's classical value 1/2)")
print(f"  min deviation  = {min_deviation(T_seg):.12f}")

fac = factorize(T_seg)
print(f"  minimal arcs   = {fac.min_arcs}")
print(f"  branch points  = {[f'{b:.3f}' for b in fac.branch_points]}")

# Green function along a ray leaving the segment: zero on the set, then
# growing like log|z| - log cap.
for x in (0.5, 1.0, 1.5, 3.0, 10.0):
    print(f"  g({x:5.1f}) = {green_function(T_seg, x):.6f}")

# ---------------------------------------------------------------------------
# The star of z^5: ten spokes of unit length meeting at the origin.

T_star = ComplexPoly([0, 0, 0, 0, 0, 1])
print("\nstar polynomial z^5")
print(f"  capacity  = {capacity(T_star):.12f}  (= 2^(-1/5))")

arcs = trace(T_star, steps=256)
print(f"  traced {len(arcs)} analytic arcs (each a diameter through 0)")
for i, arc in enumerate(arcs):
    print(f"    arc {i}: {arc.start_point:.4f} ... {arc.end_point:.4f}")

fac = factorize(T_star)
svg = arcs_to_svg(arcs, c_points=fac.branch_points)
(OUT / "star5.svg").write_text(svg)
print(f"  wrote {OUT / 'star5.svg'}")
