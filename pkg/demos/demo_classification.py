"""Verdicts for the unit cube: faces, edges, vertices.

At q = 1.7 the faces are still subcritical, the edges sit in the
capacity window (points on an edge are removable, whole segments are
not), and vertices are already supercritical.
"""

import json
import math

from wedgecap import (CompactSetDescription, ConeOpening, PolyhedronSpec,
                      SetPiece, Stratum, WedgeSpec, classify_polyhedron,
                      removable_check)

cube = PolyhedronSpec(N=3, strata=(
    Stratum("face", 1, None),
    Stratum("edge", 2, WedgeSpec(3, 2, math.pi / 2)),
    Stratum("vertex", 3, ConeOpening(12.0)),
))

for v in classify_polyhedron(cube, 1.7):
    print(f"{v.stratum:7s} {v.regime:22s} q_c={v.q_c:.4f} q_c*={v.q_c_star:.4f}"
          + (f" s={v.s:.4f}" if v.s is not None else ""))

print()
for label, E, q in (
        ("one vertex at q=1.5", CompactSetDescription(
            (SetPiece("vertex", "point", z=()),)), 1.5),
        ("edge point at q=1.7", CompactSetDescription(
            (SetPiece("edge", "point", z=(0.0,)),)), 1.7),
        ("edge segment at q=1.7", CompactSetDescription(
            (SetPiece("edge", "ball", radius=0.5, dim=1, z=(0.0,)),)), 1.7)):
    res = removable_check(cube, E, q)
    print(f"{label:24s} -> {res.removable}")
