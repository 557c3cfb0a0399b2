"""Solve one constrained instance end to end and watch each stage.

Stage 1 restricts facilities to the feasible candidate vertices and picks
the best p of them (exact subset optimum here). Stage 2 releases the
facilities into the continuous feasible region and descends by alternating
nearest-facility assignment with per-cluster constrained Weiszfeld moves.

Run: python demos/02_solve_pipeline.py
"""

import numpy as np

from voromedian import feasible_candidates, generate, refine
from voromedian.candidates import candidates_xy, nearest_obnoxious
from voromedian.discrete import build_matrix, solve_exact

inst = generate(100)
dmin, p = 0.95, 5

cands = feasible_candidates(inst, dmin)
print(f"{len(cands)} feasible candidates at clearance {dmin}")

matrix = build_matrix(inst, cands)
discrete = solve_exact(matrix, inst.weights, p)
xy = candidates_xy(cands)
print(f"\ndiscrete stage: objective {discrete.objective:.2f} "
      f"({'proven optimal' if discrete.proven else 'heuristic'})")
for j in discrete.selected:
    print(f"  site {j:2d} at ({xy[j, 0]:.5f}, {xy[j, 1]:.5f})")

refined = refine(inst, dmin, xy[list(discrete.selected)])
print(f"\ncontinuous stage: objective {refined.objective:.2f} "
      f"after {len(refined.trace) - 1} rounds")
print("round trace:", " -> ".join(f"{v:.2f}" for v in refined.trace))
for f in refined.facilities:
    print(f"  facility at ({f[0]:.5f}, {f[1]:.5f}), "
          f"clearance {nearest_obnoxious(f, inst):.5f}")

moved = np.hypot(*(refined.facilities - xy[list(discrete.selected)]).T)
print(f"\nfacilities moved {moved.min():.4f}..{moved.max():.4f} miles off their seeds")
assert refined.objective <= discrete.objective
