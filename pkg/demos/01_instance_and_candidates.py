"""Generate a benchmark instance and inspect its candidate facility sites.

Every candidate is a vertex of the protected-point Voronoi diagram clipped
to the instance box: circumcenters of Delaunay triangles inside the square,
crossings of Voronoi edges with the square boundary, and the four corners.
They are the locally-best-cleared spots, so filtering them by clearance
finds every feasible pocket, however small.

Run: python demos/01_instance_and_candidates.py
"""

from voromedian import feasible_candidates, generate
from voromedian.candidates import write_candidates_csv

inst = generate(100)
print(f"instance: {inst.n_demand} demand points in a "
      f"{inst.box.xmax - inst.box.xmin:.0f}x{inst.box.ymax - inst.box.ymin:.0f} square, "
      f"protected set = demand set")
print(f"first points: {inst.demand_xy[:3].tolist()}")

all_vertices = feasible_candidates(inst, 0.0)
print(f"\n{len(all_vertices)} candidate vertices in total")

dmin = 0.95
cands = feasible_candidates(inst, dmin)
print(f"{len(cands)} candidates keep a clearance of at least {dmin} miles\n")

print(" rank        x         y   clearance")
for i, c in enumerate(cands[:10], start=1):
    print(f"   {i:2d}  {c.x:8.5f}  {c.y:8.5f}   {c.d_nearest:.5f}")
print("  ...")
for i, c in enumerate(cands[-2:], start=len(cands) - 1):
    print(f"   {i:2d}  {c.x:8.5f}  {c.y:8.5f}   {c.d_nearest:.5f}")

write_candidates_csv(cands, "candidates_n100.csv")
print("\nwrote candidates_n100.csv")
