#!/usr/bin/env python3
"""The orbit census behind the classification.

For every covering index n dividing 2g - 2 the twist action on the
n^(2g)-point space has exactly one orbit when n is odd and exactly two
when n is even, the two being told apart by the vanishing number.  This
script enumerates a few spaces exhaustively and prints the census.
"""

from mcgorbits import SpaceParams, enumerate_orbits

print(f"{'g':>2} {'n':>2} {'states':>9} {'orbits':>6}  sizes (vanishing)")
for g, n in ((2, 1), (2, 2), (3, 2), (3, 4), (4, 3), (4, 6), (5, 4)):
    params = SpaceParams(g, n)
    report = enumerate_orbits(params, record_paths=False)
    cells = ", ".join(
        f"{o.size}" + (f" (v={o.vanishing_number})" if o.vanishing_number is not None else "")
        for o in report.orbits)
    print(f"{g:>2} {n:>2} {params.size:>9} {report.orbit_count:>6}  {cells}")

print()
print("the same census with the orientation-reversing reflection added:")
report = enumerate_orbits(SpaceParams(3, 4), gens="mod_pm", record_paths=False)
print(f"  (g=3, n=4) with mod_pm: {report.orbit_count} orbits, "
      f"sizes {[o.size for o in report.orbits]} (unchanged)")
