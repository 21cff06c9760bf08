#!/usr/bin/env python3
"""The integer cocycle behind the twist formulas, computed numerically.

A genus-g surface group acts on the circle of directions; each element
has a canonical lift to the line, and the failure of the lifts to
compose is an integer in {-1, 0, +1}.  Summed along the surface relator
it gives the Euler number 2g - 2 of the unit tangent bundle, and the
specific value c(a_1, (a'_2)^-1) = +1 is what seeds the +1/-1
translation terms of the separating twists.
"""

import random

from mcgorbits import SpaceParams, cocycle, make_element, relator_euler_number, standard_group
from mcgorbits.euler import axes_cross, conjugated_generator_word, nu_consistency, sigma0_lift

group = standard_group(2)
print(f"regular octagon realization; relator residual {group.relator_residual():.2e}")
print(f"relator Euler number: {relator_euler_number(group)} (= 2g-2)")

aprime = conjugated_generator_word(2)
inv = tuple((name, -e) for name, e in reversed(aprime))
print(f"c(a1, (a'2)^-1) = {cocycle(group, 'a1', inv).value}")
print(f"axes of a1 and b1 cross, so c(a1, b1) = {cocycle(group, 'a1', 'b1').value}")

print()
rng = random.Random(7)
names = ["a1", "b1", "a2", "b2"]
print("random word pairs (value, residual, axes crossing):")
from mcgorbits.euler import IllConditionedError

shown = 0
while shown < 8:
    w1 = tuple((rng.choice(names), rng.choice([-1, 1])) for _ in range(rng.randrange(1, 5)))
    w2 = tuple((rng.choice(names), rng.choice([-1, 1])) for _ in range(rng.randrange(1, 5)))
    try:
        value = cocycle(group, w1, w2)
        crossing = axes_cross(group, w1, w2)
    except IllConditionedError:
        continue  # identity products or shared axes; skip
    fmt = lambda w: " ".join(n if e == 1 else f"{n}^-1" for n, e in w)
    print(f"  c({fmt(w1)!r}, {fmt(w2)!r}) = {value.value:+d}   "
          f"res {value.residual:.1e}   crossing={crossing}")
    shown += 1

print()
lift = sigma0_lift(group, "a1 b2^-1")
print(f"a canonical lift has translation number {lift.translation_number():.2e} (~0)")

print()
print("cochain extension along the relator (consistent iff n | 2g-2):")
for g, n, coords in ((2, 2, [1, 0, 1, 1]), (2, 4, [1, 2, 3, 0])):
    params = SpaceParams(g, n, strict_euler=False)
    report = nu_consistency(standard_group(g), make_element(params, coords))
    print(f"  g={g} n={n}: defect {report['relator_cochain_value']} mod {n} "
          f"-> {'consistent' if report['passes'] else 'inconsistent'}")
