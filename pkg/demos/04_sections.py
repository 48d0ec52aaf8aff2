"""A transversal section through a letter and the itineraries it meets.

Writes aba_regions.svg next to the current directory.
"""
from fractions import Fraction as F

from itinlab.permgroup import parse_perm
from itinlab.polycurve import (
    boundary_curves, family_minors, itinerary_at, itinerary_letters, region_svg, word_string,
)

s = parse_perm("[aba]")
minors, xs = family_minors(s)
for j, m in enumerate(minors, 1):
    print(f"m{j}(t) = {m}")

for x in [(0, 1), (0, -1), (-1, F(-1, 4)), (1, F(-1, 4)), (0, 0)]:
    pts = itinerary_at(s, x)
    label = "(" + ", ".join(map(str, x)) + ")"
    print(f"x = {label:12s} itinerary {word_string(itinerary_letters(pts)) or '()'}")

print("walls between regions:")
for (i, j), e in sorted(boundary_curves(s).items()):
    print(f"  m{i}, m{j}: {e} = 0")

print("walls for [abc]:", sorted(map(str, boundary_curves(parse_perm("[abc]")).values())))

with open("aba_regions.svg", "w") as fh:
    fh.write(region_svg(s, (-1, 1), (-1, 1), (60, 60), 480))
print("wrote aba_regions.svg")
