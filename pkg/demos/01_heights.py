"""
Heights of bottom vertices over top edges
=========================================

Each top chord induces a linear functional on the bottom polygon; the
height of a bottom vertex counts the distinct functional values below it.
Everything here is integer arithmetic on multiples of pi/n.
"""

from prismtri.shapes import ShapeSpec, boundary_height_profile, functional_levels, profile_sum, side_containing, top_chord

# the square prism and its diagonal {0, 2}: two vertices tie, one sits on
# each side of the tie
cube = ShapeSpec.prism(4)
diag = top_chord(0, 2, 4)
lv = functional_levels(cube, diag, side_containing(diag, 3))
print("levels ", lv.levels)
print("heights", lv.heights())

# going around the top boundary, bottom vertex 0 climbs and descends once
for kind in ("prism", "antiprism"):
    for n in (7, 8):
        s = ShapeSpec(kind, n)
        prof = boundary_height_profile(s, 0)
        print(f"{s!s:12} profile {prof}  sum {sum(prof)} (closed form {profile_sum(s)})")
