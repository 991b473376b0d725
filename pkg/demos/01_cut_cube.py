# # Cutting a corner off a cube
#
# A polyhedron is given by halfspaces a.x >= b, a linear function l and a
# threshold B. The complex we want is every face of the polyhedron on which l
# stays strictly below B.

from fractions import Fraction
from math import comb

from polyspan import (build_unknown_d, euler_characteristic, format_rational, gen_hypercube,
                      preprocess)

# The unit cube in 5 dimensions, with l = -(x1 + ... + x5) and B = -(5 - 2 - 1/2).
# Only the corner near (1, 1, 1, 1, 1) survives the threshold.

spec = preprocess(gen_hypercube(5, 2))
print("reduced dimension", spec.reduced_dim, "pointed", spec.pointed)

# We do not tell the builder the dimension of the complex. It tries d = 0, 1, ...
# and stops at the first d that passes the no-gap certificate.

d, F = build_unknown_d(spec)
print("d =", d)
print("faces by dimension", F.face_counts())



def show(point):
    return "(" + ", ".join(format_rational(c) for c in point) + ")"


# The surviving vertices have at most d coordinates equal to 0, so there are
# C(5,0) + C(5,1) + C(5,2) of them.

print(len(F.vertices), "vertices, expected", sum(comb(5, i) for i in range(d + 1)))
for v in F.vertices[:4]:
    print(" ", show(v.point), "l =", v.ell)

# Every coordinate is an exact rational, and so is the largest value of l on
# each face.

edge = next(f for f in F.sorted_faces() if f.dim == 1)
print("an edge", " -- ".join(show(F.vertices[k].point) for k in edge.vertex_ids),
      "max l", edge.ell_max, "below", Fraction(-5, 2))

# A nonempty complex of this kind is contractible, so its Euler characteristic,
# counted with the empty face, is zero.

print("euler characteristic", euler_characteristic(F))
