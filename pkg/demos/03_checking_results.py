# # Checking a result three ways
#
# A complex from the search can be compared with a brute-force enumeration,
# certified by the no-gap conditions, and held against the counting bounds.

import random

from polyspan import (EmptyPolyhedron, PolyhedronSpec, brute_force_complex, build_unknown_d,
                      check_face_bounds, check_vertex_bound, diff_complexes, enumerate_vertices,
                      is_general_position, preprocess, verify_nogap)

rng = random.Random(11)


def random_instance():
    D = rng.randint(2, 3)
    rows = [(tuple(rng.randint(-3, 3) for _ in range(D)), rng.randint(-4, 0))
            for _ in range(rng.randint(D + 1, 7))]
    rows = [r for r in rows if any(r[0])]
    objective = tuple(rng.randint(-2, 2) for _ in range(D))
    return PolyhedronSpec(D, tuple(rows), objective, rng.choice([float("inf"), 1, 3]))


# ## 1. Against the oracle
#
# The oracle solves every square system of tight halfspaces, so it shares no
# code with the simplex-based search.

agreed = 0
for _ in range(30):
    try:
        spec = preprocess(random_instance())
    except EmptyPolyhedron:
        continue
    d, F = build_unknown_d(spec)
    assert diff_complexes(F, brute_force_complex(spec)) == []
    agreed += 1
print(agreed, "random instances agree with the oracle")

# ## 2. The no-gap certificate
#
# Removing any face from a correct answer must make the certificate fail.

from polyspan import gen_hypercube

spec = preprocess(gen_hypercube(3, 1))
d, F = build_unknown_d(spec)
V = enumerate_vertices(spec, d)
print("true complex certified:", verify_nogap(spec, d, V, F).ok)
edge = next(f.active for f in F.faces.values() if f.dim == 1)
report = verify_nogap(spec, d, V, F.without(edge))
print("after deleting an edge:", report.ok)
print(" ", report.first_violation)

# ## 3. Counting bounds
#
# With n halfspaces in dimension D and a complex of dimension d < D, there are
# at most C(n, d) - C(D, d) + 1 vertices.

N = len(F.vertices)
print(N, "vertices, bound holds:", check_vertex_bound(spec.n_kept, spec.reduced_dim, d, N))
gp = is_general_position(F)
print("general position:", gp, "face bounds:",
      check_face_bounds(F, spec.n_kept, spec.reduced_dim, d, gp, N).ok)
