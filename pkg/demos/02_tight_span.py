# # The tight span of a small metric
#
# For points with distances d(i, j), the polyhedron x_i + x_j >= d(i, j) has a
# bounded part called the tight span. For three points at mutual distance 2
# it is a tripod: a centre joined to three legs.

from polyspan import (MetricInput, build_unknown_d, complex_to_json, format_rational,
                      gen_tight_span, preprocess)

metric = MetricInput.uniform(3, 2)
spec = preprocess(gen_tight_span(metric, include_nonneg=True))
d, F = build_unknown_d(spec)

for v in F.vertices:
    print("vertex", [format_rational(c) for c in v.point], "tight halfspaces", sorted(v.active))

for f in F.sorted_faces():
    if f.dim == 1:
        print("edge", [[format_rational(c) for c in F.vertices[k].point] for k in f.vertex_ids])

# Without x >= 0 and only two points, the polyhedron is a single halfplane. It
# contains a line, so it has no vertices and the complex is just the empty face.

pair = preprocess(gen_tight_span(MetricInput.uniform(2, 2), include_nonneg=False))
print("pointed:", pair.pointed, "complex:", build_unknown_d(pair)[1].face_counts())

# A metric that breaks the triangle inequality is still accepted, with a warning.

odd = MetricInput(((0, 1, 5), (1, 0, 1), (5, 1, 0)))
print("triangle violations", odd.violations[:2])

# The JSON written by the command line tool has the same content.

print(complex_to_json(F)[:200], "...")
