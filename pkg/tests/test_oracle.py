import pytest
from hypothesis import given

from instances import specs
from polyspan import (EmptyPolyhedron, MetricInput, PolyhedronSpec, TooLarge,
                      brute_force_complex, brute_force_face_lattice, brute_force_vertices,
                      diff_complexes, enumerate_vertices, euler_characteristic, gen_cone,
                      gen_hypercube, gen_moment_voronoi, gen_tight_span, preprocess,
                      square_base)
from polyspan.geometry import Complex, Face

SQUARE = (((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1))


def test_square_vertices():
    ns = preprocess(PolyhedronSpec(2, SQUARE, (1, 1)))
    assert len(brute_force_vertices(ns)) == 4


def test_cone_vertices():
    vs = brute_force_vertices(preprocess(gen_cone(square_base())))
    assert [v.point for v in vs.vertices] == [(0, 0, 0)]


def test_tight_span_vertices_are_the_tripod():
    # The polyhedron itself has exactly these four vertices; its three
    # extreme rays are not vertices.
    ns = preprocess(gen_tight_span(MetricInput.uniform(3, 2)))
    points = brute_force_vertices(ns).points()
    assert points == {(1, 1, 1), (0, 2, 2), (2, 0, 2), (2, 2, 0)}
    assert {v.point for v in brute_force_complex(ns).vertices} == points


def test_thresholded_square_complex():
    assert brute_force_complex(preprocess(gen_hypercube(2, 1))).face_counts() == \
        {-1: 1, 0: 3, 1: 2}


def test_quadrant_complex():
    ns = preprocess(PolyhedronSpec(2, (((1, 0), 0), ((0, 1), 0)), (1, 1)))
    F = brute_force_complex(ns)
    assert F.face_counts() == {-1: 1, 0: 1} and F.vertices[0].point == (0, 0)


def test_moment_five():
    F = brute_force_complex(preprocess(gen_moment_voronoi(range(5))))
    assert len(F.vertices) == 3 and F.d_max == 2 and euler_characteristic(F) == 0


def test_cone_face_lattice_has_eleven_faces():
    lattice = brute_force_face_lattice(preprocess(gen_cone(square_base())))
    assert len(lattice) == 3 ** 2 + 2
    assert sorted(lattice.values()) == [-1, 0, 1, 1, 1, 1, 2, 2, 2, 2, 3]


def test_guard(monkeypatch):
    monkeypatch.setenv("POLYSPAN_GUARD", "3")
    with pytest.raises(TooLarge):
        brute_force_vertices(preprocess(gen_hypercube(2, 1)))


# diff_complexes

def _square():
    return brute_force_complex(preprocess(gen_hypercube(2, 1)))


def test_diff_identical():
    assert diff_complexes(_square(), _square()) == []


def test_diff_missing_edge():
    X = _square()
    diff = diff_complexes(X, X.without(frozenset({3})))
    assert len(diff) == 1 and diff[0].startswith("missing face")


def test_diff_corrupted_dim():
    X = _square()
    f = X.faces[frozenset({3})]
    faces = dict(X.faces)
    faces[f.active] = Face(f.active, 0, f.vertex_ids, f.bounded, f.ell_max)
    diff = diff_complexes(X, Complex(X.spec, X.vertices, faces))
    assert len(diff) == 1 and diff[0].startswith("field mismatch")


# properties

@given(specs(max_n=7, max_dim=3))
def test_oracle_properties(spec):
    try:
        ns = preprocess(spec)
    except EmptyPolyhedron:
        return
    all_vertices = brute_force_vertices(ns).points()
    F = brute_force_complex(ns)
    assert {v.point for v in F.vertices} <= all_vertices
    assert enumerate_vertices(ns, ns.reduced_dim).points() == {v.point for v in F.vertices}
    for f in F.faces.values():
        for k in f.vertex_ids:
            assert F.vertices[k].active in F.faces
    if F.vertices:
        assert euler_characteristic(F) == 0
