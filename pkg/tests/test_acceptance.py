"""The ten acceptance criteria, one test each.

Every test prints a single ``criterion N PASS/FAIL`` line, repeated in the
terminal summary.  All comparisons are exact.
"""
import hashlib
import os
import subprocess
import sys
import time
from functools import lru_cache
from math import comb

import pytest

from instances import random_corpus
from polyspan import (EmptyPolyhedron, MetricInput, box_base, brute_force_complex,
                      brute_force_face_lattice, build_unknown_d, check_face_bounds,
                      check_vertex_bound, complex_to_json, diff_complexes, enumerate_vertices,
                      euler_characteristic, format_instance, gen_cone, gen_fan2d, gen_hypercube,
                      gen_moment_voronoi, gen_tight_span, is_general_position, preprocess,
                      square_base, verify_nogap)
from polyspan.cli import corpus, main
from polyspan.vertices import VertexSet, vertex_bound

RANDOM = random_corpus(360, seed=2024)


@lru_cache(maxsize=None)
def solved_random():
    """Random instances with their complexes, skipping empty polyhedra."""
    out = []
    for spec in RANDOM:
        try:
            ns = preprocess(spec)
        except EmptyPolyhedron:
            continue
        out.append((spec, ns) + build_unknown_d(ns))
    return tuple(out)


@pytest.mark.timed
def test_criterion_01_hypercube_counts(criterion):
    with criterion(1, "hypercube vertex counts, 2 <= D <= 6, under 60 s") as c:
        start = time.perf_counter()
        wrong = []
        for D in range(2, 7):
            for d in range(D):
                _, F = build_unknown_d(preprocess(gen_hypercube(D, d)))
                expected = sum(comb(D, i) for i in range(d + 1))
                if len(F.vertices) != expected:
                    wrong.append((D, d, len(F.vertices), expected))
        elapsed = time.perf_counter() - start
        c.detail = f"{elapsed:.1f} s"
        assert not wrong, f"wrong counts {wrong}"
        assert elapsed < 60


def test_criterion_02_fan_bound_tightness(criterion):
    with criterion(2, "fan2d has n-1 vertices, meeting the vertex bound") as c:
        for n in range(2, 11):
            _, F = build_unknown_d(preprocess(gen_fan2d(range(n))))
            assert len(F.vertices) == n - 1 == vertex_bound(n, 2, 1), n
        c.detail = "n = 2..10"


def test_criterion_03_cone(criterion):
    with criterion(3, "cone over a square: complex {empty, origin}, 11 faces in all") as c:
        ns = preprocess(gen_cone(square_base()))
        d, F = build_unknown_d(ns)
        assert set(F.faces) == {None, F.vertices[0].active}
        assert [v.point for v in F.vertices] == [(0, 0, 0)]
        assert diff_complexes(F, brute_force_complex(ns)) == []
        total = len(brute_force_face_lattice(ns))
        c.detail = f"{total} faces"
        assert total == 3 ** 2 + 2


@pytest.mark.timed
def test_criterion_04_moment_curve(criterion):
    with criterion(4, "moment curve: C(n-2,2) vertices, d = 2 for n >= 5") as c:
        times = {}
        for n in range(4, 8):
            start = time.perf_counter()
            d, F = build_unknown_d(preprocess(gen_moment_voronoi(range(n))))
            times[n] = time.perf_counter() - start
            assert len(F.vertices) == comb(n - 2, 2), n
            if n >= 5:
                assert d == 2, n
        c.detail = f"n = 7 in {times[7]:.2f} s"
        assert times[7] < 120


def test_criterion_05_euler(criterion):
    with criterion(5, "Euler characteristic 0 on every nonempty complex") as c:
        bad, checked, random_checked = [], 0, 0
        for name, spec, _, _ in corpus():
            _, F = build_unknown_d(preprocess(spec))
            if F.vertices:
                checked += 1
                if euler_characteristic(F) != 0:
                    bad.append(name)
        for k, (spec, ns, d, F) in enumerate(solved_random()):
            if F.vertices:
                random_checked += 1
                if euler_characteristic(F) != 0:
                    bad.append(f"random {k}")
        c.detail = f"{checked} corpus + {random_checked} random complexes"
        assert random_checked >= 200
        assert not bad, bad


def test_criterion_06_oracle_equivalence(criterion, tmp_path, capsys):
    with criterion(6, "check agrees with the oracle on random instances") as c:
        ran = degenerate = 0
        failures = []
        for k, (spec, ns, d, F) in enumerate(solved_random()):
            path = tmp_path / f"r{k}.poly"
            path.write_text(format_instance(spec))
            code = main(["check", str(path)])
            out = capsys.readouterr().out
            ran += 1
            if len(set(spec.halfspaces)) < spec.n or not is_general_position(F) \
                    or ns.implicit_equalities:
                degenerate += 1
            if code != 0:
                failures.append((k, out))
        c.detail = f"{ran} instances, {degenerate} degenerate"
        assert ran >= 200 and degenerate > 0
        assert not failures, failures[:3]


def test_criterion_07_bounds(criterion):
    with criterion(7, "vertex and face bounds hold across the corpus") as c:
        violations, vertex_checks, face_checks = [], 0, 0
        instances = [(name, preprocess(spec)) for name, spec, _, _ in corpus()]
        instances += [(f"random {k}", ns) for k, (_, ns, _, _) in enumerate(solved_random())]
        for name, ns in instances:
            d, F = build_unknown_d(ns)
            N = len(F.vertices)
            Dp = ns.reduced_dim
            if N and d < Dp:
                vertex_checks += 1
                if not check_vertex_bound(ns.n_kept, Dp, d, N):
                    violations.append(f"{name}: {N} > {vertex_bound(ns.n_kept, Dp, d)}")
            gp = is_general_position(F)
            report = check_face_bounds(F, ns.n_kept, Dp, F.d_max, gp, N)
            if gp and 0 <= F.d_max < Dp:
                face_checks += 1
            violations += [f"{name}: {v}" for v in report.violations]
        c.detail = f"{vertex_checks} vertex checks, {face_checks} general-position face checks"
        assert vertex_checks and face_checks
        assert not violations, violations[:5]


def _mutants(V, F):
    for key in F.faces:
        yield f"face {key and sorted(key)}", V, F.without(key)
    for k, v in enumerate(V.vertices):
        V2 = VertexSet([w for w in V.vertices if w is not v], {}, dict(V.solved))
        yield f"vertex {k}", V2, F.without(v.active)


def test_criterion_08_nogap_mutation(criterion):
    with criterion(8, "verify_nogap accepts the truth and rejects every deletion") as c:
        specs = [gen_hypercube(3, 1), gen_hypercube(3, 2), gen_fan2d(range(4)),
                 gen_tight_span(MetricInput.uniform(3, 2)), gen_moment_voronoi(range(5)),
                 gen_cone(square_base())] + RANDOM[:80]
        instances = mutants = 0
        false_accepts, false_rejects = [], []
        for k, spec in enumerate(specs):
            try:
                ns = preprocess(spec)
            except EmptyPolyhedron:
                continue
            d, F = build_unknown_d(ns)
            if not F.vertices:
                continue
            V = enumerate_vertices(ns, d)
            instances += 1
            if not verify_nogap(ns, d, V, F).ok:
                false_rejects.append(k)
            for name, V2, F2 in _mutants(V, F):
                mutants += 1
                if verify_nogap(ns, d, V2, F2).ok:
                    false_accepts.append((k, name))
        c.detail = f"{instances} instances, {mutants} mutants"
        assert instances >= 20
        assert not false_rejects, false_rejects
        assert not false_accepts, false_accepts


def test_criterion_09_tripod(criterion):
    with criterion(9, "equilateral tight span is the tripod") as c:
        ns = preprocess(gen_tight_span(MetricInput.uniform(3, 2), include_nonneg=True))
        d, F = build_unknown_d(ns)
        assert sorted(v.point for v in F.vertices) == \
            [(0, 2, 2), (1, 1, 1), (2, 0, 2), (2, 2, 0)]
        assert F.face_counts() == {-1: 1, 0: 4, 1: 3}
        assert d == 1 and euler_characteristic(F) == 0
        assert diff_complexes(F, brute_force_complex(ns)) == []
        c.detail = "4 vertices, 3 edges"


_RUNNER = """
import sys
from polyspan.cli import main
threads, paths = sys.argv[1], sys.argv[2:]
for p in paths:
    main(["subcomplex", "--threads", threads, p])
"""


def _run_corpus(paths, threads, hash_seed):
    env = dict(os.environ, PYTHONHASHSEED=str(hash_seed))
    res = subprocess.run([sys.executable, "-c", _RUNNER, str(threads)] + paths,
                         capture_output=True, env=env, check=True)
    return res.stdout


@pytest.mark.timed
def test_criterion_10_determinism(criterion, tmp_path):
    with criterion(10, "byte-identical JSON across runs and --threads") as c:
        paths = []
        for k, (name, spec, _, _) in enumerate(corpus()):
            p = tmp_path / f"c{k:02d}.poly"
            p.write_text(format_instance(spec))
            paths.append(str(p))
        outputs = [_run_corpus(paths, t, seed) for t, seed in ((1, 1), (1, 2), (2, 3), (4, 4))]
        digests = {hashlib.sha256(o).hexdigest()[:12] for o in outputs}
        c.detail = f"{len(paths)} instances, 4 runs, digests {sorted(digests)}"
        assert len(outputs[0]) > 0
        assert len(digests) == 1
        in_process = "".join(complex_to_json(build_unknown_d(preprocess(spec))[1])
                             for _, spec, _, _ in corpus())
        assert in_process.encode() == outputs[0]
