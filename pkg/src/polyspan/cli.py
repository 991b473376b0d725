"""``polyspan`` command line."""
from __future__ import annotations

import argparse
import logging
import sys
from math import comb
from typing import Optional, Sequence

from .generators import (BaseUnbounded, MetricInput, box_base, gen_cone, gen_fan2d,
                         gen_hypercube, gen_moment_voronoi, gen_tight_span)
from .geometry import EmptyPolyhedron, PolyhedronSpec, preprocess
from .io import (ParseError, complex_to_dict, dumps, format_instance, parse_instance,
                 parse_metric, read_instance)
from .linalg import format_rational, parse_rational
from .oracle import TooLarge, brute_force_complex, brute_force_face_lattice, diff_complexes
from .subcomplex import (build_known_d, build_unknown_d, check_face_bounds,
                         euler_characteristic, is_general_position)
from .vertices import check_vertex_bound, enumerate_vertices, vertex_bound

logger = logging.getLogger("polyspan")


class ExpectationFailed(Exception):
    pass


def _load(path: str):
    text = sys.stdin.read() if path == "-" else open(path).read()
    return preprocess(parse_instance(text))


def _solve(spec, d: Optional[int], threads: int):
    if d is None:
        return build_unknown_d(spec, workers=threads)
    return d, build_known_d(spec, d, workers=threads)


def cmd_vertices(args) -> int:
    spec = _load(args.file)
    d = spec.reduced_dim if args.d is None else args.d
    vs = enumerate_vertices(spec, d, workers=args.threads)
    out = {"d": d, "count": len(vs), "vertices": [
        {"id": k, "point": [format_rational(c) for c in v.point], "active": sorted(v.active),
         "ell": format_rational(v.ell)} for k, v in enumerate(vs.vertices)]}
    sys.stdout.write(dumps(out))
    return 0


def cmd_subcomplex(args) -> int:
    spec = _load(args.file)
    d, F = _solve(spec, args.d, args.threads)
    sys.stdout.write(dumps(complex_to_dict(F, approx=args.approx)))
    if args.assume_general_position:
        report = check_face_bounds(F, spec.n_kept, spec.reduced_dim, F.d_max, True,
                                   len(F.vertices))
        for v in report.violations:
            print(f"bound violation: {v}", file=sys.stderr)
        if not report.ok:
            return 1
    return 0


def cmd_euler(args) -> int:
    spec = _load(args.file)
    _, F = _solve(spec, args.d, args.threads)
    print(euler_characteristic(F))
    return 0


def cmd_oracle(args) -> int:
    spec = _load(args.file)
    sys.stdout.write(dumps(complex_to_dict(brute_force_complex(spec), approx=args.approx)))
    return 0


def cmd_check(args) -> int:
    spec = _load(args.file)
    _, F = _solve(spec, args.d, args.threads)
    diff = diff_complexes(F, brute_force_complex(spec))
    for line in diff:
        print(line)
    if diff:
        return 1
    print("ok: pipeline and oracle agree")
    return 0


def _rationals(text: str) -> list:
    return [parse_rational(t) for t in text.split(",") if t.strip()]


def cmd_gen(args) -> int:
    if args.family == "hypercube":
        spec = gen_hypercube(args.dim, args.d)
    elif args.family == "cone":
        spec = gen_cone(read_instance(args.base))
    elif args.family == "fan2d":
        spec = gen_fan2d(_rationals(args.slopes))
    elif args.family == "tightspan":
        with open(args.matrix) as fh:
            m = MetricInput(tuple(parse_metric(fh.read())))
        spec = gen_tight_span(m, args.with_nonneg)
    else:
        spec = gen_moment_voronoi(_rationals(args.t))
    text = format_instance(spec)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def corpus() -> list:
    """Named generator instances with the counts they are known to have.

    Entries are ``(name, spec, expected vertices or None, expected d or None)``.
    """
    out = []
    for D in range(2, 7):
        for d in range(D):
            out.append((f"hypercube D={D} d={d}", gen_hypercube(D, d),
                        sum(comb(D, i) for i in range(d + 1)), d))
    for n in range(2, 11):
        out.append((f"fan2d n={n}", gen_fan2d(range(n)), n - 1, 1 if n > 2 else 0))
    for D in (1, 2, 3):
        out.append((f"cone over {D}-cube", gen_cone(box_base(D)), 1, 0))
    for n in range(4, 8):
        out.append((f"moment n={n}", gen_moment_voronoi(range(n)), comb(n - 2, 2),
                    2 if n >= 5 else None))
    out.append(("tightspan equilateral-3", gen_tight_span(MetricInput.uniform(3, 2)), 4, 1))
    out.append(("tightspan n=2 nonneg", gen_tight_span(MetricInput.uniform(2, 2)), 2, 1))
    out.append(("tightspan n=2 pairs only",
                gen_tight_span(MetricInput.uniform(2, 2), include_nonneg=False), 0, None))
    return out


def _reproduce_row(name, spec: PolyhedronSpec, expected_n, expected_d, threads):
    ns = preprocess(spec)
    d, F = build_unknown_d(ns, workers=threads)
    N = len(F.vertices)
    chi = euler_characteristic(F)
    Dp = ns.reduced_dim
    problems = []
    if expected_n is not None and N != expected_n:
        problems.append(f"vertices {N} != {expected_n}")
    if expected_d is not None and d != expected_d:
        problems.append(f"d {d} != {expected_d}")
    if N and chi != 0:
        problems.append(f"euler {chi} != 0")
    bound = "-"
    if N and d < Dp:
        bound = str(vertex_bound(ns.n_kept, Dp, d))
        if not check_vertex_bound(ns.n_kept, Dp, d, N):
            problems.append(f"vertex bound {bound} exceeded")
    gp = is_general_position(F)
    report = check_face_bounds(F, ns.n_kept, Dp, F.d_max, gp, N)
    problems.extend(report.violations)
    return [name, "-" if expected_n is None else str(expected_n), str(N), str(d), bound,
            str(chi), "ok" if not problems else "; ".join(problems)], not problems


def cmd_reproduce(args) -> int:
    rows = [["instance", "expected", "vertices", "d", "bound", "chi", "status"]]
    ok = True
    for name, spec, n, d in corpus():
        row, good = _reproduce_row(name, spec, n, d, args.threads)
        rows.append(row)
        ok = ok and good
    cone = preprocess(gen_cone(box_base(2)))
    total = len(brute_force_face_lattice(cone))
    good = total == 3 ** 2 + 2
    rows.append(["cone over square: all faces", str(3 ** 2 + 2), str(total), "-", "-", "-",
                 "ok" if good else "face count mismatch"])
    ok = ok and good
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    print("all expectations hold" if ok else "EXPECTATION FAILURES")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, metavar="k",
                        help="worker processes (output does not depend on it)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="polyspan",
                                description="Bounded faces of halfspace intersections, exactly.")
    sub = p.add_subparsers(dest="command", required=True)

    def instance_cmd(name, fn, help_, d=True, approx=False):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("file", help="instance file, or - for stdin")
        if d:
            sp.add_argument("--d", type=int, default=None,
                            help="use this dimension instead of searching for it")
        if approx:
            sp.add_argument("--approx", action="store_true",
                            help="add decimal approximations (not authoritative)")
        sp.set_defaults(func=fn)
        return sp

    instance_cmd("vertices", cmd_vertices, "vertices of the complex")
    sc = instance_cmd("subcomplex", cmd_subcomplex, "the complex as JSON", approx=True)
    sc.add_argument("--assume-general-position", action="store_true",
                    help="also enforce the general-position face count bounds")
    instance_cmd("euler", cmd_euler, "Euler characteristic of the complex")
    instance_cmd("oracle", cmd_oracle, "brute-force complex as JSON", d=False, approx=True)
    instance_cmd("check", cmd_check, "compare the pipeline against the oracle")

    rp = sub.add_parser("reproduce", parents=[common], help="run the generator corpus")
    rp.set_defaults(func=cmd_reproduce)

    gp = sub.add_parser("gen", help="write a generated instance")
    gsub = gp.add_subparsers(dest="family", required=True)
    for name in ("hypercube", "cone", "fan2d", "tightspan", "moment"):
        g = gsub.add_parser(name, parents=[common])
        g.add_argument("--out", default=None)
        g.set_defaults(func=cmd_gen)
        if name == "hypercube":
            g.add_argument("--dim", type=int, required=True)
            g.add_argument("--d", type=int, required=True)
        elif name == "cone":
            g.add_argument("--base", required=True, help="instance file of the base polytope")
        elif name == "fan2d":
            g.add_argument("--slopes", required=True, help="comma separated rationals")
        elif name == "tightspan":
            g.add_argument("--matrix", required=True, help="distance matrix file")
            g.add_argument("--with-nonneg", action="store_true")
        else:
            g.add_argument("--t", required=True, help="comma separated rationals")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (EmptyPolyhedron, BaseUnbounded, TooLarge) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
