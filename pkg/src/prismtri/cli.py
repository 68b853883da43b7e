"""Command-line entry point.

Exit codes: 0 pass, 1 usage or malformed input, 2 capacity guard,
3 lemma/invariant failure, 4 validity failure.
"""

from __future__ import annotations

import argparse
import sys
import time
from itertools import combinations
from pathlib import Path

from . import __version__
from .bounds import (
    SweepResult,
    check_monotone_lemma,
    formula_alpha,
    formula_max,
    identity_sweep_exhaustive,
    identity_sweep_sampled,
    link_bound_failures,
    max_alpha,
)
from .construct import MAX_CONSTRUCT_N, construct_maximal
from .documents import DocumentError, TriangulationDocument, dumps, report_document
from .enumeration import GUARDS, enumerate_all, max_triangulation, worker_count
from .errors import CapacityError, ConstructionError, StructuralError
from .kernel import validate_triangulation
from .polygon import admissible_order, admissible_orders, iter_polygon_triangulations, polygon_edges
from .shapes import (
    Side,
    ShapeSpec,
    boundary_height_profile,
    functional_levels,
    interior_side,
    profile_sum,
    top_chord,
)

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_INVARIANT, EXIT_INVALID = 0, 1, 2, 3, 4

MAX_BOUND_N = 10
MAX_EXHAUSTIVE_IDENTITY_N = 8


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj, out: str | None) -> None:
    text = dumps(obj) if not isinstance(obj, str) else obj
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _shape(args) -> ShapeSpec:
    return ShapeSpec(args.shape, args.n)


def cmd_enumerate(args) -> int:
    shape = _shape(args)
    try:
        res = enumerate_all(
            shape,
            guard=not args.no_guard,
            jobs=args.jobs,
            leaf_check=_links_ok if args.check_links else None,
            orbits=args.orbits,
        )
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    results = {
        "count": res.count,
        "max_size": res.max_size,
        "min_size": res.min_size,
        "formula_max": formula_max(shape),
        "size_histogram": {str(k): v for k, v in res.size_histogram.items()},
        "max_witness": [[str(p) for p in t] for t in res.max_witness.tets],
    }
    if res.orbit_count is not None:
        results["orbit_count"] = res.orbit_count
    checks = {
        "max_equals_formula": res.max_size == formula_max(shape),
        "no_repeats": res.repeats == 0,
        "tet_types": res.type_violations == 0,
        "leaves_valid": res.invalid_leaves == 0,
    }
    if args.check_links:
        checks["link_bounds"] = res.leaf_check_failures == 0
    report = report_document("enumerate", {"shape": shape.kind.value, "n": shape.n, "jobs": worker_count(args.jobs)},
                             results, checks, res.elapsed)
    _emit(report, args.out)
    if args.histogram:
        for size, count in res.size_histogram.items():
            print(f"{size:4d} {count}", file=sys.stderr)
    return EXIT_OK if report["passed"] else EXIT_INVARIANT


def _links_ok(tri) -> bool:
    return not link_bound_failures(tri)


def cmd_max(args) -> int:
    shape = _shape(args)
    start = time.perf_counter()
    within = shape.n <= GUARDS[shape.kind]
    try:
        if within:
            size, tri = max_triangulation(shape, assume_bound=args.assume_bound, jobs=args.jobs)
            method = "search" if args.assume_bound else "exhaustive"
        elif args.assume_bound and shape.n <= MAX_CONSTRUCT_N:
            tri = construct_maximal(shape, seed=args.seed)
            size, method = tri.size, "construct"
        else:
            raise CapacityError(f"{shape} is beyond the enumeration guard (use --assume-bound)")
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ConstructionError, StructuralError) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    doc = TriangulationDocument(tri, generator=f"prismtri {__version__} max/{method}")
    summary = report_document(
        "max",
        {"shape": shape.kind.value, "n": shape.n, "assume_bound": args.assume_bound, "seed": args.seed},
        {"size": size, "formula_max": formula_max(shape), "method": method},
        {"valid": validate_triangulation(tri).ok, "size_equals_formula": size == formula_max(shape)},
        time.perf_counter() - start,
    )
    if args.out:
        doc.save(args.out)
        _emit(summary, None)
    else:
        _emit(doc.dumps(), None)
    if not summary["checks"]["valid"]:
        return EXIT_INVALID
    return EXIT_OK if summary["passed"] else EXIT_INVARIANT


def verify_document(doc: TriangulationDocument) -> tuple[int, dict]:
    start = time.perf_counter()
    tri = doc.triangulation
    n = tri.shape.n
    report = validate_triangulation(tri)
    checks = {"valid": report.ok}
    results: dict = {"size": tri.size, "failures": [[code, str(w)] for code, w in report.failures]}
    code = EXIT_OK
    if report.ok:
        types = tri.type_counts()
        results["type_counts"] = {f"{a}+{b}": c for (a, b), c in sorted(types.items())}
        checks["tet_types"] = types[(3, 1)] == n - 2 and types[(1, 3)] == n - 2
        links = link_bound_failures(tri)
        results["link_failures"] = [[str(e), why] for e, why in links]
        checks["link_bounds"] = not links
        if not all(checks.values()):
            code = EXIT_INVARIANT
    else:
        code = EXIT_INVALID
    out = report_document("verify", {"shape": tri.shape.kind.value, "n": n}, results, checks,
                          time.perf_counter() - start)
    return code, out


def cmd_verify(args) -> int:
    try:
        doc = TriangulationDocument.load(args.file)
    except DocumentError as exc:
        print(f"malformed: {exc}", file=sys.stderr)
        return EXIT_USAGE
    code, report = verify_document(doc)
    _emit(report, args.out)
    return code


def cmd_bound(args) -> int:
    shape = _shape(args)
    n = shape.n
    if n > MAX_BOUND_N or (args.exhaustive_identity and n > MAX_EXHAUSTIVE_IDENTITY_N):
        print(f"capacity: bound sweeps are limited to n <= {MAX_BOUND_N} "
              f"(exhaustive identity n <= {MAX_EXHAUSTIVE_IDENTITY_N})", file=sys.stderr)
        return EXIT_CAPACITY
    start = time.perf_counter()
    profile = boundary_height_profile(shape, 0)

    lemma_instances, lemma_failures = 0, []
    for a, b in combinations(range(n), 2):
        chord = top_chord(a, b, n)
        if chord.is_boundary(n):
            continue
        for side in Side:
            lemma_instances += 1
            if not check_monotone_lemma(shape, chord, side):
                lemma_failures.append(f"{chord}/{side.value}")

    sweep = SweepResult()
    best_alpha = None
    for pt in iter_polygon_triangulations(n):
        ao = admissible_order(pt, (0, 1))
        val = max_alpha(shape, pt, ao, admissible=True)
        best_alpha = val if best_alpha is None else max(best_alpha, val)
        if args.exhaustive_identity:
            if n <= 6:
                orders = [o for root in polygon_edges(n) for o in admissible_orders(pt, root)]
            else:
                orders = [ao]
            for o in orders:
                sweep.merge(identity_sweep_exhaustive(shape, pt, o))
    if not args.exhaustive_identity:
        sweep = identity_sweep_sampled(shape, args.samples, seed=args.seed)

    results = {
        "profile": profile,
        "profile_sum": sum(profile),
        "formula_alpha": formula_alpha(shape),
        "max_alpha": best_alpha,
        "formula_max": formula_max(shape),
        "identity": {"mode": "exhaustive" if args.exhaustive_identity else "sampled",
                     "instances": sweep.instances, "failures": sweep.failures},
        "monotone_lemma": {"instances": lemma_instances, "failures": lemma_failures},
    }
    checks = {
        "profile_sum": sum(profile) == profile_sum(shape),
        "identity": sweep.failures == 0,
        "monotone_lemma": not lemma_failures,
        "later_terms_nonpositive": sweep.positive_terms == 0,
        "max_alpha": best_alpha == formula_alpha(shape),
    }
    report = report_document("bound", {"shape": shape.kind.value, "n": n,
                                       "exhaustive_identity": args.exhaustive_identity,
                                       "samples": args.samples, "seed": args.seed},
                             results, checks, time.perf_counter() - start)
    _emit(report, args.out)
    return EXIT_OK if report["passed"] else EXIT_INVARIANT


def cmd_heights(args) -> int:
    shape = _shape(args)
    n = shape.n
    if not 0 <= args.edge < n:
        print(f"edge index must be in [0, {n})", file=sys.stderr)
        return EXIT_USAGE
    a = args.edge
    lines = [f"{shape}: boundary height profile of B0 over top edges (k, k+1)"]
    lines.append("  " + " ".join(str(h) for h in boundary_height_profile(shape, 0)))
    lines.append(f"  sum = {sum(boundary_height_profile(shape, 0))}")
    lines.append(f"level tables for top chords at T{a} (rows: positive side; columns: B0..B{n - 1})")
    for b in range(n):
        if b == a:
            continue
        chord = top_chord(a, b, n)
        for side in Side:
            fl = functional_levels(shape, chord, side)
            tag = "interior" if chord.is_boundary(n) and interior_side(chord, n) is side else side.value
            lines.append(f"  {chord!s:10} {tag:8} levels  " + " ".join(f"{l:3d}" for l in fl.levels))
            lines.append(f"  {'':10} {'':8} heights " + " ".join(f"{h:3d}" for h in fl.heights()))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="prismtri", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def shape_args(p):
        p.add_argument("--shape", choices=["prism", "antiprism"], required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--out", help="write the JSON document here instead of stdout")

    p = sub.add_parser("enumerate", help="enumerate every triangulation")
    shape_args(p)
    p.add_argument("--histogram", action="store_true", help="also print the size histogram to stderr")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: $PRISMTRI_THREADS or 1)")
    p.add_argument("--orbits", action="store_true", help="count orbits under the dihedral symmetry")
    p.add_argument("--check-links", action="store_true", help="run the link-bound check on every leaf")
    p.add_argument("--no-guard", action="store_true", help="lift the size guard")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("max", help="find a maximum-size triangulation")
    shape_args(p)
    p.add_argument("--assume-bound", action="store_true",
                   help="stop at the closed-form size; beyond the guard, construct instead of search")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_max)

    p = sub.add_parser("verify", help="validate a triangulation document")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="sweep the alpha identity and the monotone lemma")
    shape_args(p)
    p.add_argument("--exhaustive-identity", action="store_true")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("heights", help="print height profiles and level tables")
    shape_args(p)
    p.add_argument("--edge", type=int, required=True)
    p.set_defaults(func=cmd_heights)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "n", 3) < 3:
            raise ValueError("n must be >= 3")
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
