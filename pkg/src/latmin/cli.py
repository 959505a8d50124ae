"""Command line interface.

Commands: analyze (minimal vector census of a Gram matrix file), realize
(solve a code realization file), verify (run the bundled reference
checks), cases-d6 (batch feasibility scan). Exit codes: 0 success,
1 failed verification check, 2 invalid input, 3 unsupported size,
4 iteration cap reached.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import refdata
from .cases_d6 import bundled_classes, derive_classes, load_classes, scan_cases
from .formats import ParseError, canonical_json, parse_code, parse_gram, render_gram
from .lattice import GramMatrix, NotPositiveDefinite, UnsupportedSize, minimal_vectors
from .matrices import canonical_sign
from .minkowski import AnalysisReport, analyze, find_minimal_basis, subset_index
from .realization import (
    IterationLimitExceeded,
    RealizationResult,
    norm_relation_check,
    perfection_relation,
    realize,
    scan_faces,
)

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_INPUT = 2
EXIT_SIZE = 3
EXIT_CAP = 4


def _frac_text(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _frac_json(f: Fraction) -> list[int]:
    return [f.numerator, f.denominator]


def _vec_text(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


# ---------------------------------------------------------------------------
# analyze


def _analysis_json(rep: AnalysisReport) -> dict:
    return {
        "n": rep.n,
        "min": _frac_json(rep.min),
        "s": rep.s,
        "well_rounded": rep.well_rounded,
        "generated": rep.generated,
        "maximal": None
        if rep.maximal is None
        else {
            "picks": list(rep.maximal.picks),
            "index": rep.maximal.index,
            "divisors": list(rep.maximal.divisors),
        },
        "basis": None if rep.basis is None else list(rep.basis),
        "census": None
        if rep.census is None
        else [[list(k), v] for k, v in sorted(rep.census.items())],
        "vectors": [list(v) for v in rep.vectors],
    }


def _analysis_text(rep: AnalysisReport) -> str:
    lines = [
        f"n {rep.n}",
        f"min {_frac_text(rep.min)}",
        f"s {rep.s}",
        f"well_rounded {str(rep.well_rounded).lower()}",
        f"generated {str(rep.generated).lower()}",
    ]
    if rep.maximal is None:
        lines.append("maximal_index NONE")
    else:
        lines.append(f"maximal_index {rep.maximal.index}")
        lines.append(
            "maximal_witness "
            + " ".join(_vec_text(rep.vectors[i]) for i in rep.maximal.picks)
        )
        lines.append(
            "maximal_divisors " + ",".join(str(d) for d in rep.maximal.divisors)
        )
    if rep.basis is None:
        lines.append("basis NONE")
    else:
        lines.append(
            "basis " + " ".join(_vec_text(rep.vectors[i]) for i in rep.basis)
        )
    if rep.census is not None:
        for divs, count in sorted(rep.census.items()):
            lines.append("census " + ",".join(str(d) for d in divs) + f" x{count}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    g = parse_gram(Path(args.path).read_text())
    rep = analyze(g, census=args.census)
    if args.json:
        sys.stdout.write(canonical_json(_analysis_json(rep)))
    else:
        sys.stdout.write(_analysis_text(rep))
    return EXIT_OK


# ---------------------------------------------------------------------------
# realize


def _result_json(res: RealizationResult, show_vertices: bool, faces=None) -> dict:
    doc = {
        "status": res.status,
        "subspace_dim": res.subspace_dim,
        "affine_dim": res.affine_dim,
        "rounds": res.rounds,
        "vertex_count": len(res.vertices),
        "barycenter": None
        if res.barycenter is None
        else render_gram(res.barycenter),
        "implied": [list(v) for v in res.implied],
        "certificate": None
        if res.certificate is None
        else [
            {
                "kind": t.kind,
                "vector": list(t.vector),
                "multiplier": _frac_json(t.multiplier),
            }
            for t in res.certificate.terms
        ],
    }
    if show_vertices:
        doc["vertices"] = [render_gram(g) for g in res.vertices]
    if faces is not None:
        doc["faces"] = [
            {
                "vertices": list(f.vertex_indices),
                "dim": f.dim,
                "min": _frac_json(f.min),
                "s": f.s,
                "generated": f.generated,
                "basis_found": f.basis is not None,
                "counterexample": f.counterexample,
            }
            for f in faces
        ]
    return doc


def _result_text(res: RealizationResult, show_vertices: bool, bary_only: bool, faces=None) -> str:
    lines = [f"status {res.status}"]
    lines.append(f"subspace_dim {res.subspace_dim}")
    lines.append(f"affine_dim {res.affine_dim}")
    lines.append(f"rounds {res.rounds}")
    if res.status == "feasible":
        lines.append(f"vertices {len(res.vertices)}")
        bary = res.barycenter
        lines.append(f"barycenter_scale {bary.scale}")
        for row in bary.gint.entries:
            lines.append("barycenter_row " + " ".join(str(x) for x in row))
        if not bary_only:
            lines.append(f"implied {len(res.implied)}")
            for v in res.implied:
                lines.append("implied_vector " + _vec_text(v))
            if show_vertices:
                for i, g in enumerate(res.vertices):
                    lines.append(f"vertex {i} scale {g.scale}")
                    for row in g.gint.entries:
                        lines.append(f"vertex_row {i} " + " ".join(str(x) for x in row))
    else:
        cert = res.certificate
        lines.append(f"certificate_terms {len(cert.terms)}")
        for t in cert.terms:
            lines.append(
                f"certificate {t.kind} {_vec_text(t.vector)} "
                f"{_frac_text(t.multiplier)}"
            )
    if faces is not None:
        for f in faces:
            lines.append(
                f"face dim {f.dim} vertices "
                + ",".join(str(i) for i in f.vertex_indices)
                + f" min {_frac_text(f.min)} s {f.s}"
                + f" generated {str(f.generated).lower()}"
                + f" basis {'yes' if f.basis is not None else 'no'}"
                + f" counterexample {str(f.counterexample).lower()}"
            )
    return "\n".join(lines) + "\n"


def cmd_realize(args) -> int:
    _, problem = parse_code(Path(args.path).read_text())
    try:
        res = realize(problem)
    except IterationLimitExceeded as exc:
        sys.stderr.write(
            f"iteration cap: {exc.rounds} rounds, {exc.num_vertices} vertices, "
            f"{exc.num_cuts} cuts\n"
        )
        return EXIT_CAP
    faces = scan_faces(problem, res) if args.faces and res.status == "feasible" else None
    if args.json:
        sys.stdout.write(canonical_json(_result_json(res, args.vertices, faces)))
    else:
        sys.stdout.write(_result_text(res, args.vertices, args.barycenter, faces))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _claim(ok: bool, text: str) -> tuple[bool, str]:
    return ok, text


def dim9_claims(res: RealizationResult | None = None) -> list[tuple[bool, str]]:
    """Checks for the bundled 9-dimensional configuration."""
    if res is None:
        res = realize(refdata.dim9_problem())
    claims = [
        _claim(res.status == "feasible", f"status {res.status}"),
        _claim(
            len(res.vertices) == refdata.DIM9_VERTEX_COUNT,
            f"vertex count {len(res.vertices)}",
        ),
    ]
    bary = res.barycenter
    ok = (
        bary is not None
        and bary.scale == refdata.DIM9_BARYCENTER_SCALE
        and bary.gint.entries == refdata.DIM9_BARYCENTER_SCALED
    )
    claims.append(
        _claim(ok, f"barycenter scale {None if bary is None else bary.scale}")
    )
    implied = {canonical_sign(v) for v in res.implied}
    expected = {canonical_sign(v) for v in refdata.DIM9_IMPLIED}
    claims.append(
        _claim(implied == expected, f"implied vectors {len(res.implied)}")
    )

    svs = minimal_vectors(bary)
    rank, relation = perfection_relation(svs)
    claims.append(
        _claim(
            rank == refdata.DIM9_RELATION_RANK and relation is not None,
            f"projection rank {rank} corank {svs.s - rank}",
        )
    )
    targets = {
        canonical_sign(v) for v in refdata.dim9_problem().embedding.ebar
    } | {canonical_sign(refdata.DIM9_EXTRA)}
    split_ok = False
    if relation is not None:
        lookup = dict(zip(svs.vectors, relation))
        plus = {v for v, c in lookup.items() if c == 1}
        minus = {v for v, c in lookup.items() if c == -1}
        if plus == expected and minus == targets:
            plus, minus = minus, plus
        split_ok = plus == targets and minus == expected
    claims.append(_claim(split_ok, "relation is +-1 split on targets/implied"))
    claims.append(
        _claim(
            relation is not None and norm_relation_check(svs, relation),
            "norm relation holds",
        )
    )

    pos = {v: i for i, v in enumerate(svs.vectors)}
    picks = tuple(pos[v] for v in refdata.DIM9_BASIS_SUBSET if v in pos)
    if len(picks) == 9:
        idx = subset_index(svs, picks).index
        claims.append(_claim(idx == 1, f"named subset index {idx}"))
    else:
        claims.append(_claim(False, "named subset vectors missing"))
    claims.append(
        _claim(find_minimal_basis(svs) is not None, "minimal vector basis exists")
    )
    return claims


def dim10_claims(res: RealizationResult | None = None) -> list[tuple[bool, str]]:
    """Checks for the bundled 10-dimensional configuration."""
    if res is None:
        res = realize(refdata.dim10_problem())
    claims = [
        _claim(res.status == "feasible", f"status {res.status}"),
        _claim(
            len(res.vertices) == refdata.DIM10_VERTEX_COUNT,
            f"vertex count {len(res.vertices)}",
        ),
    ]
    bary = res.barycenter
    bsvs = minimal_vectors(bary)
    scaled_min = bsvs.min * bary.scale
    claims.append(
        _claim(
            scaled_min == refdata.DIM10_BARYCENTER_SCALED_MIN,
            f"scaled barycenter minimum {scaled_min}",
        )
    )
    claims.append(_claim(bsvs.s == refdata.DIM10_S, f"barycenter s {bsvs.s}"))

    rep = analyze(refdata.dim10_sample_reference(), census=True)
    claims.append(
        _claim(rep.min == refdata.DIM10_SAMPLE_MIN, f"sample minimum {_frac_text(rep.min)}")
    )
    claims.append(_claim(rep.s == refdata.DIM10_S, f"sample s {rep.s}"))
    claims.append(_claim(rep.well_rounded, "sample well rounded"))
    claims.append(_claim(rep.generated, "sample generated by minimal vectors"))
    claims.append(_claim(rep.basis is None, "sample has no minimal vector basis"))
    claims.append(
        _claim(
            rep.maximal is not None
            and rep.maximal.index == refdata.DIM10_MAXIMAL_INDEX,
            f"sample maximal index {None if rep.maximal is None else rep.maximal.index}",
        )
    )
    census_ok = rep.census is not None and all(
        all(d == 1 for d in divs[:-1]) and divs[-1] in (2, 3, 4, 5)
        for divs in rep.census
    )
    claims.append(
        _claim(
            census_ok,
            "quotients cyclic of order "
            + ",".join(str(d[-1]) for d in sorted(rep.census or {})),
        )
    )
    # the sample sits at the midpoint of two polytope vertices: with
    # vertices at minimum 1, sample/24 must split as a sum of two of them
    mats = {v.mat for v in res.vertices}
    doubled = refdata.dim10_sample_reference().mat.scale(Fraction(1, 24))
    midpoint = any(doubled - m in mats and doubled - m != m for m in mats)
    claims.append(_claim(midpoint, "sample is a midpoint of two vertices"))
    return claims


def render_verify_report(sections: list[tuple[str, list[tuple[bool, str]]]]) -> tuple[str, bool]:
    lines = []
    all_ok = True
    for name, claims in sections:
        lines.append(f"[{name}]")
        for ok, text in claims:
            all_ok = all_ok and ok
            lines.append(("PASS " if ok else "FAIL ") + text)
    return "\n".join(lines) + "\n", all_ok


def cmd_verify(args) -> int:
    sections = []
    if args.target in ("paper-9d5", "all"):
        sections.append(("paper-9d5", dim9_claims()))
    if args.target in ("paper-10d5", "all"):
        sections.append(("paper-10d5", dim10_claims()))
    report, all_ok = render_verify_report(sections)
    sys.stdout.write(report)
    return EXIT_OK if all_ok else EXIT_CHECK


# ---------------------------------------------------------------------------
# cases-d6


def cmd_cases_d6(args) -> int:
    if args.classes:
        classes = load_classes(Path(args.classes).read_text())
    elif args.derive_classes:
        classes = [c[:3] for c in derive_classes()]
    else:
        classes = bundled_classes()
    results = scan_cases(
        classes,
        limit=args.limit,
        parallel=args.parallel,
        iteration_cap=args.cap,
    )
    feasible = [r for r in results if r.status == "feasible"]
    capped = [r for r in results if r.status == "cap"]
    for r in results:
        line = (
            f"case {r.case.klass} y {_vec_text(r.case.y)} z {_vec_text(r.case.z)} "
            f"{r.status}"
        )
        if r.status == "feasible":
            line += f" vertices {r.vertex_count} basis {'yes' if r.basis_found else 'no'}"
        sys.stdout.write(line + "\n")
    sys.stdout.write(f"cases {len(results)}\n")
    sys.stdout.write(f"feasible {len(feasible)}\n")
    if capped:
        sys.stdout.write(f"capped {len(capped)}\n")
    profiles = sorted({r.case.klass for r in feasible})
    for p in profiles:
        sys.stdout.write(f"feasible_class {p[0]},{p[1]},{p[2]}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latmin",
        description="exact minimal vector analysis and code realization",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="minimal vector census of a Gram matrix file")
    p.add_argument("path")
    p.add_argument("--census", action="store_true", help="include quotient census")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("realize", help="solve a code realization file")
    p.add_argument("path")
    p.add_argument("--vertices", action="store_true", help="list all vertices")
    p.add_argument(
        "--barycenter",
        action="store_true",
        help="print only the barycenter block",
    )
    p.add_argument("--faces", action="store_true", help="scan facets of the polytope")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", help="run the bundled reference checks")
    p.add_argument("target", choices=["paper-9d5", "paper-10d5", "all"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cases-d6", help="batch scan of dimension 9 codes mod 6")
    p.add_argument(
        "--classes",
        help="JSON file with class multiplicities (default: bundled list)",
    )
    p.add_argument(
        "--derive-classes",
        action="store_true",
        help="recompute the class list instead of reading it",
    )
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--cap", type=int, default=None, help="per-case iteration cap")
    p.set_defaults(func=cmd_cases_d6)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except UnsupportedSize as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SIZE
    except NotPositiveDefinite as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (ParseError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
