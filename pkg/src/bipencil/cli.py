"""Command-line interface.

Exit codes: 0 success, 1 input error (parse/Jacobi failures), 2 refused
precondition (rank-deficient point, phase-space violation).  Errors are
mirrored as machine-readable JSON on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction

from . import __version__
from .analyzer import AnalysisParams, analyze_point
from .catalog import catalog, catalog_by_name
from .errors import (BipencilError, InputFormatError, PreconditionError,
                     RankDeficientPointError)
from .io import (catalog_entry_to_json_dict, dump_canonical, load_pencil_file,
                 parse_point_csv, pencil_to_json_dict, report_document)
from .jk import jk_invariants
from .liealg import LieAlgebra, LinearPencil, TwoCocycle, is_cocycle, kernel_of_cocycle, is_regular_cocycle
from .roots import classify, is_nondegenerate_linear, linear_pencil_type, root_decomposition
from .sampling import SamplingPolicy
from .scalars import EXACT, float_mode, format_scalar, parse_rational
from .tensorfield import evaluate_pencil
from .toda import TodaPoint, random_point, toda_pencil, toda_spectrum_via_lax

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_REFUSED = 2


def _emit_error(code: str, message, position=None) -> None:
    doc = {"error": code, "message": str(message)}
    if position is not None:
        doc["position"] = str(position)
    print(json.dumps(doc, sort_keys=True), file=sys.stderr)


def _write_output(text: str, out_path) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out_path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".bipencil-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out_path)
    except BaseException:
        os.unlink(tmp)
        raise


def _analysis_params(args, declared_rank=None) -> AnalysisParams:
    return AnalysisParams(mode=args.mode, tolerance=args.tol, seed=args.seed,
                          declared_rank=declared_rank)


def _provenance(args, extra=None) -> dict:
    doc = {"library_version": __version__, "mode": args.mode,
           "tolerance": args.tol if args.mode == "float" else None,
           "seed": args.seed}
    if extra:
        doc.update(extra)
    return doc


def cmd_analyze(args) -> int:
    field0, field_inf, declared, meta = load_pencil_file(args.pencil)
    point = parse_point_csv(args.point, field0.dim)
    params = _analysis_params(args, declared)
    report = analyze_point(field0, field_inf, point, params)
    doc = report_document(report, _provenance(args, {
        "pencil_file": args.pencil, "pencil_meta": meta,
        "point": [format_scalar(x) for x in point]}))
    _write_output(dump_canonical(doc), args.out)
    return EXIT_OK


def cmd_toda(args) -> int:
    n = args.n
    field0, field_inf = toda_pencil(n)
    declared = 2 * n - 2
    reports = []

    def analyze_toda_point(pt: TodaPoint) -> dict:
        params = _analysis_params(args, declared)
        report = analyze_point(field0, field_inf, pt.coordinates(), params)
        mode = EXACT if args.mode == "exact" else float_mode(args.tol)
        lax = toda_spectrum_via_lax(pt, mode)
        lax_block = [{"lambda": format_scalar(e.lam),
                      "lax_eigenvalue": format_scalar(e.lax_eigenvalue),
                      "which": e.which, "multiplicity": e.multiplicity}
                     for e in lax]
        pencil_vals = sorted(format_scalar(e.lam) for e in report.spectrum.entries)
        lax_vals = sorted(b["lambda"] for b in lax_block)
        return {"a": [format_scalar(x) for x in pt.a],
                "b": [format_scalar(x) for x in pt.b],
                "report": report.to_json_dict(),
                "lax_oracle": lax_block,
                "oracle_agrees": pencil_vals == lax_vals}

    if args.random or args.scan:
        count = args.scan or 1
        base = args.seed
        for k in range(count):
            pt = random_point(n, base + 7919 * k)
            reports.append(analyze_toda_point(pt))
    else:
        if args.a is None or args.b is None:
            raise InputFormatError("either --a/--b or --random/--scan is required")
        a = parse_point_csv(args.a, n)
        b = parse_point_csv(args.b, n)
        if any(not (x > 0) for x in a):
            raise PreconditionError("phase space requires a_i > 0")
        reports.append(analyze_toda_point(TodaPoint(n=n, a=a, b=b)))

    summary = {
        "n": n,
        "count": len(reports),
        "verdicts": sorted({r["report"]["verdict"]["kind"] for r in reports}),
        "all_oracle_agree": all(r["oracle_agrees"] for r in reports),
    }
    doc = {"provenance": _provenance(args), "summary": summary, "points": reports}
    _write_output(dump_canonical(doc), args.out)
    return EXIT_OK


def cmd_jk(args) -> int:
    field0, field_inf, declared, _meta = load_pencil_file(args.pencil)
    point = parse_point_csv(args.point, field0.dim)
    mode = EXACT if args.mode == "exact" else float_mode(args.tol)
    p = evaluate_pencil(field0, field_inf, point, exact_required=mode.is_exact)
    inv = jk_invariants(p, SamplingPolicy(args.seed), mode)
    doc = {"invariants": inv.to_json_dict(),
           "provenance": _provenance(args, {"pencil_file": args.pencil,
                                            "point": [format_scalar(x) for x in point]})}
    _write_output(dump_canonical(doc), args.out)
    return EXIT_OK


def cmd_linear(args) -> int:
    try:
        with open(args.algebra) as fh:
            alg_doc = json.load(fh)
        with open(args.cocycle) as fh:
            coc_doc = json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read input file: {exc}")
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON: {exc}", position=f"line {exc.lineno}")
    algebra = LieAlgebra.from_json_dict(alg_doc)
    violation = algebra.jacobi_violation()
    if violation is not None:
        i, j, k = violation
        raise InputFormatError(
            f"structure constants violate the Jacobi identity on basis triple "
            f"({i + 1}, {j + 1}, {k + 1})", position="structure")
    cocycle = TwoCocycle.from_json_dict(coc_doc, dim=algebra.dim)
    mode = EXACT if args.mode == "exact" else float_mode(args.tol)
    if not is_cocycle(algebra, cocycle, mode):
        raise InputFormatError("the form is not a 2-cocycle for this algebra",
                               position="cocycle")
    lp = LinearPencil(algebra, cocycle)
    kernel = kernel_of_cocycle(lp, mode)
    regular = is_regular_cocycle(lp, SamplingPolicy(args.seed), mode)
    data = root_decomposition(lp, mode, kernel=kernel)
    ok, reason = is_nondegenerate_linear(lp, mode, data)
    doc = {
        "dim": algebra.dim,
        "field": algebra.field,
        "cocycle_rank": cocycle.rank(mode),
        "regular": regular,
        "kernel": {"dim": len(kernel.basis),
                   "basis": [[format_scalar(x) for x in v] for v in kernel.basis],
                   "abelian": kernel.abelian,
                   "ad_semisimple": kernel.ad_semisimple},
        "roots": [[format_scalar(x) for x in p.root] for p in data.pairs],
        "nondegenerate": ok,
        "degeneracy_reason": reason,
        "type": None,
        "blocks": None,
        "provenance": _provenance(args, {"algebra_file": args.algebra,
                                         "cocycle_file": args.cocycle}),
    }
    if ok:
        if algebra.field == "complex":
            from .roots import WilliamsonType
            doc["type"] = WilliamsonType(kf=len(data.pairs)).to_json_dict()
        else:
            doc["type"] = linear_pencil_type(data, mode).to_json_dict()
        doc["blocks"] = classify(lp, mode, data).to_json_dict()
    _write_output(dump_canonical(doc), args.out)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.list:
        for entry in catalog():
            print(f"{entry.name}: {entry.description}")
        return EXIT_OK
    if args.emit:
        name, directory = args.emit
        entries = catalog_by_name()
        if name not in entries:
            raise InputFormatError(f"unknown catalog entry '{name}'; "
                                   f"try: {', '.join(sorted(entries))}")
        entry = entries[name]
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, f"{name}.pencil.json")
        _write_output(dump_canonical(catalog_entry_to_json_dict(entry)), path)
        print(path)
        return EXIT_OK
    raise InputFormatError("catalog requires --list or --emit NAME DIR")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bipencil",
        description="Williamson-type verdicts for singular points of "
                    "bi-Hamiltonian pencils")
    ap.add_argument("--version", action="version", version=f"bipencil {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--mode", choices=("exact", "float"), default="exact")
        p.add_argument("--tol", type=float, default=1e-9,
                       help="relative tolerance for float mode")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="write the report here "
                       "(atomic); default stdout")

    p = sub.add_parser("analyze", help="full singular-point verdict for a pencil file")
    p.add_argument("--pencil", required=True)
    p.add_argument("--point", required=True, help="comma-separated rational coordinates")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("toda", help="analyze periodic lattice points with the "
                                    "spectral cross-oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", default=None, help="comma-separated positive rationals")
    p.add_argument("--b", default=None, help="comma-separated rationals")
    p.add_argument("--random", action="store_true", help="draw one seeded random point")
    p.add_argument("--scan", type=int, default=0, metavar="K",
                   help="analyze K seeded random points and summarize")
    common(p)
    p.set_defaults(func=cmd_toda)

    p = sub.add_parser("jk", help="Jordan-Kronecker invariants of the pair at a point")
    p.add_argument("--pencil", required=True)
    p.add_argument("--point", required=True)
    common(p)
    p.set_defaults(func=cmd_jk)

    p = sub.add_parser("linear", help="analyze a linear pencil given by structure "
                                      "constants and a cocycle")
    p.add_argument("--algebra", required=True)
    p.add_argument("--cocycle", required=True)
    common(p)
    p.set_defaults(func=cmd_linear)

    p = sub.add_parser("catalog", help="list or emit the built-in pencils")
    p.add_argument("--list", action="store_true")
    p.add_argument("--emit", nargs=2, metavar=("NAME", "DIR"))
    common(p)
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputFormatError as exc:
        _emit_error("input", exc, getattr(exc, "position", None))
        return EXIT_INPUT
    except (RankDeficientPointError, PreconditionError) as exc:
        _emit_error("refused", exc)
        return EXIT_REFUSED
    except BipencilError as exc:
        _emit_error("error", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
