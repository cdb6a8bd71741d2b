"""Command-line interface.

Exit codes: 0 when every requested check passes, 1 when a verified
property fails (a witness is printed), 2 for unusable input (parse
error, unresolved id, non-closed composition table) or bad usage.

Reports are emitted on stdout as human-readable text or, with
``--format json``, as a versioned machine-readable document that is
byte-identical across runs on identical input.
"""

import argparse
import hashlib
import json
import os
import sys

from . import __version__
from .fincat import StructuralError
from .relcat import validate_relative, check_two_of_three, check_two_of_six
from .pmc import PartialModelStructure, verify_partial_model
from .sset import rezk_nerve, nerve, pi0
from .hammock import (
    homotopy_category, mapping_space, check_saturation, diagnostic_saturation,
    HoConsistencyError,
)
from .segal import verify_segal
from .yoneda import verify_yoneda_relative
from .document import parse_file, DocumentError

REPORT_FORMAT = "pmcat-report/1"


def _input_block(path):
    with open(path, "rb") as fh:
        digest = hashlib.sha256(fh.read()).hexdigest()
    return {"file": os.path.basename(path), "sha256": digest}


def _emit(report, fmt):
    if fmt == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        _emit_text(report)


def _emit_text(report, indent=0):
    pad = "  " * indent
    if isinstance(report, dict):
        for key in report:
            value = report[key]
            if isinstance(value, (dict, list)) and value:
                sys.stdout.write(f"{pad}{key}:\n")
                _emit_text(value, indent + 1)
            else:
                sys.stdout.write(f"{pad}{key}: {value}\n")
    elif isinstance(report, list):
        for value in report:
            if isinstance(value, (dict, list)):
                _emit_text(value, indent)
            else:
                sys.stdout.write(f"{pad}- {value}\n")
    else:
        sys.stdout.write(f"{pad}{report}\n")


def _report(command, args, result, exit_code):
    return {
        "format": REPORT_FORMAT,
        "tool_version": __version__,
        "command": command,
        "input": _input_block(args.file),
        "result": result,
        "exit_code": exit_code,
    }


def _load(args, need_calculus=False):
    value = parse_file(args.file)
    if need_calculus and not isinstance(value, PartialModelStructure):
        raise DocumentError(0, "this command needs calculus data (u/v/factor lines)")
    return value


def cmd_check(args):
    value = _load(args)
    if isinstance(value, PartialModelStructure):
        axioms = verify_partial_model(value)
        t23 = check_two_of_three(value.rc)
        result = {
            "kind": "calculus-structure",
            "axioms": axioms.to_dict(),
            "two_of_three": t23.to_dict(),
        }
        code = 0 if axioms.passed and t23.passed else 1
    else:
        rc = value
        laws = rc.cat.validate()
        rel = validate_relative(rc)
        t23 = check_two_of_three(rc)
        t26 = check_two_of_six(rc)
        result = {
            "kind": "relative-category",
            "category_laws": laws.to_dict(),
            "relative_laws": rel.to_dict(),
            "two_of_three": t23.to_dict(),
            "two_of_six": t26.to_dict(),
        }
        code = 0 if laws.ok and rel.ok and t23.passed and t26.passed else 1
    return _report("check", args, result, code)


def cmd_nerve(args):
    value = _load(args)
    rc = value.rc if isinstance(value, PartialModelStructure) else value
    b = rezk_nerve(rc, args.kmax, args.nmax)
    violations = b.validate_identities()
    counts = {f"({k},{n})": b.size(k, n)
              for k in range(args.kmax + 1) for n in range(args.nmax + 1)}
    result = {
        "kind": "classification-nerve",
        "k_max": args.kmax,
        "n_max": args.nmax,
        "bidegree_counts": counts,
        "identity_violations": violations[:10],
        "identities_ok": not violations,
    }
    return _report("nerve", args, result, 0 if not violations else 1)


def cmd_segal(args):
    pms = _load(args, need_calculus=True)
    axioms = verify_partial_model(pms)
    if not axioms.passed:
        result = {"kind": "fiber-square", "axioms": axioms.to_dict(),
                  "note": "structure does not satisfy the axioms; not attempted"}
        return _report("segal", args, result, 1)
    ks = tuple(int(k) for k in args.k.split(","))
    report = verify_segal(pms, ks, args.dims, cell_budget=args.cell_budget,
                          allow_large=args.allow_large)
    result = {"kind": "fiber-square", "summary": report.describe().splitlines()}
    payload = report.to_dict()
    for k in payload["k"].values():
        cert = k.pop("certificate")
        k["certificate_summary"] = cert.to_dict(full=args.full)
    result["detail"] = payload
    return _report("segal", args, result, 0 if report.passed else 1)


def cmd_ho(args):
    pms = _load(args, need_calculus=True)
    axioms = verify_partial_model(pms)
    if not axioms.passed:
        return _report("ho", args, {
            "kind": "homotopy-category",
            "note": "structure does not satisfy the axioms",
            "axioms": axioms.to_dict()}, 1)
    try:
        ho = homotopy_category(pms)
    except HoConsistencyError as e:
        return _report("ho", args, {"kind": "homotopy-category",
                                    "consistency_error": str(e)}, 1)
    hom = {f"{a}=>{b}": len(ho.hom_classes(a, b))
           for a in ho.cat.objects for b in ho.cat.objects}
    result = {
        "kind": "homotopy-category",
        "objects": list(ho.cat.objects),
        "hom_class_counts": hom,
        "laws_verified": True,
    }
    return _report("ho", args, result, 0)


def cmd_mapspace(args):
    value = _load(args)
    rc = value.rc if isinstance(value, PartialModelStructure) else value
    s = mapping_space(rc, args.src, args.tgt, args.nmax)
    result = {
        "kind": "mapping-space",
        "from": args.src,
        "to": args.tgt,
        "n_max": args.nmax,
        "simplex_counts": [s.size(n) for n in range(args.nmax + 1)],
        "components": len(pi0(s)) if args.nmax >= 1 else None,
        "convention": "zigzag morphisms are componentwise weak equivalences",
    }
    return _report("mapspace", args, result, 0)


def cmd_saturate(args):
    value = _load(args)
    if isinstance(value, PartialModelStructure) and not args.diagnostic:
        axioms = verify_partial_model(value)
        if not axioms.passed:
            return _report("saturate", args, {
                "kind": "saturation",
                "note": "structure does not satisfy the axioms; "
                        "run with --diagnostic for the oracle mode",
                "axioms": axioms.to_dict()}, 1)
        report = check_saturation(value)
    else:
        rc = value.rc if isinstance(value, PartialModelStructure) else value
        report = diagnostic_saturation(rc, args.bound)
    result = {"kind": "saturation", **report.to_dict()}
    return _report("saturate", args, result, 0 if report.passed else 1)


def cmd_yoneda(args):
    value = _load(args)
    if isinstance(value, PartialModelStructure):
        pms = value if verify_partial_model(value).passed else None
        rc = value.rc
    else:
        pms, rc = None, value
    report = verify_yoneda_relative(rc, args.dims, pms=pms)
    result = {"kind": "mapping-space-embedding", **report.to_dict()}
    return _report("yoneda", args, result, 0 if report.passed else 1)


def cmd_export(args):
    value = _load(args)
    rc = value.rc if isinstance(value, PartialModelStructure) else value
    if args.what == "rezk-nerve":
        b = rezk_nerve(rc, args.kmax, args.nmax)
        data = {
            "kind": "bisimplicial-set",
            "k_max": b.k_max,
            "n_max": b.n_max,
            "simplices": {
                f"({k},{n})": [_grid_dict(g) for g in b.simplices[(k, n)]]
                for k in range(b.k_max + 1) for n in range(b.n_max + 1)},
            "h_faces": {f"({k},{n},{i})": v for (k, n, i), v in sorted(b.hfaces.items())},
            "v_faces": {f"({k},{n},{i})": v for (k, n, i), v in sorted(b.vfaces.items())},
            "h_degeneracies": {f"({k},{n},{i})": v for (k, n, i), v in sorted(b.hdegens.items())},
            "v_degeneracies": {f"({k},{n},{i})": v for (k, n, i), v in sorted(b.vdegens.items())},
        }
    else:
        s = nerve(rc.cat, args.nmax)
        data = {
            "kind": "simplicial-set",
            "n_max": s.n_max,
            "simplices": {str(n): [list(c) if isinstance(c, tuple) else c
                                   for c in s.simplices[n]]
                          for n in range(s.n_max + 1)},
            "faces": {f"({n},{i})": v for (n, i), v in sorted(s.faces.items())},
            "degeneracies": {f"({n},{i})": v
                             for (n, i), v in sorted(s.degeneracies.items())},
        }
    return _report("export", args, data, 0)


def _grid_dict(grid):
    objs, hs, vs = grid
    return {"objects": [list(r) for r in objs],
            "horizontal": [list(r) for r in hs],
            "vertical": [list(r) for r in vs]}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pmcat",
        description="verify weak-equivalence axioms and reconstruct the "
                    "classification-nerve certificates of finite relative categories")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help=".relcat document")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("check", help="category, marking, and axiom checks")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("nerve", help="classification nerve with identity checks")
    common(p)
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--nmax", type=int, default=4)
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser("segal", help="strict fiber identity, retraction "
                                     "certificate, nerve corroboration")
    common(p)
    p.add_argument("--k", default="2,3", help="comma-separated chain lengths")
    p.add_argument("--dims", type=int, default=2)
    p.add_argument("--cell-budget", type=int, default=200_000)
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--full", action="store_true",
                   help="embed full per-object rows in the json certificate")
    p.set_defaults(func=cmd_segal)

    p = sub.add_parser("ho", help="homotopy category hom-set classes")
    common(p)
    p.set_defaults(func=cmd_ho)

    p = sub.add_parser("mapspace", help="zigzag mapping space between two objects")
    common(p)
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="tgt", required=True)
    p.add_argument("--nmax", type=int, default=2)
    p.set_defaults(func=cmd_mapspace)

    p = sub.add_parser("saturate", help="marking versus invertibility after localization")
    common(p)
    p.add_argument("--diagnostic", action="store_true",
                   help="force the bounded word oracle")
    p.add_argument("--bound", type=int, default=7)
    p.set_defaults(func=cmd_saturate)

    p = sub.add_parser("yoneda", help="mapping-space embedding diagnostics")
    common(p)
    p.add_argument("--dims", type=int, default=2)
    p.set_defaults(func=cmd_yoneda)

    p = sub.add_parser("export", help="dump a (bi)simplicial set")
    common(p)
    p.add_argument("--what", choices=("rezk-nerve", "nerve"), default="rezk-nerve")
    p.add_argument("--kmax", type=int, default=2)
    p.add_argument("--nmax", type=int, default=2)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except DocumentError as e:
        sys.stderr.write(f"input error: {e}\n")
        return 2
    except StructuralError as e:
        sys.stderr.write(f"input error: {e}\n")
        return 2
    _emit(report, args.format)
    return report["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
