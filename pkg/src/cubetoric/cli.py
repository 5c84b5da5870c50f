"""Command-line front end: ``ring``, ``classes``, ``sigma``, ``verify``.

Output is deterministic: identical invocations produce identical text, and
identical JSON apart from the ``timing_ms`` field, which golden comparisons
exclude.  Exit codes: 0 success, 1 verification or internal cross-check
failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__, manifolds, oracle, verify
from ._config import dimension_cap
from .cube import CharacteristicMatrix
from .errors import CubetoricError, EngineDefectError, InvalidMatrixError

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INVALID_INPUT = 2


def _emit(report: dict, fmt: str, text_lines: list[str]):
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _load_model(args) -> manifolds.ManifoldModel:
    if args.family == "custom":
        if not args.matrix:
            raise ValueError("--family custom requires --matrix")
        cm = CharacteristicMatrix.load(args.matrix)
        return manifolds.build("custom", args.n, cm)
    if args.matrix:
        raise ValueError("--matrix is only valid with --family custom")
    return manifolds.build(args.family, args.n)


def _ring_payload(ring) -> dict:
    return {
        "label": ring.label,
        "generators": list(ring.names),
        "relations": [
            {"terms": rel.to_pairs(), "text": ring.render(rel)} for rel in ring.relations
        ],
        "groebner_basis": [
            {"terms": g.to_pairs(), "text": ring.render(g)} for g in ring.gb.elements
        ],
    }


def cmd_ring(args) -> tuple[dict, list[str], int]:
    model = _load_model(args)
    if args.basis == "t":
        ring = model.t_presentation
        if ring is None:
            raise ValueError("the t basis exists only for the built-in families")
    else:
        ring = model.u_presentation
    report = {
        "command": "ring",
        "inputs": {
            "family": args.family,
            "n": args.n,
            "basis": args.basis,
            "matrix": args.matrix or None,
        },
        "ring": _ring_payload(ring),
    }
    lines = [
        f"family: {args.family}",
        f"n: {args.n}",
        f"basis: {args.basis}",
        "generators: " + " ".join(ring.names),
        "relations:",
        *(f"  {ring.render(rel)}" for rel in ring.relations),
    ]
    return report, lines, EXIT_OK


def _class_payload(graded) -> dict:
    return graded.to_json_dict()


def cmd_classes(args) -> tuple[dict, list[str], int]:
    model = _load_model(args)
    ring = model.working_ring
    total = model.total_sw()
    dual = model.dual_sw()  # raises EngineDefectError on path disagreement
    unit_ok = model.unit_check()
    bound = model.skew_lower_bound()
    report = {
        "command": "classes",
        "inputs": {
            "family": args.family,
            "n": args.n,
            "matrix": args.matrix or None,
        },
        "generators": list(ring.names),
        "basis": ring.label,
        "dimension": model.dim,
        "total_class": _class_payload(total),
        "dual_class": _class_payload(dual),
        "k_max": model.top_dual_degree(),
        "bounds": bound.to_json_dict(),
        "verification": {
            "unit_identity": unit_ok,
            "dual_path_agreement": True,
        },
    }
    lines = [
        f"family: {args.family}",
        f"n: {args.n}",
        f"dimension: {model.dim}",
        f"basis: {ring.label}",
        "total Stiefel-Whitney class:",
        *(
            f"  degree {d}: {ring.render(p)}"
            for d, p in total.components.items()
        ),
        "dual Stiefel-Whitney class:",
        *(
            f"  degree {d}: {ring.render(p)}"
            for d, p in dual.components.items()
        ),
        f"k_max: {model.top_dual_degree()}",
        f"bounds: sw={bound.sw_bound} generic={bound.generic_bound} final={bound.final}",
        f"verification: unit_identity={'ok' if unit_ok else 'FAIL'} dual_path_agreement=ok",
    ]
    code = EXIT_OK if unit_ok else EXIT_VERIFICATION
    return report, lines, code


def cmd_sigma(args) -> tuple[dict, list[str], int]:
    table = manifolds.sigma_table(args.n)
    report = {
        "command": "sigma",
        "inputs": {"n": args.n, "check": bool(args.check)},
        "rows": [list(row) for row in table.rows],
    }
    lines = [f"sigma table, rows 1..{args.n}:"]
    lines.extend(" ".join(str(b) for b in row) for row in table.rows)
    code = EXIT_OK
    if args.check:
        class_cap = min(args.n, dimension_cap())
        class_rows = {
            n: list(manifolds.sigma_from_class(n)) for n in range(1, class_cap + 1)
        }
        witnesses = oracle.cross_check_sigma(args.n, class_rows=class_rows)
        bad = oracle.disagreements(witnesses)
        report["check"] = {
            "witnesses": len(witnesses),
            "class_rows_up_to": class_cap,
            "disagreements": [
                {
                    "n": w.n,
                    "k": w.k,
                    "recurrence": w.recurrence_value,
                    "lucas": w.lucas_value,
                    "bruteforce": w.bruteforce_value,
                    "class": w.class_value,
                }
                for w in bad
            ],
            "ok": not bad,
        }
        if bad:
            code = EXIT_VERIFICATION
            lines.append(
                f"cross-check: FAIL at (n={bad[0].n}, k={bad[0].k})"
            )
        else:
            lines.append(
                f"cross-check: ok ({len(witnesses)} witnesses, class rows n<={class_cap})"
            )
    return report, lines, code


def cmd_verify(args) -> tuple[dict, list[str], int]:
    cap = dimension_cap()
    if args.n_max > cap:
        raise ValueError(f"--n-max {args.n_max} exceeds the dimension cap {cap}")
    results = verify.run_all(args.n_max, class_cap=min(args.n_max, cap))
    failed = [r for r in results if not r.ok]
    report = {
        "command": "verify",
        "inputs": {"n_max": args.n_max},
        "checks": [r.to_json_dict() for r in results],
        "passed": len(results) - len(failed),
        "failed": len(failed),
        "ok": not failed,
    }
    lines = [
        f"{'ok  ' if r.ok else 'FAIL'} {r.name} [{r.scope}]"
        + (f" -- {r.detail}" if r.detail and not r.ok else "")
        for r in results
    ]
    if failed:
        lines.append(f"FAILED: {len(failed)} of {len(results)} checks; first: {failed[0].name}")
        return report, lines, EXIT_VERIFICATION
    lines.append(f"passed {len(results)}/{len(results)} checks")
    return report, lines, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubetoric",
        description=(
            "Exact GF(2) cohomology of quasitoric manifolds over the cube: "
            "presentations, Stiefel-Whitney classes, and totally-skew "
            "embedding lower bounds."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family(p):
        p.add_argument("--family", choices=("mi", "q", "custom"), required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--matrix", help="characteristic-matrix JSON file (custom family)")

    p_ring = sub.add_parser("ring", help="print a ring presentation")
    add_family(p_ring)
    p_ring.add_argument("--basis", choices=("u", "t"), default="u")
    p_ring.add_argument("--format", choices=("text", "json"), default="text")
    p_ring.set_defaults(handler=cmd_ring)

    p_classes = sub.add_parser("classes", help="compute characteristic classes and bounds")
    add_family(p_classes)
    p_classes.add_argument("--format", choices=("text", "json"), default="text")
    p_classes.set_defaults(handler=cmd_classes)

    p_sigma = sub.add_parser("sigma", help="print the parity table")
    p_sigma.add_argument("--n", type=int, required=True)
    p_sigma.add_argument("--check", action="store_true", help="run the parity cross-checks")
    p_sigma.add_argument("--format", choices=("text", "json"), default="text")
    p_sigma.set_defaults(handler=cmd_sigma)

    p_verify = sub.add_parser("verify", help="run every invariant suite")
    p_verify.add_argument("--n-max", type=int, required=True)
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        report, lines, code = args.handler(args)
    except EngineDefectError as exc:
        print(f"error: internal cross-check failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except (InvalidMatrixError, CubetoricError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    report["timing_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    _emit(report, getattr(args, "format", "text"), lines)
    return code


if __name__ == "__main__":
    sys.exit(main())
