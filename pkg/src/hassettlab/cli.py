"""Command line interface: classify, lattice, excess, verify, construct."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable

from . import classifier, intersection
from .geometry import (
    PLANS,
    BudgetExhausted,
    ExampleRecord,
    construct_component_example,
    verify_example,
)
from .lattice import GramMatrix, NotPositiveDefinite, short_vectors
from .textio import SCHEMA_VERSION, ParseError, examples_dir, dumps, read_example_file

EXIT_OK = 0
EXIT_VERIFY_FAILED = 2
EXIT_PARSE_ERROR = 3
EXIT_BUDGET = 4
EXIT_USAGE = 1


class CliError(Exception):
    def __init__(self, message: str, exit_code: int, kind: str = "error", **extra):
        super().__init__(message)
        self.exit_code = exit_code
        self.kind = kind
        self.extra = extra


def envelope(command: str, result: Any = None, ok: bool = True, error: dict | None = None) -> dict:
    out: dict[str, Any] = {"schema": SCHEMA_VERSION, "command": command, "ok": ok}
    if result is not None:
        out["result"] = result
    if error is not None:
        out["error"] = error
    return out


# -- helpers -----------------------------------------------------------------

def parse_gram(text: str) -> GramMatrix:
    """Inline ``3,1,3;1,3,1;3,1,4``, a JSON list of rows, or a path to either."""
    path = Path(text)
    if path.is_file():
        text = path.read_text()
    text = text.strip()
    try:
        if text.startswith("["):
            rows = json.loads(text)
        else:
            rows = [[int(x) for x in r.replace(" ", ",").split(",") if x]
                    for r in text.replace("\n", ";").split(";") if r.strip()]
        return GramMatrix.of(rows)
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read Gram matrix: {exc}", EXIT_PARSE_ERROR, "parse-error") from None


def _fmt_vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


# -- commands ----------------------------------------------------------------

def cmd_classify(args) -> tuple[dict, str, int]:
    kind = classifier.FamilyKind.parse(args.family)
    reports = classifier.classify_all(kind)
    merged = classifier.merged_components(kind)
    result = {
        "family": kind.value,
        "divisor": kind.divisor,
        "admissible_params": classifier.admissible_params(kind),
        "reports": [r.to_dict() for r in reports],
        "merged_components": merged,
    }
    lines = [f"family {kind.value} (C_8 and C_{kind.divisor}, surface: {kind.surface_name})",
             f"admissible: {result['admissible_params']}"]
    for r in reports:
        head = f"  {kind.value}{r.param:+d}: det {r.determinant:>3}"
        if not r.nonempty:
            lines.append(f"{head}  empty, short root {_fmt_vec(r.short_root)}")
            continue
        certs = ", ".join(f"{c.kind} {c.value}" for c in r.rationality) or "-"
        lines.append(f"{head}  irreducible={r.irreducible}  glue cases={len(r.glue_log)}"
                     f"  rationality: {certs}  merged with {r.merged_with or '-'}")
    lines.append(f"components: {len(merged)} {merged}")
    return result, "\n".join(lines), EXIT_OK


def cmd_shortroots(args) -> tuple[dict, str, int]:
    G = parse_gram(args.gram)
    try:
        vecs = short_vectors(G, args.norm)
    except NotPositiveDefinite as exc:
        raise CliError(str(exc), EXIT_USAGE, "not-positive-definite") from None
    result = {"gram": G.tolist(), "norm": args.norm, "vectors": [list(v) for v in vecs]}
    text = f"{len(vecs)} vector(s) of norm {args.norm}" + "".join(f"\n  {_fmt_vec(v)}" for v in vecs)
    return result, text, EXIT_OK


def cmd_overlattices(args) -> tuple[dict, str, int]:
    kind = classifier.FamilyKind.parse(args.family)
    try:
        cands = classifier.glue_candidates(kind, args.param)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE, "bad-parameter") from None
    result = {"family": kind.value, "param": args.param,
              "determinant": classifier.determinant(classifier.family_gram(kind, args.param)),
              "candidates": [c.to_dict() for c in cands]}
    lines = [f"{kind.value}{args.param:+d}: det {result['determinant']}, {len(cands)} integral case(s)"]
    for c in cands:
        why = ""
        if c.witness is not None:
            why = f" root {_fmt_vec(c.witness)}"
        elif c.complement_gram is not None:
            why = f" complement {c.complement_gram.tolist()}"
        lines.append(f"  n={c.n} (x',y')=({c.xp},{c.yp}) -> (a,b,c)=({c.a},{c.b},{c.c}) "
                     f"{c.verdict.value}{why}")
    return result, "\n".join(lines), EXIT_OK


def cmd_excess(args) -> tuple[dict, str, int]:
    try:
        preset = intersection.resolve_preset(args.preset)
        result: dict[str, Any] = {"preset": preset, "d": args.d, "g": args.g, "k1c": args.k1c}
        lines = []
        if args.k2c is None:
            sp = intersection.excess_surface_plane(args.k1c, args.d, args.g)
            result["surface_dot_plane"] = sp
            lines.append(f"S.P = {sp}")
        else:
            result["k2c"] = args.k2c
            mult = intersection.mult_along_curve(args.d, args.g, args.k1c, args.k2c, preset)
            result["mult"] = mult
            result["ambient_term"] = intersection.ambient_term(preset, args.d)
            result["mult_by_preset"] = {
                name: intersection.mult_along_curve(args.d, args.g, args.k1c, args.k2c, name)
                for name in intersection.PRESETS}
            lines.append(f"mult = {mult} ({preset}, ambient term {result['ambient_term']})")
            for name, value in result["mult_by_preset"].items():
                if name != preset:
                    lines.append(f"  {name}: {value}")
            if args.deg1 is not None:
                k = intersection.secant_count(args.deg1, args.deg2, mult)
                result["secant_count"] = k
                result["secant_class"] = intersection.classify_secants(k)
                lines.append(f"secants: {args.deg1}*{args.deg2} - {mult} = {k} ({result['secant_class']})")
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE, "bad-input") from None
    return result, "\n".join(lines), EXIT_OK


def _verify_file(path: str) -> dict:
    try:
        rec = ExampleRecord.from_dict(read_example_file(path))
    except ParseError as exc:
        return {"file": path, "error": {"type": "parse-error", "message": str(exc),
                                        "line": exc.line, "column": exc.column}}
    except Exception as exc:  # schema or structural problems
        return {"file": path, "error": {"type": type(exc).__name__, "message": str(exc)}}
    report = verify_example(rec).to_dict()
    report["file"] = path
    return report


def cmd_verify(args) -> tuple[dict, str, int]:
    root = Path(args.examples) if args.examples else examples_dir()
    files = sorted(str(f) for f in root.glob("*.json")) if root.is_dir() else [str(root)]
    if not files:
        raise CliError(f"no example files under {root}", EXIT_USAGE, "no-input")
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_verify_file, files))
    else:
        reports = [_verify_file(f) for f in files]
    passed = sum(1 for r in reports if r.get("ok"))
    parse_errors = [r for r in reports if "error" in r]
    lines = []
    for r in reports:
        if "error" in r:
            lines.append(f"ERROR {r['file']}: {r['error']['message']}")
            continue
        c = r["checks"]
        flags = " ".join(f"{k}={'y' if v else 'n'}" for k, v in c.items())
        lines.append(f"{'PASS' if r['ok'] else 'FAIL'} {r['label']:8} {flags} profile={r['profile']}"
                     f" recipe={r['recipe_used']}")
    lines.append(f"{passed}/{len(reports)} pass")
    if parse_errors and passed + len(parse_errors) == len(reports):
        code = EXIT_PARSE_ERROR
    else:
        code = EXIT_OK if passed == len(reports) else EXIT_VERIFY_FAILED
    result = {"passed": passed, "total": len(reports), "reports": reports}
    return result, "\n".join(lines), code


def cmd_construct(args) -> tuple[dict, str, int]:
    kind = classifier.FamilyKind.parse(args.family)
    if (kind, args.param) not in PLANS:
        raise CliError(f"{kind.value}{args.param} is empty or not admissible", EXIT_USAGE, "bad-parameter")
    try:
        rec = construct_component_example(kind, args.param, args.seed, args.budget, args.variant)
    except BudgetExhausted as exc:
        raise CliError(str(exc), EXIT_BUDGET, "budget-exhausted", failures=exc.failures) from None
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE, "bad-parameter") from None
    d = rec.to_dict()
    return d, dumps(d).rstrip("\n"), EXIT_OK


# -- argument parsing ----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would collide with "verification failed"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="hassettlab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_, fn, parent=sub):
        p = parent.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="emit versioned JSON")
        p.set_defaults(func=fn, cmdname=name)
        return p

    p = add("classify", "classify every parameter of a lattice family", cmd_classify)
    p.add_argument("--family", required=True, help="m12 (cubic scroll) or m20 (Veronese)")

    lat = sub.add_parser("lattice", help="lattice utilities")
    lsub = lat.add_subparsers(dest="lattice_command", required=True)
    p = add("shortroots", "vectors of a given norm", cmd_shortroots, lsub)
    p.add_argument("--gram", required=True, help="file or inline matrix, e.g. '3,1,3;1,3,1;3,1,4'")
    p.add_argument("--norm", type=int, default=2)
    p.set_defaults(cmdname="lattice shortroots")
    p = add("overlattices", "glue-vector case log", cmd_overlattices, lsub)
    p.add_argument("--family", required=True)
    p.add_argument("--param", type=int, required=True)
    p.set_defaults(cmdname="lattice overlattices")

    p = add("excess", "excess intersection numbers", cmd_excess)
    p.add_argument("--preset", default=intersection.DEFAULT_PRESET,
                   help=f"ambient term preset: {', '.join(intersection.PRESETS)}")
    p.add_argument("--d", type=int, required=True, help="degree of the common curve")
    p.add_argument("--g", type=int, required=True, help="genus of the common curve")
    p.add_argument("--k1c", type=int, required=True, help="K_S1 . C")
    p.add_argument("--k2c", type=int, help="K_S2 . C; without it, report S.P for a plane curve")
    p.add_argument("--deg1", type=int, help="degree of S1, to count secants")
    p.add_argument("--deg2", type=int, default=1, help="degree of S2 (default 1, a plane)")

    p = add("verify", "verify example files", cmd_verify)
    p.add_argument("--examples", help="directory or file (default: shipped examples)")
    p.add_argument("--jobs", type=int, default=1)

    p = add("construct", "build a new example for a component", cmd_construct)
    p.add_argument("--family", required=True)
    p.add_argument("--param", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=50, help="retry budget for planes and cubics")
    p.add_argument("--variant", default="default", help="e.g. 'ruling' for M0, 'directrix' for M1")
    return ap


def main(argv: list[str] | None = None, out: Callable[[str], None] | None = None) -> int:
    out = out or (lambda s: print(s))
    args = build_parser().parse_args(argv)
    name = args.cmdname
    try:
        result, text, code = args.func(args)
    except (CliError, ValueError) as exc:
        if isinstance(exc, CliError):
            err = {"type": exc.kind, "message": str(exc), "exit_code": exc.exit_code, **exc.extra}
        else:
            err = {"type": "bad-input", "message": str(exc), "exit_code": EXIT_USAGE}
        if args.json:
            out(dumps(envelope(name, ok=False, error=err)).rstrip("\n"))
        else:
            print(f"error: {err['message']}", file=sys.stderr)
        return err["exit_code"]
    if args.json:
        out(dumps(envelope(name, result, ok=code == EXIT_OK)
                  if code == EXIT_OK else
                  envelope(name, result, ok=False,
                           error={"type": "verification-failed" if code == EXIT_VERIFY_FAILED
                                  else "parse-error", "message": text.splitlines()[-1],
                                  "exit_code": code})).rstrip("\n"))
    else:
        out(text)
    return code


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
