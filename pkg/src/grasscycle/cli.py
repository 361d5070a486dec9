"""Command-line entry point.

Exit codes: 0 universal / pass, 1 verified failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Callable

from . import windows
from .cycle import (
    G1_STRATEGIES,
    CycleSpec,
    build_beta_sequence,
    default_representatives,
    validate_spec,
)
from .errors import GrasscycleError
from .field import FieldContext, make_field, parse_poly
from .orbits import check_noncollapsing, orbit_partition
from .search import DEFAULT_CAP, MODES, SearchTask, search_dual
from .verify import format_sequence, read_sequence, verify_universal

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").strip("[]").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def write_atomic(path: str | Path, data: str) -> None:
    """Write via a temp file in the target directory, then rename into place."""
    path = Path(path)
    if not path.parent.exists():
        raise FileNotFoundError(f"directory {path.parent} does not exist")
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def render_json(report: dict) -> str:
    return json.dumps({"schema": SCHEMA, **report}, sort_keys=True, indent=2) + "\n"


def emit_report(report: dict, fmt: str, path: str | None,
                text: Callable[[dict], str] | None = None) -> None:
    """Print or atomically write ``report``; output is byte-stable for equal input."""
    if fmt == "text" and text is not None:
        data = text(report)
        if not data.endswith("\n"):
            data += "\n"
    else:
        data = render_json(report)
    if path is None or path == "-":
        sys.stdout.write(data)
    else:
        write_atomic(path, data)


def _ctx_from(args) -> FieldContext:
    if args.q is None or args.n is None or args.poly is None:
        raise UsageError("--q, --n and --poly are required")
    return make_field(args.q, args.n, args.poly)


def _exp_set(exps) -> str:
    return "{" + ", ".join(f"a^{e}" for e in exps) + "}"


# --- commands ---------------------------------------------------------------

def cmd_field_info(args) -> int:
    ctx = _ctx_from(args)
    verdict = check_noncollapsing(ctx.q, ctx.n, ctx)
    report = {
        "command": "field-info",
        "field": ctx.to_json(),
        "group_order": ctx.group_order,
        "gamma_order": ctx.gamma_order,
        "fstar_exponents": list(ctx.fstar_exponents),
        "noncollapsing": verdict.to_json(),
    }

    def text(rep: dict) -> str:
        nc = rep["noncollapsing"]
        return "\n".join([
            f"F_{ctx.q}^{ctx.n} with modulus {list(ctx.modulus_poly)} (ascending)",
            f"|E^*| = {ctx.group_order}, |Gamma| = {ctx.gamma_order}",
            f"F^* = {_exp_set(ctx.fstar_exponents)}",
            f"gcd(n, q(q^2-1)) = {nc['gcd']} ({'ok' if nc['gcd_ok'] else 'fails'}); "
            f"exhaustive collapse check: {'pass' if nc['exhaustive_ok'] else 'fail'}"
            + (f" at a^{nc['counterexample']} (degree {nc['counterexample_degree']})"
               if nc["counterexample"] is not None else ""),
        ])

    emit_report(report, args.format, args.output, text)
    return EXIT_OK if verdict.passed else EXIT_FAIL


def cmd_orbits(args) -> int:
    ctx = _ctx_from(args)
    partition = orbit_partition(ctx)
    report = {
        "command": "orbits",
        "field": ctx.to_json(),
        "r": partition.r,
        "m": partition.m,
        "groups": partition.to_json(),
    }

    def text(rep: dict) -> str:
        lines = [f"{rep['r']} ratio classes in {rep['m']} Frobenius group(s)"]
        for gi, grp in enumerate(rep["groups"], 1):
            lines.append(f"C_{gi}:")
            lines.extend("  " + _exp_set(cls) for cls in grp)
        return "\n".join(lines)

    emit_report(report, args.format, args.output, text)
    return EXIT_OK


def _spec_from(args, ctx: FieldContext) -> CycleSpec:
    partition = orbit_partition(ctx)
    if args.reps:
        return CycleSpec(ctx, tuple(e % ctx.group_order for e in args.reps))
    g1 = args.g1
    if g1 is not None and g1 not in G1_STRATEGIES:
        g1 = int(g1)
    return default_representatives(partition, g1)


def _verify_text(rep: dict) -> str:
    lines = []
    if "spec" in rep:
        lines.append(f"reps {rep['spec']['reps']} ({rep['spec']['source']}), length {rep.get('length')}")
    if "validation" in rep and not rep["validation"]["ok"]:
        lines.extend("invalid: " + v for v in rep["validation"]["violations"])
    for r in rep.get("reports", []):
        h = ", ".join(f"{c}x:{m}" for c, m in r["multiplicity_histogram"].items())
        seen = sum(m for c, m in r["multiplicity_histogram"].items() if c != "0")
        lines.append(f"k={r['k']}: {r['verdict']} ({seen}/{r['universe_size']} seen; histogram {{{h}}}; "
                     f"rank defects {len(r['rank_defects'])}; lines uniform {r['line_uniformity']['ok']}"
                     + (f"; periodic {r['periodicity_ok']}" if r["periodicity_ok"] is not None else "")
                     + ")")
    lines.append("verdict: " + rep["verdict"])
    return "\n".join(lines)


def cmd_build(args) -> int:
    ctx = _ctx_from(args)
    spec = _spec_from(args, ctx)
    verdict = validate_spec(spec)
    report: dict = {"command": "build", "spec": spec.to_json(), "validation": verdict.to_json()}
    if not verdict.ok:
        report["verdict"] = "invalid"
        emit_report(report, args.format, args.output, _verify_text)
        return EXIT_FAIL
    cycle = build_beta_sequence(spec)
    reports = [verify_universal(cycle, k) for k in args.ks]
    ok = all(r.universal for r in reports) and all(r.periodicity_ok for r in reports)
    report.update({
        "length": cycle.length,
        "product_exponent": verdict.product_exponent,
        "beta_exponents": list(cycle.beta_exponents),
        "reports": [r.to_json() for r in reports],
        "verdict": "universal" if ok else "fail",
    })
    if args.sequence_out:
        write_atomic(args.sequence_out, format_sequence(cycle))
    emit_report(report, args.format, args.output, _verify_text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.input:
        seq = read_sequence(args.input, q=args.q)
        source = {"input": str(args.input)}
    else:
        ctx = _ctx_from(args)
        spec = _spec_from(args, ctx)
        verdict = validate_spec(spec)
        if not verdict.ok:
            report = {"command": "verify", "spec": spec.to_json(),
                      "validation": verdict.to_json(), "verdict": "invalid"}
            emit_report(report, args.format, args.output, _verify_text)
            return EXIT_FAIL
        seq = build_beta_sequence(spec)
        source = {"spec": spec.to_json()}
    reports = [verify_universal(seq, k) for k in args.ks]
    ok = all(r.universal for r in reports)
    report = {"command": "verify", **source, "length": reports[0].length,
              "reports": [r.to_json() for r in reports],
              "verdict": "universal" if ok else "fail"}
    emit_report(report, args.format, args.output, _verify_text)
    if args.format == "json" and args.output not in (None, "-"):
        for r in reports:
            print(r.console(), file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_search_dual(args) -> int:
    ctx = _ctx_from(args)
    spec = _spec_from(args, ctx)
    ks = tuple(args.ks) if args.ks else None
    task = SearchTask(spec, mode=args.mode, ks=ks, cap=args.cap, workers=args.workers,
                      record_all=bool(args.csv), backend=args.backend)
    result = search_dual(task)
    report = {"command": "search-dual", "field": ctx.to_json(), "template": spec.to_json(),
              "mode": args.mode, **result.to_json()}
    # elapsed time is reported on stderr only, to keep the JSON byte-stable
    print(f"searched {result.search_space_size} orderings in {result.elapsed:.2f}s "
          f"({result.backend} kernel), {len(result.hits)} hit(s)", file=sys.stderr)
    if args.csv:
        write_atomic(args.csv, result.to_csv())

    def text(rep: dict) -> str:
        lines = [f"{rep['search_space_size']} orderings, ks={rep['ks']}, {rep['hit_count']} hit(s)"]
        lines += ["  (" + ",".join(map(str, h)) + ")" for h in rep["hits"]]
        return "\n".join(lines)

    emit_report(report, args.format, args.output, text)
    return EXIT_OK if result.hits else EXIT_FAIL


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grasscycle",
        description="Universal cycles on Grassmannians G_q(2,n) over finite fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, field_required: bool = True) -> None:
        p.add_argument("--q", type=int, help="prime base field size")
        p.add_argument("--n", type=int, help="extension degree")
        p.add_argument("--poly", type=parse_poly,
                       help="primitive polynomial, ascending coefficients, e.g. 1,0,1,0,0,1")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--output", "-o", help="report path (default: stdout)")

    def reps(p: argparse.ArgumentParser) -> None:
        p.add_argument("--reps", type=_int_list, help="explicit representative exponents c_1,...,c_r")
        p.add_argument("--g1", help=f"twisted element for the default system: "
                                    f"{' | '.join(G1_STRATEGIES)} | exponent")

    p = sub.add_parser("field-info", help="field parameters and the non-collapsing check")
    common(p)
    p.set_defaults(func=cmd_field_info)

    p = sub.add_parser("orbits", help="ratio classes grouped into Frobenius orbits")
    common(p)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("build", help="construct and verify a cycle")
    common(p)
    reps(p)
    p.add_argument("--k", "--ks", dest="ks", type=_int_list, default=[2],
                   help="window sizes to verify (default 2)")
    p.add_argument("--sequence-out", help="also write the vector sequence in cycle-file format")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="certify a cycle file or a representative system")
    common(p)
    reps(p)
    p.add_argument("--input", "-i", help="cycle file: one comma-separated vector per line")
    p.add_argument("--k", "--ks", dest="ks", type=_int_list, default=[2])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search-dual", help="orderings universal for every requested window size")
    common(p)
    reps(p)
    p.add_argument("--ks", "--k", dest="ks", type=_int_list, default=None,
                   help="window sizes (default 2,n-2)")
    p.add_argument("--mode", choices=MODES, default="orderings")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", help="write every ordering with per-k pass flags")
    p.add_argument("--backend", choices=("cython", "python"), default=None,
                   help=f"window kernel (default: {windows.BACKEND})")
    p.set_defaults(func=cmd_search_dual)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"grasscycle {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GrasscycleError, ValueError, OSError) as exc:
        print(f"grasscycle {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
