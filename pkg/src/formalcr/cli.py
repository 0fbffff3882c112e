"""Command-line front end: ``formalcr <command> FILES [options]``.

Exit codes: 0 verified or valid, 1 definite negative (not normal, not real,
identity failure), 2 undetermined (finite type not detected), 3 input or
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .constancy import Constancy, decide_constancy, enumerate_real_holomorphic
from .errors import FormalCRError, IdentityFailure
from .inputs import digest, load_manifold, load_map
from .manifold import map_space
from .parser import parse_series
from .reflection import (
    check_real_on_M,
    check_transverse_dependence,
    check_unit_a,
    compute_unit_a,
    verify_cross_identity,
)
from .segre import DEFAULT_SEED, finite_type_search, segre_vj

EXIT_OK, EXIT_NEGATIVE, EXIT_UNDETERMINED, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class Report:
    """Accumulates stages; serialized once at the end."""

    def __init__(self, command: str, args):
        self.command = command
        self.seed = args.seed
        self.order = args.order
        self.jmax = getattr(args, "jmax", None)
        self.inputs = []
        self.stages = []
        self.verdict = None
        self.timings = {} if args.timings else None
        self._clock = time.perf_counter()

    def add_input(self, role: str, path) -> None:
        """Record a digest before parsing so that rejected inputs are identified too."""
        path = Path(path)
        try:
            d = digest(path.read_text(encoding="utf-8"))
        except (OSError, UnicodeDecodeError):
            d = None
        self.inputs.append({"role": role, "name": path.name, "digest": d})

    def stage(self, name: str, status: str, **fields) -> dict:
        entry = {"name": name, "status": status, **fields}
        self.stages.append(entry)
        if self.timings is not None:
            now = time.perf_counter()
            self.timings[name] = round(now - self._clock, 6)
            self._clock = now
        return entry

    def to_dict(self) -> dict:
        return {
            "version": __version__,
            "command": self.command,
            "inputs": self.inputs,
            "seed": self.seed,
            "order": self.order,
            "jmax": self.jmax,
            "stages": self.stages,
            "verdict": self.verdict,
            "timings": self.timings,
        }


def emit_report(report: dict, fmt: str) -> bytes:
    if fmt == "json":
        return (json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode()
    lines = [f"formalcr {report['version']} {report['command']}"]
    for item in report["inputs"]:
        lines.append(f"  {item['role']}: {item['name']} ({(item['digest'] or 'unreadable')[:19]})")
    for st in report["stages"]:
        lines.append(f"[{st['status']}] {st['name']}")
        for key in sorted(st):
            if key in ("name", "status"):
                continue
            lines.extend(_text_field(key, st[key], "    "))
    v = report["verdict"] or {}
    lines.append(f"verdict: {v.get('status')} (exit {v.get('exit_code')})")
    if report["timings"]:
        total = sum(report["timings"].values())
        lines.append(f"time: {total:.3f}s")
    return ("\n".join(lines) + "\n").encode()


def _text_field(key, value, indent) -> list:
    if isinstance(value, dict) and "identity" not in value:
        if all(not isinstance(v, (dict, list)) for v in value.values()):
            return [f"{indent}{key}: " + _oneline(value)]
        out = [f"{indent}{key}:"]
        for k in sorted(value):
            out.extend(_text_field(k, value[k], indent + "  "))
        return out
    if isinstance(value, list) and value and isinstance(value[0], dict):
        return [f"{indent}{key}:"] + [f"{indent}  - " + _oneline(item) for item in value]
    if isinstance(value, dict):
        return [f"{indent}{key}: " + _oneline(value)]
    return [f"{indent}{key}: {value}"]


def _oneline(d: dict) -> str:
    if "identity" in d:
        comp = f"[{d['component']}]" if d.get("component") else ""
        text = f"{d['identity']}{comp}: {'holds' if d['holds'] else 'FAILS'}"
        if not d["holds"]:
            text += (f" at {d['first_failing_monomial_text']}"
                     f" ({d['lhs_coefficient']} vs {d['rhs_coefficient']})")
        return text
    return ", ".join(f"{k}={v}" for k, v in sorted(d.items()))


def _reports(reports) -> list:
    return [r.to_dict() for r in reports]


def _status(ok: bool) -> str:
    return "holds" if ok else "fails"


def _manifold(report: Report, path):
    report.add_input("manifold", path)
    M, _ = load_manifold(path, report.order)
    report.order = M.K
    report.stage("validate_manifold", "valid", n=M.n, d=M.d,
                 Q=[str(q) for q in M.Q])
    return M


def _map(report: Report, path, M):
    report.add_input("map", path)
    H, _ = load_map(path, M)
    report.stage("load_map", "loaded", m=H.m, N=[str(x) for x in H.N], D=str(H.D))
    return H


def _finite_type(report: Report, M, args):
    ft = finite_type_search(M, args.jmax, args.seed)
    report.jmax = ft.j_max
    fields = ft.to_dict()
    del fields["status"]
    report.stage("finite_type", ft.status, **fields)
    return ft


def cmd_check_manifold(args, report):
    M = _manifold(report, args.manifold)
    return {"status": "Valid", "n": M.n, "d": M.d}, EXIT_OK


def cmd_finite_type(args, report):
    M = _manifold(report, args.manifold)
    ft = _finite_type(report, M, args)
    code = EXIT_OK if ft.finite_type else EXIT_UNDETERMINED
    return {"status": ft.status, "j": ft.j, "max_rank_seen": ft.max_rank_seen}, code


def cmd_check_real(args, report):
    M = _manifold(report, args.manifold)
    H = _map(report, args.map, M)
    reports = check_real_on_M(M, H)
    ok = all(reports)
    report.stage("real_on_M", _status(ok), reports=_reports(reports))
    return {"status": "RealOnM" if ok else "NotRealOnM"}, EXIT_OK if ok else EXIT_NEGATIVE


def cmd_reflect(args, report):
    M = _manifold(report, args.manifold)
    H = _map(report, args.map, M)
    results = []
    for name, reports in (("real_on_M", check_real_on_M(M, H)),
                          ("cross_identity", verify_cross_identity(M, H)),
                          ("transverse_dependence", check_transverse_dependence(M, H))):
        results.append(all(reports))
        report.stage(name, _status(all(reports)), reports=_reports(reports))
    if H.D.constant_term:
        a = compute_unit_a(M, H)
        reports = check_unit_a(M, H, a)
        results.append(all(reports))
        report.stage("unit_a", _status(all(reports)), a=str(a), reports=_reports(reports))
    else:
        report.stage("unit_a", "skipped", reason="D(0) = 0")
    ok = all(results)
    return {"status": "IdentitiesHold" if ok else "IdentityFailure"}, EXIT_OK if ok else EXIT_NEGATIVE


_CONSTANCY_EXIT = {
    Constancy.YES: EXIT_OK,
    Constancy.NOT_REAL_ON_M: EXIT_NEGATIVE,
    Constancy.INFINITE_TYPE_UNDETERMINED: EXIT_UNDETERMINED,
    Constancy.TRUNCATION_INSUFFICIENT: EXIT_UNDETERMINED,
    Constancy.THEOREM_VIOLATION_SUSPECTED: EXIT_UNDETERMINED,
}


def cmd_constancy(args, report):
    M = _manifold(report, args.manifold)
    H = _map(report, args.map, M)
    verdict = decide_constancy(M, H, args.jmax, args.seed)
    out = verdict.to_dict()
    report.jmax = args.jmax if args.jmax is not None else M.d + 1
    report.stage("constancy", out["constant"], **out)
    v = {"status": out["constant"], "real_on_M": verdict.real_on_M}
    if verdict.value is not None:
        v["value"] = out["value"]
    return v, _CONSTANCY_EXIT[verdict.constant]


def cmd_segre_print(args, report):
    M = _manifold(report, args.manifold)
    res = segre_vj(M, args.depth, with_w=not args.no_w)
    report.stage("segre_map", "computed", j=args.depth, with_w=not args.no_w,
                 variables=list(res.space.names), v=[str(x) for x in res.v])
    return {"status": "Computed"}, EXIT_OK


def cmd_oracle(args, report):
    M = _manifold(report, args.manifold)
    D = None
    if args.denominator is not None:
        D = parse_series(args.denominator, map_space(M.n, M.d), M.K)
    space = enumerate_real_holomorphic(M, D, args.deg_bound)
    report.stage("real_numerators", "solved", denominator=str(space.denominator),
                 deg_bound=args.deg_bound, dimension=space.dimension,
                 basis=[str(b) for b in space.basis])
    return {"status": "Solved", "dimension": space.dimension}, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--order", "-K", type=int, default=None,
                        help="truncation order K (default: file value, else 8)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--report", choices=("text", "json"), default="text")
    common.add_argument("--out", type=Path, default=None, help="write the report here")
    common.add_argument("--timings", action="store_true",
                        help="record wall-clock timings (makes JSON non-reproducible)")
    with_j = _Parser(add_help=False)
    with_j.add_argument("--jmax", type=int, default=None, help="maximal chain depth (default d+1)")

    parser = _Parser(prog="formalcr", description="Formal CR geometry checks.")
    parser.add_argument("--version", action="version", version=f"formalcr {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, maps=False, jmax=False):
        p = sub.add_parser(name, help=help, parents=[common] + ([with_j] if jmax else []))
        p.add_argument("manifold", type=Path)
        if maps:
            p.add_argument("map", type=Path)
        p.set_defaults(func=func)
        return p

    add("check-manifold", cmd_check_manifold, "validate normal form and reality")
    add("finite-type", cmd_finite_type, "search for a finite-type certificate", jmax=True)
    add("check-real", cmd_check_real, "check that a map is real on the manifold", maps=True)
    add("reflect", cmd_reflect, "check the reflection identities", maps=True)
    add("constancy", cmd_constancy, "decide constancy of a real map", maps=True, jmax=True)
    p = add("segre-print", cmd_segre_print, "print an iterated Segre map")
    p.add_argument("--depth", "-j", type=int, default=1)
    p.add_argument("--no-w", action="store_true", help="set w = 0")
    p = add("oracle", cmd_oracle, "solve for polynomial numerators real on the manifold")
    p.add_argument("--deg-bound", type=int, default=2)
    p.add_argument("--denominator", default=None, help="fixed denominator (default 1)")
    return parser


def _execute(argv):
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return EXIT_INPUT, None, None, str(exc)
    if args.order is not None and args.order < 1:
        return EXIT_INPUT, None, args, "formalcr: --order must be positive"
    if getattr(args, "jmax", None) is not None and args.jmax < 1:
        return EXIT_INPUT, None, args, "formalcr: --jmax must be at least 1"
    report = Report(args.command, args)
    try:
        verdict, code = args.func(args, report)
    except IdentityFailure as exc:
        report.stage("error", "rejected", error=type(exc).__name__, message=str(exc),
                     identity=exc.identity, component=exc.component,
                     first_failing_monomial=dict(sorted((exc.monomial or {}).items())),
                     lhs_coefficient=str(exc.lhs), rhs_coefficient=str(exc.rhs))
        verdict, code = {"status": type(exc).__name__}, EXIT_NEGATIVE
    except (FormalCRError, ValueError) as exc:
        report.stage("error", "input_error", error=type(exc).__name__, message=str(exc))
        verdict, code = {"status": "InputError"}, EXIT_INPUT
    verdict["exit_code"] = code
    report.verdict = verdict
    return code, report.to_dict(), args, ""


def run_command(argv) -> tuple:
    """Run one command; returns ``(exit_code, report)``, ``report`` None on usage errors."""
    code, report, _, _ = _execute(list(argv))
    return code, report


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    code, report, args, message = _execute(argv)
    if report is None:
        print(message, file=sys.stderr)
        return code
    data = emit_report(report, args.report)
    try:
        if args.out is None:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
        else:
            args.out.write_bytes(data)
    except OSError as exc:
        print(f"formalcr: cannot write report: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return code
