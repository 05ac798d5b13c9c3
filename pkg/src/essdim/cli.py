"""Command-line front end: ``essdim verify``, ``essdim bounds``, ``essdim report-all``.

Exit codes: 0 every check passed, 1 a mathematical check failed,
2 usage or parameter-range error, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import __version__
from .bounds import BoundConflictError, best_bounds
from .constructions import ParameterError, build, lemma32i, section5, verify_usss
from .equivariant import StrategyError, WellDefinednessError, label_str

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

VERIFY_NAMES = ("lemma32i", "lemma32ii", "lemma33", "section5", "example-r3", "usss")
CONTROL_NAMES = ("control-corrupt", "control-drop-g")
CHAR_TAGS = {0: "not2", 2: "equals2"}
MAX_R = 6
MAX_N = 64


class UsageError(Exception):
    """Bad flags or an out-of-range parameter (exit 2)."""


@dataclass
class Report:
    version: str
    command: str
    params: dict
    verdicts: list = field(default_factory=list)
    bounds: list = field(default_factory=list)
    status: str = "pass"

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(**json.loads(text))

    def settle(self) -> None:
        ok = all(v.get("passed") for v in self.verdicts) and all(b.get("consistent", True) for b in self.bounds)
        self.status = "pass" if ok else "fail"

    def render_text(self) -> str:
        lines = [f"essdim {self.version}  {self.command}  status: {self.status.upper()}"]
        for v in self.verdicts:
            lines.extend(_verdict_lines(v))
        if self.bounds:
            lines.append("")
            lines.extend(_bounds_lines(self.bounds))
        return "\n".join(lines) + "\n"


# -- verdict records -----------------------------------------------------------

def _yn(flag) -> str:
    return "n/a" if flag is None else ("yes" if flag else "NO")


def _verdict_lines(v: dict) -> list[str]:
    head = f"{v['name']}({v['param']})  {'PASS' if v['passed'] else 'FAIL'}"
    if "claims" in v:
        lines = [head + f"  [{v['wall_time']:.2f} s]"]
        for key, claim in v["claims"].items():
            lines.append(f"  claim {key}: {'holds' if claim['passed'] else 'FAILS'}  {claim['details']}")
        return lines
    lines = [
        head + f"  well-defined={_yn(v['well_defined'])} surjective={_yn(v['surjective'])} "
        f"faithful={_yn(v['faithful'])}",
    ]
    if v["source_rank"] is not None:
        lines.append(
            f"  ranks: source {v['source_rank']}, target {v['target_rank']}, kernel {v['kernel_rank']}; "
            f"bound {v['bound']} (expected {v['expected_bound']}); strategy {v['strategy']}  [{v['wall_time']:.2f} s]"
        )
    for name, ok in v.get("checks", {}).items():
        lines.append(f"  check {'ok  ' if ok else 'FAIL'} {name}")
    for w in v["witnesses"]:
        moved = "" if w.get("moved", True) else " (NOT moved)"
        lines.append(f"  witness {w['element']} moves {w['moves']}{moved}" if "moves" in w
                     else f"  witness {w['element']} at {w.get('label', '')}")
    for f in v["failures"]:
        lines.append(f"  failure: {f}")
    for note in v["notes"]:
        lines.append(f"  note: {note}")
    return lines


def _bounds_lines(bounds: list[dict]) -> list[str]:
    def show(x):
        return "?" if x is None else str(x)

    rows = [("n", "reduced", "char", "p", "lower", "upper")]
    rows += [(str(b["n"]), str(b["reduced_n"]), str(b["char"]), str(b["p"]), show(b["lower"]), show(b["upper"])) for b in bounds]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    for b in bounds:
        for note in b["notes"]:
            lines.append(f"n={b['n']}: {note}")
        for side in ("lower", "upper"):
            chain = b["chain"][side]
            if chain:
                lines.append(f"n={b['n']} {side}: " + " <- ".join(chain))
    return lines


def _construction_record(c, verdict, wall: float, notes: list[str]) -> dict:
    return {
        "name": c.name,
        "param": c.parameter,
        "passed": c.passed(verdict),
        "well_defined": verdict.well_defined,
        "surjective": verdict.surjective,
        "faithful": verdict.faithful_on_kernel,
        "kernel_rank": verdict.kernel_rank,
        "source_rank": verdict.source_rank,
        "target_rank": verdict.target_rank,
        "bound": verdict.bound,
        "expected_bound": c.expected_bound,
        "cokernel_factors": list(verdict.cokernel_factors),
        "strategy": verdict.strategy,
        "assumption": verdict.assumption,
        "witnesses": list(verdict.witnesses),
        "failures": list(verdict.failure_witnesses),
        "checks": dict(c.checks),
        "component_ranks": list(c.component_ranks),
        "notes": list(c.notes) + notes,
        "wall_time": round(wall, 4),
    }


def _ill_defined_record(name: str, param: int, exc: WellDefinednessError, wall: float) -> dict:
    return {
        "name": name,
        "param": param,
        "passed": False,
        "well_defined": False,
        "surjective": None,
        "faithful": None,
        "kernel_rank": None,
        "source_rank": None,
        "target_rank": None,
        "bound": None,
        "expected_bound": None,
        "cokernel_factors": [],
        "strategy": "",
        "assumption": "",
        "witnesses": [{"element": exc.element.cycle_str(), "component": exc.component + 1, "label": label_str(exc.label)}],
        "failures": [str(exc)],
        "checks": {},
        "component_ranks": [],
        "notes": [],
        "wall_time": round(wall, 4),
    }


def _usss_record(r: int, x: int) -> dict:
    t0 = time.perf_counter()
    rep = verify_usss(r, x)
    return {
        "name": "usss",
        "param": r,
        "passed": rep.passed,
        "claims": {k: {"passed": c.passed, "details": c.details} for k, c in rep.claims.items()},
        "notes": [] if x == 0 else [f"base point {x + 1}"],
        "wall_time": round(time.perf_counter() - t0, 4),
    }


def _need(value: Optional[int], flag: str, name: str) -> int:
    if value is None:
        raise UsageError(f"{name} needs {flag}")
    return value


def _check_r(r: int) -> None:
    if r > MAX_R:
        raise UsageError(f"r = {r} exceeds the enumeration budget (r <= {MAX_R})")


def _check_n(n: int) -> None:
    if n > MAX_N:
        raise UsageError(f"n = {n} exceeds the supported range (n <= {MAX_N})")


def run_verify(name: str, n=None, r=None, x: int = 0, strategy: str = "auto", range_guard: bool = True) -> dict:
    """Build and verify one construction; return its report record."""
    if name == "usss":
        r = _need(r, "--r", name)
        _check_r(r)
        if r < 3:
            raise UsageError(f"usss is stated for r >= 3, got r = {r}")
        try:
            return _usss_record(r, x)
        except ParameterError as exc:
            raise UsageError(str(exc)) from None
    t0 = time.perf_counter()
    param = n if name.startswith(("lemma32", "control-drop")) else r
    try:
        if name in ("lemma32i", "lemma32ii"):
            n = _need(n, "--n", name)
            _check_n(n)
            c = build(name, n, range_guard=range_guard)
            param = n
        elif name == "control-drop-g":
            n = 4 if n is None else n
            _check_n(n)
            c = lemma32i(n, include_singletons=False)
            param = n
        elif name == "example-r3":
            if r not in (None, 3):
                raise UsageError("example-r3 only exists for r = 3")
            c = build(name, 3)
            param = 3
        elif name in ("lemma33", "section5"):
            r = _need(r, "--r", name)
            _check_r(r)
            c = build(name, r, x=x)
            param = r
        elif name == "control-corrupt":
            r = 3 if r is None else r
            _check_r(r)
            param = r
            c = section5(r, x=x, corrupt_first_image=True)
        else:
            raise UsageError(f"unknown construction {name!r}; choose from {', '.join(VERIFY_NAMES + CONTROL_NAMES)}")
    except WellDefinednessError as exc:
        return _ill_defined_record("section5" if name == "control-corrupt" else name, param, exc,
                                   time.perf_counter() - t0)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None
    verdict = c.verify(strategy)
    wall = time.perf_counter() - t0
    notes = []
    if strategy == "exhaustive":
        try:
            other = c.verify("witness")
            agree = other.faithful_on_kernel == verdict.faithful_on_kernel
            notes.append(
                f"strategy agreement: witness verdict {'agrees' if agree else 'DISAGREES'} "
                f"(faithful={other.faithful_on_kernel})"
            )
        except StrategyError as exc:
            notes.append(f"strategy agreement: witness strategy not applicable ({exc})")
    return _construction_record(c, verdict, wall, notes)


def bounds_record(n: int, char: int, p: int = 2, max_verified_r: int = 5) -> dict:
    if char not in CHAR_TAGS:
        raise UsageError(f"--char must be 0 or 2, got {char}")
    if p != 2:
        raise UsageError(f"only p = 2 is supported, got p = {p}")
    if n < 1:
        raise UsageError("n must be positive")
    table = best_bounds(n, CHAR_TAGS[char], p, max_verified_r=max_verified_r)
    out = table.as_dict()
    out["char"] = char
    out["notes"] = [f"reduced: {n} -> {table.reduced_n}"] if table.reduced_n != n else []
    out.pop("records")
    return out


def report_all(max_r: int) -> Report:
    """The whole verification matrix up to ``r = max_r``."""
    if not 3 <= max_r <= MAX_R:
        raise UsageError(f"--max-r must be between 3 and {MAX_R}, got {max_r}")
    rep = Report(version=__version__, command="report-all", params={"max_r": max_r})
    for n in range(3, 9):
        rep.verdicts.append(run_verify("lemma32i", n=n))
    for n in (9, 10):
        rep.verdicts.append(run_verify("lemma32i", n=n, strategy="witness"))
    for n in (6, 8):
        rep.verdicts.append(run_verify("lemma32ii", n=n))
    for r in range(2, min(max_r, 4) + 1):
        rep.verdicts.append(run_verify("lemma33", r=r))
    for r in range(3, max_r + 1):
        rep.verdicts.append(run_verify("section5", r=r))
    rep.verdicts.append(run_verify("example-r3"))
    for r in range(3, max_r + 1):
        rep.verdicts.append(run_verify("usss", r=r))
    for k in range(2, max_r + 1):
        for char in (0, 2):
            rep.bounds.append(bounds_record(2 ** k, char, max_verified_r=min(max_r, 5)))
    rep.bounds.append(bounds_record(24, 0, max_verified_r=min(max_r, 5)))
    rep.settle()
    return rep


# -- argument handling ---------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--out", help="write the report to this file instead of stdout")

    ap = argparse.ArgumentParser(prog="essdim", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"essdim {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="verify one construction")
    v.add_argument("name", help=", ".join(VERIFY_NAMES + CONTROL_NAMES))
    v.add_argument("--n", type=int)
    v.add_argument("--r", type=int)
    v.add_argument("--x", type=int, default=1, help="1-based base point for section5/usss")
    v.add_argument("--strategy", choices=("auto", "exhaustive", "witness"), default="auto")
    v.add_argument("--no-range-guard", action="store_true")

    b = sub.add_parser("bounds", parents=[common], help="best known bounds for ed_2(Alg_{n,2})")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--char", type=int, default=0)
    b.add_argument("--p", type=int, default=2)

    a = sub.add_parser("report-all", parents=[common], help="run the full verification matrix")
    a.add_argument("--max-r", type=int, default=4)
    return ap


def _emit(rep: Report, fmt: str, out: Optional[str]) -> None:
    text = rep.to_json() if fmt == "json" else rep.render_text()
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)
    sys.stdout.write(f"{rep.command}: {rep.status} (report written to {out})\n")


def main(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        if args.command == "verify":
            params = {"name": args.name, "n": args.n, "r": args.r, "x": args.x, "strategy": args.strategy,
                      "range_guard": not args.no_range_guard}
            rep = Report(version=__version__, command="verify", params=params)
            try:
                rep.verdicts.append(run_verify(args.name, args.n, args.r, args.x - 1, args.strategy,
                                               not args.no_range_guard))
            except StrategyError as exc:
                raise UsageError(str(exc)) from None
        elif args.command == "bounds":
            params = {"n": args.n, "char": args.char, "p": args.p}
            rep = Report(version=__version__, command="bounds", params=params)
            rep.bounds.append(bounds_record(args.n, args.char, args.p))
        else:
            rep = report_all(args.max_r)
        rep.settle()
    except UsageError as exc:
        print(f"essdim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoundConflictError as exc:
        print(f"essdim: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        _emit(rep, args.format, args.out)
    except OSError as exc:
        print(f"essdim: cannot write report: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_PASS if rep.status == "pass" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
