"""``lgr`` command-line front-end.

Every subcommand reads JSON payloads (inline or from a file), prints
``{"result": ...}`` and exits 0. Errors print ``{"error", "message",
"position"}`` and exit 2 (malformed input) or 3 (outside the domain).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import serialize as ser
from .chow import (
    chow_transform,
    dual_tangent_hyperplane_3d,
    goursat_indicator_2d,
    tangency_report,
)
from .errors import BadPayload, DimensionMismatch, LgrError, LimitsExceeded
from .exact import format_rational
from .lag_grassmann import check_relations, plucker, reconstruct_big_cell
from .parser import format_pde, parse_pde
from .pde_analysis import (
    classify_at,
    hyperplane_section,
    is_characteristic,
    is_strong_characteristic,
    ma_coefficients,
    ma_test,
    symbol,
)
from .symplectic import action, infinitesimal_action

PAYLOADS = ("pde", "h", "m", "x", "alpha", "coeffs", "vector", "d")
PLUCKER_CAP = 6
POLY_CAP = 5


@dataclass
class Command:
    payloads: frozenset[str]
    run: Callable[["JobSpec", int], object]
    cap: int | None = POLY_CAP
    needs_n: bool = False
    boolean: bool = False


@dataclass
class JobSpec:
    command: str
    n: int | None = None
    payloads: dict = field(default_factory=dict)
    output: str | None = None
    exit_code: bool = False
    off_shell: bool = False

    def validate(self) -> Command:
        cmd = COMMANDS.get(self.command)
        if cmd is None:
            raise BadPayload(f"unknown command {self.command!r}")
        given = {k for k, v in self.payloads.items() if v is not None}
        if missing := cmd.payloads - given:
            raise BadPayload(f"{self.command} needs {', '.join(sorted(missing))}")
        if extra := given - cmd.payloads:
            raise BadPayload(f"{self.command} does not take {', '.join(sorted(extra))}")
        if self.n is not None and (isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1):
            raise BadPayload("n must be a positive integer")
        if cmd.needs_n and self.n is None:
            raise BadPayload(f"{self.command} needs --n")
        if self.off_shell and self.command != "char":
            raise BadPayload("--off-shell only applies to char")
        return cmd

    @classmethod
    def from_dict(cls, obj: dict) -> "JobSpec":
        if not isinstance(obj, dict) or "command" not in obj:
            raise BadPayload('a job is an object with a "command" key')
        obj = dict(obj)
        if "matrix" in obj:
            if "h" in obj:
                raise BadPayload('give either "matrix" or "h", not both')
            obj["h"] = obj.pop("matrix")
        known = {"command", "n", "output", "exit_code", "off_shell", *PAYLOADS}
        if unknown := set(obj) - known:
            raise BadPayload(f"unknown job keys: {', '.join(sorted(unknown))}")
        return cls(
            command=obj["command"],
            n=obj.get("n"),
            payloads={k: obj[k] for k in PAYLOADS if k in obj},
            output=obj.get("output"),
            exit_code=bool(obj.get("exit_code", False)),
            off_shell=bool(obj.get("off_shell", False)),
        )

    def to_dict(self) -> dict:
        out = {"command": self.command, **self.payloads}
        if self.n is not None:
            out["n"] = self.n
        return out


def dimension_cap(default: int) -> int:
    raw = os.environ.get("LGR_MAX_N")
    if raw is None:
        return default
    try:
        cap = int(raw)
    except ValueError:
        raise BadPayload(f"LGR_MAX_N must be an integer, got {raw!r}") from None
    if cap < 1:
        raise BadPayload("LGR_MAX_N must be positive")
    return cap


def _dim(job: JobSpec, n: int) -> int:
    if job.n is not None and job.n != n:
        raise DimensionMismatch(f"--n {job.n} does not match the payload dimension {n}")
    return n


def _capped(n: int, cap: int) -> int:
    if n > cap:
        raise LimitsExceeded(f"n={n} exceeds the dimension cap {cap} (set LGR_MAX_N to raise it)")
    return n


def _sym(job: JobSpec):
    h = ser.read_sym(job.payloads["h"])
    _dim(job, h.n)
    return h


def _pde(job: JobSpec, cap: int, n: int | None = None):
    n = job.n if n is None else n
    _capped(n, cap)
    text = job.payloads["pde"]
    if not isinstance(text, str):
        raise BadPayload("pde must be a string")
    return parse_pde(text, n)


def _run_plucker(job, cap):
    h = _sym(job)
    return ser.write_minor_entries(plucker(h, max_n=cap).items())


def _run_relations(job, cap):
    v = ser.read_plucker(job.payloads["vector"], _capped(job.n, cap))
    return check_relations(v)


def _run_reconstruct(job, cap):
    v = ser.read_plucker(job.payloads["vector"], _capped(job.n, cap))
    return ser.write_matrix(reconstruct_big_cell(v))


def _run_act(job, cap):
    m = ser.read_symplectic(job.payloads["m"])
    h = _sym(job)
    return ser.write_matrix(action(m, h))


def _run_infaction(job, cap):
    x = ser.read_sp_algebra(job.payloads["x"])
    h = _sym(job)
    return ser.write_matrix(infinitesimal_action(x, h))


def _run_ma_test(job, cap):
    return ma_test(_pde(job, cap), max_n=cap)


def _run_ma_coeffs(job, cap):
    return ser.write_minor_entries(ma_coefficients(_pde(job, cap), max_n=cap).items())


def _run_section(job, cap):
    c = ser.read_coefficients(job.payloads["coeffs"], _capped(job.n, cap))
    return format_pde(hyperplane_section(c))


def _run_symbol(job, cap):
    h = _sym(job)
    return ser.write_matrix(symbol(_pde(job, cap, h.n), h).S)


def _run_classify(job, cap):
    h = _sym(job)
    return ser.write_point_class(classify_at(_pde(job, cap, h.n), h))


def _run_char(job, cap):
    h = _sym(job)
    f = _pde(job, cap, h.n)
    alpha = ser.read_covector(job.payloads["alpha"], h.n)
    on_shell = not job.off_shell
    return {
        "characteristic": is_characteristic(f, h, alpha, on_shell=on_shell),
        "strong": is_strong_characteristic(f, h, alpha, on_shell=on_shell),
    }


def _run_chow(job, cap):
    sub = ser.read_chow(job.payloads["d"])
    _dim(job, sub.n)
    return format_pde(chow_transform(sub, max_n=cap))


def _run_goursat2(job, cap):
    sub = ser.read_chow(job.payloads["d"])
    _dim(job, sub.n)
    indicator, coeffs = goursat_indicator_2d(sub)
    label = "parabolic" if indicator == 0 else ("elliptic" if indicator > 0 else "hyperbolic")
    return {
        "indicator": format_rational(indicator),
        "class": label,
        "coefficients": ser.write_goursat(coeffs),
    }


def _run_dual3(job, cap):
    h = _sym(job)
    c = dual_tangent_hyperplane_3d(h)
    return {
        "coefficients": ser.write_minor_entries(c.items()),
        "tangency": ser.write_tangency(tangency_report(c, h)),
    }


def _run_parse(job, cap):
    return format_pde(_pde(job, cap))


COMMANDS: dict[str, Command] = {
    "plucker": Command(frozenset({"h"}), _run_plucker, cap=PLUCKER_CAP),
    "relations": Command(frozenset({"vector"}), _run_relations, cap=PLUCKER_CAP, needs_n=True, boolean=True),
    "reconstruct": Command(frozenset({"vector"}), _run_reconstruct, cap=PLUCKER_CAP, needs_n=True),
    "act": Command(frozenset({"m", "h"}), _run_act, cap=None),
    "infaction": Command(frozenset({"x", "h"}), _run_infaction, cap=None),
    "ma-test": Command(frozenset({"pde"}), _run_ma_test, needs_n=True, boolean=True),
    "ma-coeffs": Command(frozenset({"pde"}), _run_ma_coeffs, needs_n=True),
    "section": Command(frozenset({"coeffs"}), _run_section, needs_n=True),
    "symbol": Command(frozenset({"pde", "h"}), _run_symbol),
    "classify": Command(frozenset({"pde", "h"}), _run_classify),
    "char": Command(frozenset({"pde", "h", "alpha"}), _run_char),
    "chow": Command(frozenset({"d"}), _run_chow),
    "goursat2": Command(frozenset({"d"}), _run_goursat2, cap=None),
    "dual3": Command(frozenset({"h"}), _run_dual3, cap=None),
    # the parser has its own single-digit index limit
    "parse": Command(frozenset({"pde"}), _run_parse, cap=9, needs_n=True),
}


def run(job: JobSpec) -> tuple[int, str]:
    """Execute one job; returns (exit status, canonical JSON text)."""
    try:
        cmd = job.validate()
        cap = dimension_cap(cmd.cap) if cmd.cap is not None else sys.maxsize
        result = cmd.run(job, cap)
    except LgrError as e:
        return e.exit_code, ser.dumps(e.to_json())
    status = 1 if cmd.boolean and job.exit_code and result is False else 0
    return status, ser.dumps({"result": result})


def load_payload(value: str):
    """Inline JSON, or the path of a JSON file."""
    path = Path(value)
    try:
        if not value.lstrip().startswith(("[", "{", '"')) and path.is_file():
            return json.loads(path.read_text())
        return json.loads(value)
    except json.JSONDecodeError as e:
        raise BadPayload(f"invalid JSON: {e.msg}", e.pos) from None
    except OSError as e:
        raise BadPayload(f"cannot read {value!r}: {e.strerror}") from None


# named equations, ready to run as job files
FIXTURES: dict[str, dict] = {
    "det_eq_1_n3": {"command": "ma-test", "n": 3, "pde": "det(p) - 1"},
    "det_eq_tr_n3": {"command": "ma-test", "n": 3, "pde": "det(p) - tr(p)"},
    "det_eq_1_n3_coeffs": {"command": "ma-coeffs", "n": 3, "pde": "det(p) - 1"},
    "det_eq_tr_n3_coeffs": {"command": "ma-coeffs", "n": 3, "pde": "det(p) - tr(p)"},
    "not_ma_square": {"command": "ma-test", "n": 2, "pde": "p11^2"},
    "not_ma_product_n3": {"command": "ma-test", "n": 3, "pde": "p11*p22"},
    "section_n2": {
        "command": "section",
        "n": 2,
        "coeffs": [
            {"rows": [], "cols": [], "value": "1"},
            {"rows": [1, 2], "cols": [1, 2], "value": "1"},
        ],
    },
    "section_n3_laplace": {
        "command": "section",
        "n": 3,
        "coeffs": [{"rows": [i], "cols": [i], "value": "1"} for i in (1, 2, 3)],
    },
    "goursat_symmetric": {"command": "goursat2", "d": {"D": [["1", "2"], ["2", "3"]]}},
    "goursat_skew": {"command": "goursat2", "d": {"D": [["0", "1"], ["0", "0"]]}},
    "chow_rotation": {"command": "chow", "d": {"D": [["0", "1"], ["-1", "0"]]}},
    "dual3_identity": {"command": "dual3", "h": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]},
    "plucker_n2": {"command": "plucker", "n": 2, "h": [["1", "2"], ["2", "5"]]},
    "act_identity": {
        "command": "act",
        "m": {"A": [["1", "0"], ["0", "1"]], "B": [["0", "0"], ["0", "0"]],
              "C": [["0", "0"], ["0", "0"]], "D": [["1", "0"], ["0", "1"]]},
        "h": [["1", "1/2"], ["1/2", "-3"]],
    },
}


def write_fixtures(directory: str) -> list[str]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, job in FIXTURES.items():
        p = out / f"{name}.json"
        p.write_text(ser.dumps(job))
        paths.append(str(p))
    return paths


def _run_job_file(path: str, out_dir: str | None) -> dict:
    try:
        job = JobSpec.from_dict(load_payload(path))
    except LgrError as e:
        status, text, target = e.exit_code, ser.dumps(e.to_json()), None
    else:
        status, text = run(job)
        target = job.output
    if target is None:
        base = Path(out_dir) if out_dir else Path(path).parent
        target = str(base / f"{Path(path).stem}.out.json")
    Path(target).parent.mkdir(parents=True, exist_ok=True)
    Path(target).write_text(text)
    return {"job": path, "output": target, "status": status}


def run_batch(paths: list[str], out_dir: str | None = None, workers: int | None = None) -> tuple[int, list[dict]]:
    """Run independent job files concurrently; each writes its own output file."""
    with ProcessPoolExecutor(max_workers=workers) as pool:
        reports = list(pool.map(_run_job_file, paths, [out_dir] * len(paths)))
    return max((r["status"] for r in reports), default=0), reports


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise BadPayload(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lgr", description="Exact computations on the Lagrangian Grassmannian.")
    ap.add_argument("--fixtures", metavar="DIR", help="write the named example equations as job files")
    ap.add_argument("--jobs", metavar="FILE", nargs="+", help="run job files concurrently")
    ap.add_argument("--out-dir", metavar="DIR", help="where --jobs writes outputs (default: beside each job)")
    ap.add_argument("--workers", type=int, help="worker processes for --jobs")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--n", type=int)
        sp.add_argument("--pde", help="polynomial in p11, p12, ...")
        sp.add_argument("--h", "--matrix", dest="h", metavar="JSON", help="symmetric matrix")
        sp.add_argument("--m", metavar="JSON", help='symplectic matrix {"A","B","C","D"}')
        sp.add_argument("--x", metavar="JSON", help='algebra element {"Bdot","Cdot","Ddot"}')
        sp.add_argument("--alpha", metavar="JSON", help="covector")
        sp.add_argument("--coeffs", metavar="JSON", help="minor-basis coefficients")
        sp.add_argument("--vector", metavar="JSON", help="Plücker vector")
        sp.add_argument("--d", metavar="JSON", help='subspace {"D": matrix}')
        sp.add_argument("--output", metavar="FILE")
        sp.add_argument("--exit-code", action="store_true", help="exit 1 when a boolean result is false")
        sp.add_argument("--off-shell", action="store_true", help="char: skip the F(h) = 0 check")
    return ap


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    output = None
    try:
        args = build_parser().parse_args(argv)
        modes = [m for m in (args.command, args.fixtures, args.jobs) if m]
        if len(modes) != 1:
            raise BadPayload("give exactly one of a command, --fixtures or --jobs")
        if args.fixtures:
            _emit(ser.dumps({"result": write_fixtures(args.fixtures)}), None)
            return 0
        if args.jobs:
            status, reports = run_batch(args.jobs, args.out_dir, args.workers)
            _emit(ser.dumps({"result": reports}), None)
            return status
        output = args.output
        payloads = {}
        for k in PAYLOADS:
            v = getattr(args, k)
            if v is not None:
                payloads[k] = v if k == "pde" else load_payload(v)
        job = JobSpec(args.command, args.n, payloads, output, args.exit_code, args.off_shell)
    except LgrError as e:
        _emit(ser.dumps(e.to_json()), output)
        return e.exit_code
    status, text = run(job)
    _emit(text, output)
    return status


if __name__ == "__main__":
    sys.exit(main())
