"""Command-line frontend: ``tricorr <subcommand> [flags]``.

Exit codes: 0 success, 2 usage error, 3 numeric or validation failure.
Errors go to stderr as one JSON object; nothing is written on failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import analysis, dynamics
from .core import InvalidStateError, validate_density
from .correlators import (
    BASIS_LABELS,
    OBSERVABLE_LABELS,
    mi_tripartite,
    mp_tripartite,
    named_basis,
    named_observable,
    pcc_tripartite,
)
from .measures import measure_report, tangle_closed
from .states import FAMILIES, build_state, get_family, make_ghz, make_ghz_y, pure_state, to_density

EXIT_USAGE = 2
EXIT_NUMERIC = 3
CLI_GHZ_NORM_TOL = 1e-6


class UsageError(Exception):
    pass


class NumericFailure(Exception):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# parsing helpers

def parse_grid(text: str) -> list[float]:
    """``start:stop:step``; ``stop`` is included when within half a step."""
    try:
        start, stop, step = (float(s) for s in text.split(":"))
    except ValueError:
        raise UsageError(f"grid must be start:stop:step, got {text!r}") from None
    if not all(map(math.isfinite, (start, stop, step))) or step <= 0 or stop < start:
        raise UsageError(f"grid needs finite start <= stop and step > 0, got {text!r}")
    n = int(math.floor((stop - start) / step + 0.5))
    values = [round(start + k * step, 12) for k in range(n + 1)]
    if values[-1] > stop:
        values[-1] = stop
    return values


def parse_params(items: list[str] | None) -> dict[str, float]:
    out = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects key=value, got {item!r}")
        try:
            out[key] = float(val)
        except ValueError:
            raise UsageError(f"--param {key} is not a number: {val!r}") from None
    return out


def _complex_array(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.shape[-1:] != (2,):
        raise ValueError("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def load_state_file(path: str) -> np.ndarray:
    """Density matrix from a JSON file of 8 amplitudes or an 8x8 matrix.

    Entries are ``[re, im]`` pairs. Amplitudes must be normalized; a matrix
    must pass full density validation, otherwise :class:`InvalidStateError`
    carries the validation report.
    """
    try:
        with open(path) as fh:
            raw = json.load(fh)
        if isinstance(raw, dict):
            raw = raw.get("amplitudes", raw.get("matrix"))
        arr = _complex_array(raw)
    except (OSError, ValueError, TypeError) as exc:
        raise ValueError(f"cannot read state file {path!r}: {exc}") from None
    if arr.shape == (8,):
        return to_density(pure_state(arr))
    if arr.shape == (8, 8):
        report = validate_density(arr)
        if not report.passed:
            raise InvalidStateError("; ".join(report.failures()), report)
        return arr
    raise ValueError(f"state file must hold 8 amplitudes or an 8x8 matrix, got shape {arr.shape}")


def _state_from_args(args) -> tuple[np.ndarray, dict]:
    if args.state_file and args.family:
        raise UsageError("give either --state-file or --family, not both")
    if args.state_file:
        return load_state_file(args.state_file), {"state_file": args.state_file}
    if not args.family:
        raise UsageError("a state is required: --family with --param, or --state-file")
    params = parse_params(args.param)
    if args.family == "generalized-ghz" and {"a", "b"} <= set(params):
        a, b = params["a"], params["b"]
        norm = math.hypot(a, b)
        if abs(norm * norm - 1.0) > CLI_GHZ_NORM_TOL:
            raise ValueError(f"a^2 + b^2 = {norm * norm!r}, expected 1")
        rho = to_density(make_ghz(a / norm, b / norm))
    else:
        rho = build_state(args.family, params)
    return rho, {"family": args.family, "params": params}


def _default_grid(family_id: str) -> list[float]:
    return [float(x) for x in analysis.default_grid(family_id)]


# subcommands; each returns the full output text

def cmd_measures(args) -> str:
    rho, source = _state_from_args(args)
    tangle = None
    if args.family in ("generalized-ghz", "generalized-w"):
        tangle = tangle_closed(args.family, **parse_params(args.param))
    rep = measure_report(rho, tangle=tangle)
    out = {
        **source,
        "F123": rep.concurrence_fill,
        "C_GMC": rep.gmc,
        "G123": rep.global_measure,
        "tangle": rep.tangle,
        "edges": rep.edges._asdict(),
        "edge_label": rep.edge_label,
        "gmc_ties": rep.gmc_ties,
        "pure": rep.pure,
    }
    return json.dumps(out, indent=2) + "\n"


def cmd_correlators(args) -> str:
    rho, source = _state_from_args(args)
    obs_labels = args.observable or list(OBSERVABLE_LABELS)
    basis_labels = args.basis or ["X", "Y", "Z"]
    out = {**source, "pcc": {}, "mi": {}, "mp": {}}
    for label in obs_labels:
        out["pcc"][label] = pcc_tripartite(rho, named_observable(label)).to_dict()
    for label in basis_labels:
        basis = named_basis(label)
        out["mi"][label] = mi_tripartite(rho, basis).to_dict()
        out["mp"][label] = mp_tripartite(rho, basis)
    return json.dumps(out, indent=2) + "\n"


def cmd_scan(args) -> str:
    fam = get_family(args.family)
    grid = parse_grid(args.grid) if args.grid else _default_grid(args.family)
    quantities = args.quantity or (["F123", "C_GMC"] if fam.pure else ["C123_plus", "I123_Z"])
    records = analysis.scan_family(args.family, grid, quantities)
    return analysis.table_text(records, args.format, quantities)


def cmd_inequivalence(args) -> str:
    grid = parse_grid(args.grid)
    pairs = analysis.find_inequivalence_pairs(grid, decimals=args.decimals)
    fields = ["a1", "a2", "gmc1", "gmc2", "cf1", "cf2", "kind"]
    if args.format == "json":
        return json.dumps([{f: getattr(p, f) for f in fields} for p in pairs], indent=2) + "\n"
    lines = [",".join(fields)]
    for p in pairs:
        lines.append(",".join(
            p.kind if f == "kind" else format(getattr(p, f), ".12g") for f in fields
        ))
    return "\n".join(lines) + "\n"


ESD_COLUMNS = ["gmc_closed", "pcc_plus", "gmc_from_pcc", "mi_x", "mp_z"]


def cmd_esd(args) -> str:
    y = args.y
    if not 0.0 < y < 1.0:
        raise UsageError(f"--y must lie in (0, 1), got {y}")
    if args.tmax <= 0 or args.steps < 1:
        raise UsageError("--tmax must be positive and --steps at least 1")
    psi = make_ghz_y(y)
    xb, zb = named_basis("X"), named_basis("Z")
    records = []
    for k in range(args.steps + 1):
        t = round(args.tmax * k / args.steps, 12)
        rho = dynamics.damp_state(psi, t)
        c_plus = dynamics.pcc_damped_closed(y, t)
        records.append(analysis.ScanRecord("t_over_tau", t, {
            "gmc_closed": dynamics.gmc_damped_closed(y, t),
            "pcc_plus": c_plus,
            "gmc_from_pcc": dynamics.gmc_from_pcc(c_plus, y),
            "mi_x": mi_tripartite(rho, xb).tripartite,
            "mp_z": mp_tripartite(rho, zb),
        }))
    if args.format == "json":
        t_esd = dynamics.esd_time(y)
        out = {"y": y, "esd_time": t_esd, "records": [r.to_dict() for r in records]}
        return json.dumps(out, indent=2) + "\n"
    text = analysis.table_text(records, "csv", ESD_COLUMNS)
    return text.replace("param,", "t_over_tau,", 1)


def cmd_maccone(args) -> str:
    fam = get_family(args.family)
    grid = parse_grid(args.grid) if args.grid else _default_grid(args.family)
    o1, o2 = named_observable(args.obs1), named_observable(args.obs2)
    records = []
    for x in grid:
        c1 = analysis.pcc_tripartite_continuous(args.family, x, o1).tripartite
        c2 = analysis.pcc_tripartite_continuous(args.family, x, o2).tripartite
        records.append(analysis.ScanRecord(fam.param, x, {
            f"C123_{args.obs1}": c1, f"C123_{args.obs2}": c2, "maccone_sum": c1 + c2,
        }))
    return analysis.table_text(records, args.format)


def cmd_mixed(args) -> str:
    records = analysis.mixed_state_study(parse_grid(args.grid))
    if args.format == "json":
        out = {"metadata": {"F123_quoted": analysis.MIXTURE_F123_NOTE},
               "records": [r.to_dict() for r in records]}
        return json.dumps(out, indent=2) + "\n"
    return analysis.table_text(records, "csv")


def cmd_sample(args) -> str:
    rho, source = _state_from_args(args)
    if args.shots < 1:
        raise UsageError("--shots must be at least 1")
    label = args.label or ("X" if args.kind == "pcc" else "Z")
    spec = named_observable(label) if args.kind == "pcc" else named_basis(label)
    est = analysis.sample_correlators(rho, args.kind, spec, args.shots, args.seed)
    out = {**source, **est.to_dict()}
    out["per_cut"] = [v for v in est.per_cut]
    return json.dumps(out, indent=2) + "\n"


def cmd_validate(args) -> str:
    if args.state_file and args.family:
        raise UsageError("give either --state-file or --family, not both")
    if args.state_file:
        try:
            with open(args.state_file) as fh:
                arr = _complex_array(json.load(fh))
        except (OSError, ValueError, TypeError) as exc:
            raise ValueError(f"cannot read state file {args.state_file!r}: {exc}") from None
        rho = to_density(pure_state(arr)) if arr.shape == (8,) else arr
    else:
        rho, _ = _state_from_args(args)
    report = validate_density(rho)
    if not report.passed:
        raise NumericFailure("; ".join(report.failures()), report.to_dict())
    return json.dumps({"valid": True, "report": report.to_dict()}, indent=2) + "\n"


# parser

def _add_state_flags(p):
    p.add_argument("--family", choices=sorted(FAMILIES))
    p.add_argument("--param", action="append", metavar="K=V", help="family parameter, repeatable")
    p.add_argument("--state-file", metavar="PATH", help="JSON amplitudes or density matrix")


def _add_output_flags(p, default_format="csv"):
    p.add_argument("--format", choices=("csv", "json"), default=default_format)
    p.add_argument("--output", default="-", metavar="PATH", help="'-' for stdout (default)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tricorr", description="Three-qubit entanglement measures and correlators.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("measures", help="CF, GMC, global measure and triangle edges of one state")
    _add_state_flags(p)
    _add_output_flags(p, "json")
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("correlators", help="tripartite PCC, MI and MP of one state")
    _add_state_flags(p)
    p.add_argument("--observable", action="append", choices=OBSERVABLE_LABELS)
    p.add_argument("--basis", action="append", choices=BASIS_LABELS)
    _add_output_flags(p, "json")
    p.set_defaults(func=cmd_correlators)

    p = sub.add_parser("scan", help="sweep a family parameter")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--grid", metavar="START:STOP:STEP")
    p.add_argument("--quantity", action="append", choices=list(analysis.QUANTITIES))
    _add_output_flags(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("inequivalence", help="x-family pairs ordered differently by GMC and CF")
    p.add_argument("--grid", default="0:0.95:0.05", metavar="START:STOP:STEP")
    p.add_argument("--decimals", type=int, default=None, help="compare values rounded to this many places")
    _add_output_flags(p)
    p.set_defaults(func=cmd_inequivalence)

    p = sub.add_parser("esd", help="damped GHZ-y trajectory and sudden-death data")
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--tmax", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=200)
    _add_output_flags(p)
    p.set_defaults(func=cmd_esd)

    p = sub.add_parser("maccone", help="sum of two tripartite correlators along a family")
    p.add_argument("--family", required=True, choices=["generalized-ghz", "generalized-w", "x-family", "ghz-y"])
    p.add_argument("--grid", metavar="START:STOP:STEP")
    p.add_argument("--obs1", default="P0", choices=OBSERVABLE_LABELS)
    p.add_argument("--obs2", default="Pplus", choices=OBSERVABLE_LABELS)
    _add_output_flags(p)
    p.set_defaults(func=cmd_maccone)

    p = sub.add_parser("mixed", help="GHZ/W mixture: numeric correlators and closed forms")
    p.add_argument("--grid", default="0:1:0.01", metavar="START:STOP:STEP")
    _add_output_flags(p)
    p.set_defaults(func=cmd_mixed)

    p = sub.add_parser("sample", help="finite-shot estimate with bootstrap error")
    _add_state_flags(p)
    p.add_argument("--kind", choices=("pcc", "mi", "mp"), default="pcc")
    p.add_argument("--label", help="observable (pcc) or basis (mi, mp) label")
    p.add_argument("--shots", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    _add_output_flags(p, "json")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("validate", help="check a state file or family member")
    _add_state_flags(p)
    _add_output_flags(p, "json")
    p.set_defaults(func=cmd_validate)
    return parser


def _write(text: str, destination: str) -> None:
    if destination == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(destination))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tricorr-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, destination)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fail(kind: str, message: str, code: int, report=None) -> int:
    err = {"error": kind, "message": message}
    if report is not None:
        err["report"] = report
    sys.stderr.write(json.dumps(err) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text = args.func(args)
        _write(text, args.output)
    except UsageError as exc:
        return _fail("usage", str(exc), EXIT_USAGE)
    except InvalidStateError as exc:
        report = exc.report.to_dict() if exc.report is not None else None
        return _fail("invalid-state", str(exc), EXIT_NUMERIC, report)
    except NumericFailure as exc:
        return _fail("invalid-state", str(exc), EXIT_NUMERIC, exc.report)
    except (ValueError, ArithmeticError) as exc:
        return _fail("numeric", str(exc), EXIT_NUMERIC)
    except OSError as exc:
        return _fail("io", str(exc), EXIT_NUMERIC)
    return 0


if __name__ == "__main__":
    sys.exit(main())
