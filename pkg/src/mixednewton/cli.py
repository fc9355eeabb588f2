"""Command-line driver.

Exit status 0 on success, 1 on bad input, 2 when ν(N) does not stabilize
and 3 when an internal exactness check fails.  With ``--json-out`` every
outcome, errors included, is also written as JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .mixed import (InterpolationError, NewtonNumberReport, Policy, StabilizationError,
                    kouchnirenko_number, milnor_number, mixed_covolumes,
                    newton_number_nonconvenient)
from .nondegen import export_face_systems
from .poly import GermError, ParseError, parse_map, parse_support_json
from .polyhedron import is_convenient, newton_polyhedron
from .volume import NonConvenientError, covolume

MODES = ("milnor", "newton", "kouchnirenko", "covolume", "export-faces")


class InputError(Exception):
    def __init__(self, code: str, message: str, **extra):
        super().__init__(message)
        self.code = code
        self.extra = extra


@dataclass
class RunConfig:
    input_path: str | None = None
    expr: str | None = None
    format: str = "text"
    mode: str = "milnor"
    n0: int | None = None
    max_doublings: int = 8
    verbose: bool = False
    json_out: str | None = None
    variables: tuple | None = None


def _q(x) -> str:
    """Canonical rational string."""
    return str(Fraction(x))


def _subset_key(I) -> str:
    return json.dumps(list(I), separators=(",", ":"))


def report_to_json(rep: NewtonNumberReport, mode: str, verbose: bool = False) -> dict:
    out = {
        "n": rep.n,
        "p": rep.p,
        "mode": mode,
        "nu": _q(rep.nu),
        "convenient": list(rep.convenient),
        "per_subset": {_subset_key(I): _q(v) for I, v in sorted(rep.per_subset.items())},
        "constant_term": rep.constant_term,
        "warnings": list(rep.warnings),
    }
    if rep.mu is not None:
        out["mu"] = rep.mu
    if rep.extension_used is not None:
        out["extension_used"] = rep.extension_used
    if rep.stabilization_trace:
        out["stabilization_trace"] = [[N, _q(v)] for N, v in rep.stabilization_trace]
    if verbose:
        out["mixed_covolumes"] = {
            _subset_key(I): {_subset_key(k): _q(v) for k, v in sorted(t.entries.items())}
            for I, t in sorted(rep.tables.items())}
    return out


def verify_report(data: dict) -> bool:
    """Re-check ``nu = Σ per-subset contributions + constant_term`` on a JSON report."""
    total = sum((Fraction(v) for v in data["per_subset"].values()), Fraction(0))
    return Fraction(data["nu"]) == total + int(data["constant_term"])


def load_germ(cfg: RunConfig):
    if (cfg.input_path is None) == (cfg.expr is None):
        raise InputError("usage", "give exactly one of --input and --expr")
    if cfg.expr is not None:
        text = cfg.expr
    else:
        try:
            with open(cfg.input_path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError("io_error", str(exc)) from exc
    try:
        if cfg.format == "json":
            try:
                data = json.loads(text)
            except json.JSONDecodeError as exc:
                raise InputError("json_error", str(exc), pos=exc.pos) from exc
            return parse_support_json(data)
        # drop comment lines and join the rest into one map
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        text = "; ".join(ln.rstrip(";") for ln in lines if ln)
        return parse_map(text, variables=cfg.variables)
    except ParseError as exc:
        raise InputError("parse_error", str(exc), pos=exc.pos) from exc
    except GermError as exc:
        raise InputError("germ_error", str(exc)) from exc


def _render_text(result: dict) -> str:
    lines = []
    mode = result.get("mode")
    if mode in ("milnor", "newton", "kouchnirenko"):
        lines.append(f"n = {result['n']}, p = {result['p']}")
        lines.append(f"nu = {result['nu']}")
        if "mu" in result:
            lines.append(f"mu = {result['mu']}")
        if result.get("extension_used") is not None:
            lines.append(f"extension N = {result['extension_used']}")
        for N, v in result.get("stabilization_trace", []):
            lines.append(f"  nu({N}) = {v}")
        if "per_subset" in result:
            for I, v in result["per_subset"].items():
                lines.append(f"  I = {I}: {v}")
            lines.append(f"  constant term: {result['constant_term']}")
        for I, table in result.get("mixed_covolumes", {}).items():
            for k, v in table.items():
                lines.append(f"  I = {I}, k = {k}: mixed covolume {v}")
    elif mode == "covolume":
        for k, v in enumerate(result["covolumes"], 1):
            lines.append(f"covol(Gamma_{k}) = {v}")
        for k, v in result.get("mixed_covolumes", {}).items():
            lines.append(f"  k = {k}: {v}")
    elif mode == "export-faces":
        lines.append(f"{len(result['faces'])} compact faces")
        for F in result["faces"]:
            lines.append(f"  q = {F['q']}, dim {F['dim']}, d = {F['d']}")
    for w in result.get("warnings", []):
        lines.append(f"warning: {w}")
    return "\n".join(lines)


def compute(cfg: RunConfig) -> dict:
    """Run one configuration; raises InputError or the engine's exceptions."""
    if cfg.mode not in MODES:
        raise InputError("usage", f"unknown mode {cfg.mode!r}")
    f = load_germ(cfg)
    policy = Policy(cfg.n0, cfg.max_doublings)
    polys = [newton_polyhedron(h.support(), f.n) for h in f.components]
    if cfg.mode == "milnor":
        return report_to_json(milnor_number(f, policy), cfg.mode, cfg.verbose)
    if cfg.mode == "newton":
        rep = newton_number_nonconvenient(polys, f.n, policy)
        return report_to_json(rep, cfg.mode, cfg.verbose)
    if cfg.mode == "kouchnirenko":
        if f.p != 1:
            raise InputError("mode_error", "mode requires p=1")
        if not is_convenient(polys[0]):
            raise InputError("non_convenient", "the Kouchnirenko number needs a convenient germ")
        nu = kouchnirenko_number(polys[0])
        return {"n": f.n, "p": 1, "mode": cfg.mode, "nu": _q(nu), "warnings": []}
    if cfg.mode == "covolume":
        bad = [k + 1 for k, P in enumerate(polys) if not is_convenient(P)]
        if bad:
            raise InputError("non_convenient", f"components {bad} are not convenient")
        out = {"n": f.n, "p": f.p, "mode": cfg.mode,
               "covolumes": [_q(covolume(P)) for P in polys], "warnings": []}
        if f.p > 1:
            table = mixed_covolumes(polys)
            out["mixed_covolumes"] = {_subset_key(k): _q(v)
                                      for k, v in sorted(table.entries.items())}
        return out
    bundle = export_face_systems(f)
    bundle.update(mode=cfg.mode, warnings=[])
    return bundle


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    status = 0
    try:
        result = compute(cfg)
    except InputError as exc:
        status = 1
        result = {"error": {"code": exc.code, "message": str(exc), **exc.extra}}
    except StabilizationError as exc:
        status = 2
        result = {"error": {"code": "no_stabilization", "message": str(exc)},
                  "stabilization_trace": [[N, _q(v)] for N, v in exc.trace]}
    except NonConvenientError as exc:
        status = 1
        result = {"error": {"code": "non_convenient", "message": str(exc)}}
    except (InterpolationError, AssertionError) as exc:
        status = 3
        result = {"error": {"code": "internal_check_failed", "message": str(exc)}}

    text = json.dumps(result, sort_keys=True, indent=2)
    if cfg.json_out == "-":
        print(text, file=stdout)
    else:
        if cfg.json_out:
            with open(cfg.json_out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        if status == 0:
            print(_render_text(result), file=stdout)
    if status:
        err = result["error"]
        print(f"error [{err['code']}]: {err['message']}", file=stderr)
        for N, v in result.get("stabilization_trace", []):
            print(f"  nu({N}) = {v}", file=stderr)
    return status


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mixednewton",
        description="Mixed Newton numbers and Milnor numbers of ICIS germs.")
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="file holding the germ")
    src.add_argument("--expr", metavar="TEXT", help='inline germ, e.g. "x^2; y^3"')
    ap.add_argument("--format", choices=("text", "json"), default="text",
                    help="input format (default: text)")
    ap.add_argument("--mode", choices=MODES, default="milnor")
    ap.add_argument("--n0", type=int, default=None,
                    help="initial extension exponent for non-convenient input")
    ap.add_argument("--max-doublings", type=int, default=8)
    ap.add_argument("--json-out", metavar="PATH", help='write the JSON report ("-" for stdout)')
    ap.add_argument("--vars", metavar="NAMES",
                    help="comma-separated variable names, fixing their order and n")
    ap.add_argument("--verbose", "-v", action="store_true",
                    help="show every subset contribution and mixed covolume")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.n0 is not None and args.n0 < 1:
        build_parser().error("--n0 must be positive")
    if args.max_doublings < 1:
        build_parser().error("--max-doublings must be positive")
    cfg = RunConfig(
        input_path=args.input, expr=args.expr, format=args.format, mode=args.mode,
        n0=args.n0, max_doublings=args.max_doublings, verbose=args.verbose,
        json_out=args.json_out,
        variables=tuple(v.strip() for v in args.vars.split(",")) if args.vars else None)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
