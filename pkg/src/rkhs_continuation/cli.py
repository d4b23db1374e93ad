"""Command-line front end.

Usage::

    rkhs-continuation spectrum --config run.json
    rkhs-continuation bound    --config run.json [--format csv]
    rkhs-continuation curve    --config run.json --eps-min 1e-4 --eps-max 0.5 --eps-count 50
    rkhs-continuation maximizer --config run.json --output field.csv
    rkhs-continuation recover  --config run.json
    rkhs-continuation verify   --config run.json --seed 7

Exit codes: 0 success, 1 verification failure, 2 bad config or input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import continuation, oracle, recovery, spectral
from .errors import ContinuationError, DuplicatePointError
from .kernels import DISK_MARGIN, KernelSpec, ProblemInstance, as_point

CONFIG_VERSION = 1
SUBCOMMANDS = ("spectrum", "bound", "curve", "maximizer", "recover", "verify")
TABULAR_DEFAULT = ("curve", "maximizer")


class ConfigError(ValueError):
    """Invalid run configuration; ``field`` names the offending entry."""

    def __init__(self, field_name: str, message: str):
        self.field = field_name
        super().__init__(f"config field {field_name!r}: {message}")


@dataclass
class GridSpec:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int
    ny: int

    def points(self) -> np.ndarray:
        xs = np.linspace(self.re_min, self.re_max, self.nx)
        ys = np.linspace(self.im_min, self.im_max, self.ny)
        X, Y = np.meshgrid(xs, ys, indexing="xy")
        return (X + 1j * Y).ravel()


@dataclass
class RunConfig:
    kernel: KernelSpec
    points: list
    target: complex
    epsilons: list
    grid: Optional[GridSpec] = None
    tolerances: dict = field(default_factory=dict)

    def instance(self) -> ProblemInstance:
        return ProblemInstance(self.kernel, tuple(self.points), self.target)


def _number(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(name, f"expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(name, "must be finite")
    return value


def _pair(value, name):
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigError(name, f"expected [re, im], got {value!r}")
    return complex(_number(value[0], name), _number(value[1], name))


def log_range(eps_min, eps_max, count):
    if not (eps_min > 0 and eps_max >= eps_min):
        raise ConfigError("epsilons", "log range needs 0 < min <= max")
    if count < 1:
        raise ConfigError("epsilons", "count must be at least 1")
    if count == 1:
        return [float(eps_min)]
    return [float(v) for v in np.logspace(math.log10(eps_min), math.log10(eps_max), int(count))]


def parse_config(data: dict) -> RunConfig:
    """Validate a decoded JSON config and build a RunConfig."""
    if not isinstance(data, dict):
        raise ConfigError("<root>", "expected a JSON object")
    if data.get("version") != CONFIG_VERSION:
        raise ConfigError("version", f"expected {CONFIG_VERSION}, got {data.get('version')!r}")

    kraw = data.get("kernel")
    if isinstance(kraw, str):
        kraw = {"family": kraw}
    if not isinstance(kraw, dict) or "family" not in kraw:
        raise ConfigError("kernel", "expected {\"family\": ..., \"params\": {...}}")
    try:
        kernel = KernelSpec(kraw["family"], kraw.get("params") or {})
    except (ValueError, TypeError) as exc:
        raise ConfigError("kernel", str(exc)) from None

    raw_points = data.get("points")
    if not isinstance(raw_points, list) or not raw_points:
        raise ConfigError("points", "expected a nonempty list of [re, im] pairs")
    points = [_pair(p, f"points[{i}]") for i, p in enumerate(raw_points)]
    if "target" not in data:
        raise ConfigError("target", "missing")
    target = _pair(data["target"], "target")

    eraw = data.get("epsilons")
    if isinstance(eraw, dict):
        try:
            epsilons = log_range(_number(eraw["min"], "epsilons.min"),
                                 _number(eraw["max"], "epsilons.max"),
                                 int(_number(eraw["count"], "epsilons.count")))
        except KeyError as exc:
            raise ConfigError("epsilons", f"log range is missing {exc.args[0]!r}") from None
    elif isinstance(eraw, list) and eraw:
        epsilons = [_number(e, f"epsilons[{i}]") for i, e in enumerate(eraw)]
    else:
        raise ConfigError("epsilons", "expected a nonempty list or {min, max, count}")
    if any(e <= 0 for e in epsilons):
        raise ConfigError("epsilons", "all values must be positive")
    epsilons = sorted(epsilons)

    grid = None
    if data.get("grid") is not None:
        g = data["grid"]
        if not isinstance(g, dict):
            raise ConfigError("grid", "expected an object")
        try:
            grid = GridSpec(*(_number(g[k], f"grid.{k}") for k in ("re_min", "re_max", "im_min", "im_max")),
                            int(_number(g["nx"], "grid.nx")), int(_number(g["ny"], "grid.ny")))
        except KeyError as exc:
            raise ConfigError("grid", f"missing {exc.args[0]!r}") from None
        if grid.nx < 1 or grid.ny < 1:
            raise ConfigError("grid", "nx and ny must be positive")

    tols = {}
    for key, value in (data.get("tolerances") or {}).items():
        if key not in ("tol_zero", "tol_cluster", "root_rtol"):
            raise ConfigError(f"tolerances.{key}", "unknown tolerance")
        v = _number(value, f"tolerances.{key}")
        if v <= 0:
            raise ConfigError(f"tolerances.{key}", "must be positive")
        tols[key] = v

    cfg = RunConfig(kernel, points, target, epsilons, grid, tols)
    try:
        cfg.instance()
    except DuplicatePointError as exc:
        a, b = exc.pair
        name = "target" if "target" in (a, b) else "points"
        raise ConfigError(name, str(exc)) from None
    except ContinuationError as exc:
        raise ConfigError("points", str(exc)) from None
    return cfg


def load_config(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError("--config", f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError("--config", f"invalid JSON: {exc}") from None
    return parse_config(data)


# -- formatting ---------------------------------------------------------------


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return "%.17g" % value
    return str(value)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return _json_safe(obj.tolist())
    return obj


def to_json(obj) -> str:
    return json.dumps(_json_safe(obj), indent=2) + "\n"


# -- subcommands --------------------------------------------------------------


class _Context:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.instance = cfg.instance()
        self.gram = spectral.gram_for(self.instance)
        tols = {k: cfg.tolerances[k] for k in ("tol_zero", "tol_cluster") if k in cfg.tolerances}
        self.sd = spectral.build_spectral_data(self.gram, **tols)
        self.rtol = cfg.tolerances.get("root_rtol", continuation.ROOT_RTOL)

    def bound(self, eps):
        return continuation.compute_bound(self.sd, eps, rtol=self.rtol)


def spectrum_report(ctx: _Context) -> dict:
    sd = ctx.sd
    return {
        "n": ctx.gram.n,
        "m": sd.m,
        "regime": sd.regime.value,
        "lambdas": sd.lambdas,
        "energies": sd.energies,
        "a0": sd.a0,
        "pzz": sd.pzz,
        "beta_norm2": sd.beta_norm2,
        "Phi_infinity": sd.phi_infinity,
        "clusters_merged": sd.merged,
    }


BOUND_FIELDS = ("eps", "eta", "A", "A0", "sigma", "asymptotic", "regime", "upper_bound_only", "saturated")


def bound_rows(ctx: _Context) -> list:
    return [ctx.bound(e).to_dict() for e in ctx.cfg.epsilons]


def maximizer_rows(ctx: _Context) -> list:
    grid = ctx.cfg.grid
    if grid is None:
        raise ConfigError("grid", "the maximizer subcommand needs a grid")
    zs = grid.points()
    if ctx.instance.kernel.on_disk:
        zs = zs[np.abs(zs) < 1.0 - DISK_MARGIN]
    rows = []
    for eps in ctx.cfg.epsilons:
        rep = continuation.build_maximizer(ctx.sd, ctx.gram, eps, rtol=ctx.rtol)
        vals = np.atleast_1d(continuation.evaluate_maximizer(rep, ctx.instance, zs))
        for z, v in zip(zs, vals):
            rows.append({"eps": eps, "re": z.real, "im": z.imag,
                         "abs": abs(v), "arg": math.atan2(v.imag, v.real)})
    return rows


def recover_rows(ctx: _Context) -> list:
    rows = []
    for eps in ctx.cfg.epsilons:
        res = recovery.optimal_coefficients(ctx.sd, ctx.gram, eps, rtol=ctx.rtol)
        A = ctx.bound(eps).A
        d = res.to_dict()
        d["A"] = A
        d["equals_A"] = bool(abs(res.E - A) <= 1e-9 * max(A, 1e-300))
        rows.append(d)
    return rows


def verify_report(ctx: _Context, seed: int) -> dict:
    sd, gram = ctx.sd, ctx.gram
    rng = np.random.default_rng(seed)
    sandwiches = []
    for eps in ctx.cfg.epsilons:
        rep = oracle.sandwich(sd, gram, eps, A=ctx.bound(eps).A)
        sandwiches.append(dict(eps=eps, **rep.to_dict()))
    ok = all(s["pass"] for s in sandwiches)

    order = None
    if sd.regime in (spectral.Regime.GENERIC, spectral.Regime.KERNEL, spectral.Regime.DEGENERATE):
        start = 1e-2
        if sd.regime is spectral.Regime.GENERIC:
            start = min(start, 0.5 * math.sqrt(sd.phi_infinity))
        order = oracle.asymptotic_order_check(sd, oracle.halving_sequence(start)).to_dict()
        ok = ok and order["pass"]

    perturb = []
    if sd.regime is spectral.Regime.GENERIC:
        for eps in ctx.cfg.epsilons:
            res = recovery.optimal_coefficients(sd, gram, eps, rtol=ctx.rtol)
            worst = math.inf
            for _ in range(20):
                d = rng.standard_normal(gram.n) + 1j * rng.standard_normal(gram.n)
                d *= 1e-3 / np.linalg.norm(d)
                worst = min(worst, recovery.worst_case_error(gram, res.c + d, eps) - res.E)
            passed = worst >= -1e-12
            perturb.append({"eps": eps, "E": res.E, "min_increase": worst, "pass": passed})
            ok = ok and passed
    return {"sandwich": sandwiches, "order": order, "recovery_perturbation": perturb,
            "seed": seed, "pass": bool(ok)}


def _rows_csv(rows, fields):
    return to_csv(fields, [[r[f] for f in fields] for r in rows])


def _recover_csv(rows):
    n = len(rows[0]["c"]) if rows else 0
    header = ["eps", "E", "A", "equals_A", "regime"]
    for j in range(n):
        header += [f"c{j}_re", f"c{j}_im"]
    out = []
    for r in rows:
        line = [r["eps"], r["E"], r["A"], r["equals_A"], r["regime"]]
        for re_, im_ in r["c"]:
            line += [re_, im_]
        out.append(line)
    return to_csv(header, out)


def render(command: str, ctx: _Context, fmt: str, seed: int):
    """Return ``(text, exit_code)`` for a subcommand."""
    if command == "spectrum":
        report = spectrum_report(ctx)
        if fmt == "csv":
            rows = [[j + 1, lam, a] for j, (lam, a) in enumerate(zip(report["lambdas"], report["energies"]))]
            return to_csv(["j", "lambda", "energy"], rows), 0
        return to_json(report), 0
    if command in ("bound", "curve"):
        rows = bound_rows(ctx)
        if fmt == "csv":
            return _rows_csv(rows, BOUND_FIELDS), 0
        return to_json({"rows": rows}), 0
    if command == "maximizer":
        rows = maximizer_rows(ctx)
        if fmt == "csv":
            return _rows_csv(rows, ("eps", "re", "im", "abs", "arg")), 0
        return to_json({"rows": rows}), 0
    if command == "recover":
        rows = recover_rows(ctx)
        if fmt == "csv":
            return _recover_csv(rows), 0
        return to_json({"rows": rows}), 0
    if command == "verify":
        if fmt == "csv":
            raise ConfigError("--format", "verify only produces JSON")
        report = verify_report(ctx, seed)
        return to_json(report), 0 if report["pass"] else 1
    raise ConfigError("command", f"unknown subcommand {command!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rkhs-continuation",
        description="Optimal analytic continuation error from point samples in an RKHS.",
    )
    parser.add_argument("command", choices=SUBCOMMANDS)
    parser.add_argument("--config", required=True, help="JSON run configuration")
    parser.add_argument("--output", default=None, help="output file (default: stdout)")
    parser.add_argument("--format", choices=("json", "csv"), default=None)
    parser.add_argument("--eps-min", type=float, default=None)
    parser.add_argument("--eps-max", type=float, default=None)
    parser.add_argument("--eps-count", type=int, default=None)
    parser.add_argument("--seed", type=int, default=0, help="seed for perturbation checks in verify")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    fmt = args.format or ("csv" if args.command in TABULAR_DEFAULT else "json")
    try:
        cfg = load_config(args.config)
        overrides = (args.eps_min, args.eps_max, args.eps_count)
        if any(v is not None for v in overrides):
            if any(v is None for v in overrides):
                raise ConfigError("--eps-min/--eps-max/--eps-count", "give all three together")
            cfg.epsilons = log_range(*overrides)
        ctx = _Context(cfg)
        text, code = render(args.command, ctx, fmt, args.seed)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ContinuationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
