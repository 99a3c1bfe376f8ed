"""Command-line interface: ``sqztomo <command> [options]``.

Commands
--------
tomogram   squeeze tomogram grid of a state by a chosen route
transform  kernel routes compared against the Fock-space oracle
dynamics   damped-oscillator density grid, moments and uncertainty audit
figure     default data grids for the two reference figures
verify     cross-validation matrix, written as VERIFICATION.md plus JSON
dump       operator matrices in the JSON matrix format

Settings resolve as command-line flags, then the ``--config`` JSON document,
then built-in defaults.  Every output embeds the resolved settings.

Exit codes: 0 success; 1 kernel discrepancy recorded by ``verify``; 2 invalid
configuration; 3 truncation leakage or a failed mandatory check.
Diagnostics go to standard error as ``sqztomo: level=... key=value`` lines.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, io
from .config import LEAKAGE_HARD, boundary_margin, default_cutoff
from .diagnostics import CutoffError, SingularParameterError
from .dynamics import (density_grid, density_variance, kanai_coefficients,
                       uncertainty_audit)
from .fock_core import (annihilation_matrix, displacement_matrix, matrix_to_json,
                        number_matrix, quadrature_matrices, rotation_matrix,
                        squeeze_matrix, stoler_squeeze)
from .states import StateSpec, make_density
from .tomography import kernels
from .tomography.frames import TomographyFrame
from .tomography.inverse import QuadratureSpec, characteristic_grid
from .tomography.phase_space import gaussian_sampler
from .tomography.squeeze import closed_form_tomogram, squeeze_tomogram_oracle
from .tomography.verification import run_verification

ROUTES = ("oracle", "closed_form", "kernel_22", "kernel_24", "kernel_eqnew04")
KERNEL_ROUTES = ROUTES[2:]
FORMATS = ("json", "csv")
FIGURES = ("fig1", "fig2")
OPERATORS = ("annihilation", "number", "q", "p", "squeeze", "rotation",
             "displacement", "stoler", "density")
VARIANTS = {"kernel_22": kernels.COEFFICIENTS, "kernel_24": kernels.COEFFICIENTS,
            "kernel_eqnew04": kernels.READINGS}

DEFAULTS = {
    "cutoff": None,            # resolved through default_cutoff()
    "n_max": 40,
    "lambda": "0",
    "theta": "0",
    "route": "oracle",
    "format": "json",
    "out": None,
    "quick": False,
    "quadrature": {"x_window": QuadratureSpec().x_window, "x_nodes": QuadratureSpec().x_nodes,
                   "munu_window": QuadratureSpec().munu_window,
                   "munu_nodes": QuadratureSpec().munu_nodes},
}

FIGURE_DEFAULTS = {
    "fig1": {"gamma": 0.1, "alpha": "0.5+0j", "q_min": -3.0, "q_max": 3.0, "q_points": 241,
             "t_max": 30.0, "t_points": 301},
    "fig2": {"state": "coherent:3+0j", "theta": "0", "lambda": "-1.5:1.5:0.05", "n_max": 40,
             "route": "closed_form"},
}


class ConfigError(ValueError):
    """Invalid command-line or config-file settings (exit code 2)."""


class LeakageError(RuntimeError):
    """Probability leaked past the cutoff beyond the hard limit (exit code 3)."""


# ---------------------------------------------------------------- diagnostics

def _quote(value) -> str:
    text = str(value)
    if not text or any(c in text for c in ' "=\n'):
        return json.dumps(text)
    return text


def diagnostic(level: str, **fields) -> None:
    parts = [f"level={level}"] + [f"{k}={_quote(v)}" for k, v in fields.items()]
    print("sqztomo: " + " ".join(parts), file=sys.stderr)


def _show_warning(message, category, filename, lineno, file=None, line=None):
    diagnostic("warning", category=category.__name__, message=str(message))


# ---------------------------------------------------------------- parsing helpers

def parse_grid(text) -> tuple:
    """``a:b:step`` (inclusive), a comma list, a single number, or a JSON list."""
    if isinstance(text, (int, float)):
        return (float(text),)
    if isinstance(text, (list, tuple)):
        return tuple(float(v) for v in text)
    text = str(text).strip()
    try:
        if ":" in text:
            a, b, step = (float(v) for v in text.split(":"))
            if step <= 0 or b < a:
                raise ConfigError(f"grid {text!r} needs step > 0 and a <= b")
            count = int(math.floor((b - a) / step + 1e-9)) + 1
            return tuple(round(a + i * step, 12) + 0.0 for i in range(count))
        return tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"cannot parse grid {text!r}") from None


def _parse_state(text) -> StateSpec:
    try:
        if isinstance(text, dict):
            return StateSpec.from_json(text)
        return StateSpec.parse(str(text))
    except (ValueError, KeyError) as exc:
        raise ConfigError(str(exc)) from None


def _parse_complex(text) -> complex:
    if isinstance(text, (list, tuple)) and len(text) == 2:
        return complex(float(text[0]), float(text[1]))
    try:
        return complex(str(text).replace(" ", ""))
    except ValueError:
        raise ConfigError(f"cannot parse complex number {text!r}") from None


def _load_config(path) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return data


def resolve(args: argparse.Namespace, keys, extra_defaults=None) -> dict:
    """Merge defaults < config file < flags for ``keys``."""
    merged = {k: DEFAULTS.get(k) for k in keys}
    merged.update({k: v for k, v in (extra_defaults or {}).items() if k in keys})
    file_cfg = _load_config(getattr(args, "config", None))
    unknown = set(file_cfg) - set(keys)
    if unknown:
        raise ConfigError(f"unknown config keys for this command: {sorted(unknown)}")
    merged.update(file_cfg)
    for k in keys:
        value = getattr(args, k, None)
        if value is not None and value is not False:
            merged[k] = value
    if "cutoff" in merged and merged["cutoff"] is None:
        try:
            merged["cutoff"] = default_cutoff()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    return merged


# ---------------------------------------------------------------- run configuration

@dataclass
class RunConfig:
    cutoff: int
    n_max: int
    lambdas: tuple
    thetas: tuple
    route: str = "oracle"
    fmt: str = "json"
    out: str | None = None
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    variant: str = "printed"

    @classmethod
    def from_settings(cls, s: dict) -> "RunConfig":
        try:
            quad = QuadratureSpec(**{**DEFAULTS["quadrature"], **(s.get("quadrature") or {})})
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid quadrature budget: {exc}") from None
        try:
            cutoff, n_max = int(s["cutoff"]), int(s["n_max"])
        except (TypeError, ValueError):
            raise ConfigError("cutoff and n_max must be integers") from None
        cfg = cls(cutoff, n_max, parse_grid(s["lambda"]), parse_grid(s["theta"]),
                  str(s["route"]), str(s["format"]), s.get("out"), quad,
                  str(s.get("variant") or "printed"))
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.cutoff < 2:
            raise ConfigError(f"cutoff must be >= 2, got {self.cutoff}")
        if self.n_max < 0:
            raise ConfigError(f"n_max must be >= 0, got {self.n_max}")
        margin = boundary_margin(self.cutoff)
        if self.cutoff <= self.n_max + margin:
            raise ConfigError(f"cutoff {self.cutoff} must exceed n_max + margin = "
                              f"{self.n_max + margin}")
        if self.route not in ROUTES:
            raise ConfigError(f"route must be one of {ROUTES}, got {self.route!r}")
        if self.fmt not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.fmt!r}")
        if self.route in VARIANTS and self.variant not in VARIANTS[self.route]:
            raise ConfigError(f"variant for {self.route} must be one of {VARIANTS[self.route]}")
        if not self.lambdas or not self.thetas:
            raise ConfigError("frame grid is empty")

    def to_json(self) -> dict:
        q = self.quadrature
        return {"cutoff": self.cutoff, "n_max": self.n_max, "lambda": list(self.lambdas),
                "theta": list(self.thetas), "route": self.route, "variant": self.variant,
                "format": self.fmt,
                "quadrature": {"x_window": q.x_window, "x_nodes": q.x_nodes,
                               "munu_window": q.munu_window, "munu_nodes": q.munu_nodes}}


def emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        io.write_atomic(out, text)


def _sidecar(out, suffix: str) -> Path:
    out = Path(out)
    return out.with_name(out.name + suffix)


# ---------------------------------------------------------------- tomogram

def _kernel_values(route: str, spec: StateSpec, frames, cfg: RunConfig) -> np.ndarray:
    """Complex kernel-route values ``[frame, n]``."""
    if route == "kernel_eqnew04":
        try:
            sampler = gaussian_sampler(spec)
        except ValueError:
            raise ConfigError("route kernel_eqnew04 supports the Gaussian states "
                              "(vacuum, coherent, thermal) only") from None
        chi = characteristic_grid(sampler, cfg.quadrature)
        return np.array([kernels.transform_symplectic_kernel(sampler, fr, cfg.n_max,
                                                             reading=cfg.variant, chi=chi)
                         for fr in frames])
    rho = make_density(spec, cfg.cutoff)
    fn = (kernels.transform_density_kernel if route == "kernel_22"
          else kernels.transform_wigner_kernel)
    return np.array([fn(rho, fr, cfg.n_max, coefficient=cfg.variant) for fr in frames])


def _oracle(spec: StateSpec, frames, cfg: RunConfig):
    tomo = squeeze_tomogram_oracle(make_density(spec, cfg.cutoff), frames, cfg.n_max)
    # mass lost from the working space, or piled up in its top levels, means
    # the padded squeeze columns are no longer trustworthy
    leak = float(max((1.0 - tomo.total).max(), tomo.boundary_mass.max()))
    if leak > LEAKAGE_HARD:
        raise LeakageError(f"oracle lost probability {leak:.3e} past the cutoff "
                           f"(limit {LEAKAGE_HARD:.0e}); raise --cutoff")
    return tomo


def compute_grid(spec: StateSpec, theta: float, cfg: RunConfig) -> dict:
    frames = [TomographyFrame(lam, theta) for lam in cfg.lambdas]
    extra = {}
    if cfg.route == "oracle":
        tomo = _oracle(spec, frames, cfg)
        values, tail = tomo.values, tomo.tail_mass
        extra["min_before_clip"] = tomo.min_before_clip
    elif cfg.route == "closed_form":
        tomo = closed_form_tomogram(spec, frames, cfg.n_max)
        values, tail = tomo.values, tomo.tail_mass
        extra["min_before_clip"] = tomo.min_before_clip
    else:
        raw = _kernel_values(cfg.route, spec, frames, cfg)
        values = raw.real
        tail = np.maximum(0.0, 1.0 - values.sum(axis=1))
        extra["variant"] = cfg.variant
        extra["max_abs_imag"] = float(np.abs(raw.imag).max())
    return {"state": spec.to_json(), "theta": float(theta), "lambda_grid": list(cfg.lambdas),
            "n_max": cfg.n_max, "values": values, "tail_mass": tail, "route": cfg.route,
            **extra}


def _grid_csv(grids: list, comments) -> str:
    header = ["theta", "lambda", "n", "value", "tail_mass"]
    rows = []
    for g in grids:
        for i, lam in enumerate(g["lambda_grid"]):
            for n in range(g["n_max"] + 1):
                rows.append((float(g["theta"]), float(lam), n, float(g["values"][i][n]),
                             float(g["tail_mass"][i])))
    return io.csv_text(header, rows, comments)


def _comments(config: dict) -> list:
    return ["config " + json.dumps(json.loads(io.dumps(config)), separators=(",", ":"))]


def write_grids(grids: list, config: dict, fmt: str, out) -> None:
    if fmt == "csv":
        emit(_grid_csv(grids, _comments(config)), out)
        return
    if len(grids) == 1:
        doc = {"config": config, **grids[0]}
    else:
        doc = {"config": config, "grids": grids}
    emit(io.dumps(doc), out)


def cmd_tomogram(args) -> int:
    s = resolve(args, ["cutoff", "n_max", "lambda", "theta", "route", "format", "out",
                       "quadrature", "state", "variant"])
    cfg = RunConfig.from_settings(s)
    if s.get("state") is None:
        raise ConfigError("--state is required")
    spec = _parse_state(s["state"])
    grids = [compute_grid(spec, th, cfg) for th in cfg.thetas]
    config = {**cfg.to_json(), "state": spec.to_json()}
    write_grids(grids, config, cfg.fmt, cfg.out)
    return 0


# ---------------------------------------------------------------- transform

def cmd_transform(args) -> int:
    s = resolve(args, ["cutoff", "n_max", "lambda", "theta", "route", "format", "out",
                       "quadrature", "state", "variant"], {"route": "kernel_22", "n_max": 10})
    cfg = RunConfig.from_settings(s)
    if cfg.route not in KERNEL_ROUTES:
        raise ConfigError(f"transform needs a kernel route {KERNEL_ROUTES}")
    if s.get("state") is None:
        raise ConfigError("--state is required")
    spec = _parse_state(s["state"])
    rows = []
    for th in cfg.thetas:
        frames = [TomographyFrame(lam, th) for lam in cfg.lambdas]
        raw = _kernel_values(cfg.route, spec, frames, cfg)
        ref = _oracle(spec, frames, cfg).values
        for fr, r, o in zip(frames, raw, ref):
            rows.append({"lambda": fr.lam, "theta": fr.theta, "mu": fr.mu, "nu": fr.nu,
                         "kernel_real": r.real, "kernel_imag": r.imag, "oracle": o,
                         "max_abs_error": float(np.abs(r - o).max())})
    config = {**cfg.to_json(), "state": spec.to_json()}
    if cfg.fmt == "csv":
        table = [(row["lambda"], row["theta"], n, float(row["kernel_real"][n]),
                  float(row["kernel_imag"][n]), float(row["oracle"][n]))
                 for row in rows for n in range(cfg.n_max + 1)]
        emit(io.csv_text(["lambda", "theta", "n", "kernel_real", "kernel_imag", "oracle"],
                         table, _comments(config)), cfg.out)
    else:
        emit(io.dumps({"config": config, "route": cfg.route, "variant": cfg.variant,
                       "frames": rows}), cfg.out)
    worst = max(r["max_abs_error"] for r in rows)
    diagnostic("info", route=cfg.route, variant=cfg.variant, max_abs_error=f"{worst:.3e}")
    return 0


# ---------------------------------------------------------------- dynamics

def _dynamics_settings(args, defaults) -> dict:
    s = resolve(args, ["gamma", "alpha", "q_min", "q_max", "q_points", "t_max", "t_points",
                       "format", "out"], defaults)
    try:
        gamma = float(s["gamma"])
        q_points, t_points = int(s["q_points"]), int(s["t_points"])
        q_min, q_max, t_max = float(s["q_min"]), float(s["q_max"]), float(s["t_max"])
    except (TypeError, ValueError):
        raise ConfigError("dynamics grid settings must be numeric") from None
    if not 0.0 <= gamma < 1.0:
        raise ConfigError(f"gamma must satisfy 0 <= gamma < 1, got {gamma}")
    if q_points < 2 or t_points < 2 or q_max <= q_min or t_max <= 0:
        raise ConfigError("dynamics grids need at least two points and positive extent")
    if s["format"] not in FORMATS:
        raise ConfigError(f"format must be one of {FORMATS}")
    return {"gamma": gamma, "alpha": _parse_complex(s["alpha"]), "q_min": q_min,
            "q_max": q_max, "q_points": q_points, "t_max": t_max, "t_points": t_points,
            "format": s["format"], "out": s["out"]}


def _dynamics_doc(s: dict, with_quadrature: bool) -> tuple[dict, dict]:
    q = np.linspace(s["q_min"], s["q_max"], s["q_points"])
    t = np.linspace(0.0, s["t_max"], s["t_points"])
    grid = density_grid(s["gamma"], s["alpha"], q, t)
    audit = uncertainty_audit(s["gamma"], t).to_json()
    config = {k: v for k, v in s.items() if k != "out"}
    doc = {"config": config, "gamma": grid.gamma, "alpha": grid.alpha, "q_grid": grid.q,
           "t_grid": grid.t, "density": grid.density, "moments": grid.moments.to_json()}
    if with_quadrature:
        lam_p = kanai_coefficients(s["gamma"], t).lambda_p
        doc["variance_quadrature"] = [density_variance(s["gamma"], s["alpha"], float(tt))
                                      for tt in t]
        doc["variance_closed_form"] = np.abs(lam_p) ** 2
    doc["audit"] = audit
    return doc, audit


def _density_csv(doc: dict) -> str:
    rows = []
    for i, t in enumerate(doc["t_grid"]):
        for j, q in enumerate(doc["q_grid"]):
            rows.append((float(t), float(q), float(doc["density"][i][j])))
    return io.csv_text(["t", "q", "density"], rows, _comments(doc["config"]))


def _write_dynamics(doc: dict, audit: dict, s: dict) -> None:
    text = _density_csv(doc) if s["format"] == "csv" else io.dumps(doc)
    emit(text, s["out"])
    if s["out"] is not None:
        io.write_json(_sidecar(s["out"], ".audit.json"), {"config": doc["config"], **audit})
    diagnostic("info", invariant_value=f"{audit['invariant_value']:.17e}",
               constancy_drift=f"{audit['constancy_drift']:.3e}",
               reconciling_scale=f"{audit['reconciling_scale']:.17e}")


def cmd_dynamics(args) -> int:
    s = _dynamics_settings(args, {**FIGURE_DEFAULTS["fig1"], "format": "json"})
    doc, audit = _dynamics_doc(s, with_quadrature=False)
    _write_dynamics(doc, audit, s)
    return 0


# ---------------------------------------------------------------- figure

def cmd_figure(args) -> int:
    fig = args.figure_id
    if fig not in FIGURES:
        raise ConfigError(f"unknown figure id {fig!r}; expected one of {FIGURES}")
    if fig == "fig1":
        s = _dynamics_settings(args, {**FIGURE_DEFAULTS["fig1"], "format": "json"})
        if s["out"] is None:
            s["out"] = f"fig1.{s['format']}"
        doc, audit = _dynamics_doc(s, with_quadrature=True)
        _write_dynamics(doc, audit, s)
        meta = {"figure": "fig1", "kind": "density grid (q, t)", "layout": "density[t][q]",
                "parameters": doc["config"], "audit": audit}
        out = s["out"]
    else:
        s = resolve(args, ["cutoff", "n_max", "lambda", "theta", "route", "format", "out",
                           "quadrature", "state", "variant"], FIGURE_DEFAULTS["fig2"])
        cfg = RunConfig.from_settings(s)
        if cfg.out is None:
            cfg.out = f"fig2.{cfg.fmt}"
        spec = _parse_state(s["state"])
        grids = [compute_grid(spec, th, cfg) for th in cfg.thetas]
        config = {**cfg.to_json(), "state": spec.to_json()}
        write_grids(grids, config, cfg.fmt, cfg.out)
        meta = {"figure": "fig2", "kind": "squeeze tomogram grid (n, lambda)",
                "layout": "values[lambda][n]", "parameters": config}
        out = cfg.out
    io.write_json(_sidecar(out, ".meta.json"), meta)
    diagnostic("info", figure=fig, out=out)
    return 0


# ---------------------------------------------------------------- verify

def cmd_verify(args) -> int:
    s = resolve(args, ["cutoff", "quick", "out", "quadrature"])
    if (args.cutoff is None and "cutoff" not in _load_config(args.config)
            and os.environ.get("SQZTOMO_DEFAULT_CUTOFF") is None):
        s["cutoff"] = None       # quick and full modes have their own cutoffs
    try:
        quad = QuadratureSpec(**{**DEFAULTS["quadrature"], **(s.get("quadrature") or {})})
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid quadrature budget: {exc}") from None
    quick = bool(s["quick"])
    report = run_verification(quick=quick, cutoff=s["cutoff"],
                              quadrature=None if quad == QuadratureSpec() else quad)
    out_dir = Path(s["out"] or ".")
    io.write_atomic(out_dir / "VERIFICATION.md", report.to_markdown())
    io.write_json(out_dir / "verification.json", report.to_json())
    for row in report.discrepancies:
        diagnostic("discrepancy", category=row.category, route=row.route, state=row.state,
                   max_error=f"{row.max_error:.3e}", tolerance=f"{row.tolerance:.0e}")
    for row in report.mandatory_failures:
        diagnostic("error", category=row.category, route=row.route, state=row.state,
                   max_error=f"{row.max_error:.3e}", tolerance=f"{row.tolerance:.0e}")
    diagnostic("info", rows=len(report.rows), discrepancies=len(report.discrepancies),
               mandatory_failures=len(report.mandatory_failures),
               seconds=f"{report.seconds:.1f}", exit=report.exit_code)
    return report.exit_code


# ---------------------------------------------------------------- dump

def operator_matrix(name: str, N: int, *, lam=0.0, theta=0.0, eta=0.0, xi=0.0, z=0j,
                    state=None) -> np.ndarray:
    if name == "annihilation":
        return annihilation_matrix(N)
    if name == "number":
        return number_matrix(N)
    if name in ("q", "p"):
        return quadrature_matrices(N)[0 if name == "q" else 1]
    if name == "squeeze":
        return squeeze_matrix(lam, N)
    if name == "rotation":
        return rotation_matrix(theta, N)
    if name == "displacement":
        return displacement_matrix(eta, xi, N)
    if name == "stoler":
        return stoler_squeeze(z, N)
    if name == "density":
        if state is None:
            raise ConfigError("operator 'density' needs --state")
        return make_density(state, N).matrix
    raise ConfigError(f"unknown operator {name!r}; expected one of {OPERATORS}")


def cmd_dump(args) -> int:
    s = resolve(args, ["cutoff", "out", "state", "lambda", "theta", "eta", "xi", "z"],
                {"cutoff": None, "lambda": "0", "theta": "0", "eta": 0.0, "xi": 0.0, "z": "0"})
    lam, theta = parse_grid(s["lambda"]), parse_grid(s["theta"])
    if len(lam) != 1 or len(theta) != 1:
        raise ConfigError("dump takes a single lambda and theta")
    state = _parse_state(s["state"]) if s.get("state") is not None else None
    params = {"lam": lam[0], "theta": theta[0], "eta": float(s["eta"]), "xi": float(s["xi"]),
              "z": _parse_complex(s["z"]), "state": state}
    try:
        N = int(s["cutoff"])
    except (TypeError, ValueError):
        raise ConfigError("cutoff must be an integer") from None
    try:
        A = operator_matrix(args.operator, N, **params)
    except ValueError as exc:
        if isinstance(exc, (ConfigError, CutoffError)):
            raise
        raise ConfigError(str(exc)) from None
    config = {"operator": args.operator, "cutoff": N, "lambda": lam[0], "theta": theta[0],
              "eta": params["eta"], "xi": params["xi"], "z": params["z"],
              "state": None if state is None else state.to_json()}
    emit(io.dumps({"config": config, "operator": args.operator, "matrix": matrix_to_json(A)}),
         s["out"])
    return 0


# ---------------------------------------------------------------- argument parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        diagnostic("error", kind="usage", message=message, exit=2)
        raise SystemExit(2)


def _common(p, *, grid=True, quick=False):
    p.add_argument("--config", metavar="FILE", help="JSON document with settings")
    p.add_argument("--format", choices=FORMATS, default=None)
    p.add_argument("--out", metavar="PATH", default=None)
    if grid:
        p.add_argument("--state", default=None,
                       help="vacuum | fock:M | coherent:A | cat:A:+ | thermal:T")
        p.add_argument("--lambda", dest="lambda", default=None, metavar="A:B:STEP",
                       help="squeeze parameters: a:b:step, comma list or single value")
        p.add_argument("--theta", default=None, help="rotation angle(s): value or comma list")
        p.add_argument("--route", default=None, choices=ROUTES)
        p.add_argument("--variant", default=None,
                       help="kernel coefficient (printed|derived) or reading (printed|swapped)")
        p.add_argument("--cutoff", type=int, default=None, metavar="N")
        p.add_argument("--n-max", dest="n_max", type=int, default=None, metavar="M")
    if quick:
        p.add_argument("--quick", action="store_true", default=None)


def _dynamics_flags(p):
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--alpha", default=None, help="complex amplitude, e.g. 0.5+0j")
    p.add_argument("--q-min", dest="q_min", type=float, default=None)
    p.add_argument("--q-max", dest="q_max", type=float, default=None)
    p.add_argument("--q-points", dest="q_points", type=int, default=None)
    p.add_argument("--t-max", dest="t_max", type=float, default=None)
    p.add_argument("--t-points", dest="t_points", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sqztomo", description=__doc__.split("\n")[0],
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"sqztomo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("tomogram", help="squeeze tomogram grid")
    _common(p)
    p.set_defaults(func=cmd_tomogram)

    p = sub.add_parser("transform", help="kernel route against the oracle")
    _common(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("dynamics", help="damped-oscillator density grid and audit")
    _common(p, grid=False)
    _dynamics_flags(p)
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("figure", help="reference figure data grids")
    p.add_argument("figure_id", metavar="ID", help="fig1 | fig2")
    _common(p)
    _dynamics_flags(p)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="cross-validation matrix")
    p.add_argument("--config", metavar="FILE")
    p.add_argument("--out", metavar="DIR", default=None,
                   help="directory for VERIFICATION.md and verification.json")
    p.add_argument("--cutoff", type=int, default=None, metavar="N")
    p.add_argument("--quick", action="store_true", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dump", help="operator matrix as JSON")
    p.add_argument("operator", choices=OPERATORS)
    p.add_argument("--config", metavar="FILE")
    p.add_argument("--out", metavar="PATH", default=None)
    p.add_argument("--cutoff", type=int, default=None, metavar="N")
    p.add_argument("--state", default=None)
    p.add_argument("--lambda", dest="lambda", default=None)
    p.add_argument("--theta", default=None)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--xi", type=float, default=None)
    p.add_argument("--z", default=None, help="complex Stoler parameter")
    p.set_defaults(func=cmd_dump)
    return parser


_VALUE_FLAGS = ("--lambda", "--theta", "--alpha", "--z", "--q-min", "--q-max", "--eta", "--xi",
                "--gamma")


def _join_negative_values(argv: list) -> list:
    """Attach values such as ``-1:1:0.05`` to their flag so they are not read as options."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    previous = warnings.showwarning
    warnings.showwarning = _show_warning
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            warnings.showwarning = _show_warning
            return args.func(args)
    except ConfigError as exc:
        diagnostic("error", kind="config", message=str(exc), exit=2)
        return 2
    except SingularParameterError as exc:
        diagnostic("error", kind="singular", message=str(exc), exit=2)
        return 2
    except (CutoffError, LeakageError) as exc:
        diagnostic("error", kind="truncation", message=str(exc), exit=3)
        return 3
    except ValueError as exc:
        diagnostic("error", kind="config", message=str(exc), exit=2)
        return 2
    finally:
        warnings.showwarning = previous


if __name__ == "__main__":
    sys.exit(main())
