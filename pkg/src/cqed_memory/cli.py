"""Command-line front end.

Subcommands: swap, memory, entangle, sweep, reproduce-paper. Physical values
are in units of κ. Settings come from built-in defaults, then an optional
``--config`` file of ``key = value`` lines, then command-line flags.

Exit codes: 0 success, 1 reproduction failure, 2 usage/config error,
3 numeric error.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import oracle, protocols
from .errors import (
    DegenerateOperatingPointError,
    InvalidParameterError,
    NumericDomainError,
    QuadratureError,
    ResolutionError,
)
from .protocols import DetectorModel, PhotonQubit, TwoQubitAmplitudes
from .scattering import SystemParams, t_matrix
from .spectral import SpectralProfile, gaussian_profile, lorentzian_profile

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
OUTPUT_DIR_ENV = "CQED_MEMORY_OUTPUT_DIR"
DEFAULT_TOLERANCE = 0.003

NUMERIC_ERRORS = (NumericDomainError, QuadratureError, DegenerateOperatingPointError, ResolutionError, ArithmeticError)


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    lambda_l: float = 5.0
    lambda_r: float = 5.0
    gamma: float = 0.5
    theta_diff: float = math.pi
    detuning: float = 0.0
    profile: str = "gaussian"
    kp: float = 0.1
    eta: float = 1.0
    ideal_stub: bool = False
    c_l: complex = 1 / math.sqrt(2)
    c_r: complex = 1 / math.sqrt(2)
    c_lr: complex = 1 / math.sqrt(2)
    c_rl: complex = 1 / math.sqrt(2)
    alpha: complex | None = None
    oracle: bool = False
    grid: int | None = None  # oracle nodes; 201 per photon, 64 per photon pair
    grid_kind: str = "gauss"
    tolerance: float = DEFAULT_TOLERANCE
    output: str = "csv"
    out: str | None = None
    curve: str | None = None
    protocol: str = "swap"
    param: str | None = None
    start: float | None = None
    stop: float | None = None
    num: int = 11
    log: bool = False
    jobs: int = 1

    def system(self) -> SystemParams:
        return SystemParams(
            lambda_l=self.lambda_l,
            lambda_r=self.lambda_r,
            theta_l=0.0,
            theta_r=-self.theta_diff,
            omega_e=self.detuning,
            gamma=self.gamma,
            bright_stub=-1.0 + 0j if self.ideal_stub else None,
        )

    def spectrum(self) -> SpectralProfile:
        if self.profile == "gaussian":
            return gaussian_profile(0.0, self.kp)
        if self.profile == "lorentzian":
            return lorentzian_profile(0.0, self.kp)
        raise ConfigError(f"unknown profile {self.profile!r}")

    def grid_nodes(self, two_photon: bool = False) -> int:
        if self.grid is not None:
            return self.grid
        return 64 if two_photon else 201

    def validate(self) -> None:
        """Build every derived object once so bad settings fail before any work."""
        self.system()
        self.spectrum()
        self.detector()
        if self.grid_kind not in ("gauss", "uniform"):
            raise ConfigError(f"unknown grid kind {self.grid_kind!r}")
        if self.output not in ("csv", "jsonl"):
            raise ConfigError(f"unknown output format {self.output!r}")
        if self.protocol not in DRIVERS:
            raise ConfigError(f"unknown protocol {self.protocol!r}")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")

    def detector(self) -> DetectorModel:
        return DetectorModel(self.eta)

    def row_params(self) -> dict:
        """The full parameter tuple carried by every output row."""
        return {
            "lambda_l": self.lambda_l,
            "lambda_r": self.lambda_r,
            "gamma": self.gamma,
            "theta_diff": self.theta_diff,
            "detuning": self.detuning,
            "profile": self.profile,
            "kp": self.kp,
            "eta": self.eta,
            "ideal_stub": self.ideal_stub,
        }


SWEEPABLE = {"lambda", "lambda_l", "lambda_r", "gamma", "theta_diff", "detuning", "kp", "eta"}
_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(RunConfig)}


def _coerce(key: str, raw: str):
    kind = _FIELD_TYPES[key].replace(" | None", "")
    raw = raw.strip()
    if kind == "bool":
        if raw.lower() in ("1", "true", "yes", "on"):
            return True
        if raw.lower() in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key}: expected a boolean, got {raw!r}")
    try:
        if kind == "float":
            return float(raw)
        if kind == "int":
            return int(raw)
        if kind == "complex":
            return complex(raw.replace(" ", ""))
    except ValueError as exc:
        raise ConfigError(f"{key}: cannot parse {raw!r}") from exc
    return raw


def read_config(text: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "lambda":
            values["lambda_l"] = values["lambda_r"] = _coerce("lambda_l", raw)
            continue
        if key not in _FIELD_TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[key] = _coerce(key, raw)
    return values


def _complex_arg(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def _add_common(p: argparse.ArgumentParser) -> None:
    S = argparse.SUPPRESS
    p.add_argument("--config", default=None, help="key = value settings file")
    p.add_argument("--lambda", dest="lam", type=float, default=S, help="set λ_L = λ_R")
    p.add_argument("--lambda-l", type=float, default=S)
    p.add_argument("--lambda-r", type=float, default=S)
    p.add_argument("--gamma", type=float, default=S)
    p.add_argument("--theta-diff", type=float, default=S, help="θ_L - θ_R (default π)")
    p.add_argument("--detuning", type=float, default=S, help="ω_e - k_c")
    p.add_argument("--profile", choices=["gaussian", "lorentzian"], default=S)
    p.add_argument("--kp", type=float, default=S, help="pulse width κ_p")
    p.add_argument("--eta", type=float, default=S, help="detector efficiency")
    p.add_argument("--ideal-stub", action="store_true", default=S, help="pin e^{iφ_s} to -1")
    p.add_argument("--oracle", action="store_true", default=S, help="add grid-oracle results")
    p.add_argument("--grid", type=int, default=S, help="oracle node count N")
    p.add_argument("--grid-kind", choices=["gauss", "uniform"], default=S)
    p.add_argument("--tolerance", type=float, default=S)
    p.add_argument("--output", choices=["csv", "jsonl"], default=S)
    p.add_argument("--out", default=S, help=f"output file name (relative to ${OUTPUT_DIR_ENV} if set)")
    p.add_argument("--jobs", type=int, default=S, help="concurrent sweep workers")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cqed-memory", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("swap", help="unconditional atom-photon swap fidelity")
    _add_common(p)
    p.add_argument("--curve", default=argparse.SUPPRESS, help="write k, |T_LR(k)|² to this CSV file")

    p = sub.add_parser("memory", help="conditional storage and retrieval")
    _add_common(p)
    p.add_argument("--c-l", type=_complex_arg, default=argparse.SUPPRESS)
    p.add_argument("--c-r", type=_complex_arg, default=argparse.SUPPRESS)
    p.add_argument("--alpha", type=_complex_arg, default=argparse.SUPPRESS, help="weak coherent source amplitude")

    p = sub.add_parser("entangle", help="entanglement storage in two equal cavities")
    _add_common(p)
    p.add_argument("--c-lr", type=_complex_arg, default=argparse.SUPPRESS)
    p.add_argument("--c-rl", type=_complex_arg, default=argparse.SUPPRESS)

    p = sub.add_parser("sweep", help="sweep one parameter")
    _add_common(p)
    p.add_argument("--protocol", choices=["swap", "memory", "entangle"], default=argparse.SUPPRESS)
    p.add_argument("--param", choices=sorted(SWEEPABLE), default=argparse.SUPPRESS)
    p.add_argument("--start", type=float, default=argparse.SUPPRESS)
    p.add_argument("--stop", type=float, default=argparse.SUPPRESS)
    p.add_argument("--num", type=int, default=argparse.SUPPRESS)
    p.add_argument("--log", action="store_true", default=argparse.SUPPRESS)

    p = sub.add_parser("reproduce-paper", help="compare against the published numbers")
    _add_common(p)
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if args.config:
        try:
            values.update(read_config(Path(args.config).read_text()))
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    if "lam" in flags:
        lam = flags.pop("lam")
        flags.setdefault("lambda_l", lam)
        flags.setdefault("lambda_r", lam)
    values.update(flags)
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


def _set(cfg: RunConfig, name: str, value: float) -> RunConfig:
    if name == "lambda":
        return dataclasses.replace(cfg, lambda_l=value, lambda_r=value)
    return dataclasses.replace(cfg, **{name: value})


# --- protocol drivers -----------------------------------------------------

def swap_rows(cfg: RunConfig) -> list[dict]:
    params, profile = cfg.system(), cfg.spectrum()
    rows = [{"quantity": "F_swap", "value": protocols.swap_fidelity(params, profile)}]
    if cfg.oracle:
        f, loss = oracle.oracle_swap(
            params, profile, protocols.AtomQubit(1, 0), protocols.PhotonQubit(1, 0), cfg.grid_nodes(), cfg.grid_kind
        )
        rows += [{"quantity": "F_swap_oracle", "value": f}, {"quantity": "loss_oracle", "value": loss}]
    return rows


def memory_rows(cfg: RunConfig) -> list[dict]:
    params, profile, det = cfg.system(), cfg.spectrum(), cfg.detector()
    photon = PhotonQubit.normalized(cfg.c_l, cfg.c_r)
    out = protocols.run_memory(params, profile, photon, det)
    rows = [{"quantity": k, "value": v} for k, v in dataclasses.asdict(out).items()]
    rows.append({"quantity": "p_readout", "value": protocols.atomic_readout_probability(params, det)})
    if cfg.alpha is not None:
        rows.append({"quantity": "p_net_coherent", "value": protocols.coherent_source_probability(out.p_net, cfg.alpha)})
    if cfg.oracle:
        orc = oracle.oracle_memory(params, profile, photon, det, cfg.grid_nodes(), cfg.grid_kind)
        rows += [{"quantity": f"{k}_oracle", "value": v} for k, v in dataclasses.asdict(orc).items()]
    return rows


def entangle_rows(cfg: RunConfig) -> list[dict]:
    params, profile, det = cfg.system(), cfg.spectrum(), cfg.detector()
    n2 = math.sqrt(abs(cfg.c_lr) ** 2 + abs(cfg.c_rl) ** 2)
    pair = TwoQubitAmplitudes(lr=cfg.c_lr / n2, rl=cfg.c_rl / n2)
    out = protocols.run_entanglement_transfer(params, params, profile, profile, pair, det, det)
    rows = [{"quantity": k, "value": v} for k, v in dataclasses.asdict(out).items()]
    if cfg.oracle:
        orc = oracle.oracle_entangle(params, params, profile, profile, pair, det, det, cfg.grid_nodes(True), cfg.grid_kind)
        rows += [{"quantity": f"{k}_oracle", "value": v} for k, v in dataclasses.asdict(orc).items()]
    return rows


DRIVERS = {"swap": swap_rows, "memory": memory_rows, "entangle": entangle_rows}


def sweep_rows(cfg: RunConfig) -> list[dict]:
    if cfg.param is None or cfg.start is None or cfg.stop is None:
        raise ConfigError("sweep needs --param, --start and --stop")
    if cfg.param not in SWEEPABLE:
        raise ConfigError(f"cannot sweep {cfg.param!r}")
    if cfg.num < 1:
        raise ConfigError("sweep needs at least one point")
    if cfg.log:
        if cfg.start <= 0 or cfg.stop <= 0:
            raise ConfigError("log sweep needs positive bounds")
        values = np.geomspace(cfg.start, cfg.stop, cfg.num)
    else:
        values = np.linspace(cfg.start, cfg.stop, cfg.num)
    driver = DRIVERS[cfg.protocol]
    points = [_set(cfg, cfg.param, float(v)) for v in values]

    def run(point: RunConfig) -> list[dict]:
        return [{**point.row_params(), **row} for row in driver(point)]

    # map() keeps sweep order regardless of completion order
    with ThreadPoolExecutor(max_workers=max(1, cfg.jobs)) as pool:
        results = list(pool.map(run, points))
    rows = []
    for index, block in enumerate(results):
        rows += [{"index": index, **row} for row in block]
    return rows


# --- published numbers ------------------------------------------------------

@dataclass(frozen=True)
class PaperValue:
    quantity: str
    paper: float
    lam: float
    profile: str
    kp: float


PAPER_VALUES = (
    PaperValue("F_swap", 0.975, 5.0, "gaussian", 0.1),
    PaperValue("F_swap", 0.887, 5.0, "lorentzian", 0.1),
    PaperValue("F_swap", 0.960, 5.0, "lorentzian", 0.02),
    PaperValue("F_qm", 0.995, 5.0, "gaussian", 0.1),
    PaperValue("F_qm", 0.994, 1.0, "gaussian", 0.1),
    PaperValue("F_qm", 0.999, 0.5, "gaussian", 0.1),
    PaperValue("P_net/eta", 0.634, 1.0, "gaussian", 0.1),
    PaperValue("P_net/eta", 0.248, 0.5, "gaussian", 0.1),
)


def compute_paper_value(pv: PaperValue, use_oracle: bool = False, n: int = 201, grid: str = "gauss") -> float:
    """Recompute one published number (γ = 0.5κ, ω_e = k_c, symmetric atom)."""
    params = SystemParams.symmetric(pv.lam, gamma=0.5)
    profile = gaussian_profile(0.0, pv.kp) if pv.profile == "gaussian" else lorentzian_profile(0.0, pv.kp)
    if pv.quantity == "F_swap":
        if use_oracle:
            return oracle.oracle_swap(params, profile, protocols.AtomQubit(1, 0), PhotonQubit(1, 0), n, grid)[0]
        return protocols.swap_fidelity(params, profile)
    photon = PhotonQubit(1.0, 0.0)
    runner = oracle.oracle_memory if use_oracle else protocols.run_memory
    kwargs = {"n": n, "grid": grid} if use_oracle else {}
    out = runner(params, profile, photon, DetectorModel(1.0), **kwargs)
    return out.f_qm if pv.quantity == "F_qm" else out.p_net


def reproduce_rows(cfg: RunConfig) -> list[dict]:
    rows = []
    methods = ["analytic"] + (["oracle"] if cfg.oracle else [])
    for method in methods:
        for pv in PAPER_VALUES:
            value = compute_paper_value(pv, method == "oracle", cfg.grid_nodes(), cfg.grid_kind)
            delta = abs(value - pv.paper)
            rows.append({
                "method": method,
                "quantity": pv.quantity,
                "lambda": pv.lam,
                "gamma": 0.5,
                "profile": pv.profile,
                "kp": pv.kp,
                "paper": pv.paper,
                "computed": round(value, 6),
                "delta": round(delta, 6),
                "tolerance": cfg.tolerance,
                "pass": delta <= cfg.tolerance,
            })
    return rows


# --- output -----------------------------------------------------------------

def format_rows(rows: list[dict], fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "jsonl":
        for row in rows:
            buf.write(json.dumps({k: _jsonable(v) for k, v in row.items()}) + "\n")
        return buf.getvalue()
    fieldnames = list(dict.fromkeys(k for row in rows for k in row))
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_value(v) for k, v in row.items()})
    return buf.getvalue()


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return v.item()
    return v


def _csv_value(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v


def _emit(text: str, cfg: RunConfig, stdout) -> None:
    if cfg.out is None:
        stdout.write(text)
        return
    path = Path(cfg.out)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def write_curve(cfg: RunConfig, path: str, points: int = 801) -> None:
    """Two-column CSV of |T_LR(k)|² over ±5 pulse widths and ±3κ."""
    span = max(5 * cfg.kp, 3.0)
    k = np.linspace(-span, span, points)
    t2 = np.abs(t_matrix(cfg.system(), k).lr) ** 2
    out = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not out.is_absolute():
        out = Path(base) / out
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "abs_T_LR_sq"])
        for ki, ti in zip(k, t2):
            w.writerow([repr(float(ki)), repr(float(ti))])


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = make_config(args)
        if args.command == "reproduce-paper":
            rows = reproduce_rows(cfg)
        elif args.command == "sweep":
            rows = sweep_rows(cfg)
        else:
            rows = [{**cfg.row_params(), **row} for row in DRIVERS[args.command](cfg)]
            if args.command == "swap" and cfg.curve:
                write_curve(cfg, cfg.curve)
    except (ConfigError, InvalidParameterError, TypeError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except NUMERIC_ERRORS as exc:
        print(f"numeric error: {exc}", file=stderr)
        return EXIT_NUMERIC

    _emit(format_rows(rows, cfg.output), cfg, stdout)
    if args.command == "reproduce-paper":
        passed = sum(r["pass"] for r in rows)
        print(f"{passed}/{len(rows)} published values reproduced within {cfg.tolerance}", file=stderr)
        return EXIT_OK if passed == len(rows) else EXIT_FAIL
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
