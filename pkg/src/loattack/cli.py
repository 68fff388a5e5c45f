"""Command-line front end: single points, figure presets, sweeps, simulation,
and the cross-validation check of the two Holevo-bound derivations.

Exit codes: 0 success, 1 invariant failure (``check``), 2 configuration or
parameter error, 3 I/O error. ``LOATTACK_SEED`` provides the default seed for
Monte Carlo commands.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import figures, plots
from .channel import (
    LinkBudget,
    ProtocolParams,
    covariance_ab,
    excess_noise,
    excess_noise_unmonitored,
    noise_for_zero_excess,
    transmission_from_distance,
)
from .cloner import (
    eve_conditional_on_bob,
    eve_covariance,
    eve_entropy,
    eve_given_bob_pair,
    holevo_ae_cloner,
    holevo_be_cloner,
)
from .gaussian import symplectic_eigenvalues, von_neumann_entropy
from .keyrate import (
    conditional_bc_given_a,
    dr_conditional_pair,
    holevo_ae,
    holevo_be,
    keyrates,
)
from .simulate import channel_and_measure, estimate_channel, generate_batch, simulated_keyrates

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_CONFIG = 2
EXIT_IO = 3

ORACLE_TOL = 1e-9
PHYSICALITY_FLOOR = 1.0 - 1e-9

SEED_ENV_VAR = "LOATTACK_SEED"

REPORT_FIELDS = ("i_ab", "holevo_true", "holevo_pseudo", "k_true", "k_pseudo",
                 "intercepted", "secure")


class ConfigError(ValueError):
    """Bad flags or config-file contents."""


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


# ---------------------------------------------------------------- keyrate --

def _resolve_transmission(args) -> float:
    if args.t is not None:
        return args.t
    return transmission_from_distance(
        LinkBudget(args.distance_km, args.loss_db_per_km)
    )


_DIRECTIONS = {"rr": "reverse", "reverse": "reverse", "dr": "direct", "direct": "direct"}


def cmd_keyrate(args) -> int:
    p = ProtocolParams(
        v_s=args.vs,
        t=_resolve_transmission(args),
        eta=args.eta,
        n_eve=args.n_eve,
        direction=_DIRECTIONS[args.direction],
    )
    report = keyrates(p)
    for name in REPORT_FIELDS:
        value = getattr(report, name)
        if isinstance(value, bool):
            text = "true" if value else "false"
        else:
            text = f"{value:.6g}"
        print(f"{name:<14} {text}")
    return EXIT_OK


# ----------------------------------------------------------------- figure --

def cmd_figure(args) -> int:
    columns, rows = figures.figure_series(
        args.id, v_s=args.vs, loss_db_per_km=args.loss_db_per_km
    )
    out = Path(args.out)
    if args.format == "csv":
        figures.write_csv(out, columns, rows)
    else:
        figures.write_json(out, columns, rows, figure=args.id)
    if not args.no_plot:
        plots.render_figure(args.id, columns, rows, out.with_suffix(".png"))
    return EXIT_OK


# ------------------------------------------------------------------ check --

def _parse_float_list(text: str, what: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad {what} list {text!r}: {exc}") from None
    if not values:
        raise ConfigError(f"{what} grid is empty")
    return values


def _check_point(v_s: float, t: float, eta: float, perturb: float):
    """All pairwise deviations and the physicality floor at one grid point."""
    v = v_s + 1.0
    n_eve = noise_for_zero_excess(eta, t)
    devs = {
        "holevo_be vs cloner": abs(
            holevo_be(v, t, n_eve) - holevo_be_cloner(v, t, n_eve) - perturb
        ),
        "holevo_ae vs cloner": abs(
            holevo_ae(v, t, n_eve) - holevo_ae_cloner(v, t, n_eve) - perturb
        ),
        "purification": abs(
            eve_entropy(v, t, n_eve)
            - von_neumann_entropy(covariance_ab(ProtocolParams(v_s, t, eta, n_eve)))
        ),
    }
    dr_closed = sorted(dr_conditional_pair(v, t, n_eve))
    dr_generic = list(symplectic_eigenvalues(conditional_bc_given_a(v, t, n_eve)))
    devs["dr conditional spectrum"] = max(
        abs(a - b) for a, b in zip(dr_closed, dr_generic)
    )
    rr_closed = sorted(eve_given_bob_pair(v, t, n_eve))
    rr_generic = list(symplectic_eigenvalues(eve_conditional_on_bob(v, t, n_eve)))
    devs["rr conditional spectrum"] = max(
        abs(a - b) for a, b in zip(rr_closed, rr_generic)
    )
    matrices = (
        covariance_ab(ProtocolParams(v_s, t, eta, n_eve)),
        covariance_ab(ProtocolParams(v_s, t, eta, n_eve), monitored=False),
        covariance_ab(ProtocolParams(v_s, eta * t, 1.0, 1.0)),
        eve_covariance(v, t, n_eve).gamma_e,
        conditional_bc_given_a(v, t, n_eve),
        eve_conditional_on_bob(v, t, n_eve),
    )
    min_lam = min(symplectic_eigenvalues(m).min for m in matrices)
    return devs, min_lam


def cmd_check(args) -> int:
    vs_values = _parse_float_list(args.vs, "modulation-variance")
    eta_values = _parse_float_list(args.eta, "eta")
    if args.t_step <= 0:
        raise ConfigError(f"--t-step must be > 0, got {args.t_step!r}")
    t_values = np.arange(args.t_start, args.t_stop + args.t_step / 2, args.t_step)
    if t_values.size == 0:
        raise ConfigError("transmission grid is empty")

    worst = 0.0
    n_points = 0
    failures: list[str] = []
    for v_s in vs_values:
        for t in t_values:
            for eta in eta_values:
                n_points += 1
                devs, min_lam = _check_point(v_s, float(t), eta, args.perturb)
                worst = max(worst, max(devs.values()))
                for name, dev in devs.items():
                    if dev > ORACLE_TOL:
                        failures.append(
                            f"v_s={v_s:g} t={t:g} eta={eta:g}: {name} deviates by {dev:.3e}"
                        )
                if min_lam < PHYSICALITY_FLOOR:
                    failures.append(
                        f"v_s={v_s:g} t={t:g} eta={eta:g}: symplectic eigenvalue "
                        f"{min_lam!r} below physical floor"
                    )
    print(f"checked {n_points} grid points; max absolute deviation {worst:.3e}")
    if failures:
        for line in failures[:20]:
            print(f"FAIL {line}")
        if len(failures) > 20:
            print(f"... and {len(failures) - 20} more failures")
        return EXIT_INVARIANT
    return EXIT_OK


# ------------------------------------------------------------ sweep config --

@dataclasses.dataclass
class SweepConfig:
    """Flat configuration for ``sweep`` and ``simulate``.

    The config file is a flat JSON object with these field names; flags
    override file values.
    """

    axis: str | None = None
    start: float | None = None
    stop: float | None = None
    step: float | None = None
    v_s: float = 20.0
    t: float | None = None
    distance_km: float | None = None
    loss_db_per_km: float = 0.2
    eta: float = 1.0
    direction: str = "reverse"
    out: str | None = None
    format: str = "csv"
    n_pulses: int | None = None
    seed: int | None = None


_AXES = ("t", "distance", "one_minus_eta")


def _load_sweep_config(args) -> SweepConfig:
    values: dict = {}
    if args.config is not None:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {args.config}: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError("config file must hold a flat JSON object")
        known = {f.name for f in dataclasses.fields(SweepConfig)}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        values.update(raw)
    for field in dataclasses.fields(SweepConfig):
        flag_value = getattr(args, field.name, None)
        if flag_value is not None:
            values[field.name] = flag_value
    cfg = SweepConfig(**values)

    if cfg.axis is None:
        raise ConfigError("an axis is required (t | distance | one_minus_eta)")
    cfg.axis = cfg.axis.lower()
    if cfg.axis not in _AXES:
        raise ConfigError(f"axis must be one of {_AXES}, got {cfg.axis!r}")
    if cfg.start is None or cfg.stop is None or cfg.step is None:
        raise ConfigError("start, stop and step are all required")
    if cfg.step <= 0:
        raise ConfigError(f"step must be > 0, got {cfg.step!r}")
    if cfg.axis == "one_minus_eta" and cfg.t is None and cfg.distance_km is None:
        raise ConfigError("axis one_minus_eta needs a fixed t or distance_km")
    if cfg.direction not in _DIRECTIONS:
        raise ConfigError(f"direction must be rr/dr/reverse/direct, got {cfg.direction!r}")
    cfg.direction = _DIRECTIONS[cfg.direction]
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {cfg.format!r}")
    return cfg


def _axis_values(cfg: SweepConfig) -> np.ndarray:
    values = np.arange(cfg.start, cfg.stop + cfg.step / 2, cfg.step)
    if values.size == 0:
        raise ConfigError("axis range is empty")
    return values


def _point_params(cfg: SweepConfig, axis_value: float) -> ProtocolParams:
    if cfg.axis == "t":
        t, eta = axis_value, cfg.eta
    elif cfg.axis == "distance":
        t = transmission_from_distance(LinkBudget(axis_value, cfg.loss_db_per_km))
        eta = cfg.eta
    else:
        eta = 1.0 - axis_value
        if cfg.t is not None:
            t = cfg.t
        else:
            t = transmission_from_distance(
                LinkBudget(cfg.distance_km, cfg.loss_db_per_km)
            )
    return ProtocolParams(cfg.v_s, t, eta, None, cfg.direction)


_AXIS_COLUMN = {"t": "t", "distance": "distance_km", "one_minus_eta": "one_minus_eta"}


def _emit_table(cfg: SweepConfig, columns: list[str], rows: list[list]) -> None:
    if cfg.out is None:
        sys.stdout.write(",".join(columns) + "\n")
        for row in rows:
            sys.stdout.write(",".join(figures.format_cell(c) for c in row) + "\n")
    elif cfg.format == "csv":
        figures.write_csv(cfg.out, columns, rows)
    else:
        figures.write_json(cfg.out, columns, rows)


def cmd_sweep(args) -> int:
    cfg = _load_sweep_config(args)
    columns = [_AXIS_COLUMN[cfg.axis], *REPORT_FIELDS]
    rows = []
    for value in _axis_values(cfg):
        report = keyrates(_point_params(cfg, float(value)))
        rows.append([float(value)] + [getattr(report, f) for f in REPORT_FIELDS])
    _emit_table(cfg, columns, rows)
    return EXIT_OK


# --------------------------------------------------------------- simulate --

def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None


def cmd_simulate(args) -> int:
    cfg = _load_sweep_config(args)
    if cfg.n_pulses is None:
        raise ConfigError("n_pulses is required for simulate")
    if cfg.n_pulses < 10_000:
        raise ConfigError(f"n_pulses must be >= 10000, got {cfg.n_pulses}")
    seed = cfg.seed if cfg.seed is not None else _default_seed()

    columns = [
        _AXIS_COLUMN[cfg.axis],
        "t_hat",
        "eps_hat",
        "eta_t_analytic",
        "eps_w_analytic",
        "k_true_sim",
        "k_true_analytic",
    ]
    rows = []
    for i, value in enumerate(_axis_values(cfg)):
        p = _point_params(cfg, float(value))
        point_seed = seed + i  # derived per-point streams stay independent
        batch = generate_batch(p, cfg.n_pulses, point_seed)
        est = estimate_channel(
            batch.x_alice, channel_and_measure(batch, p, monitored=False)
        )
        eps_w = excess_noise_unmonitored(excess_noise(p.t, p.n_eve), p.t, p.eta)
        rows.append([
            float(value),
            est.t_hat,
            est.eps_hat,
            p.eta * p.t,
            eps_w,
            simulated_keyrates(p, cfg.n_pulses, point_seed).k_true,
            keyrates(p).k_true,
        ])
    _emit_table(cfg, columns, rows)
    return EXIT_OK


# ----------------------------------------------------------------- parser --

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loattack",
        description=(
            "Secret-key-rate analysis of continuous-variable QKD when the "
            "local oscillator is attenuated by the eavesdropper."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    kr = sub.add_parser("keyrate", help="report for a single parameter point")
    kr.add_argument("--vs", type=float, required=True,
                    help="modulation variance, shot-noise units")
    point = kr.add_mutually_exclusive_group(required=True)
    point.add_argument("--t", type=float, help="channel transmission in (0, 1]")
    point.add_argument("--distance-km", type=float, help="fiber length in km")
    kr.add_argument("--loss-db-per-km", type=float, default=0.2)
    kr.add_argument("--eta", type=float, default=1.0, help="LO transmission")
    kr.add_argument("--n-eve", type=float, default=None,
                    help="injected-noise variance override (default: tuned to "
                         "hide the attack)")
    kr.add_argument("--direction", choices=sorted(_DIRECTIONS), default="rr")
    kr.set_defaults(func=cmd_keyrate)

    fig = sub.add_parser("figure", help="write one figure preset to disk")
    fig.add_argument("--id", type=int, choices=figures.FIGURE_IDS, required=True)
    fig.add_argument("--out", required=True, help="output table path")
    fig.add_argument("--vs", type=float, default=figures.DEFAULT_V_S)
    fig.add_argument("--loss-db-per-km", type=float, default=0.2)
    fig.add_argument("--format", choices=("csv", "json"), default="csv")
    fig.add_argument("--no-plot", action="store_true",
                     help="skip rendering the companion image")
    fig.set_defaults(func=cmd_figure)

    chk = sub.add_parser(
        "check",
        help="cross-validate the two Holevo-bound derivations on a grid",
    )
    chk.add_argument("--vs", default="1,5,20,40",
                     help="comma-separated modulation variances")
    chk.add_argument("--eta", default="0.85,0.9,0.95,1.0",
                     help="comma-separated LO transmissions")
    chk.add_argument("--t-start", type=float, default=0.05)
    chk.add_argument("--t-stop", type=float, default=0.95)
    chk.add_argument("--t-step", type=float, default=0.05)
    chk.add_argument("--perturb", type=float, default=0.0,
                     help="test hook: offset injected into the comparison")
    chk.set_defaults(func=cmd_check)

    swp = sub.add_parser("sweep", help="key-rate reports along one axis")
    sim = sub.add_parser("simulate",
                         help="Monte Carlo estimates vs analytic values along one axis")
    for sp in (swp, sim):
        sp.add_argument("--config", default=None,
                        help="flat JSON file with SweepConfig fields")
        sp.add_argument("--axis", choices=_AXES, default=None)
        sp.add_argument("--start", type=float, default=None)
        sp.add_argument("--stop", type=float, default=None)
        sp.add_argument("--step", type=float, default=None)
        sp.add_argument("--v-s", dest="v_s", type=float, default=None)
        sp.add_argument("--t", type=float, default=None)
        sp.add_argument("--distance-km", dest="distance_km", type=float, default=None)
        sp.add_argument("--loss-db-per-km", dest="loss_db_per_km", type=float,
                        default=None)
        sp.add_argument("--eta", type=float, default=None)
        sp.add_argument("--direction", choices=sorted(_DIRECTIONS), default=None)
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=("csv", "json"), default=None)
    sim.add_argument("--n-pulses", dest="n_pulses", type=int, default=None)
    sim.add_argument("--seed", type=int, default=None)
    swp.set_defaults(func=cmd_sweep)
    sim.set_defaults(func=cmd_simulate)

    return parser


if __name__ == "__main__":
    sys.exit(main())
