"""Command line front end: config ingestion, scenario execution, figure
presets and data/plot export.  The only module with I/O.

Exit codes: 0 success, 2 config error, 3 degenerate kernel needing an initial
state, 4 numerical/module error, 5 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import correlations, greens, master
from .errors import LindgainError, ValidationError
from .material import DrudeParams, ScalarPermittivitySplit

PROG = "lindgain"


def _fmt(x: float) -> str:
    return f"{x:.11e}"


def _require(cfg: dict, path: str):
    """Fetch a dotted path from nested dicts, raising a config error naming
    the missing field."""
    node = cfg
    for part in path.split("."):
        if not isinstance(node, dict) or part not in node:
            raise ValidationError(f"missing config field {path}")
        node = node[part]
    return node


def _as_complex(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(value[0], value[1])
    raise ValidationError(f"cannot parse complex value {value!r}")


def _as_matrix2(value, path: str) -> np.ndarray:
    if isinstance(value, (int, float)):
        # scalar shorthand: all-equal linear-polarization Kossakowski matrix
        return value * np.ones((2, 2), dtype=complex)
    try:
        return np.array(
            [[_as_complex(v) for v in row] for row in value], dtype=complex
        )
    except (TypeError, ValidationError) as exc:
        raise ValidationError(f"bad matrix at {path}: {exc}") from exc


def load_config(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ValidationError("config root must be a JSON object")
    return cfg


# ---------------------------------------------------------------------------
# model construction from config


def _build_qubit(cfg: dict) -> master.QubitSpec:
    model = _require(cfg, "qubit.model")
    if model not in (master.TWO_LEVEL, master.V_SHAPED):
        raise ValidationError("qubit.model must be two_level or v_shaped")
    dipole_cfg = cfg["qubit"].get("dipole", [1.0, 0.0, 0.0])
    dipole = np.array([_as_complex(v) for v in dipole_cfg], dtype=complex)
    omega_a = float(cfg["qubit"].get("omega_a", 1.0))
    return master.QubitSpec(model=model, dipole=dipole, omega_a=omega_a)


def _build_substrate(env: dict):
    sub = env["isotropic_substrate"]
    for key in ("eps_re", "eps_im", "eps_loss", "eps_gain", "z_a"):
        if key not in sub:
            raise ValidationError(
                f"missing config field environment.isotropic_substrate.{key}"
            )
    split = ScalarPermittivitySplit(
        eps=complex(sub["eps_re"], sub["eps_im"]),
        eps_loss=float(sub["eps_loss"]),
        eps_gain=float(sub["eps_gain"]),
    )
    geom = greens.SubstrateGeometry(z_a=float(sub["z_a"]))
    return split, geom


def _build_tensor_pair(env: dict) -> greens.InteractionTensorPair:
    if "isotropic_substrate" in env:
        split, geom = _build_substrate(env)
        return greens.isotropic_gain_tensors(split, geom)
    if "moving_slab" in env:
        slab = env["moving_slab"]
        for key in ("omega_sp", "v", "z_a"):
            if key not in slab:
                raise ValidationError(
                    f"missing config field environment.moving_slab.{key}"
                )
        params = greens.SlabMotionParams(
            drude=DrudeParams(omega_sp=float(slab["omega_sp"])),
            v=float(slab["v"]),
            geometry=greens.SubstrateGeometry(z_a=float(slab["z_a"])),
            g00=float(slab.get("g00", 0.0)),
        )
        mode = slab.get("mode", "exact")
        if mode == "exact":
            pair = greens.moving_slab_tensors_exact(params)
        elif mode == "asymptotic":
            pair = greens.moving_slab_tensors_asymptotic(params)
        else:
            raise ValidationError(
                "environment.moving_slab.mode must be exact or asymptotic"
            )
        return greens.add_background_loss(pair, params.g00)
    raise ValidationError("unknown environment section")


def build_rate_model(cfg: dict) -> dict:
    """Resolve the configured environment into thermalized rates plus
    provenance for the rates report."""
    qubit = _build_qubit(cfg)
    env = _require(cfg, "environment")
    occ = master.ThermalOccupation(
        n=float(cfg.get("thermal", {}).get("occupation", 0.0))
    )
    out = {"qubit": qubit, "occupation": occ, "tensors": None, "thermal_tensors": None}
    if "abstract_rates" in env:
        if qubit.model == master.TWO_LEVEL:
            base = master.RatePair(
                gamma_loss=float(_require(env, "abstract_rates.gamma_l")),
                gamma_gain=float(_require(env, "abstract_rates.gamma_g")),
            )
            out["rates"] = master.thermal_rate_pair(base, occ)
        else:
            base = master.RateMatrices(
                loss=_as_matrix2(
                    _require(env, "abstract_rates.gamma_l"),
                    "environment.abstract_rates.gamma_l",
                ),
                gain=_as_matrix2(
                    _require(env, "abstract_rates.gamma_g"),
                    "environment.abstract_rates.gamma_g",
                ),
            )
            out["rates"] = master.thermal_rate_matrices(base, occ)
        out["environment"] = {"type": "abstract_rates"}
        return out
    pair = _build_tensor_pair(env)
    pair_th = master.thermal_tensors(pair, occ)
    out["tensors"] = pair
    out["thermal_tensors"] = pair_th
    if qubit.model == master.TWO_LEVEL:
        out["rates"] = master.rates_two_level(qubit, pair_th)
    else:
        out["rates"] = master.rate_matrices_v(qubit, pair_th)
    env_type = "isotropic_substrate" if "isotropic_substrate" in env else "moving_slab"
    out["environment"] = {"type": env_type, **env[env_type]}
    return out


def build_liouvillian(model: dict) -> master.Liouvillian:
    qubit = model["qubit"]
    if qubit.model == master.TWO_LEVEL:
        return master.liouvillian_two_level(model["rates"], qubit.omega_a)
    return master.liouvillian_v(model["rates"], qubit.omega_a)


_NAMED_STATES_V = {
    "g": np.array([1.0, 0.0, 0.0]),
    "e1": np.array([0.0, 1.0, 0.0]),
    "e2": np.array([0.0, 0.0, 1.0]),
    "bright": np.array([0.0, 1.0, 1.0]) / np.sqrt(2.0),
    "dark": np.array([0.0, 1.0, -1.0]) / np.sqrt(2.0),
}
_NAMED_STATES_2 = {
    "g": np.array([1.0, 0.0]),
    "e": np.array([0.0, 1.0]),
}


def parse_initial_state(value, model: str) -> master.DensityMatrix:
    labels = (
        master.TWO_LEVEL_LABELS if model == master.TWO_LEVEL else master.V_LABELS
    )
    if isinstance(value, str):
        table = _NAMED_STATES_2 if model == master.TWO_LEVEL else _NAMED_STATES_V
        if value not in table:
            raise ValidationError(
                f"unknown initial_state {value!r}; expected one of "
                f"{sorted(table)} or an explicit matrix"
            )
        psi = table[value].astype(complex)
        return master.DensityMatrix(np.outer(psi, psi.conj()), labels)
    rho = np.array(
        [[_as_complex(v) for v in row] for row in value], dtype=complex
    )
    if rho.shape != (len(labels),) * 2:
        raise ValidationError("explicit initial_state has wrong dimension")
    tr = np.trace(rho).real
    if abs(tr) < 1e-14:
        raise ValidationError("initial_state is not normalizable")
    return master.DensityMatrix(0.5 * (rho + rho.conj().T) / tr, labels)


# ---------------------------------------------------------------------------
# output writers


def write_trajectory_csv(path: Path, traj: master.Trajectory, model: str) -> None:
    lines = []
    if model == master.TWO_LEVEL:
        lines.append("t,rho_gg,rho_ee,re_rho_ge,im_rho_ge,trace,min_eigenvalue")
        for t, st in zip(traj.times, traj.states):
            r = st.rho
            lines.append(
                ",".join(
                    _fmt(x)
                    for x in (
                        t,
                        r[0, 0].real,
                        r[1, 1].real,
                        r[0, 1].real,
                        r[0, 1].imag,
                        st.trace,
                        st.min_eigenvalue,
                    )
                )
            )
    else:
        lines.append(
            "t,rho_gg,rho_e1e1,rho_e2e2,re_rho_e1e2,im_rho_e1e2,trace,min_eigenvalue"
        )
        for t, st in zip(traj.times, traj.states):
            r = st.rho
            lines.append(
                ",".join(
                    _fmt(x)
                    for x in (
                        t,
                        r[0, 0].real,
                        r[1, 1].real,
                        r[2, 2].real,
                        r[1, 2].real,
                        r[1, 2].imag,
                        st.trace,
                        st.min_eigenvalue,
                    )
                )
            )
    path.write_text("\n".join(lines) + "\n")


def _svg_line_chart(
    series: list[tuple[str, np.ndarray, np.ndarray, str]],
    xlabel: str,
    ylabel: str,
    logx: bool = False,
) -> str:
    """Minimal deterministic SVG line chart (no external plotting service)."""
    w, h, pad = 640, 420, 56
    xs = np.concatenate([np.log10(s[1]) if logx else s[1] for s in series])
    ys = np.concatenate([s[2] for s in series])
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    if x1 - x0 < 1e-300:
        x1 = x0 + 1.0
    if y1 - y0 < 1e-12:
        y1 = y0 + 1.0
    y0, y1 = y0 - 0.05 * (y1 - y0), y1 + 0.05 * (y1 - y0)

    def px(x):
        return pad + (x - x0) / (x1 - x0) * (w - 2 * pad)

    def py(y):
        return h - pad - (y - y0) / (y1 - y0) * (h - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
        f'<rect x="{pad}" y="{pad}" width="{w - 2 * pad}" height="{h - 2 * pad}" '
        'fill="none" stroke="black"/>',
        f'<text x="{w // 2}" y="{h - 12}" text-anchor="middle" '
        f'font-size="14">{xlabel}</text>',
        f'<text x="16" y="{h // 2}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 16 {h // 2})">{ylabel}</text>',
    ]
    for k, (label, x, y, color) in enumerate(series):
        xv = np.log10(x) if logx else x
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(xv, y))
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{w - pad - 4}" y="{pad + 18 + 18 * k}" text-anchor="end" '
            f'font-size="13" fill="{color}">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def _plot_trajectory(path: Path, traj: master.Trajectory, model: str) -> None:
    t = traj.times
    if model == master.TWO_LEVEL:
        series = [
            ("rho_gg", t, np.array([s.rho[0, 0].real for s in traj.states]), "green"),
            ("rho_ee", t, np.array([s.rho[1, 1].real for s in traj.states]), "blue"),
        ]
    else:
        series = [
            ("rho_gg", t, np.array([s.rho[0, 0].real for s in traj.states]), "green"),
            ("rho_e1e1", t, np.array([s.rho[1, 1].real for s in traj.states]), "blue"),
            ("rho_e2e2", t, np.array([s.rho[2, 2].real for s in traj.states]), "red"),
        ]
    path.write_text(_svg_line_chart(series, "t (1/omega_a)", "population"))


def _complex_matrix_json(m: np.ndarray) -> dict:
    return {
        "real": [[float(x) for x in row] for row in m.real],
        "imag": [[float(x) for x in row] for row in m.imag],
    }


# ---------------------------------------------------------------------------
# subcommands


def run_evolve(cfg: dict, out_dir: Path, quiet: bool = False) -> int:
    model = build_rate_model(cfg)
    qm = model["qubit"].model
    ev = _require(cfg, "evolution")
    rho0 = parse_initial_state(_require(cfg, "evolution.initial_state"), qm)
    traj = master.evolve(
        build_liouvillian(model),
        rho0,
        t_max=float(_require(cfg, "evolution.t_max")),
        n_steps=int(_require(cfg, "evolution.n_steps")),
    )
    out_dir.mkdir(parents=True, exist_ok=True)
    write_trajectory_csv(out_dir / "trajectory.csv", traj, qm)
    if cfg.get("output", {}).get("plot", True):
        try:
            _plot_trajectory(out_dir / "trajectory.svg", traj, qm)
        except Exception:
            pass  # plots are best-effort; data export already succeeded
    if not quiet:
        print(f"wrote {out_dir / 'trajectory.csv'}")
    return 0


def run_steady(cfg: dict, out_dir: Path, quiet: bool = False) -> int:
    model = build_rate_model(cfg)
    qm = model["qubit"].model
    L = build_liouvillian(model)
    init_cfg = cfg.get("evolution", {}).get("initial_state")
    rho0 = parse_initial_state(init_cfg, qm) if init_cfg is not None else None
    state, kdim = master.steady_state_kernel(L, rho0)
    record = {
        "kernel_dim": kdim,
        "rho": _complex_matrix_json(state.rho),
        "closed_form_match": None,
        "theta": None,
    }
    rates = model["rates"]
    if qm == master.TWO_LEVEL:
        closed = master.steady_two_level_closed(rates)
        record["closed_form_match"] = bool(
            np.max(np.abs(closed.rho - state.rho)) <= 1e-8
        )
    elif kdim == 1:
        closed = master.steady_v_closed(rates)
        record["closed_form_match"] = bool(
            np.max(np.abs(closed.rho - state.rho)) <= 1e-8
        )
    else:
        # linear-polarization family: report the family parameter
        scalar = master.RatePair(
            gamma_loss=float(rates.loss[0, 0].real),
            gamma_gain=float(rates.gain[0, 0].real),
        )
        theta, residual = master.fit_linear_family_theta(state, scalar)
        record["theta"] = theta
        record["closed_form_match"] = bool(residual <= 1e-8)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "steady.json"
    path.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
    if not quiet:
        print(f"wrote {path}")
    return 0


def run_rates(cfg: dict, out_dir: Path, quiet: bool = False) -> int:
    model = build_rate_model(cfg)
    record = {
        "environment": model["environment"],
        "occupation": model["occupation"].n,
        "qubit_model": model["qubit"].model,
    }
    if model["tensors"] is not None:
        record["tensor_loss"] = _complex_matrix_json(model["tensors"].loss)
        record["tensor_gain"] = _complex_matrix_json(model["tensors"].gain)
        record["thermal_tensor_loss"] = _complex_matrix_json(
            model["thermal_tensors"].loss
        )
        record["thermal_tensor_gain"] = _complex_matrix_json(
            model["thermal_tensors"].gain
        )
    rates = model["rates"]
    if isinstance(rates, master.RatePair):
        record["gamma_loss"] = rates.gamma_loss
        record["gamma_gain"] = rates.gamma_gain
    else:
        record["gamma_loss_matrix"] = _complex_matrix_json(rates.loss)
        record["gamma_gain_matrix"] = _complex_matrix_json(rates.gain)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "rates.json"
    path.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
    if not quiet:
        print(f"wrote {path}")
    return 0


def run_spectrum(
    cfg: dict,
    omega_min: float,
    omega_max: float,
    n_points: int,
    out_dir: Path,
    parallel: bool = False,
    quiet: bool = False,
) -> int:
    if not (0 < omega_min <= omega_max):
        raise ValidationError("require 0 < omega_min <= omega_max")
    if n_points < 1:
        raise ValidationError("n_points must be >= 1")
    env = _require(cfg, "environment")
    if "isotropic_substrate" not in env:
        raise ValidationError(
            "spectrum requires environment.isotropic_substrate"
        )
    split, geom = _build_substrate(env)
    n_omega = float(cfg.get("thermal", {}).get("occupation", 0.0))
    omegas = (
        np.linspace(omega_min, omega_max, n_points)
        if n_points > 1
        else np.array([omega_min])
    )

    def point(w):
        return correlations.field_spectrum(split, geom, w, n_omega)

    if parallel:
        with ThreadPoolExecutor() as pool:
            points = list(pool.map(point, omegas))
    else:
        points = [point(w) for w in omegas]
    lines = ["omega,occupation,s_xx,s_yy,s_zz"]
    for p in points:
        lines.append(
            ",".join(
                _fmt(x)
                for x in (
                    p.omega,
                    p.occupation,
                    p.tensor[0, 0].real,
                    p.tensor[1, 1].real,
                    p.tensor[2, 2].real,
                )
            )
        )
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "spectrum.csv"
    path.write_text("\n".join(lines) + "\n")
    if not quiet:
        print(f"wrote {path}")
    return 0


# ---------------------------------------------------------------------------
# figure presets

FIG2_RATES = master.RateMatrices(
    loss=0.1 * np.ones((2, 2)), gain=0.05 * np.ones((2, 2))
)
FIG3_RATES = master.RateMatrices(
    loss=np.diag([0.1, 0.175]), gain=np.diag([0.075, 0.0])
)
PRESET_T_MAX = 500.0
PRESET_N_STEPS = 2000

FIGURE_PRESETS = {
    "fig2a": (FIG2_RATES, "e1"),
    "fig2b": (FIG2_RATES, "bright"),
    "fig2c": (FIG2_RATES, "g"),
    "fig3a": (FIG3_RATES, "e2"),
}


def fig3b_sweep(n_points: int = 64, parallel: bool = False):
    """Steady-state populations over a log grid of occupations, using kernel
    analysis (no time integration)."""
    grid = np.logspace(-2.0, 3.0, n_points)

    def point(n):
        rates = master.thermal_rate_matrices(
            FIG3_RATES, master.ThermalOccupation(n)
        )
        L = master.liouvillian_v(rates)
        state, _ = master.steady_state_kernel(L)
        r = state.rho
        return (n, r[0, 0].real, r[1, 1].real, r[2, 2].real)

    if parallel:
        with ThreadPoolExecutor() as pool:
            rows = list(pool.map(point, grid))
    else:
        rows = [point(n) for n in grid]
    return rows


def run_figure(
    name: str, out_dir: Path, parallel: bool = False, quiet: bool = False
) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    if name == "fig3b":
        rows = fig3b_sweep(parallel=parallel)
        lines = ["n,rho_gg,rho_e1e1,rho_e2e2"]
        lines += [",".join(_fmt(x) for x in row) for row in rows]
        csv_path = out_dir / "fig3b.csv"
        csv_path.write_text("\n".join(lines) + "\n")
        try:
            data = np.array(rows)
            series = [
                ("rho_gg", data[:, 0], data[:, 1], "green"),
                ("rho_e1e1", data[:, 0], data[:, 2], "blue"),
                ("rho_e2e2", data[:, 0], data[:, 3], "red"),
            ]
            (out_dir / "fig3b.svg").write_text(
                _svg_line_chart(series, "log10 occupation", "population", logx=True)
            )
        except Exception:
            pass
        if not quiet:
            print(f"wrote {csv_path}")
        return 0
    if name not in FIGURE_PRESETS:
        raise ValidationError(f"unknown figure preset {name!r}")
    rates, init = FIGURE_PRESETS[name]
    rho0 = parse_initial_state(init, master.V_SHAPED)
    traj = master.evolve(
        master.liouvillian_v(rates), rho0, PRESET_T_MAX, PRESET_N_STEPS
    )
    csv_path = out_dir / f"{name}.csv"
    write_trajectory_csv(csv_path, traj, master.V_SHAPED)
    try:
        _plot_trajectory(out_dir / f"{name}.svg", traj, master.V_SHAPED)
    except Exception:
        pass
    if not quiet:
        print(f"wrote {csv_path}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing / dispatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Qubit dynamics in structured-gain photonic environments",
    )
    parser.add_argument("--parallel", action="store_true", help="parallel sweeps")
    parser.add_argument("--quiet", action="store_true", help="suppress status output")
    # also accepted after the subcommand; SUPPRESS keeps the global value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--parallel", action="store_true", default=argparse.SUPPRESS
    )
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="integrate a trajectory", parents=[common])
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=".")

    p = sub.add_parser("steady", help="steady state via kernel analysis", parents=[common])
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=".")

    p = sub.add_parser("rates", help="dump interaction tensors and rates", parents=[common])
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=".")

    p = sub.add_parser("spectrum", help="field spectral density sweep", parents=[common])
    p.add_argument("--config", required=True)
    p.add_argument("--omega-min", type=float, required=True)
    p.add_argument("--omega-max", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=".")

    p = sub.add_parser("figure", help="reproduce a figure preset", parents=[common])
    p.add_argument("name", choices=["fig2a", "fig2b", "fig2c", "fig3a", "fig3b"])
    p.add_argument("--out", default=".")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out_dir = Path(getattr(args, "out", "."))
        if args.command == "figure":
            return run_figure(
                args.name, out_dir, parallel=args.parallel, quiet=args.quiet
            )
        cfg = load_config(args.config)
        if args.command == "evolve":
            return run_evolve(cfg, out_dir, quiet=args.quiet)
        if args.command == "steady":
            return run_steady(cfg, out_dir, quiet=args.quiet)
        if args.command == "rates":
            return run_rates(cfg, out_dir, quiet=args.quiet)
        if args.command == "spectrum":
            return run_spectrum(
                cfg,
                args.omega_min,
                args.omega_max,
                args.n,
                out_dir,
                parallel=args.parallel,
                quiet=args.quiet,
            )
        raise ValidationError(f"unknown command {args.command!r}")
    except LindgainError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"{PROG}: I/O error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
