"""Command-line front end: scenario commands, sweeps, CSV + figure emission.

Subcommands: spectrum-eps, spectrum-g, gaps, dynamics, validate.
Configuration is a flat key=value text file plus repeatable --set overrides;
overrides win.  All frequencies are normalized at this boundary to the unit
chosen with --units (Omega or omega_ex); times are in the inverse unit.
Exit codes: 0 success, 2 configuration error, 3 numeric/convergence error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .dynamics import (
    default_time_grid,
    fourier_spectrum,
    infer_manifold,
    predict_peaks,
    survival_analytic,
    thermal_weights,
)
from .errors import (
    ConfigError,
    DomainError,
    DrivenQOError,
    NumericalError,
    SmallDenominatorError,
)
from .floquet_numeric import (
    boundary_weights,
    fold_to_zone,
    match_mode,
    sambe_eigensystem,
    survival_numeric,
)
from .model import (
    ResonanceIndex,
    SystemParams,
    Truncation,
    commensurability_check,
    find_resonances,
    resonance_detuning,
)
from .report import CsvReport, format_float
from .specialfns import dressed_delta, laguerre
from .vanvleck import (
    BRANCH_MINUS,
    BRANCH_PLUS,
    dressed_gap,
    floquet_mode,
    quasienergies,
    uncoupled_levels,
)
from .errors import TruncationError

# key -> (type tag, default); "freq" keys are rescaled by the unit choice
_KEYS = {
    "epsilon": ("freq", 0.0),
    "delta": ("freq", 0.4),
    "g": ("freq", 0.1),
    "Omega": ("freq", 1.0),
    "A": ("freq", 8.0),
    "omega_ex": ("freq", 5.3),
    "k_max": ("int", 20),
    "l_max": ("int", 40),
    "p_max": ("int", 30),
    "P_max": ("int", 30),
    "denom_tol": ("freq", 0.0),  # 0 = auto (1e-6 * omega_ex)
    "theta": ("float", 10.0),
    "sweep_start": ("float", None),
    "sweep_stop": ("float", None),
    "sweep_steps": ("int", 201),
    "k_report": ("int", 6),
    "n_report": ("int", 2),
    "m_max": ("int", 3),
    "L_max": ("int", 2),
    "res_window": ("freq", 0.0),  # 0 = auto (0.3 * omega_ex)
    "K_plot": ("int", 4),
    "n_samples": ("int", 4096),
    "periods": ("int", 50),
    "t_span": ("float", 0.0),  # 0 = auto
    "steps_per_period": ("int", 48),
    "first_order": ("bool", True),
    "numeric": ("bool", True),
    "threshold": ("float", 0.02),
    "manifold_m": ("str", "auto"),
    "manifold_L": ("str", "auto"),
    "shift_sign": ("str", "up_plus"),
    "boundary_tol": ("float", 0.1),
    "zone_center": ("freq", 0.0),
    "figure": ("bool", True),
    "out": ("str", ""),
    "units": ("str", "Omega"),
    "jobs": ("int", 1),
}

_FREQ_PARAM_KEYS = ("epsilon", "delta", "g", "Omega", "A", "omega_ex")


def _coerce(key: str, raw: str):
    if key not in _KEYS:
        raise ConfigError(f"unknown configuration key {key!r}")
    kind = _KEYS[key][0]
    raw = raw.strip()
    try:
        if kind == "int":
            return int(raw)
        if kind in ("float", "freq"):
            return float(raw)
        if kind == "bool":
            low = raw.lower()
            if low in ("1", "true", "on", "yes"):
                return True
            if low in ("0", "false", "off", "no"):
                return False
            raise ValueError(raw)
        return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r}") from exc


def parse_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                body = line.split("#", 1)[0].strip()
                if not body:
                    continue
                if "=" not in body:
                    raise ConfigError(f"{path}:{lineno}: expected key = value, got {line.rstrip()!r}")
                key, _, raw = body.partition("=")
                values[key.strip()] = _coerce(key.strip(), raw)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return values


class Scenario:
    """Resolved configuration: normalized parameters plus command options."""

    def __init__(self, values: dict):
        self.values = values
        unit_name = values["units"]
        if unit_name not in ("Omega", "omega_ex"):
            raise ConfigError(f"units must be Omega or omega_ex, got {unit_name!r}")
        unit = values["Omega"] if unit_name == "Omega" else values["omega_ex"]
        if unit <= 0:
            raise ConfigError("unit frequency must be > 0")
        self.unit_name = unit_name
        norm = dict(values)
        for key, (kind, _) in _KEYS.items():
            if kind == "freq":
                norm[key] = values[key] / unit
        self.norm = norm
        try:
            self.params = SystemParams(
                epsilon=norm["epsilon"], delta=norm["delta"], g=norm["g"],
                Omega=norm["Omega"], A=norm["A"], omega_ex=norm["omega_ex"],
            )
            denom_tol = norm["denom_tol"] if norm["denom_tol"] > 0 else 1e-6 * norm["omega_ex"]
            self.trunc = Truncation(
                k_max=norm["k_max"], l_max=norm["l_max"], p_max=norm["p_max"],
                P_max=norm["P_max"], denom_tol=denom_tol,
            )
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc
        self.res_window = norm["res_window"] if norm["res_window"] > 0 else 0.3 * self.params.omega_ex
        if norm["jobs"] < 1:
            raise ConfigError("jobs must be >= 1")

    def __getitem__(self, key):
        return self.norm[key]

    def manifold(self) -> tuple[int, int]:
        m_raw, L_raw = self.norm["manifold_m"], self.norm["manifold_L"]
        if m_raw == "auto" or L_raw == "auto":
            return infer_manifold(self.params)
        try:
            return int(m_raw), int(L_raw)
        except ValueError as exc:
            raise ConfigError(f"manifold_m/manifold_L must be integers or 'auto'") from exc

    def echo_pairs(self) -> dict:
        pairs = {}
        for key in sorted(_KEYS):
            pairs[key] = self.norm[key]
        pairs["units"] = self.unit_name
        pairs["denom_tol"] = self.trunc.denom_tol
        pairs["res_window"] = self.res_window
        return pairs

    def out_path(self, default_name: str) -> str:
        out = self.norm["out"] or default_name
        outdir = os.environ.get("DRIVENQO_OUTDIR", "")
        if outdir and not os.path.isabs(out):
            out = os.path.join(outdir, out)
        return out


def build_scenario(args) -> Scenario:
    values = {key: default for key, (_, default) in _KEYS.items()}
    if args.config:
        values.update(parse_config_file(args.config))
    for item in args.set or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, _, raw = item.partition("=")
        values[key.strip()] = _coerce(key.strip(), raw)
    if args.out is not None:
        values["out"] = args.out
    if args.jobs is not None:
        values["jobs"] = args.jobs
    if args.units is not None:
        values["units"] = args.units
    return Scenario(values)


def _run_ordered(points, fn, jobs: int) -> list:
    if jobs <= 1:
        return [fn(pt) for pt in points]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, points))


def _sweep_grid(cfg: Scenario, default_start: float, default_stop: float) -> np.ndarray:
    start = cfg["sweep_start"] if cfg["sweep_start"] is not None else default_start
    stop = cfg["sweep_stop"] if cfg["sweep_stop"] is not None else default_stop
    steps = cfg["sweep_steps"]
    if steps < 2:
        raise ConfigError("sweep_steps must be >= 2")
    if not stop > start:
        raise ConfigError("sweep_stop must exceed sweep_start")
    return np.linspace(start, stop, steps)


def _warn_commensurable(cfg: Scenario):
    hit = commensurability_check(cfg.params.Omega, cfg.params.omega_ex, 1000)
    if hit is not None:
        j, N = hit
        print(
            f"warning: Omega/omega_ex = {j}/{N} is commensurable; infinitely many "
            f"degenerate states exist, but only processes of order >= {min(j, N)} are "
            "affected. Keep p_max/l_max below that order.",
            file=sys.stderr,
        )
    return hit


def cmd_spectrum_eps(cfg: Scenario) -> int:
    """Quasienergies against the static bias: analytic, numeric and reference."""
    params, trunc = cfg.params, cfg.trunc
    _warn_commensurable(cfg)
    grid = _sweep_grid(cfg, 0.0, 3.0 * params.omega_ex)
    resonances = find_resonances(
        params, (float(grid[0]), float(grid[-1])), (-cfg["m_max"], cfg["m_max"]), cfg["L_max"]
    )
    k_rep, n_rep = cfg["k_report"], cfg["n_report"]

    columns = ["eps"]
    for spin in ("up", "down"):
        for n in range(-n_rep, n_rep + 1):
            for K in range(k_rep):
                columns.append(f"ref_{spin}_n{n}_K{K}")
    for m, L, _ in resonances:
        tag = f"m{m}_L{L}"
        for K in range(k_rep):
            columns.append(f"ana_minus_{tag}_K{K}")
            columns.append(f"ana_plus_{tag}_K{K}")
            if cfg["numeric"]:
                columns.append(f"num_minus_{tag}_K{K}")
                columns.append(f"num_plus_{tag}_K{K}")
        for Kt in range(L):
            columns.append(f"ana_dn_{tag}_K{Kt}")

    from .vanvleck import delta0_quasienergy

    def point(eps: float) -> dict:
        p = params.replace(epsilon=float(eps))
        row = {"eps": float(eps)}
        for spin in ("up", "down"):
            for n in range(-n_rep, n_rep + 1):
                for K in range(k_rep):
                    row[f"ref_{spin}_n{n}_K{K}"] = delta0_quasienergy(spin, n, K, p)
        active = [r for r in resonances if abs(eps - r[2]) <= cfg.res_window]
        eig = None
        if cfg["numeric"] and active:
            eig = sambe_eigensystem(p, trunc)
        for m, L, eps_star in resonances:
            tag = f"m{m}_L{L}"
            in_window = abs(eps - eps_star) <= cfg.res_window
            for K in range(k_rep):
                for suffix in ("minus", "plus"):
                    row[f"ana_{suffix}_{tag}_K{K}"] = float("nan")
                    if cfg["numeric"]:
                        row[f"num_{suffix}_{tag}_K{K}"] = float("nan")
            for Kt in range(L):
                row[f"ana_dn_{tag}_K{Kt}"] = float("nan")
            if not in_window:
                continue
            idx0 = ResonanceIndex(m, L, 0, 0)
            try:
                for lev in uncoupled_levels(idx0, p, trunc, shift_sign=cfg["shift_sign"]):
                    row[f"ana_dn_{tag}_K{lev.index.K}"] = lev.value
            except DrivenQOError:
                pass  # another resonance intrudes here; leave the cells nan
            for K in range(k_rep):
                idx = ResonanceIndex(m, L, 0, K)
                try:
                    q_minus, q_plus = quasienergies(idx, p, trunc, shift_sign=cfg["shift_sign"])
                except DrivenQOError:
                    continue
                row[f"ana_minus_{tag}_K{K}"] = q_minus.value
                row[f"ana_plus_{tag}_K{K}"] = q_plus.value
                if eig is not None:
                    _, vals, vecs = eig
                    for suffix, branch in (("minus", BRANCH_MINUS), ("plus", BRANCH_PLUS)):
                        try:
                            mode = floquet_mode(idx, branch, p, trunc, shift_sign=cfg["shift_sign"])
                        except TruncationError:
                            continue
                        ev, _, _ = match_mode(mode, vals, vecs)
                        row[f"num_{suffix}_{tag}_K{K}"] = ev
        return row

    rows = _run_ordered([float(e) for e in grid], point, cfg["jobs"])
    report = CsvReport("spectrum-eps", cfg.echo_pairs(), columns)
    report.add_meta("resonances " + " ".join(f"m{m}_L{L}={format_float(e)}" for m, L, e in resonances))
    for row in rows:
        report.add_row(row)
    out = cfg.out_path("spectrum_eps.csv")
    report.write(out)
    print(f"wrote {out}")
    if cfg["figure"]:
        from .plotting import render_spectrum_eps

        png = os.path.splitext(out)[0] + ".png"
        render_spectrum_eps(out, png)
        print(f"wrote {png}")
    return 0


def cmd_spectrum_g(cfg: Scenario) -> int:
    """Quasienergies against the coupling strength at fixed bias."""
    params, trunc = cfg.params, cfg.trunc
    _warn_commensurable(cfg)
    grid = _sweep_grid(cfg, 0.0, 1.2 * params.Omega)
    if grid[0] < 0:
        raise ConfigError("coupling sweep must be >= 0")
    manifold = cfg.manifold()
    m, L = manifold
    k_rep = cfg["k_report"]

    columns = ["g", "alpha"]
    for K in range(k_rep):
        columns += [f"ref_up_K{K}", f"ref_down_K{K}", f"ana_minus_K{K}", f"ana_plus_K{K}",
                    f"gap_K{K}", f"gap1_K{K}"]
        if cfg["numeric"]:
            columns += [f"num_minus_K{K}", f"num_plus_K{K}"]

    from .vanvleck import delta0_quasienergy

    def point(g: float) -> dict:
        p = params.replace(g=float(g))
        row = {"g": float(g), "alpha": p.alpha}
        eig = sambe_eigensystem(p, trunc) if cfg["numeric"] else None
        for K in range(k_rep):
            idx = ResonanceIndex(m, L, 0, K)
            row[f"ref_up_K{K}"] = delta0_quasienergy("up", 0, K, p)
            row[f"ref_down_K{K}"] = delta0_quasienergy("down", m, K + L, p)
            q_minus, q_plus = quasienergies(idx, p, trunc, shift_sign=cfg["shift_sign"])
            row[f"ana_minus_K{K}"] = q_minus.value
            row[f"ana_plus_K{K}"] = q_plus.value
            row[f"gap_K{K}"] = q_plus.value - q_minus.value
            row[f"gap1_K{K}"] = dressed_gap(idx, p, trunc, second_order=False)
            if eig is not None:
                _, vals, vecs = eig
                for suffix, branch in (("minus", BRANCH_MINUS), ("plus", BRANCH_PLUS)):
                    row[f"num_{suffix}_K{K}"] = float("nan")
                    try:
                        mode = floquet_mode(idx, branch, p, trunc, shift_sign=cfg["shift_sign"])
                    except TruncationError:
                        continue
                    ev, _, _ = match_mode(mode, vals, vecs)
                    row[f"num_{suffix}_K{K}"] = ev
        return row

    rows = _run_ordered([float(g) for g in grid], point, cfg["jobs"])
    report = CsvReport("spectrum-g", cfg.echo_pairs(), columns)
    report.add_meta(f"manifold m={m} L={L}")
    for row in rows:
        report.add_row(row)
    out = cfg.out_path("spectrum_g.csv")
    report.write(out)
    print(f"wrote {out}")
    if cfg["figure"]:
        from .plotting import render_spectrum_g

        png = os.path.splitext(out)[0] + ".png"
        render_spectrum_g(out, png)
        print(f"wrote {png}")
    return 0


def cmd_gaps(cfg: Scenario) -> int:
    """First-order dressed gaps against the dimensionless coupling g/Omega."""
    params, trunc = cfg.params, cfg.trunc
    grid = _sweep_grid(cfg, 0.0, 1.5)
    if grid[0] < 0:
        raise ConfigError("g/Omega sweep must be >= 0")
    manifold = cfg.manifold()
    m, L = manifold
    K_plot = cfg["K_plot"]
    second_order = not cfg["first_order"]

    columns = ["g_over_Omega", "alpha"] + [f"Omega_K{K}" for K in range(K_plot + 1)]

    def point(ratio: float) -> dict:
        p = params.replace(g=float(ratio) * params.Omega)
        row = {"g_over_Omega": float(ratio), "alpha": p.alpha}
        for K in range(K_plot + 1):
            idx = ResonanceIndex(m, L, 0, K)
            row[f"Omega_K{K}"] = dressed_gap(idx, p, trunc, second_order=second_order,
                                             shift_sign=cfg["shift_sign"])
        return row

    rows = _run_ordered([float(r) for r in grid], point, cfg["jobs"])
    report = CsvReport("gaps", cfg.echo_pairs(), columns)
    report.add_meta(f"manifold m={m} L={L}")
    import scipy.special

    for K in range(1, K_plot + 1):
        roots = scipy.special.roots_laguerre(K)[0]
        marks = " ".join(format_float(0.5 * math.sqrt(float(r))) for r in roots)
        report.add_meta(f"laguerre_zeros_K{K}={marks}")
    for row in rows:
        report.add_row(row)
    out = cfg.out_path("gaps.csv")
    report.write(out)
    print(f"wrote {out}")
    if cfg["figure"]:
        from .plotting import render_gaps

        png = os.path.splitext(out)[0] + ".png"
        render_gaps(out, png)
        print(f"wrote {png}")
    return 0


def cmd_dynamics(cfg: Scenario) -> int:
    """Survival probability and its spectrum: analytic and numeric paths."""
    params, trunc = cfg.params, cfg.trunc
    _warn_commensurable(cfg)
    manifold = cfg.manifold()
    theta = cfg["theta"]
    if cfg["n_samples"] < 2:
        raise ConfigError("n_samples must be >= 2")
    if cfg["t_span"] < 0:
        raise ConfigError("t_span must be > 0 (or 0 for automatic)")
    if cfg["t_span"] > 0:
        t_grid = np.arange(cfg["n_samples"]) * (cfg["t_span"] / cfg["n_samples"])
        if t_grid[-1] <= 0:
            raise ConfigError("time grid has zero duration")
    else:
        t_grid = default_time_grid(
            params, trunc, theta, manifold=manifold,
            n_samples=cfg["n_samples"], periods=cfg["periods"], threshold=cfg["threshold"],
        )

    second_order = not cfg["first_order"]
    ana = survival_analytic(params, theta, t_grid, trunc, manifold,
                            second_order=second_order, shift_sign=cfg["shift_sign"])
    spec_a = fourier_spectrum(ana)
    peaks = predict_peaks(params, trunc, theta, manifold=manifold,
                          threshold=cfg["threshold"], second_order=second_order,
                          shift_sign=cfg["shift_sign"])
    num = spec_n = None
    if cfg["numeric"]:
        num = survival_numeric(params, theta, t_grid, trunc,
                               steps_per_period=cfg["steps_per_period"])
        spec_n = fourier_spectrum(num)

    peak_meta = [
        f"peak {e.label} omega={format_float(e.omega)} weight={format_float(e.weight)} kind={e.kind}"
        for e in peaks
    ]

    out = cfg.out_path("dynamics.csv")
    stem = os.path.splitext(out)[0]

    ts_columns = ["t", "P_analytic"] + (["P_numeric"] if num is not None else [])
    ts_report = CsvReport("dynamics-timeseries", cfg.echo_pairs(), ts_columns)
    for line in peak_meta:
        ts_report.add_meta(line)
    for i, t in enumerate(ana.times):
        row = {"t": float(t), "P_analytic": float(ana.values[i])}
        if num is not None:
            row["P_numeric"] = float(num.values[i])
        ts_report.add_row(row)
    ts_path = stem + "_timeseries.csv"
    ts_report.write(ts_path)
    print(f"wrote {ts_path}")

    sp_columns = ["nu", "F_analytic"] + (["F_numeric"] if spec_n is not None else [])
    sp_report = CsvReport("dynamics-spectrum", cfg.echo_pairs(), sp_columns)
    for line in peak_meta:
        sp_report.add_meta(line)
    for i, nu in enumerate(spec_a.freqs):
        row = {"nu": float(nu), "F_analytic": float(spec_a.amps[i])}
        if spec_n is not None:
            row["F_numeric"] = float(spec_n.amps[i])
        sp_report.add_row(row)
    sp_path = stem + "_spectrum.csv"
    sp_report.write(sp_path)
    print(f"wrote {sp_path}")

    if cfg["figure"]:
        from .plotting import render_dynamics

        png = stem + ".png"
        render_dynamics(ts_path, sp_path, png)
        print(f"wrote {png}")
    return 0


def cmd_validate(cfg: Scenario) -> int:
    """Sanity report: units, commensurability, resonances, convergence probes."""
    params, trunc = cfg.params, cfg.trunc
    lines = []
    lines.append(f"drivenqo {__version__} validate")
    lines.append(f"units: {cfg.unit_name} = 1 (all frequencies normalized by it)")
    lines.append(
        "params: " + " ".join(
            f"{k}={format_float(getattr(params, k))}" for k in
            ("epsilon", "delta", "g", "Omega", "A", "omega_ex")
        )
    )
    lines.append(f"alpha=(2g/Omega)^2={format_float(params.alpha)} "
                 f"drive_ratio=A/omega_ex={format_float(params.drive_ratio)} "
                 f"Delta_0={format_float(dressed_delta(0, params.delta, params.A, params.omega_ex))}")

    hit = commensurability_check(params.Omega, params.omega_ex, 1000)
    if hit is None:
        lines.append("commensurability: none found up to denominator 1000")
    else:
        j, N = hit
        lines.append(
            f"commensurability: WARNING Omega/omega_ex = {j}/{N}; infinitely many "
            f"degenerate states, only processes of order >= {min(j, N)} affected"
        )

    near = find_resonances(
        params,
        (params.epsilon - 0.6 * params.omega_ex, params.epsilon + 0.6 * params.omega_ex),
        (-cfg["m_max"], cfg["m_max"]),
        cfg["L_max"],
    )
    if near:
        closest = min(near, key=lambda r: abs(params.epsilon - r[2]))
        m, L, eps_star = closest
        lines.append(
            f"nearest resonance: (m={m}, L={L}) at eps*={format_float(eps_star)}, "
            f"detuning={format_float(resonance_detuning(params, m, L))}"
        )
        doubled = trunc.replace(p_max=2 * trunc.p_max, P_max=2 * trunc.P_max)
        try:
            deltas = []
            for K in (0, 1):
                ix = ResonanceIndex(m, L, 0, K)
                a = quasienergies(ix, params, trunc, shift_sign=cfg["shift_sign"])
                b = quasienergies(ix, params, doubled, shift_sign=cfg["shift_sign"])
                deltas.append(abs(a[0].value - b[0].value))
                deltas.append(abs(a[1].value - b[1].value))
            lines.append(
                f"shift-sum convergence: max quasienergy change under p_max,P_max doubling = "
                f"{format_float(max(deltas))}"
            )
        except SmallDenominatorError as exc:
            lines.append(
                f"shift-sum convergence: doubling p_max,P_max reaches the commensurable "
                f"resonance at (p={exc.p}, P={exc.P}); keep the summation cutoffs below "
                "the commensurability order"
            )
    else:
        lines.append("nearest resonance: none within 0.6 omega_ex of the bias")

    probe = Truncation(
        k_max=min(trunc.k_max, 8), l_max=min(trunc.l_max, 12),
        p_max=trunc.p_max, P_max=trunc.P_max, denom_tol=trunc.denom_tol,
    )
    _, vals_a, vecs_a = sambe_eigensystem(params, probe)
    wl, wk = boundary_weights(vecs_a, probe.k_max, probe.l_max)
    keep = (wl <= 1e-4) & (wk <= 1e-4)
    bigger = probe.replace(l_max=probe.l_max + 10)
    _, vals_b, _ = sambe_eigensystem(params, bigger)
    fa = np.sort(fold_to_zone(vals_a[keep], params.omega_ex, cfg["zone_center"]))
    fb = np.sort(fold_to_zone(vals_b, params.omega_ex, cfg["zone_center"]))
    pos = np.searchsorted(fb, fa)
    pos = np.clip(pos, 1, len(fb) - 1)
    dist = np.minimum(np.abs(fa - fb[pos - 1]), np.abs(fa - fb[pos]))
    lines.append(
        f"oracle convergence: max folded-level shift under l_max+10 (probe cutoffs) = "
        f"{format_float(float(dist.max()) if dist.size else 0.0)}"
    )
    text = "\n".join(lines)
    print(text)
    out = cfg.norm["out"]
    if out:
        with open(cfg.out_path("validate.txt"), "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0


_COMMANDS = {
    "spectrum-eps": cmd_spectrum_eps,
    "spectrum-g": cmd_spectrum_g,
    "gaps": cmd_gaps,
    "dynamics": cmd_dynamics,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drivenqo",
        description="Driven qubit-oscillator quasienergy spectra and dynamics",
    )
    parser.add_argument("--version", action="version", version=f"drivenqo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in _COMMANDS.items():
        p = sub.add_parser(name, help=fn.__doc__)
        p.add_argument("--config", help="flat key=value configuration file")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a configuration key (repeatable)")
        p.add_argument("--out", help="output path (CSV; figures share the stem)")
        p.add_argument("--jobs", type=int, help="concurrent sweep evaluations")
        p.add_argument("--units", choices=("Omega", "omega_ex"),
                       help="normalize all frequencies to this unit")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = build_scenario(args)
        return _COMMANDS[args.command](cfg)
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DrivenQOError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
