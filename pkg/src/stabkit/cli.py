"""Command-line front end.

Every subcommand resolves its parameters, runs the corresponding module
operation, prints a one-line human summary, and (when --output is given)
writes the data table plus a JSON metadata sidecar (<output>.meta.json)
recording inputs, tolerances, and timings so the run can be reproduced
exactly.  Tables use a fixed, documented column order with a mandatory
header, '.' as decimal separator, and 17 significant digits.

Exit status: 0 on success, 1 on computation errors (domain violations,
missing brackets, ...), 2 on configuration errors.  Errors are emitted to
stderr as a one-line JSON record {"error": <class>, "message": <text>}.

Column orders:
  verdict          a1,a2,a3,a4,left_count,imag_count,right_count,label,boundary_resolved
  bottema-limit    k11,k12,k22,d11,d12,d22,nu0,nu_cr,nu_cr_first_order
  ziegler          b,m,l,c,P_analytic,P_bisected
  hulten           mu,omega01,omega02,eta1,eta2,left_count,imag_count,right_count,label
  gyro-spectrum    index,re,im
  gyro-umbrella    delta,nu,Omega_cr_analytic,Omega_cr_bisected
  maxwell-bloch    Omega,delta,nu,kappa,stable_closed,label
  floquet          eta,max_modulus,stable,eta_b_analytic_lo,eta_b_analytic_hi
  beck             d1,d2,q_cr_numeric,q_cr_be12
  baroclinic       thresholds: alpha,U_cI,U_cR; portrait: U,re_c1,im_c1,re_c2,im_c2
  umbrella-sample  x1,x2,y1,y2,y3,a1,a2,a3,residual_umbrella,residual_surface
  sweep            <axis names...>,value

The STABKIT_THREADS environment variable sets the worker count for the
`sweep` subcommand (default 1).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import baroclinic as baro
from . import beck as beckmod
from . import circulatory as circ
from . import floquet as floq
from . import gyro as gyromod
from .errors import ConfigError, DomainError, StabkitError
from .quartic import DEFAULT_BAND_TOL, QuarticCoeffs, hurwitz_verdict
from .sweep import SweepAxis, SweepGrid
from .umbrella import sample_umbrella

__all__ = ["RunConfig", "run", "main"]

_REQUIRED = object()

_J = np.array([[0.0, 1.0], [-1.0, 0.0]])

# parameter name -> (type, default); _REQUIRED means the flag must be given
_SCHEMAS: dict[str, dict[str, tuple[type, object]]] = {
    "verdict": {
        "a1": (float, _REQUIRED),
        "a2": (float, _REQUIRED),
        "a3": (float, _REQUIRED),
        "a4": (float, _REQUIRED),
    },
    "bottema-limit": {
        "k11": (float, 1.0),
        "k12": (float, 0.0),
        "k22": (float, 4.0),
        "d11": (float, 1.0),
        "d12": (float, 0.0),
        "d22": (float, 0.0),
    },
    "ziegler": {
        "b": (float, 0.0),
        "m": (float, 1.0),
        "l": (float, 1.0),
        "c": (float, 1.0),
    },
    "hulten": {
        "omega01": (float, 1.0),
        "omega02": (float, 2.0),
        "eta1": (float, 0.0),
        "eta2": (float, 0.0),
        "mu": (float, 0.0),
        "mu_max": (float, None),
        "grid": (int, 50),
    },
    "gyro-spectrum": {
        "k11": (float, -1.0),
        "k12": (float, 0.0),
        "k22": (float, -4.0),
        "g": (float, 1.0),
        "d11": (float, 1.0),
        "d12": (float, 0.0),
        "d22": (float, 1.0),
        "Omega": (float, 0.0),
        "delta": (float, 0.0),
        "nu": (float, 0.0),
    },
    "gyro-umbrella": {
        "k11": (float, -1.0),
        "k12": (float, 0.0),
        "k22": (float, -4.0),
        "d11": (float, 1.0),
        "d12": (float, 0.0),
        "d22": (float, 1.0),
        "delta": (float, 1e-3),
        "gamma_lo": (float, 0.5),
        "gamma_hi": (float, 3.0),
        "grid": (int, 5),
    },
    "maxwell-bloch": {
        "Omega": (float, 0.0),
        "delta": (float, 1.0),
        "nu": (float, 0.0),
        "kappa": (float, 1.0),
        "Omega_lo": (float, None),
        "Omega_hi": (float, None),
        "grid": (int, 50),
    },
    "floquet": {
        "alpha": (float, 1.0),
        "epsilon": (float, 0.05),
        "kappa": (float, 0.0),
        "eta_lo": (float, None),
        "eta_hi": (float, None),
        "grid": (int, 41),
        "steps": (int, 1024),
    },
    "beck": {
        "d1": (float, 0.0),
        "d2": (float, 0.0),
        "n_modes": (int, 12),
        "d1_lo": (float, None),
        "d1_hi": (float, None),
        "d1_grid": (int, 1),
        "d2_lo": (float, None),
        "d2_hi": (float, None),
        "d2_grid": (int, 1),
    },
    "baroclinic": {
        "mode": (str, "thresholds"),
        "F": (float, 10.0),
        "beta": (float, 1.0),
        "r": (float, 0.0),
        "m": (int, 1),
        "alpha": (float, 1.0),
        "alpha_lo": (float, 0.5),
        "alpha_hi": (float, 3.0),
        "U_lo": (float, 0.0),
        "U_hi": (float, 0.3),
        "grid": (int, 50),
    },
    "umbrella-sample": {
        "grid": (int, 100),
        "x1_lo": (float, -1.5),
        "x1_hi": (float, 1.5),
        "x2_lo": (float, 0.0),
        "x2_hi": (float, 3.0),
    },
    "sweep": {
        "target": (str, _REQUIRED),
        "axis": (list, _REQUIRED),
        "fixed": (list, None),
    },
}


@dataclass
class RunConfig:
    """One reproducible invocation: subcommand, parameters, output, tolerances."""

    subcommand: str
    params: dict = field(default_factory=dict)
    output: str | None = None
    format: str = "csv"
    seed: int | None = None
    tolerances: dict = field(default_factory=dict)


def _resolve_params(config: RunConfig) -> dict:
    schema = _SCHEMAS.get(config.subcommand)
    if schema is None:
        raise ConfigError(f"unknown subcommand {config.subcommand!r}")
    unknown = set(config.params) - set(schema)
    if unknown:
        raise ConfigError(f"unknown parameter(s) for {config.subcommand}: {sorted(unknown)}")
    if config.format not in ("csv", "json"):
        raise ConfigError("format must be 'csv' or 'json'")
    for name, value in config.tolerances.items():
        if not (isinstance(value, (int, float)) and value > 0.0):
            raise ConfigError(f"tolerance {name!r} must be a positive number")
    resolved = {}
    for name, (typ, default) in schema.items():
        if name in config.params and config.params[name] is not None:
            value = config.params[name]
            if typ in (float, int) and not isinstance(value, typ):
                try:
                    value = typ(value)
                except (TypeError, ValueError) as exc:
                    raise ConfigError(f"parameter {name!r} must be {typ.__name__}") from exc
            resolved[name] = value
        elif default is _REQUIRED:
            raise ConfigError(f"missing required parameter {name!r} for {config.subcommand}")
        else:
            resolved[name] = default
    return resolved


def _thread_count() -> int:
    raw = os.environ.get("STABKIT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigError("STABKIT_THREADS must be an integer") from exc
    if n < 1:
        raise ConfigError("STABKIT_THREADS must be >= 1")
    return n


# ---------------------------------------------------------------------------
# handlers: each returns (columns, rows, summary, extra metadata)


def _run_verdict(p: dict, tol: dict):
    q = QuarticCoeffs(p["a1"], p["a2"], p["a3"], p["a4"])
    v = hurwitz_verdict(q, tol=tol.get("band", DEFAULT_BAND_TOL))
    columns = [
        "a1", "a2", "a3", "a4",
        "left_count", "imag_count", "right_count", "label", "boundary_resolved",
    ]
    rows = [[q.a1, q.a2, q.a3, q.a4, v.left_count, v.imag_count, v.right_count,
             v.label.value, v.boundary_resolved]]
    summary = (
        f"{v.label.value} left_count={v.left_count} "
        f"imag_count={v.imag_count} right_count={v.right_count}"
    )
    return columns, rows, summary, {}


def _run_bottema_limit(p: dict, tol: dict):
    K = np.array([[p["k11"], p["k12"]], [p["k12"], p["k22"]]])
    D = np.array([[p["d11"], p["d12"]], [p["d12"], p["d22"]]])
    nu0 = circ.nu_critical_undamped(K)
    nu_cr = circ.nu_critical_damped_limit(K, D)
    first = circ.nu_critical_damped_first_order(K, D) if nu0 > 0.0 else math.nan
    columns = ["k11", "k12", "k22", "d11", "d12", "d22", "nu0", "nu_cr", "nu_cr_first_order"]
    rows = [[p["k11"], p["k12"], p["k22"], p["d11"], p["d12"], p["d22"], nu0, nu_cr, first]]
    return columns, rows, f"nu0={nu0:.12g} nu_cr={nu_cr:.12g}", {}


def _run_ziegler(p: dict, tol: dict):
    zp = circ.ZieglerParams(m=p["m"], l=p["l"], c=p["c"])
    analytic = circ.ziegler_critical_load(p["b"], zp)
    bisected = circ.ziegler_critical_load_bisected(p["b"], zp, tol=tol.get("bisect", 1e-12))
    columns = ["b", "m", "l", "c", "P_analytic", "P_bisected"]
    rows = [[p["b"], p["m"], p["l"], p["c"], analytic, bisected]]
    return columns, rows, f"{analytic:.8g}", {}


def _run_hulten(p: dict, tol: dict):
    if p["mu_max"] is not None:
        mus = np.linspace(p["mu"], p["mu_max"], p["grid"])
    else:
        mus = np.array([p["mu"]])
    columns = ["mu", "omega01", "omega02", "eta1", "eta2",
               "left_count", "imag_count", "right_count", "label"]
    rows = []
    for mu in mus:
        hp = circ.HultenParams(
            omega01=p["omega01"], omega02=p["omega02"],
            eta1=p["eta1"], eta2=p["eta2"], mu=float(mu),
        )
        v = hurwitz_verdict(circ.hulten_quartic(hp), tol=tol.get("band", DEFAULT_BAND_TOL))
        rows.append([float(mu), p["omega01"], p["omega02"], p["eta1"], p["eta2"],
                     v.left_count, v.imag_count, v.right_count, v.label.value])
    mu_c = circ.hulten_critical_mu_undamped(
        circ.HultenParams(omega01=p["omega01"], omega02=p["omega02"]))
    return columns, rows, f"rows={len(rows)} mu_critical_undamped={mu_c:.12g}", {}


def _gyro_system(p: dict) -> gyromod.GyroSystem:
    K = np.array([[p["k11"], p["k12"]], [p["k12"], p["k22"]]])
    D = np.array([[p["d11"], p["d12"]], [p["d12"], p["d22"]]])
    g = p.get("g", 1.0)
    return gyromod.GyroSystem(K=K, G=g * _J, D=D, N=_J)


def _run_gyro_spectrum(p: dict, tol: dict):
    sys_ = gyromod.GyroSystem(
        K=np.array([[p["k11"], p["k12"]], [p["k12"], p["k22"]]]),
        G=p["g"] * _J,
        D=np.array([[p["d11"], p["d12"]], [p["d12"], p["d22"]]]),
        N=_J,
        Omega=p["Omega"],
        delta=p["delta"],
        nu=p["nu"],
    )
    eigs = gyromod.spectrum(sys_)
    columns = ["index", "re", "im"]
    rows = [[i, float(l.real), float(l.imag)] for i, l in enumerate(eigs)]
    abscissa = float(np.max(eigs.real))
    return columns, rows, f"spectral_abscissa={abscissa:.12g}", {}


def _run_gyro_umbrella(p: dict, tol: dict):
    sys_ = _gyro_system(p)
    data = gyromod.find_krein_collision(sys_)
    delta = p["delta"]
    if delta <= 0.0:
        raise ConfigError("delta must be > 0")
    columns = ["delta", "nu", "Omega_cr_analytic", "Omega_cr_bisected"]
    rows = []
    for gamma in np.linspace(p["gamma_lo"], p["gamma_hi"], p["grid"]):
        nu = float(gamma) * delta
        analytic = gyromod.omega_cr_surface(data, delta, nu)
        bisected = gyromod.omega_cr_bisected(sys_, delta, nu, tol=tol.get("bisect", 1e-10))
        rows.append([delta, nu, analytic, bisected])
    summary = f"Omega0={data.Omega0:.10g} omega0={data.omega0:.10g} rows={len(rows)}"
    return columns, rows, summary, {"Omega0": data.Omega0, "omega0": data.omega0}


def _run_maxwell_bloch(p: dict, tol: dict):
    if p["Omega_lo"] is not None and p["Omega_hi"] is not None:
        omegas = np.linspace(p["Omega_lo"], p["Omega_hi"], p["grid"])
    else:
        omegas = np.array([p["Omega"]])
    columns = ["Omega", "delta", "nu", "kappa", "stable_closed", "label"]
    rows = []
    for Om in omegas:
        mb = gyromod.MaxwellBlochParams(
            Omega=float(Om), delta=p["delta"], nu=p["nu"], kappa=p["kappa"])
        closed = gyromod.maxwell_bloch_stable_closed(mb)
        v = gyromod.maxwell_bloch_verdict(mb)
        rows.append([float(Om), p["delta"], p["nu"], p["kappa"], closed, v.label.value])
    return columns, rows, f"rows={len(rows)} last_label={rows[-1][5]}", {}


def _run_floquet(p: dict, tol: dict):
    base = floq.RotorParams(alpha=p["alpha"], epsilon=p["epsilon"], kappa=p["kappa"])
    eta0 = base.eta0
    lo = p["eta_lo"] if p["eta_lo"] is not None else eta0 * (1.0 - 3.0 * p["epsilon"])
    hi = p["eta_hi"] if p["eta_hi"] is not None else eta0 * (1.0 + 3.0 * p["epsilon"])
    try:
        blo = floq.tongue_boundary_analytic(base, -1)
        bhi = floq.tongue_boundary_analytic(base, +1)
    except StabkitError:
        blo = bhi = math.nan
    columns = ["eta", "max_modulus", "stable", "eta_b_analytic_lo", "eta_b_analytic_hi"]
    rows = []
    for eta in np.linspace(lo, hi, p["grid"]):
        rp = floq.RotorParams(
            alpha=p["alpha"], epsilon=p["epsilon"], eta=float(eta), kappa=p["kappa"])
        res = floq.monodromy(rp, steps=p["steps"])
        rows.append([float(eta), res.max_modulus, res.stable, blo, bhi])
    n_unstable = sum(1 for r in rows if not r[2])
    return columns, rows, f"rows={len(rows)} unstable={n_unstable} bounds=({blo:.6g},{bhi:.6g})", {}


def _run_beck(p: dict, tol: dict):
    if p["d1_lo"] is not None and p["d1_hi"] is not None:
        d1s = np.linspace(p["d1_lo"], p["d1_hi"], p["d1_grid"])
    else:
        d1s = np.array([p["d1"]])
    if p["d2_lo"] is not None and p["d2_hi"] is not None:
        d2s = np.linspace(p["d2_lo"], p["d2_hi"], p["d2_grid"])
    else:
        d2s = np.array([p["d2"]])
    columns = ["d1", "d2", "q_cr_numeric", "q_cr_be12"]
    rows = []
    for d1 in d1s:
        for d2 in d2s:
            q_cr, _ = beckmod.flutter_load(float(d1), float(d2), n_modes=p["n_modes"])
            try:
                approx = beckmod.be12_surface(float(d1), float(d2))
            except DomainError:
                approx = math.nan
            rows.append([float(d1), float(d2), q_cr, approx])
    return columns, rows, f"rows={len(rows)} q_cr={rows[0][2]:.8g}", {}


def _run_baroclinic(p: dict, tol: dict):
    if p["mode"] == "thresholds":
        columns = ["alpha", "U_cI", "U_cR"]
        rows = []
        for alpha in np.linspace(p["alpha_lo"], p["alpha_hi"], p["grid"]):
            bp = baro.BaroclinicParams(
                F=p["F"], beta=p["beta"], r=0.0, alpha=float(alpha), m=p["m"])
            try:
                uci = baro.inviscid_threshold(bp)
            except DomainError:
                uci = math.nan
            try:
                ucr = baro.vanishing_viscosity_threshold(bp)
            except DomainError:
                ucr = math.nan
            rows.append([float(alpha), uci, ucr])
        return columns, rows, f"rows={len(rows)}", {}
    if p["mode"] == "portrait":
        bp = baro.BaroclinicParams(F=p["F"], beta=p["beta"], r=p["r"], alpha=p["alpha"], m=p["m"])
        table = baro.merging_portrait(bp, np.linspace(p["U_lo"], p["U_hi"], p["grid"]), p["r"])
        columns = ["U", "re_c1", "im_c1", "re_c2", "im_c2"]
        rows = [
            [U, roots.c1.real, roots.c1.imag, roots.c2.real, roots.c2.imag]
            for U, roots in table
        ]
        worst = max(r.max_growth for _, r in table)
        return columns, rows, f"rows={len(rows)} max_growth={worst:.6g}", {}
    raise ConfigError("mode must be 'thresholds' or 'portrait'")


def _run_umbrella_sample(p: dict, tol: dict):
    arr = sample_umbrella(
        p["grid"],
        x1_range=(p["x1_lo"], p["x1_hi"]),
        x2_range=(p["x2_lo"], p["x2_hi"]),
    )
    columns = ["x1", "x2", "y1", "y2", "y3", "a1", "a2", "a3",
               "residual_umbrella", "residual_surface"]
    rows = [list(map(float, row)) for row in arr]
    worst = float(np.nanmax(arr[:, 8]))
    return columns, rows, f"rows={len(rows)} max_residual={worst:.3g}", {}


# sweep targets: name -> (defaults, value function)
_SWEEP_TARGETS = {
    "quartic-label": (
        {"a1": 1.0, "a2": 1.0, "a3": 1.0, "a4": 1.0},
        lambda v: hurwitz_verdict(QuarticCoeffs(v["a1"], v["a2"], v["a3"], v["a4"])).label.value,
    ),
    "mb-stable": (
        {"Omega": 0.0, "delta": 1.0, "nu": 0.0, "kappa": 1.0},
        lambda v: int(
            gyromod.maxwell_bloch_stable_closed(
                gyromod.MaxwellBlochParams(v["Omega"], v["delta"], v["nu"], v["kappa"])
            )
        ),
    ),
    "ziegler-right-count": (
        {"P": 0.0, "b": 0.0},
        lambda v: hurwitz_verdict(
            circ.ziegler_quartic(circ.ZieglerParams(P=v["P"], b=v["b"]))
        ).right_count,
    ),
    "ziegler-label": (
        {"P": 0.0, "b": 0.0},
        lambda v: hurwitz_verdict(
            circ.ziegler_quartic(circ.ZieglerParams(P=v["P"], b=v["b"]))
        ).label.value,
    ),
    "hulten-right-count": (
        {"mu": 0.0, "omega01": 1.0, "omega02": 2.0, "eta1": 0.0, "eta2": 0.0},
        lambda v: hurwitz_verdict(
            circ.hulten_quartic(
                circ.HultenParams(
                    omega01=v["omega01"], omega02=v["omega02"],
                    eta1=v["eta1"], eta2=v["eta2"], mu=v["mu"],
                )
            )
        ).right_count,
    ),
    "hulten-label": (
        {"mu": 0.0, "omega01": 1.0, "omega02": 2.0, "eta1": 0.0, "eta2": 0.0},
        lambda v: hurwitz_verdict(
            circ.hulten_quartic(
                circ.HultenParams(
                    omega01=v["omega01"], omega02=v["omega02"],
                    eta1=v["eta1"], eta2=v["eta2"], mu=v["mu"],
                )
            )
        ).label.value,
    ),
}


def _parse_axis(spec: str) -> SweepAxis:
    parts = spec.split(":")
    if len(parts) not in (4, 5):
        raise ConfigError(f"axis spec {spec!r} must be name:lo:hi:count[:scale]")
    name, lo, hi, count = parts[0], parts[1], parts[2], parts[3]
    scale = parts[4] if len(parts) == 5 else "linear"
    try:
        return SweepAxis(name=name, lo=float(lo), hi=float(hi), count=int(count), scale=scale)
    except (ValueError, DomainError) as exc:
        raise ConfigError(f"bad axis spec {spec!r}: {exc}") from exc


def _run_sweep(p: dict, tol: dict):
    target = p["target"]
    if target not in _SWEEP_TARGETS:
        raise ConfigError(
            f"unknown sweep target {target!r}; known: {sorted(_SWEEP_TARGETS)}")
    defaults, fn = _SWEEP_TARGETS[target]
    axes = [_parse_axis(a) for a in p["axis"]]
    fixed = {}
    for item in p["fixed"] or []:
        if "=" not in item:
            raise ConfigError(f"fixed spec {item!r} must be key=value")
        key, _, val = item.partition("=")
        fixed[key] = float(val)
    known = set(defaults)
    bad = ({a.name for a in axes} | set(fixed)) - known
    if bad:
        raise ConfigError(f"unknown parameter(s) {sorted(bad)} for target {target!r}")
    grid = SweepGrid(axes=tuple(axes))

    def evaluate(point: dict):
        values = dict(defaults)
        values.update(fixed)
        values.update(point)
        return fn(values)

    results = grid.evaluate(evaluate, threads=_thread_count())
    columns = [a.name for a in axes] + ["value"]
    rows = [
        [pt[a.name] for a in axes] + [val]
        for pt, val in zip(grid.grid_points(), results)
    ]
    return columns, rows, f"rows={len(rows)} target={target}", {"fixed": fixed}


_HANDLERS = {
    "verdict": _run_verdict,
    "bottema-limit": _run_bottema_limit,
    "ziegler": _run_ziegler,
    "hulten": _run_hulten,
    "gyro-spectrum": _run_gyro_spectrum,
    "gyro-umbrella": _run_gyro_umbrella,
    "maxwell-bloch": _run_maxwell_bloch,
    "floquet": _run_floquet,
    "beck": _run_beck,
    "baroclinic": _run_baroclinic,
    "umbrella-sample": _run_umbrella_sample,
    "sweep": _run_sweep,
}


# ---------------------------------------------------------------------------
# output formatting


def _format_cell(value) -> str:
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    x = float(value)
    if math.isnan(x):
        return "nan"
    return format(x, ".17g")


def _json_cell(value):
    if value is None:
        return None
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, str):
        return value
    x = float(value)
    return None if not math.isfinite(x) else x


def _write_output(config: RunConfig, params: dict, columns, rows, extra, elapsed: float):
    path = config.output
    if path is None:
        return
    if config.format == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_format_cell(v) for v in row])
    else:
        payload = {"columns": list(columns),
                   "rows": [[_json_cell(v) for v in row] for row in rows]}
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    meta = {
        "subcommand": config.subcommand,
        "params": {k: _json_cell(v) if not isinstance(v, list) else v
                   for k, v in params.items()},
        "tolerances": dict(config.tolerances),
        "seed": config.seed,
        "format": config.format,
        "columns": list(columns),
        "row_count": len(rows),
        "timings": {"wall_seconds": elapsed},
        "versions": _versions(),
    }
    with open(path + ".meta.json", "w") as fh:
        json.dump(meta, fh, indent=1)
        fh.write("\n")


def _versions() -> dict:
    import scipy

    try:
        from importlib.metadata import version

        pkg = version("artifact")
    except Exception:
        pkg = "unknown"
    return {
        "package": pkg,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "python": sys.version.split()[0],
    }


def run(config: RunConfig) -> int:
    """Execute one configuration; returns 0, raising on errors."""
    params = _resolve_params(config)
    handler = _HANDLERS[config.subcommand]
    start = time.perf_counter()
    columns, rows, summary, extra = handler(params, config.tolerances)
    elapsed = time.perf_counter() - start
    _write_output(config, params, columns, rows, extra, elapsed)
    print(summary)
    if config.output:
        print(f"wrote {len(rows)} row(s) to {config.output}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabkit",
        description="Stability analysis of non-conservative linear systems",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, schema in _SCHEMAS.items():
        sp = sub.add_parser(name)
        for pname, (typ, default) in schema.items():
            flag = "--" + pname.replace("_", "-")
            if typ is list:
                sp.add_argument(flag, dest=pname, action="append",
                                required=default is _REQUIRED)
            elif typ is str:
                sp.add_argument(flag, dest=pname, type=str,
                                default=None if default is _REQUIRED else None,
                                required=default is _REQUIRED)
            else:
                sp.add_argument(flag, dest=pname, type=typ, default=None,
                                required=default is _REQUIRED)
        sp.add_argument("--output", type=str, default=None)
        sp.add_argument("--format", type=str, default="csv", choices=("csv", "json"))
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--tol", action="append", default=[],
                        help="tolerance override name=value (repeatable)")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    schema = _SCHEMAS[args.subcommand]
    params = {}
    for pname in schema:
        value = getattr(args, pname, None)
        if value is not None:
            params[pname] = value
    tolerances = {}
    for item in args.tol:
        if "=" not in item:
            raise ConfigError(f"tolerance spec {item!r} must be name=value")
        key, _, val = item.partition("=")
        try:
            tolerances[key] = float(val)
        except ValueError as exc:
            raise ConfigError(f"tolerance {key!r} must be a number") from exc
    return RunConfig(
        subcommand=args.subcommand,
        params=params,
        output=args.output,
        format=args.format,
        seed=args.seed,
        tolerances=tolerances,
    )


def _emit_error(exc: Exception) -> None:
    record = {"error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(record), file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return run(config)
    except ConfigError as exc:
        _emit_error(exc)
        return 2
    except StabkitError as exc:
        _emit_error(exc)
        return 1
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        _emit_error(exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
