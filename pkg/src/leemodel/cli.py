"""Command line driver: single-point runs, coupling sweeps, oracle validation.

Runs are described by a JSON config document so that every result is
reproducible from one artifact::

    {
      "model":  {"m_N": 1.0, "mu": 1.0,
                 "form_factor": {"kind": "sharp", "lambda": 10.0}},
      "input":  {"mode": "bare", "m_V0": 1.8, "g0": 1.0},
      "sweep":  {"parameter": "g0", "start": 0.0, "stop": 2.0, "steps": 9},
      "quad":   {"panels": 4, "nodes_per_panel": 24, "k_max": 400.0,
                 "abs_tol": 1e-10, "rel_tol": 1e-10},
      "oracle": {"n": 1024, "k_max": 9.9498743710662, "scheme": "gauss"},
      "output": {"path": "report.csv", "format": "csv"}
    }

Only ``input.mode`` and its mass are mandatory; everything else defaults as
shown (couplings default to 0, quad.k_max to 40*Lambda).  ``input.mode`` is
"bare" (fields m_V0, g0) or "renormalized" (fields m_V, g).  A sweep varies
"g0" in bare mode or "g" in renormalized mode over ``steps`` evenly spaced
values.  The "oracle" section is only consulted by --validate-oracle.

Output is a delimited table (CSV or JSON array) with one row per evaluated
point and the fixed column set::

    sweep_value, m_V, m_V0, delta_m, g0_sq, g_sq, x,
    z_standard, z_regularized, regime, error

Numbers are rendered with 17 significant digits, so parsing the file back
reproduces every float exactly; identical configs produce byte-identical
files.  Per-point failures in a sweep land in the "error" column and the run
continues.  Exit codes: 0 success, 2 bad configuration, 3 no bound state
(bare mode), 4 output I/O failure.  A ghost-regime result is a result, not
an error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .core import (BareCoupling, FormFactor, ModelParams, RenCoupling,
                   FORM_FACTOR_KINDS, SHARP)
from .errors import ConfigError, LeeModelError, NoBoundState
from .oracle import GRID_SCHEMES, GAUSS_LEGENDRE_K, convergence_study
from .quadrature import QuadSpec
from .renorm import RenormReport, full_report, solve_physical_mass, z_from_bare

COLUMNS = ("sweep_value", "m_V", "m_V0", "delta_m", "g0_sq", "g_sq", "x",
           "z_standard", "z_regularized", "regime", "error")

_DEFAULT_ORACLE_N = 1024


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    start: float
    stop: float
    steps: int


@dataclass(frozen=True)
class OracleSpec:
    n: int
    k_max: float
    scheme: str


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams
    mode: str
    bare: BareCoupling | None
    ren: RenCoupling | None
    sweep: SweepSpec | None
    quad: QuadSpec
    oracle: OracleSpec
    out_path: str
    out_format: str


def _section(doc: dict, name: str) -> dict:
    sec = doc.get(name, {})
    if not isinstance(sec, dict):
        raise ConfigError(name, "must be an object")
    return dict(sec)


def _no_leftovers(sec: dict, path: str) -> None:
    for key in sec:
        raise ConfigError(f"{path}.{key}", "unknown field")


def _real(sec: dict, path: str, key: str, default=None):
    if key not in sec:
        if default is None:
            raise ConfigError(f"{path}.{key}", "required field is missing")
        return default
    val = sec.pop(key)
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"{path}.{key}", "must be a number")
    val = float(val)
    if not math.isfinite(val):
        raise ConfigError(f"{path}.{key}", "must be finite")
    return val


def _integer(sec: dict, path: str, key: str, default=None):
    if key not in sec:
        return default
    val = sec.pop(key)
    if isinstance(val, bool) or not isinstance(val, int):
        raise ConfigError(f"{path}.{key}", "must be an integer")
    return val


def _string(sec: dict, path: str, key: str, default=None, choices=None):
    if key not in sec:
        if default is None:
            raise ConfigError(f"{path}.{key}", "required field is missing")
        return default
    val = sec.pop(key)
    if not isinstance(val, str):
        raise ConfigError(f"{path}.{key}", "must be a string")
    if choices is not None and val not in choices:
        raise ConfigError(f"{path}.{key}", f"must be one of {', '.join(choices)}")
    return val


def parse_config(text: str) -> RunConfig:
    """Validate a JSON config document and apply defaults."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("document", f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("document", "top level must be an object")
    known = {"model", "input", "sweep", "quad", "oracle", "output"}
    for key in doc:
        if key not in known:
            raise ConfigError(key, "unknown section")

    model = _section(doc, "model")
    ff_sec = model.pop("form_factor", {})
    if not isinstance(ff_sec, dict):
        raise ConfigError("model.form_factor", "must be an object")
    ff_sec = dict(ff_sec)
    kind = _string(ff_sec, "model.form_factor", "kind", default=SHARP,
                   choices=FORM_FACTOR_KINDS)
    lam = _real(ff_sec, "model.form_factor", "lambda", default=10.0)
    _no_leftovers(ff_sec, "model.form_factor")
    if lam <= 0.0:
        raise ConfigError("model.form_factor.lambda", "must be positive")
    m_n = _real(model, "model", "m_N", default=1.0)
    mu = _real(model, "model", "mu", default=1.0)
    _no_leftovers(model, "model")
    if mu <= 0.0:
        raise ConfigError("model.mu", "must be positive")
    params = ModelParams(m_n=m_n, mu=mu, form_factor=FormFactor(kind, lam))

    inp = _section(doc, "input")
    mode = _string(inp, "input", "mode", choices=("bare", "renormalized"))
    bare = ren = None
    if mode == "bare":
        m_v0 = _real(inp, "input", "m_V0")
        g0 = _real(inp, "input", "g0", default=0.0)
        if g0 < 0.0:
            raise ConfigError("input.g0", "must be nonnegative")
        bare = BareCoupling(m_v0=m_v0, g0=g0)
    else:
        m_v = _real(inp, "input", "m_V")
        g = _real(inp, "input", "g", default=0.0)
        if g < 0.0:
            raise ConfigError("input.g", "must be nonnegative")
        if not (m_v - params.m_n < params.mu):
            raise ConfigError("input.m_V",
                              "must lie below the N+theta threshold m_N + mu")
        ren = RenCoupling(m_v=m_v, g=g)
    _no_leftovers(inp, "input")

    sweep = None
    if "sweep" in doc:
        sw = _section(doc, "sweep")
        parameter = _string(sw, "sweep", "parameter", choices=("g", "g0"))
        if parameter == "g0" and mode != "bare":
            raise ConfigError("sweep.parameter", "g0 sweeps require bare mode")
        if parameter == "g" and mode != "renormalized":
            raise ConfigError("sweep.parameter", "g sweeps require renormalized mode")
        start = _real(sw, "sweep", "start", default=0.0)
        stop = _real(sw, "sweep", "stop")
        steps = _integer(sw, "sweep", "steps")
        _no_leftovers(sw, "sweep")
        if steps is None or steps < 2:
            raise ConfigError("sweep.steps", "must be an integer >= 2")
        if start < 0.0:
            raise ConfigError("sweep.start", "coupling values must be nonnegative")
        if not start < stop:
            raise ConfigError("sweep.start", "must be strictly less than sweep.stop")
        sweep = SweepSpec(parameter=parameter, start=start, stop=stop, steps=steps)

    qd = _section(doc, "quad")
    panels = _integer(qd, "quad", "panels", default=4)
    nodes = _integer(qd, "quad", "nodes_per_panel", default=24)
    k_max = _real(qd, "quad", "k_max", default=40.0 * lam)
    abs_tol = _real(qd, "quad", "abs_tol", default=1e-10)
    rel_tol = _real(qd, "quad", "rel_tol", default=1e-10)
    _no_leftovers(qd, "quad")
    try:
        quad = QuadSpec(panels=panels, nodes_per_panel=nodes, k_max=k_max,
                        abs_tol=abs_tol, rel_tol=rel_tol)
    except ValueError as exc:
        raise ConfigError("quad", str(exc)) from exc

    orc = _section(doc, "oracle")
    n = _integer(orc, "oracle", "n", default=_DEFAULT_ORACLE_N)
    cut = params.form_factor.momentum_cutoff(params.mu)
    oracle_k_max = _real(orc, "oracle", "k_max",
                         default=cut if cut else 40.0 * lam)
    scheme = _string(orc, "oracle", "scheme", default=GAUSS_LEGENDRE_K,
                     choices=GRID_SCHEMES)
    _no_leftovers(orc, "oracle")
    if n < 1:
        raise ConfigError("oracle.n", "must be a positive integer")
    if oracle_k_max <= 0.0:
        raise ConfigError("oracle.k_max", "must be positive")
    oracle = OracleSpec(n=n, k_max=oracle_k_max, scheme=scheme)

    out = _section(doc, "output")
    out_path = _string(out, "output", "path", default="report.csv")
    out_format = _string(out, "output", "format", default="csv",
                         choices=("csv", "json"))
    _no_leftovers(out, "output")

    return RunConfig(params=params, mode=mode, bare=bare, ren=ren, sweep=sweep,
                     quad=quad, oracle=oracle, out_path=out_path,
                     out_format=out_format)


def load_config(path: str) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def run_point(config: RunConfig) -> RenormReport:
    """Evaluate the configured single point (delegates to full_report)."""
    coupling = config.bare if config.mode == "bare" else config.ren
    return full_report(config.params, coupling, config.quad)


def _report_row(report: RenormReport, sweep_value: float | None = None) -> dict:
    return {
        "sweep_value": sweep_value,
        "m_V": report.m_v,
        "m_V0": report.m_v0,
        "delta_m": report.delta_m,
        "g0_sq": report.g0_sq,
        "g_sq": report.g_sq,
        "x": report.x,
        "z_standard": report.z_standard,
        "z_regularized": report.z_regularized,
        "regime": report.regime.value,
        "error": "",
    }


def _error_row(sweep_value: float, exc: Exception) -> dict:
    row = {key: None for key in COLUMNS}
    row["sweep_value"] = sweep_value
    row["regime"] = ""
    row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def run_sweep(config: RunConfig) -> list[dict]:
    """One row per sweep value, in sweep order; per-row errors do not abort."""
    sweep = config.sweep
    values = np.linspace(sweep.start, sweep.stop, sweep.steps)
    rows = []
    for value in values:
        value = float(value)
        try:
            if sweep.parameter == "g0":
                coupling = BareCoupling(m_v0=config.bare.m_v0, g0=value)
            else:
                coupling = RenCoupling(m_v=config.ren.m_v, g=value)
            report = full_report(config.params, coupling, config.quad)
            rows.append(_report_row(report, sweep_value=value))
        except LeeModelError as exc:
            rows.append(_error_row(value, exc))
    return rows


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return f"{value:.17g}"


def emit(table: list[dict], out_format: str, path: str) -> None:
    """Write the row table as CSV or JSON with full float fidelity."""
    if out_format == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(COLUMNS)
            for row in table:
                writer.writerow([_cell(row[col]) for col in COLUMNS])
    elif out_format == "json":
        ordered = [{col: row[col] for col in COLUMNS} for row in table]
        with open(path, "w", encoding="utf-8", newline="") as fh:
            json.dump(ordered, fh, indent=2)
            fh.write("\n")
    else:
        raise ValueError(f"unknown output format {out_format!r}")


def _validate_oracle(config: RunConfig) -> int:
    if config.mode != "bare":
        raise ConfigError("input.mode", "oracle validation needs a bare-mode configuration")
    m_v = solve_physical_mass(config.params, config.bare, config.quad)
    if m_v is None:
        raise NoBoundState("no bound state at the configured bare point")
    z = z_from_bare(config.params, config.bare.g0, m_v, config.quad)
    n = config.oracle.n
    n_list = sorted({max(8, n // 64), max(16, n // 16), max(32, n // 4), n})
    rows = convergence_study(config.params, config.bare, n_list,
                             config.oracle.k_max, config.oracle.scheme)
    print(f"continuum: m_V = {m_v:.12g}   Z_V = {z:.12g}")
    print(f"{'n':>8} {'m_V(n)':>20} {'Z_V(n)':>20} {'|err m_V|':>12} {'|err Z_V|':>12}")
    for size, lam, weight in rows:
        print(f"{size:>8} {lam:>20.12g} {weight:>20.12g} "
              f"{abs(lam - m_v):>12.3e} {abs(weight - z):>12.3e}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="leemodel",
        description="Renormalization of the one-V sector of the Lee model: "
                    "physical mass, wavefunction renormalization, ghost diagnostics.",
    )
    parser.add_argument("--config", required=True, help="path to the JSON run config")
    parser.add_argument("--out", help="override output.path from the config")
    parser.add_argument("--format", choices=("csv", "json"),
                        help="override output.format from the config")
    parser.add_argument("--validate-oracle", action="store_true",
                        help="run the discretized-Hamiltonian convergence table "
                             "instead of writing an output file")
    args = parser.parse_args(argv)

    try:
        config = load_config(args.config)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 4
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.validate_oracle:
            return _validate_oracle(config)
        if config.sweep is not None:
            table = run_sweep(config)
            good = sum(1 for row in table if not row["error"])
            summary = (f"sweep {config.sweep.parameter}: {good}/{len(table)} points ok "
                       f"over [{config.sweep.start:g}, {config.sweep.stop:g}]")
        else:
            report = run_point(config)
            table = [_report_row(report)]
            summary = (f"point: regime={report.regime.value} m_V={report.m_v:.9g} "
                       f"x={report.x:.9g} Z={report.z_regularized:.9g}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NoBoundState as exc:
        print(f"no bound state: {exc}", file=sys.stderr)
        return 3
    except LeeModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    out_path = args.out or config.out_path
    out_format = args.format or config.out_format
    try:
        emit(table, out_format, out_path)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 4
    print(f"{summary} -> {out_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
