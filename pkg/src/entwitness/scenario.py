"""Scenario configuration, built-in presets, runs, sweeps, and CSV output.

Configs are flat YAML mappings; every quantity is in units of ``gamma0``.
"""

import dataclasses
from dataclasses import dataclass

import numpy as np
import yaml

from .dynamics import (ReservoirParams, Trajectory, TrajectorySample,
                       bell_initial, correlation_f, propagate)
from .errors import EmptyTrajectory, ParseError, ValidationError
from .information import uncertainty_record
from .witness import WitnessReport, concurrence, witness_report

ALLOWED_OUTPUTS = ("mu", "lhs", "concurrence", "f_a", "f_b", "rho")
DEFAULT_OUTPUTS = ("mu", "lhs", "concurrence", "f_a", "f_b")
INITIAL_STATES = ("bell_phi_plus",)

CSV_HEADER = "t,mu,lhs,concurrence,f_a_re,f_a_im,f_b_re,f_b_im"
REPORT_KEYS = ("t_ew", "c_ew_threshold", "death_time", "crossing_found", "mu_series_max")


@dataclass(frozen=True)
class ScenarioConfig:
    """Complete description of one run; all rates/times in units of ``gamma0``."""

    lambda_a: float
    lambda_b: float
    t_max: float
    gamma0: float = 1.0
    delta_a: float = 0.0
    delta_b: float = 0.0
    dt: float = 1e-2
    sample_every: int = 1
    initial_state: str = "bell_phi_plus"
    outputs: tuple[str, ...] = DEFAULT_OUTPUTS

    def __post_init__(self):
        for key in ("lambda_a", "lambda_b", "t_max", "gamma0", "delta_a", "delta_b", "dt"):
            value = getattr(self, key)
            if isinstance(value, bool) or not isinstance(value, (int, float)) \
                    or not np.isfinite(value):
                raise ValidationError(f"{key}: must be a finite number, got {value!r}")
            object.__setattr__(self, key, float(value))
        for key in ("lambda_a", "lambda_b", "t_max", "dt", "gamma0"):
            if getattr(self, key) <= 0:
                raise ValidationError(f"{key}: must be > 0, got {getattr(self, key)}")
        for key in ("delta_a", "delta_b"):
            if getattr(self, key) < 0:
                raise ValidationError(f"{key}: must be >= 0, got {getattr(self, key)}")
        if not (isinstance(self.sample_every, int) and not isinstance(self.sample_every, bool)
                and self.sample_every >= 1):
            raise ValidationError(f"sample_every: must be an integer >= 1, got {self.sample_every!r}")
        if self.initial_state not in INITIAL_STATES:
            raise ValidationError(
                f"initial_state: expected one of {INITIAL_STATES}, got {self.initial_state!r}")
        object.__setattr__(self, "outputs", tuple(self.outputs))
        bad = [o for o in self.outputs if o not in ALLOWED_OUTPUTS]
        if bad:
            raise ValidationError(f"outputs: unknown entries {bad}; allowed {ALLOWED_OUTPUTS}")

    def reservoirs(self) -> tuple[ReservoirParams, ReservoirParams]:
        return (ReservoirParams(lam=self.lambda_a, delta=self.delta_a, gamma0=self.gamma0),
                ReservoirParams(lam=self.lambda_b, delta=self.delta_b, gamma0=self.gamma0))


def _cfg(la, lb, da, db, t_max):
    return ScenarioConfig(lambda_a=la, lambda_b=lb, delta_a=da, delta_b=db, t_max=t_max)


# Named parameter sets, ids following a figure/panel naming scheme.  In the
# asymmetric-detuning families (fig2*) the detuned reservoir sits on the
# measured atom A and the resonant one on the memory B; the fig3b family
# instead detunes the memory-side (Markovian) reservoir.
PRESETS: dict[str, ScenarioConfig] = {
    # identical reservoirs, non-Markovian width, varying common detuning
    "fig1a_d0": _cfg(0.1, 0.1, 0.0, 0.0, 12.0),
    "fig1a_d12": _cfg(0.1, 0.1, 1.2, 1.2, 40.0),
    "fig1a_d16": _cfg(0.1, 0.1, 1.6, 1.6, 70.0),
    # identical reservoirs, common detuning 1, varying width
    "fig1b_l5": _cfg(5.0, 5.0, 1.0, 1.0, 3.0),
    "fig1b_l01": _cfg(0.1, 0.1, 1.0, 1.0, 25.0),
    "fig1b_l008": _cfg(0.08, 0.08, 1.0, 1.0, 40.0),
    # equal widths, one reservoir detuned (on the measured atom)
    "fig2a_db0": _cfg(0.1, 0.1, 0.0, 0.0, 10.0),
    "fig2a_db2": _cfg(0.1, 0.1, 2.0, 0.0, 10.0),
    "fig2a_db4": _cfg(0.1, 0.1, 4.0, 0.0, 10.0),
    "fig2b_l5": _cfg(5.0, 5.0, 2.0, 0.0, 10.0),
    "fig2b_l01": _cfg(0.1, 0.1, 2.0, 0.0, 10.0),
    "fig2b_l005": _cfg(0.05, 0.05, 2.0, 0.0, 10.0),
    # mixed widths: non-Markovian measured atom, Markovian memory
    "fig3a_d0": _cfg(0.1, 5.0, 0.0, 0.0, 3.0),
    "fig3a_d1": _cfg(0.1, 5.0, 1.0, 1.0, 3.0),
    "fig3a_d2": _cfg(0.1, 5.0, 2.0, 2.0, 3.0),
    "fig3b_db0": _cfg(0.1, 5.0, 0.0, 0.0, 3.0),
    "fig3b_db1": _cfg(0.1, 5.0, 0.0, 1.0, 3.0),
    "fig3b_db2": _cfg(0.1, 5.0, 0.0, 2.0, 3.0),
    # long runs for the correlation-function curves
    "fig4a_d0": _cfg(0.1, 0.1, 0.0, 0.0, 50.0),
    "fig4a_d12": _cfg(0.1, 0.1, 1.2, 1.2, 50.0),
    "fig4a_d16": _cfg(0.1, 0.1, 1.6, 1.6, 50.0),
    "fig4b_l5": _cfg(5.0, 5.0, 1.0, 1.0, 50.0),
    "fig4b_l01": _cfg(0.1, 0.1, 1.0, 1.0, 50.0),
    "fig4b_l005": _cfg(0.05, 0.05, 1.0, 1.0, 50.0),
}

_FIELD_TYPES = {f.name: f for f in dataclasses.fields(ScenarioConfig)}


def parse_config(text: str) -> ScenarioConfig:
    """Parse a flat YAML mapping into a validated config with defaults applied.

    Unknown keys are rejected; error messages name the offending key.
    """
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"invalid YAML: {exc}") from exc
    if raw is None:
        raise ParseError("empty config")
    if not isinstance(raw, dict):
        raise ParseError(f"config must be a flat key-value mapping, got {type(raw).__name__}")
    kwargs = {}
    for key, value in raw.items():
        if key not in _FIELD_TYPES:
            raise ValidationError(f"{key}: unknown key")
        if key == "outputs":
            if not (isinstance(value, list) and all(isinstance(v, str) for v in value)):
                raise ValidationError("outputs: must be a list of names")
            kwargs[key] = tuple(value)
        elif key == "initial_state":
            if not isinstance(value, str):
                raise ValidationError(f"initial_state: must be a string, got {value!r}")
            kwargs[key] = value
        elif key == "sample_every":
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValidationError(f"sample_every: must be an integer, got {value!r}")
            kwargs[key] = value
        else:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValidationError(f"{key}: must be a number, got {value!r}")
            kwargs[key] = float(value)
    for required in ("lambda_a", "lambda_b", "t_max"):
        if required not in kwargs:
            raise ValidationError(f"{required}: required key missing")
    return ScenarioConfig(**kwargs)


def run_scenario(cfg: ScenarioConfig) -> tuple[Trajectory, WitnessReport]:
    """Propagate the configured scenario and derive per-sample observables."""
    r_a, r_b = cfg.reservoirs()
    traj = propagate(bell_initial(), r_a, r_b, cfg.t_max, cfg.dt, cfg.sample_every)
    samples = []
    for state in traj.states:
        rec = uncertainty_record(state.rho, state.t)
        samples.append(TrajectorySample(
            t=state.t, mu=rec.mu, lhs=rec.lhs,
            concurrence=concurrence(state.rho),
            f_a=correlation_f(r_a, state.t), f_b=correlation_f(r_b, state.t)))
    traj.samples = samples
    return traj, witness_report(traj)


def _fmt(x) -> str:
    # repr of a float is the shortest string that round-trips exactly,
    # so it always carries >= 12 significant digits of information
    return repr(float(x))


def emit_csv(traj: Trajectory, report: WitnessReport, path) -> None:
    """Write the sampled series as CSV plus a sibling ``<path>.report`` file."""
    if traj.samples is None or len(traj.samples) == 0:
        raise EmptyTrajectory("trajectory has no derived samples to emit")
    lines = [CSV_HEADER]
    for s in traj.samples:
        lines.append(",".join([
            _fmt(s.t), _fmt(s.mu), _fmt(s.lhs), _fmt(s.concurrence),
            _fmt(s.f_a.real), _fmt(s.f_a.imag), _fmt(s.f_b.real), _fmt(s.f_b.imag),
        ]))
    path = str(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    report_lines = []
    values = {
        "t_ew": report.t_ew,
        "c_ew_threshold": report.c_ew_threshold,
        "death_time": report.death_time,
        "crossing_found": report.crossing_found,
        "mu_series_max": report.mu_series_max,
    }
    for key in REPORT_KEYS:
        v = values[key]
        if v is None:
            rendered = "none"
        elif isinstance(v, bool):
            rendered = "true" if v else "false"
        else:
            rendered = _fmt(v)
        report_lines.append(f"{key}: {rendered}")
    with open(path + ".report", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(report_lines) + "\n")


@dataclass
class SweepRow:
    """One grid point of a parameter sweep; ``error`` marks a failed row."""

    lam: float | None
    delta: float | None
    report: WitnessReport | None
    error: str | None = None


def sweep(lambdas, deltas, base: ScenarioConfig) -> list[SweepRow]:
    """Witness reports over the Cartesian grid of widths and detunings.

    Each grid value is applied to both reservoirs of ``base``; ``None`` for a
    whole axis keeps the base values.  Rows are independent: a failing point
    is recorded in its row and does not disturb the others.  Row order follows
    the given value order (lambdas outer, deltas inner).
    """
    lam_axis = list(lambdas) if lambdas else [None]
    delta_axis = list(deltas) if deltas else [None]
    if lam_axis == [None] and delta_axis == [None]:
        raise ValidationError("sweep grid: at least one of lambdas/deltas must be non-empty")
    rows = []
    for lam in lam_axis:
        for delta in delta_axis:
            overrides = {}
            if lam is not None:
                overrides["lambda_a"] = overrides["lambda_b"] = float(lam)
            if delta is not None:
                overrides["delta_a"] = overrides["delta_b"] = float(delta)
            try:
                cfg = dataclasses.replace(base, **overrides)
                _, report = run_scenario(cfg)
                rows.append(SweepRow(lam=lam, delta=delta, report=report))
            except Exception as exc:  # row-level failure marker
                rows.append(SweepRow(lam=lam, delta=delta, report=None,
                                     error=f"{type(exc).__name__}: {exc}"))
    return rows


def write_sweep_csv(rows: list[SweepRow], path) -> None:
    """Write sweep rows as CSV (one witness report per row)."""
    header = "lambda,delta,crossing_found,t_ew,c_ew_threshold,death_time,mu_series_max,error"
    lines = [header]

    def opt(v):
        return "" if v is None else (_fmt(v) if isinstance(v, (int, float)) else str(v))

    for row in rows:
        if row.report is None:
            lines.append(",".join([opt(row.lam), opt(row.delta), "", "", "", "", "",
                                   row.error or ""]))
        else:
            r = row.report
            lines.append(",".join([
                opt(row.lam), opt(row.delta),
                "true" if r.crossing_found else "false",
                opt(r.t_ew), opt(r.c_ew_threshold), opt(r.death_time),
                _fmt(r.mu_series_max), "",
            ]))
    with open(str(path), "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
