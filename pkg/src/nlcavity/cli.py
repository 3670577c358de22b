"""Command-line front end: time sweeps of the entanglement measures.

Runs the closed-form evolution over a uniform grid of the scaled time gt,
reduces to the two-atom matrix at every point, evaluates the selected
measures and writes a CSV (optionally simple SVG polyline charts, one per
measure). An opt-in oracle check certifies the closed form against the
brute-force Fock evolution before trusting a sweep.

Exit codes: 0 success, 2 configuration error, 3 computation error,
4 output error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .density import partial_trace_atom2, partial_trace_field
from .dynamics import ClosedFormEvolution, plan_truncation
from .measures import MeasureSample, concurrence, entropy_cardano, tangle
from .model import (
    SCENARIO_LABELS,
    DeformationFunction,
    ModelParams,
    scenario_preset,
    validate,
)
from . import oracle

ALL_MEASURES = ("entropy", "tangle", "concurrence")

CSV_HEADER = "gt,entropy,tangle,concurrence,trace_tail"

_ORACLE_ALPHA_SQ_CAP = 5.0
_ORACLE_POINTS = 11
_ORACLE_FIDELITY_TOL = 1e-8
_ORACLE_RHO_TOL = 1e-8


class ConfigError(ValueError):
    """Bad flag, bad config file, or parameter invariant violation."""


class ComputationError(RuntimeError):
    """A sweep time point failed entirely, or the oracle check did."""


@dataclass
class SweepConfig:
    scenario: str = "a"
    k: int = 1
    theta: float = 0.0
    alpha_sq: float = 25.0
    chi: float | None = None
    delta: float | None = None
    beta1: float | None = None
    beta2: float | None = None
    deformation: str = "sqrt-n"
    tmax: float = 25.0
    steps: int = 500
    tol: float = 1e-12
    measures: tuple[str, ...] = ALL_MEASURES
    oracle_check: bool = False
    svg: bool = False
    out: str = "sweep.csv"

    def to_params(self) -> ModelParams:
        preset = scenario_preset(self.scenario)
        deformation = (
            DeformationFunction.unity()
            if self.deformation == "unity"
            else DeformationFunction.sqrt_n()
        )
        return validate(
            ModelParams(
                k=self.k,
                g=1.0,
                chi=preset.chi if self.chi is None else self.chi,
                delta=preset.delta if self.delta is None else self.delta,
                beta1=preset.beta1 if self.beta1 is None else self.beta1,
                beta2=preset.beta2 if self.beta2 is None else self.beta2,
                theta=self.theta,
                alpha=complex(math.sqrt(self.alpha_sq)),
                deformation=deformation,
            )
        )


def _build_argparser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nlcavity",
        description="entanglement-measure time sweeps for the deformed two-atom cavity model",
        add_help=True,
    )
    p.add_argument("--scenario", choices=SCENARIO_LABELS, help="preset parameter row (default a)")
    p.add_argument("--k", type=int, help="photon multiplicity (2k-photon transitions), default 1")
    p.add_argument("--theta", type=float, help="atomic superposition angle in [0, pi], default 0")
    p.add_argument("--alpha-sq", type=float, dest="alpha_sq", help="mean photon number, default 25")
    p.add_argument("--chi", type=float, help="Kerr strength override")
    p.add_argument("--delta", type=float, help="detuning override")
    p.add_argument("--beta1", type=float, help="upper-level Stark override")
    p.add_argument("--beta2", type=float, help="lower-level Stark override")
    p.add_argument("--deformation", choices=("unity", "sqrt-n"), help="f(n) rule, default sqrt-n")
    p.add_argument("--tmax", type=float, help="sweep end in units of 1/g, default 25")
    p.add_argument("--steps", type=int, help="number of grid points, default 500")
    p.add_argument("--tol", type=float, help="truncation tolerance, default 1e-12")
    p.add_argument("--measures", type=str, help="comma list from entropy,tangle,concurrence")
    p.add_argument("--oracle-check", action="store_true", dest="oracle_check", default=None,
                   help="certify against the brute-force evolution (|alpha|^2 capped at 5)")
    p.add_argument("--svg", action="store_true", default=None,
                   help="also write one SVG polyline chart per measure")
    p.add_argument("--out", type=str, help="CSV output path, default sweep.csv")
    p.add_argument("--config", type=str, help="key = value file; flags take precedence")
    return p


_KEY_TYPES = {
    "scenario": str,
    "k": int,
    "theta": float,
    "alpha_sq": float,
    "chi": float,
    "delta": float,
    "beta1": float,
    "beta2": float,
    "deformation": str,
    "tmax": float,
    "steps": int,
    "tol": float,
    "measures": str,
    "oracle_check": bool,
    "svg": bool,
    "out": str,
}


def _parse_config_file(path: str) -> dict:
    """Flat `key = value` lines, '#' comments; keys mirror the flags."""
    values: dict = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if key not in _KEY_TYPES:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        caster = _KEY_TYPES[key]
        try:
            if caster is bool:
                if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
                    raise ValueError(value)
                values[key] = value.lower() in ("true", "1", "yes")
            else:
                values[key] = caster(value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return values


def _parse_measures(raw: str) -> tuple[str, ...]:
    names = tuple(name.strip() for name in raw.split(",") if name.strip())
    if not names:
        raise ConfigError("empty --measures list")
    for name in names:
        if name not in ALL_MEASURES:
            raise ConfigError(f"unknown measure {name!r}, expected subset of {ALL_MEASURES}")
    # keep canonical order, drop duplicates
    return tuple(m for m in ALL_MEASURES if m in names)


def parse_config(argv: list[str] | None = None) -> SweepConfig:
    """Merge defaults <- config file <- command-line flags and validate."""
    parser = _build_argparser()
    try:
        namespace = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code not in (0, None):
            raise ConfigError("invalid command line") from None
        raise
    merged: dict = {}
    if namespace.config is not None:
        merged.update(_parse_config_file(namespace.config))
    for key in _KEY_TYPES:
        value = getattr(namespace, key, None)
        if value is not None:
            merged[key] = value
    if "measures" in merged and isinstance(merged["measures"], str):
        merged["measures"] = _parse_measures(merged["measures"])

    config = SweepConfig(**{k: v for k, v in merged.items() if k in _KEY_TYPES})
    if config.steps < 2:
        raise ConfigError(f"steps must be >= 2, got {config.steps}")
    if not (config.tmax > 0.0):
        raise ConfigError(f"tmax must be > 0, got {config.tmax}")
    if not (0.0 < config.tol <= 1e-3):
        raise ConfigError(f"tol must be in (0, 1e-3], got {config.tol}")
    if config.alpha_sq < 0.0:
        raise ConfigError(f"alpha-sq must be >= 0, got {config.alpha_sq}")
    try:
        config.to_params()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return config


def run_sweep(config: SweepConfig) -> list[MeasureSample]:
    """Evaluate the selected measures on the uniform time grid."""
    params = config.to_params()
    plan = plan_truncation(params.alpha, config.tol, params.k)
    engine = ClosedFormEvolution(params, plan, on_degenerate="skip")
    for n, message in engine.skipped:
        print(f"warning: skipped manifold n={n}: {message}", file=sys.stderr)

    times = np.linspace(0.0, config.tmax, config.steps)
    samples: list[MeasureSample] = []
    failures: list[str] = []
    for t in times:
        try:
            state = engine.state_at(float(t))
            rho4 = partial_trace_field(state)
            entropy_val = entropy_cardano(rho4) if "entropy" in config.measures else None
            tangle_val = (
                tangle(partial_trace_atom2(rho4)) if "tangle" in config.measures else None
            )
            conc_val = concurrence(rho4) if "concurrence" in config.measures else None
            samples.append(
                MeasureSample(
                    t=float(t),
                    entropy=entropy_val,
                    tangle=tangle_val,
                    concurrence=conc_val,
                    trace_tail=max(0.0, 1.0 - rho4.raw_trace),
                )
            )
        except Exception as exc:  # collect, report, keep sweeping
            failures.append(f"t={float(t):.6g}: {exc}")
    if failures:
        preview = "; ".join(failures[:3])
        raise ComputationError(f"{len(failures)} time point(s) failed entirely: {preview}")

    if config.oracle_check:
        _oracle_certification(config, params)
    return samples


def _oracle_certification(config: SweepConfig, params: ModelParams) -> None:
    alpha_sq = config.alpha_sq
    if alpha_sq > _ORACLE_ALPHA_SQ_CAP:
        print(
            f"warning: oracle check capping |alpha|^2 at {_ORACLE_ALPHA_SQ_CAP} "
            f"(requested {alpha_sq})",
            file=sys.stderr,
        )
        alpha_sq = _ORACLE_ALPHA_SQ_CAP
    capped = validate(replace(params, alpha=complex(math.sqrt(alpha_sq))))
    plan = plan_truncation(capped.alpha, config.tol, capped.k)
    engine = ClosedFormEvolution(capped, plan)
    hamiltonian = oracle.build_hamiltonian(capped, plan.n_max)
    psi0 = oracle.initial_state(capped, plan.n_max)

    t_end = min(config.tmax, 5.0)
    worst_fidelity = 1.0
    worst_rho = 0.0
    for t in np.linspace(0.0, t_end, _ORACLE_POINTS):
        psi_oracle = oracle.evolve(hamiltonian, psi0, float(t))
        state = engine.state_at(float(t))
        psi_analytic = oracle.state_to_vector(state, plan.n_max)
        worst_fidelity = min(worst_fidelity, oracle.fidelity(psi_analytic, psi_oracle))
        rho_a = partial_trace_field(state).matrix
        rho_o = oracle.reduce_atoms(psi_oracle).matrix
        worst_rho = max(worst_rho, float(np.max(np.abs(rho_a - rho_o))))
    print(
        f"oracle check: min fidelity {worst_fidelity:.12f}, "
        f"max |rho_A deviation| {worst_rho:.3e}",
        file=sys.stderr,
    )
    if worst_fidelity < 1.0 - _ORACLE_FIDELITY_TOL or worst_rho > _ORACLE_RHO_TOL:
        raise ComputationError(
            f"oracle check failed: fidelity {worst_fidelity}, rho deviation {worst_rho}"
        )


def _format(value: float | None) -> str:
    return "" if value is None else repr(float(value))


def emit_csv(samples: list[MeasureSample], path: str) -> None:
    """Write `gt,entropy,tangle,concurrence,trace_tail` rows, LF line endings.

    Values use the shortest round-trip decimal form; unselected measures
    appear as empty fields. Re-running an identical config reproduces the
    file byte for byte.
    """
    if not samples:
        raise ValueError("no samples to write")
    lines = [CSV_HEADER]
    for s in samples:
        lines.append(
            ",".join(
                (
                    repr(float(s.t)),
                    _format(s.entropy),
                    _format(s.tangle),
                    _format(s.concurrence),
                    repr(float(s.trace_tail)),
                )
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _svg_polyline(times, values, title: str) -> str:
    width, height = 640, 400
    left, right, top, bottom = 60.0, 620.0, 30.0, 370.0
    t_max = max(times[-1], 1e-30)
    y_max = max(max(values), 1e-30) * 1.05
    points = " ".join(
        f"{left + (right - left) * t / t_max:.2f},{bottom - (bottom - top) * v / y_max:.2f}"
        for t, v in zip(times, values)
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>\n'
        f'<rect x="{left}" y="{top}" width="{right - left}" height="{bottom - top}" '
        f'fill="none" stroke="black" stroke-width="1"/>\n'
        f'<text x="{(left + right) / 2:.0f}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>\n'
        f'<text x="{(left + right) / 2:.0f}" y="392" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">gt</text>\n'
        f'<text x="{left - 8:.0f}" y="{bottom:.0f}" text-anchor="end" '
        f'font-family="sans-serif" font-size="11">0</text>\n'
        f'<text x="{left - 8:.0f}" y="{top + 4:.0f}" text-anchor="end" '
        f'font-family="sans-serif" font-size="11">{y_max:.3g}</text>\n'
        f'<text x="{right:.0f}" y="392" text-anchor="end" '
        f'font-family="sans-serif" font-size="11">{t_max:.3g}</text>\n'
        f'<polyline fill="none" stroke="#1f77b4" stroke-width="1.2" points="{points}"/>\n'
        f"</svg>\n"
    )


def emit_svg(samples: list[MeasureSample], out_csv_path: str) -> list[str]:
    """One polyline chart per measure present; returns the written paths."""
    if not samples:
        raise ValueError("no samples to plot")
    times = [s.t for s in samples]
    written = []
    base = Path(out_csv_path)
    for measure in ALL_MEASURES:
        values = [getattr(s, measure) for s in samples]
        if any(v is None for v in values):
            continue
        path = base.with_name(f"{base.stem}_{measure}.svg")
        path.write_text(_svg_polyline(times, values, measure), encoding="utf-8", newline="\n")
        written.append(str(path))
    return written


def main(argv: list[str] | None = None) -> int:
    try:
        config = parse_config(argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        samples = run_sweep(config)
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    try:
        emit_csv(samples, config.out)
        if config.svg:
            emit_svg(samples, config.out)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 4
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
