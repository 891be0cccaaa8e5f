"""Parameter sweeps and tabular output."""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, field

from ..core import UnitSystem, WavepacketSpec
from ..dynamics import gouy_phase, gouy_principal, gouy_rate, inv_curvature, width
from ..errors import GouyWaveError, IoFailure
from ..estimation import LikelihoodModel, cfi_numeric, qfi_general, resonant_covariance_family
from ..phase_space import evolved_covariance, wigner_gaussian
from .scenario import Scenario, scenario_to_dict


@dataclass
class Dataset:
    """Rows of floats (None for failed cells) plus a trailing flag column."""

    columns: list[str]
    rows: list[list] = field(default_factory=list)
    echo: dict | None = None

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def _quantity(q: str, spec: WavepacketSpec, t: float, sc: Scenario, unwrap: bool) -> list[float]:
    if q == "B":
        return [float(width(spec, t))]
    if q == "u":
        return [float(inv_curvature(spec, t))]
    if q == "mu_principal":
        return [float(gouy_phase(spec, t) if unwrap else gouy_principal(spec, t))]
    if q == "mu_unwrapped":
        return [float(gouy_phase(spec, t))]
    if q == "gouy_rate":
        return [float(gouy_rate(spec, t))]
    if q == "covariance":
        cov = evolved_covariance(spec, t)
        return [cov.sxx, cov.sxp, cov.spp]
    if q == "wigner":
        return [float(wigner_gaussian(evolved_covariance(spec, t), sc.wigner_x, sc.wigner_p))]
    if q == "cfi":
        return [cfi_numeric(LikelihoodModel(spec, t))]
    if q == "qfi":
        evolved_covariance(spec, t)  # resonance check
        return [qfi_general(resonant_covariance_family(spec.gamma, t), None, spec.omega)]
    raise ValueError(f"unknown quantity {q!r}")


def _width(q: str) -> int:
    return 3 if q == "covariance" else 1


def run_sweep(sc: Scenario) -> Dataset:
    """Evaluate every requested quantity at each sample of the sweep axis.

    Failures never drop a row: the affected cells are left empty and the
    exception class names go into the ``flag`` column.
    """
    units = UnitSystem(sc.hbar, sc.mass)
    data = Dataset(sc.columns(), echo=scenario_to_dict(sc))
    for value in sc.sweep.values():
        params = {"omega0": sc.omega0, "omega": sc.omega, "gamma": sc.gamma, "t": sc.t}
        params[sc.sweep.variable] = value
        row: list = [value]
        flags: list[str] = []
        try:
            spec = WavepacketSpec(params["omega0"], params["omega"], params["gamma"], units)
        except GouyWaveError as exc:
            spec = None
            flags.append(type(exc).__name__)
        for q in sc.outputs:
            if spec is None:
                row += [None] * _width(q)
                continue
            try:
                row += _quantity(q, spec, params["t"], sc, sc.unwrap)
            except GouyWaveError as exc:
                row += [None] * _width(q)
                name = type(exc).__name__
                if name not in flags:
                    flags.append(name)
        row.append(";".join(flags))
        data.rows.append(row)
    return data


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    return format(float(v), ".17g")


def to_csv(data: Dataset) -> str:
    """Header plus one line per row; 17 significant digits, LF endings."""
    lines = [",".join(data.columns)]
    lines += [",".join(_csv_cell(v) for v in row) for row in data.rows]
    return "\n".join(lines) + "\n"


def _json_cell(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def to_json(data: Dataset) -> str:
    """``{"scenario": ..., "rows": [{column: value}, ...]}``; failed cells are null."""
    rows = [{c: _json_cell(v) for c, v in zip(data.columns, row)} for row in data.rows]
    return json.dumps({"scenario": data.echo, "rows": rows}, indent=1, allow_nan=False) + "\n"


def render(data: Dataset, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(data)
    if fmt == "json":
        return to_json(data)
    raise ValueError(f"unknown format {fmt!r}")


def write_text(text: str, path) -> None:
    """Write UTF-8 text with LF line endings, or to stdout when ``path`` is None/'-'."""
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
