"""Frozen recipes that regenerate the datasets behind each figure.

Every recipe is a set of panels; each panel is written to its own file in long
format (one ``gamma`` column, then the sweep variable, then the quantities).
Angles are in radians and widths in the unit system of the recipe
(hbar = m = 1, so sigma0 = 1/sqrt(omega0)).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from ..errors import IoFailure
from ..phase_space import initial_covariance, wigner_gaussian
from .scenario import Scenario, SweepAxis
from .sweep import Dataset, render, run_sweep, write_text

FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "figA")

WIGNER_GRID = 201
WIGNER_EXTENT = 4.0


@dataclass(frozen=True)
class Panel:
    name: str
    omega0: float
    omega: float
    gammas: tuple[float, ...]
    sweep: SweepAxis
    outputs: tuple[str, ...]
    t: float = 1.0


@dataclass(frozen=True)
class FigureRecipe:
    id: str
    description: str
    panels: tuple[Panel, ...]


def _t_axis(hi: float, samples: int) -> SweepAxis:
    return SweepAxis("t", 0.0, hi, samples)


_G3 = (-1.0, 0.0, 1.0)
_FIG1_AXIS = SweepAxis("omega", 0.0, 40.0, 2001)  # omega - omega0 in [-10, 30]
_FIG3_AXIS = _t_axis(3 * math.pi / 10, 1201)  # pi/(2 omega) falls on sample 200
_FIG5_GAMMAS = tuple(float(g) for g in np.linspace(-3.0, 3.0, 121))

RECIPES: dict[str, FigureRecipe] = {
    "fig1": FigureRecipe(
        "fig1",
        "Gouy phase (a-c) and width (d-f) against trap frequency; omega0 = 10, t = 1",
        tuple(Panel(f"fig1{p}", 10.0, 10.0, (g,), _FIG1_AXIS, ("mu_principal",)) for p, g in zip("abc", _G3))
        + tuple(Panel(f"fig1{p}", 10.0, 10.0, (g,), _FIG1_AXIS, ("B",)) for p, g in zip("def", _G3)),
    ),
    "fig2": FigureRecipe(
        "fig2",
        "omega = 0.1, omega0 = 1: short-time Gouy phase (a) and width (b); long times for gamma = 0 (c), 1 (d)",
        (
            Panel("fig2a", 1.0, 0.1, _G3, _t_axis(10.0, 1001), ("mu_principal",)),
            Panel("fig2b", 1.0, 0.1, _G3, _t_axis(10.0, 1001), ("B",)),
            Panel("fig2c", 1.0, 0.1, (0.0,), _t_axis(70.0, 7001), ("mu_principal", "B")),
            Panel("fig2d", 1.0, 0.1, (1.0,), _t_axis(70.0, 7001), ("mu_principal", "B")),
        ),
    ),
    "fig3": FigureRecipe(
        "fig3",
        "omega = 10, omega0 = 1: gamma = -10 vs 0 (a: phase, b: width), gamma = 10 vs 0 (c, d)",
        (
            Panel("fig3a", 1.0, 10.0, (-10.0, 0.0), _FIG3_AXIS, ("mu_principal",)),
            Panel("fig3b", 1.0, 10.0, (-10.0, 0.0), _FIG3_AXIS, ("B",)),
            Panel("fig3c", 1.0, 10.0, (10.0, 0.0), _FIG3_AXIS, ("mu_principal",)),
            Panel("fig3d", 1.0, 10.0, (10.0, 0.0), _FIG3_AXIS, ("B",)),
        ),
    ),
    "fig4": FigureRecipe(
        "fig4",
        "resonance omega = omega0 = 1: gamma = -1 (a, c) and 1 (b, d) with gamma = 0 for reference",
        (
            Panel("fig4a", 1.0, 1.0, (-1.0, 0.0), _t_axis(2 * math.pi, 801), ("mu_principal",)),
            Panel("fig4b", 1.0, 1.0, (1.0, 0.0), _t_axis(2 * math.pi, 801), ("mu_principal",)),
            Panel("fig4c", 1.0, 1.0, (-1.0, 0.0), _t_axis(2 * math.pi, 801), ("B",)),
            Panel("fig4d", 1.0, 1.0, (1.0, 0.0), _t_axis(2 * math.pi, 801), ("B",)),
        ),
    ),
    "fig5": FigureRecipe(
        "fig5",
        "resonance omega = omega0 = 1: one period of Gouy phase (a) and width (b) over gamma in [-3, 3]",
        (
            Panel("fig5a", 1.0, 1.0, _FIG5_GAMMAS, _t_axis(math.pi, 201), ("mu_principal",)),
            Panel("fig5b", 1.0, 1.0, _FIG5_GAMMAS, _t_axis(math.pi, 201), ("B",)),
        ),
    ),
    "fig6": FigureRecipe(
        "fig6",
        "resonance, weak correlation gamma in {0, 0.1, 0.5}: Gouy phase (a) and width (b) against omega t",
        (
            Panel("fig6a", 1.0, 1.0, (0.0, 0.1, 0.5), _t_axis(2 * math.pi, 801), ("mu_principal",)),
            Panel("fig6b", 1.0, 1.0, (0.0, 0.1, 0.5), _t_axis(2 * math.pi, 801), ("B",)),
        ),
    ),
    "fig7": FigureRecipe(
        "fig7",
        "resonance omega = omega0 = 1: CFI, QFI and Gouy phase for gamma = 1 (a), 3 (b); CFI over one period (c)",
        (
            Panel("fig7a", 1.0, 1.0, (1.0,), _t_axis(2 * math.pi, 401), ("cfi", "qfi", "mu_principal")),
            Panel("fig7b", 1.0, 1.0, (3.0,), _t_axis(2 * math.pi, 401), ("cfi", "qfi", "mu_principal")),
            Panel("fig7c", 1.0, 1.0, (1.0, 3.0), _t_axis(math.pi, 201), ("mu_principal", "cfi")),
        ),
    ),
    "figA": FigureRecipe("figA", "Wigner function of the initial state for gamma = -1, 0, 1", ()),
}


def _panel_dataset(panel: Panel, unwrapped: bool) -> Dataset:
    out: Dataset | None = None
    for g in panel.gammas:
        sc = Scenario(
            omega0=panel.omega0, omega=panel.omega, gamma=g, t=panel.t,
            sweep=panel.sweep, outputs=panel.outputs, unwrap=unwrapped,
        )
        data = run_sweep(sc)
        if out is None:
            echo = {k: v for k, v in data.echo.items() if k not in ("gamma", "format")}
            echo["gammas"] = list(panel.gammas)
            echo["panel"] = panel.name
            out = Dataset(["gamma"] + data.columns, echo=echo)
        out.rows.extend([g] + row for row in data.rows)
    return out


def _fig7_columns(data: Dataset, omega: float) -> None:
    # fig7 is plotted against omega t
    i = data.columns.index("t")
    data.columns[i] = "omega_t"
    for row in data.rows:
        row[i] = omega * row[i]


def _wigner_dataset(gamma: float) -> Dataset:
    axis = np.linspace(-WIGNER_EXTENT, WIGNER_EXTENT, WIGNER_GRID)
    xx, pp = np.meshgrid(axis, axis, indexing="ij")
    w = wigner_gaussian(initial_covariance(gamma), xx, pp)
    data = Dataset(
        ["gamma", "x", "p", "W"],
        echo={"panel": f"figA gamma={gamma:g}", "gamma": gamma, "grid": WIGNER_GRID, "extent": WIGNER_EXTENT},
    )
    data.rows = [[gamma, float(x), float(p), float(v)] for x, p, v in zip(xx.ravel(), pp.ravel(), w.ravel())]
    return data


def build_figure(fig_id: str, *, unwrapped: bool = False, rescale_fig7c: bool = False) -> dict[str, Dataset]:
    """Datasets of every panel of a figure, keyed by panel name.

    ``unwrapped`` switches Gouy-phase columns to the continuous branch.
    ``rescale_fig7c`` multiplies the gamma = 3 CFI of panel fig7c by 1/9, the
    a purely visual rescaling.
    """
    if fig_id not in RECIPES:
        raise ValueError(f"unknown figure {fig_id!r}; choose from {', '.join(FIGURE_IDS)}")
    if fig_id == "figA":
        return {f"figA_gamma{int(g):+d}": _wigner_dataset(g) for g in _G3}
    panels = {}
    for panel in RECIPES[fig_id].panels:
        data = _panel_dataset(panel, unwrapped)
        if fig_id == "fig7":
            _fig7_columns(data, panel.omega)
            if panel.name == "fig7c" and rescale_fig7c:
                i = data.columns.index("cfi")
                for row in data.rows:
                    if row[0] == 3.0 and row[i] is not None:
                        row[i] = row[i] / 9
                data.echo["cfi_rescaled_gamma3"] = 1 / 9
        panels[panel.name] = data
    return panels


def emit_figure(
    fig_id: str, output_dir=".", fmt: str = "csv", *, unwrapped: bool = False, rescale_fig7c: bool = False
) -> list[str]:
    """Write one file per panel into ``output_dir``; returns the paths written.

    Raises
    ------
    IoFailure
        If the directory cannot be created or a file cannot be written.
    """
    panels = build_figure(fig_id, unwrapped=unwrapped, rescale_fig7c=rescale_fig7c)
    try:
        os.makedirs(output_dir, exist_ok=True)
    except OSError as exc:
        raise IoFailure(f"cannot create {output_dir}: {exc}") from exc
    paths = []
    for name, data in panels.items():
        path = os.path.join(output_dir, f"{name}.{fmt}")
        write_text(render(data, fmt), path)
        paths.append(path)
    return paths
