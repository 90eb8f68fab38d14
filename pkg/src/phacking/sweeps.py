"""Parameter sweeps backing the five figures, plus deterministic CSV and
SVG rendering.

All sweep cells are computed by calling the closed-form functions in
:mod:`phacking.rates` / :mod:`phacking.estimator`; nothing here
reimplements a formula.  CSV is the canonical artifact; SVG is a derived
view.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import svg
from .errors import UnsupportedShapeError
from .rates import TestDesign, fpr_bound, fpr_hacked, fpr_sound, rr_sound
from .estimator import rr_ratio

__all__ = [
    "SweepResult",
    "DEFAULT_PHI",
    "sweep_figure1",
    "sweep_figure2",
    "sweep_figure3",
    "sweep_figure4",
    "sweep_figure5",
    "render_csv",
    "render_svg",
]

#: phi for prior odds 1:10 in favor of H1.
DEFAULT_PHI = 10.0 / 11.0
DEFAULT_BETA = 0.20

_POWER_FINE = [round(0.05 + 0.01 * i, 2) for i in range(95)]  # 0.05 .. 0.99
_POWER_COARSE = [round(0.05 * i, 2) for i in range(1, 20)]  # 0.05 .. 0.95
_H_COARSE = [round(0.05 * i, 2) for i in range(20)]  # 0.00 .. 0.95
_PI_GRID = [round(0.005 * i, 3) for i in range(201)]  # 0 .. 1
_PSI_COARSE = [round(0.05 * i, 2) for i in range(21)]  # 0 .. 1


@dataclass(frozen=True)
class SweepResult:
    """A labeled grid: ``axes`` are (name, values) pairs, ``rows`` pair
    each row-major grid point with its value tuple (one entry per name
    in ``columns``)."""

    figure_id: str
    kind: str  # "line" or "heatmap"
    axes: tuple[tuple[str, tuple[float, ...]], ...]
    columns: tuple[str, ...]
    rows: tuple[tuple[tuple[float, ...], tuple[float, ...]], ...]
    metadata: dict = field(default_factory=dict)


def _grid(axes):
    return itertools.product(*(values for _, values in axes))


def sweep_figure1() -> SweepResult:
    """FPR vs power for alpha in {0.05, 0.005} x h in {0, 0.05, 0.15},
    prior odds 1:10, full persistence at each operative cutoff."""
    axes = (
        ("alpha", (0.05, 0.005)),
        ("h", (0.0, 0.05, 0.15)),
        ("power", tuple(_POWER_FINE)),
    )
    rows = []
    for alpha, h, power in _grid(axes):
        design = TestDesign(alpha, 1.0 - power, DEFAULT_PHI)
        rows.append(((alpha, h, power), (fpr_hacked(design, h),)))
    return SweepResult(
        figure_id="figure1",
        kind="line",
        axes=axes,
        columns=("fpr",),
        rows=tuple(rows),
        metadata={"phi": DEFAULT_PHI, "psi": 1.0},
    )


def sweep_figure2() -> SweepResult:
    """FPR and RR vs power at h = 0 for both cutoffs; each row satisfies
    fpr + rr = 1."""
    axes = (
        ("alpha", (0.05, 0.005)),
        ("power", tuple(_POWER_FINE)),
    )
    rows = []
    for alpha, power in _grid(axes):
        design = TestDesign(alpha, 1.0 - power, DEFAULT_PHI)
        rows.append(((alpha, power), (fpr_sound(design), rr_sound(design))))
    return SweepResult(
        figure_id="figure2",
        kind="line",
        axes=axes,
        columns=("fpr", "rr"),
        rows=tuple(rows),
        metadata={"phi": DEFAULT_PHI, "h": 0.0},
    )


def sweep_figure3(h: float, naive_cdf: float | None = None) -> SweepResult:
    """Regime-change FPR bound over the persistence parameter at the
    0.005 cutoff, with the three reference constants (FPR with hacking
    at 0.05; sound FPR at 0.05; sound FPR at 0.005) in metadata.

    By default the solid curve is the conservative bound (psi = pi);
    pass ``naive_cdf`` to render an interpolated curve instead.
    """
    old = TestDesign(0.05, DEFAULT_BETA, DEFAULT_PHI)
    new = TestDesign(0.005, DEFAULT_BETA, DEFAULT_PHI)
    axes = (("pi", tuple(_PI_GRID)),)
    rows = []
    for (pi,) in _grid(axes):
        psi = pi if naive_cdf is None else pi + (1.0 - pi) * naive_cdf
        rows.append(((pi,), (fpr_bound(new, h, psi),)))
    return SweepResult(
        figure_id=f"figure3_h{h:g}",
        kind="line",
        axes=axes,
        columns=("fpr_bound",),
        rows=tuple(rows),
        metadata={
            "h": h,
            "phi": DEFAULT_PHI,
            "alpha_new": 0.005,
            "naive_cdf": 0.0 if naive_cdf is None else naive_cdf,
            "references": {
                "fpr_hacked_0.05": fpr_hacked(old, h),
                "fpr_sound_0.05": fpr_sound(old),
                "fpr_sound_0.005": fpr_sound(new),
            },
        },
    )


def sweep_figure4() -> SweepResult:
    """FPR heatmaps over power x h at both cutoffs (full persistence),
    one value column per cutoff."""
    axes = (
        ("power", tuple(_POWER_COARSE)),
        ("h", tuple(_H_COARSE)),
    )
    rows = []
    for power, h in _grid(axes):
        vals = tuple(
            fpr_hacked(TestDesign(alpha, 1.0 - power, DEFAULT_PHI), h)
            for alpha in (0.05, 0.005)
        )
        rows.append(((power, h), vals))
    return SweepResult(
        figure_id="figure4",
        kind="heatmap",
        axes=axes,
        columns=("fpr_alpha_0.05", "fpr_alpha_0.005"),
        rows=tuple(rows),
        metadata={"phi": DEFAULT_PHI, "psi": 1.0},
    )


def sweep_figure5(h: float) -> SweepResult:
    """Ratio of the replication rate at the 0.005 cutoff (power on the
    grid, persistence psi) to the rate at the 0.05 cutoff with power
    0.80; cells with ratio < 1 are tagged ``below_one``."""
    old = TestDesign(0.05, DEFAULT_BETA, DEFAULT_PHI)
    axes = (
        ("power", tuple(_POWER_COARSE)),
        ("psi", tuple(_PSI_COARSE)),
    )
    rows = []
    for power, psi in _grid(axes):
        new = TestDesign(0.005, 1.0 - power, DEFAULT_PHI)
        ratio = rr_ratio(new, old, h, psi)
        rows.append(((power, psi), (ratio, float(ratio < 1.0))))
    return SweepResult(
        figure_id=f"figure5_h{h:g}",
        kind="heatmap",
        axes=axes,
        columns=("ratio", "below_one"),
        rows=tuple(rows),
        metadata={"h": h, "phi": DEFAULT_PHI, "old_power": 1.0 - DEFAULT_BETA},
    )


def _num(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return format(x, ".6g")


def render_csv(result: SweepResult) -> str:
    """Canonical CSV: axis columns then value columns, rows in row-major
    axis order, 6 significant digits; byte-deterministic."""
    header = [name for name, _ in result.axes] + list(result.columns)
    lines = [",".join(header)]
    for point, values in result.rows:
        lines.append(",".join(_num(v) for v in (*point, *values)))
    return "\n".join(lines) + "\n"


def render_svg(result: SweepResult) -> str:
    """Standalone SVG 1.1 rendering: line chart (last axis is x, leading
    axes define the series) or heatmap (exactly 2 axes)."""
    if result.kind == "line":
        if not 1 <= len(result.axes) <= 3:
            raise UnsupportedShapeError(f"line chart needs 1-3 axes, got {len(result.axes)}")
        return _render_line(result)
    if result.kind == "heatmap":
        if len(result.axes) != 2:
            raise UnsupportedShapeError(f"heatmap needs exactly 2 axes, got {len(result.axes)}")
        return _render_heatmap(result)
    raise UnsupportedShapeError(f"unknown sweep kind {result.kind!r}")


def _render_line(result: SweepResult) -> str:
    x_name = result.axes[-1][0]
    lead_axes = result.axes[:-1]
    series = []
    lookup = {point: values for point, values in result.rows}
    lead_points = list(itertools.product(*(vals for _, vals in lead_axes))) or [()]
    x_values = result.axes[-1][1]
    for lead in lead_points:
        prefix = " ".join(f"{n}={_num(v)}" for (n, _), v in zip(lead_axes, lead))
        for ci, cname in enumerate(result.columns):
            if cname == "below_one":
                continue
            ys = [lookup[(*lead, x)][ci] for x in x_values]
            label = f"{prefix} {cname}".strip() if len(result.columns) > 1 or prefix else cname
            series.append((label or cname, list(x_values), ys))
    refs = sorted(result.metadata.get("references", {}).items())
    return svg.line_chart(result.figure_id, x_name, series, references=refs)


def _render_heatmap(result: SweepResult) -> str:
    # First axis on y, second on x; one panel per value column would need
    # multiple documents, so the first non-flag column is rendered and a
    # red overlay marks below_one cells when present.
    (y_name, y_vals), (x_name, x_vals) = result.axes
    lookup = {point: values for point, values in result.rows}
    flag_idx = result.columns.index("below_one") if "below_one" in result.columns else None
    value_idx = next(i for i, c in enumerate(result.columns) if c != "below_one")
    grid = [[lookup[(y, x)][value_idx] for x in x_vals] for y in y_vals]
    flags = (
        [[bool(lookup[(y, x)][flag_idx]) for x in x_vals] for y in y_vals]
        if flag_idx is not None
        else None
    )
    title = f"{result.figure_id} ({result.columns[value_idx]})"
    return svg.heatmap(title, x_name, y_name, list(x_vals), list(y_vals), grid, below_one=flags)
