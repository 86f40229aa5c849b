"""Assessment report files: delimited summary plus site-map and SAIL figures.

Figures are rendered headlessly to PNG next to the CSV so a submission folder
carries both the machine-readable result and the visual operational-volume
plan reviewers ask for.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Circle as CirclePatch
from matplotlib.patches import Polygon as PolygonPatch

from .engine import ARC_ORDER, SAIL_ORDER
from .model import Circle, OperationSpec, Polygon
from .tables import SAIL_TABLE, load_table
from .workflow import Session


def write_summary_csv(session: Session, path: Path) -> Path:
    """One row per assessment step: step, item, value."""
    snap = session.snapshot
    rows: list[tuple[str, str, str]] = [("step", "item", "value")]
    if snap.gate:
        rows.append(("0", "category_gate", snap.gate.outcome.value))
    if snap.grc:
        rows.append(("2", "size_column", snap.grc.size_column))
        rows.append(("2", "kinetic_energy_j", f"{snap.grc.energy_joules:g}"))
        rows.append(("2", "intrinsic_grc", str(snap.grc.intrinsic)))
        if snap.grc.final is not None:
            rows.append(("3", "grc_deltas", " ".join(f"{d:+d}" for d in snap.grc.deltas)))
            rows.append(("3", "final_grc", str(snap.grc.final)))
    if snap.arc:
        rows.append(("4", "aec", str(snap.arc.aec)))
        rows.append(("4", "density_rating", str(snap.arc.density_rating)))
        rows.append(("4", "initial_arc", snap.arc.initial))
        rows.append(("5", "residual_arc", snap.arc.residual))
    if snap.tmpr:
        rows.append(("6", "tmpr_required", "yes" if snap.tmpr.required else "no"))
        rows.append(("6", "tmpr_robustness", snap.tmpr.robustness.value))
    if snap.sail:
        rows.append(("7", "sail", snap.sail.sail))
    if snap.osos is not None:
        rows.append(("8", "oso_total", str(len(snap.osos))))
        rows.append(("8", "oso_satisfied", str(sum(1 for s in snap.osos if s.state.value == "satisfied"))))
    if snap.containment:
        rows.append(("9", "adjacent_area_extent_m", f"{snap.containment.adjacent_area_extent_m:g}"))
        rows.append(("9", "adjacent_airspace_arc", snap.containment.adjacent_airspace_arc))
        rows.append(("9", "enhanced_containment", "yes" if snap.containment.enhanced_required else "no"))
    if snap.halt:
        rows.append((str(snap.halt["step"]), "halt", f"{snap.halt['code']}: {snap.halt['detail']}"))
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        csv.writer(fh).writerows(rows)
    return path


def render_volume_figure(session: Session, path: Path) -> Path:
    """Plan view of flight geography, buffer, and adjacent-area extent."""
    spec: OperationSpec = session.spec
    geo = spec.volume.flight_geography
    buffer_m = spec.volume.ground_risk_buffer
    extent = session.snapshot.containment.adjacent_area_extent_m if session.snapshot.containment else 0.0

    fig, ax = plt.subplots(figsize=(6.4, 6.4))
    if isinstance(geo, Circle):
        center = geo.center
        radius = geo.radius
        ax.add_patch(CirclePatch(center, radius, fill=True, alpha=0.25, color="tab:blue", label="flight geography"))
    else:
        assert isinstance(geo, Polygon)
        center = geo.centroid()
        radius = geo.effective_radius()
        ax.add_patch(
            PolygonPatch(list(geo.vertices), closed=True, fill=True, alpha=0.25, color="tab:blue")
        )
    ax.add_patch(
        CirclePatch(center, radius + buffer_m, fill=False, linestyle="--", color="tab:orange")
    )
    if extent > 0:
        ax.add_patch(
            CirclePatch(center, radius + buffer_m + extent, fill=False, linestyle=":", color="tab:red")
        )
    if spec.volume.tether_length is not None:
        ax.plot(
            [center[0], center[0] + spec.volume.tether_length / math.sqrt(2)],
            [center[1], center[1] + spec.volume.tether_length / math.sqrt(2)],
            color="black",
            linewidth=1.0,
        )
        ax.annotate(
            f"tether {spec.volume.tether_length:g} m",
            xy=(center[0] + radius * 0.4, center[1] + radius * 0.5),
            fontsize=8,
        )
    span = radius + buffer_m + max(extent, radius)
    ax.set_xlim(center[0] - span * 1.05, center[0] + span * 1.05)
    ax.set_ylim(center[1] - span * 1.05, center[1] + span * 1.05)
    ax.set_aspect("equal")
    ax.set_xlabel("east (m)")
    ax.set_ylabel("north (m)")
    ax.set_title(
        f"{spec.uav.label}: flight geography, buffer ({buffer_m:g} m), adjacent area ({extent:g} m)"
    )
    ax.grid(True, linewidth=0.3, alpha=0.5)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_sail_matrix_figure(session: Session, path: Path) -> Path:
    """The SAIL table with the operation's cell highlighted."""
    table = load_table(SAIL_TABLE)
    snap = session.snapshot
    fig, ax = plt.subplots(figsize=(5.2, 4.0))
    n_rows = len(table["rows"])
    for r, row in enumerate(table["rows"]):
        for c, sail in enumerate(row["sail"]):
            level = SAIL_ORDER.index(sail)
            ax.add_patch(
                plt.Rectangle((c, n_rows - 1 - r), 1, 1, color=plt.cm.YlOrRd(level / 6), alpha=0.8)
            )
            ax.text(c + 0.5, n_rows - 1 - r + 0.5, sail, ha="center", va="center", fontsize=11)
    if snap.grc and snap.grc.final is not None and snap.arc and snap.sail:
        row_idx = next(
            (i for i, row in enumerate(table["rows"]) if snap.grc.final <= row["grc_max"]), None
        )
        if row_idx is not None:
            col_idx = ARC_ORDER.index(snap.arc.residual)
            ax.add_patch(
                plt.Rectangle(
                    (col_idx, n_rows - 1 - row_idx), 1, 1, fill=False, edgecolor="blue", linewidth=2.5
                )
            )
    ax.set_xticks([i + 0.5 for i in range(4)])
    ax.set_xticklabels([c.replace("ARC-", "") for c in table["columns"]])
    ax.set_yticks([n_rows - 1 - i + 0.5 for i in range(n_rows)])
    ax.set_yticklabels([f"<= {row['grc_max']}" if i == 0 else str(row["grc_max"]) for i, row in enumerate(table["rows"])])
    ax.set_xlim(0, 4)
    ax.set_ylim(0, n_rows)
    ax.set_xlabel("residual ARC")
    ax.set_ylabel("final GRC")
    ax.set_title("SAIL determination")
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_report(session: Session, out_dir: Path) -> list[Path]:
    """Summary CSV plus both figures."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written = [
        write_summary_csv(session, out_dir / "assessment-summary.csv"),
        render_volume_figure(session, out_dir / "operational-volume.png"),
        render_sail_matrix_figure(session, out_dir / "sail-matrix.png"),
    ]
    return written
