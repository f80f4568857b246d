"""Comparison reports: bound constants vs. empirical search records."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Optional

from .bounds import BOUND_KINDS, all_bounds, finite_degree_lower_bound
from .records import RecordTable
from .search import places_from_json

FOOTER = (
    "Minima are over the enumerated coefficient box only, never over a whole "
    "degree.  The search is restricted to monic integer polynomials; minima "
    "over non-integral algebraic numbers could in principle lie lower."
)

KIND_LABELS = {
    "lower_integers": "integer lower bound",
    "upper": "upper bound",
    "bz_lower_all": "all-numbers lower bound",
    "bz_upper": "classical upper bound",
    "conjecture": "conjectured value (integers)",
}


def build_report(table: RecordTable) -> dict:
    places = places_from_json(table.config["places"])
    bounds = all_bounds(places)
    degrees = sorted(table.records)
    env = table.envelope()
    flb = {d: finite_degree_lower_bound(d, places) for d in degrees}
    minimum = table.minimum()
    conjecture = bounds["conjecture"]
    gap = None
    if minimum is not None and conjecture is not None:
        gap = minimum.height - conjecture.value()
    return {
        "s_key": table.s_key,
        "places": table.config["places"],
        "config": table.config,
        "bounds": {
            kind: (None if b is None else b.to_json()) for kind, b in bounds.items()
        },
        "records": {
            str(d): (e.to_json() if e else None) for d, e in sorted(table.records.items())
        },
        "envelope": {str(d): env[d] for d in degrees},
        "finite_degree_lower_bounds": {str(d): flb[d] for d in degrees},
        "minimum": minimum.to_json() if minimum else None,
        "gap_to_conjecture": gap,
        "box": f"coefficients in [-{table.config['coeff_bound']}, {table.config['coeff_bound']}]",
        "counters": dict(table.counters),
        "footer": FOOTER,
    }


def report_json(table: RecordTable) -> str:
    return json.dumps(build_report(table), sort_keys=True, indent=2) + "\n"


def report_csv(table: RecordTable) -> str:
    rep = build_report(table)
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["row", "key", "value", "detail"])
    for kind in BOUND_KINDS:
        b = rep["bounds"][kind]
        w.writerow(["bound", kind, "" if b is None else f"{b['value']:.12f}", ""])
    for d in sorted(rep["records"], key=int):
        e = rep["records"][d]
        if e is None:
            w.writerow(["record", d, "none", ""])
        else:
            w.writerow(["record", d, e["height"], " ".join(e["coeffs"])])
        env = rep["envelope"][d]
        w.writerow(["envelope", d, "" if env is None else f"{env:.12f}", ""])
        w.writerow(["finite_degree_lower_bound", d, f"{rep['finite_degree_lower_bounds'][d]:.12f}", ""])
    if rep["gap_to_conjecture"] is not None:
        w.writerow(["gap_to_conjecture", "", f"{rep['gap_to_conjecture']:.12f}", ""])
    w.writerow(["note", "", rep["box"], rep["footer"]])
    return buf.getvalue()


def report_text(table: RecordTable) -> str:
    rep = build_report(table)
    lines = []
    lines.append(f"places: {rep['s_key']}    box: {rep['box']}")
    lines.append("")
    lines.append("bound constants (natural log):")
    for kind in BOUND_KINDS:
        b = rep["bounds"][kind]
        label = KIND_LABELS[kind]
        if b is None:
            lines.append(f"  {label:<32} n/a for these places")
        else:
            terms = " + ".join(f"({t['coeff']})*log {t['log_of']}" for t in b["terms"])
            lines.append(f"  {label:<32} {b['value']:.10f}  = {terms}")
    lines.append("")
    header = f"  {'deg':>4} {'record height':>16} {'envelope':>12} {'degree bound':>13}  polynomial"
    lines.append(header)
    lines.append("  " + "-" * (len(header) - 2))
    for d in sorted(rep["records"], key=int):
        e = rep["records"][d]
        env = rep["envelope"][d]
        flb = rep["finite_degree_lower_bounds"][d]
        envs = f"{env:.8f}" if env is not None else "-"
        if e is None:
            lines.append(f"  {d:>4} {'none':>16} {envs:>12} {flb:>13.8f}")
        else:
            poly = " ".join(e["coeffs"])
            lines.append(
                f"  {d:>4} {float(e['height']):>16.10f} {envs:>12} {flb:>13.8f}  [{poly}]"
            )
    if rep["minimum"] is not None:
        lines.append("")
        lines.append(
            f"box minimum: h = {float(rep['minimum']['height']):.10f} at degree "
            f"{rep['minimum']['degree']}; gap to conjectured value: "
            f"{rep['gap_to_conjecture']:+.10f}"
        )
    lines.append("")
    lines.append(rep["footer"])
    return "\n".join(lines) + "\n"


def report_plot(table: RecordTable, out_path: str) -> str:
    """Height-vs-degree scatter with the three horizontal bound lines."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rep = build_report(table)
    degrees = sorted(int(d) for d in rep["records"])
    xs, ys = [], []
    for d in degrees:
        e = rep["records"][str(d)]
        if e is not None:
            xs.append(d)
            ys.append(float(e["height"]))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    if xs:
        ax.scatter(xs, ys, zorder=3, label="box minimum per degree")
    flb_y = [rep["finite_degree_lower_bounds"][str(d)] for d in degrees]
    ax.plot(degrees, flb_y, "k:", label="per-degree lower bound")
    colors = {"bz_lower_all": "tab:green", "lower_integers": "tab:orange", "upper": "tab:red"}
    for kind, col in colors.items():
        b = rep["bounds"][kind]
        if b is not None:
            ax.axhline(b["value"], color=col, lw=1, label=KIND_LABELS[kind])
    ax.set_xlabel("degree")
    ax.set_ylabel("height (natural log)")
    ax.set_title(f"smallest heights found, places {rep['s_key']}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=130)
    plt.close(fig)
    return out_path
