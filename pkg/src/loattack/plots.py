"""Render figure-preset tables to image files.

Companion to :mod:`loattack.figures`: takes the same column/row tables and
draws them with matplotlib. Uses the Agg backend so rendering works headless;
the delimited table stays the primary artifact, the image is the human view.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_TITLES = {
    2: "Reverse reconciliation vs channel transmission",
    3: "Reverse reconciliation vs LO attenuation",
    4: "Direct reconciliation vs channel transmission",
    5: "Direct reconciliation vs LO attenuation",
}
_XLABELS = {
    2: "channel transmission T",
    3: "LO attenuation 1 − η",
    4: "channel transmission T",
    5: "LO attenuation 1 − η",
}


def _column(rows: list[list], index: int) -> np.ndarray:
    return np.array(
        [np.nan if row[index] is None else float(row[index]) for row in rows]
    )


def render_figure(
    fig_id: int,
    columns: list[str],
    rows: list[list],
    out_path: str | Path,
    dpi: int = 150,
) -> None:
    """Draw one preset to ``out_path`` (format from the file suffix).

    Presets 2/4 draw the pseudo rate solid and the true rate dashed, one
    color per LO transmission; presets 3/5 draw the pseudo rate dashed and
    the intercepted information solid, one color per distance.
    """
    if fig_id not in _TITLES:
        raise ValueError(f"unknown figure id {fig_id!r}")
    x = _column(rows, 0)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    n_series = (len(columns) - 1) // 2
    for i in range(n_series):
        first = _column(rows, 1 + 2 * i)
        second = _column(rows, 2 + 2 * i)
        label = columns[1 + 2 * i].split("_")[-1]
        color = f"C{i}"
        if fig_id in (2, 4):
            ax.plot(x, first, color=color, linestyle="-", label=f"pseudo, {label}")
            ax.plot(x, second, color=color, linestyle="--", label=f"true, {label}")
        else:
            ax.plot(x, first, color=color, linestyle="--", label=f"pseudo, {label}")
            ax.plot(x, second, color=color, linestyle="-", label=f"intercepted, {label}")
    ax.axhline(0.0, color="0.6", linewidth=0.8)
    ax.set_xlabel(_XLABELS[fig_id])
    ax.set_ylabel("key rate (bits/pulse)")
    ax.set_title(_TITLES[fig_id])
    ax.legend(fontsize=7, ncol=2)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
