"""Preset figure data: key-rate curves on fixed, documented grids.

Four presets are provided. Presets 2 and 4 sweep the channel transmission and
tabulate pseudo and true key rates for a set of LO transmissions (reverse and
direct reconciliation respectively); presets 3 and 5 sweep the LO attenuation
1 - eta and tabulate the pseudo rate and the intercepted information for a
set of fiber distances. All presets use the zero-apparent-excess-noise attack
tuning, modulation variance 20 by default, and 0.2 dB/km fiber loss.

Output is a plain column/row table; cells that are analytically undefined
(the tuned attack does not exist on a lossless channel, so the true rate has
no value at T = 1 when eta < 1) are left empty.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .channel import LinkBudget, ProtocolParams, transmission_from_distance
from .keyrate import holevo_ae, holevo_be, keyrates

FIGURE_IDS = (2, 3, 4, 5)

# eta = 1 is the no-attack control; pseudo and true rates coincide there.
ETA_SERIES = (0.85, 0.9, 0.95, 0.99, 1.0)
DISTANCE_SERIES_KM = (10.0, 20.0, 30.0, 40.0, 50.0)
DEFAULT_V_S = 20.0


def transmission_grid() -> np.ndarray:
    """T axis for presets 2 and 4: 0.02 to 1.00 in steps of 0.01."""
    return np.round(np.arange(0.02, 1.0 + 1e-9, 0.01), 2)


def attenuation_grid() -> np.ndarray:
    """(1 - eta) axis for presets 3 and 5: 0 to 0.3 in steps of 0.002."""
    return np.round(np.arange(0.0, 0.3 + 1e-9, 0.002), 3)


def _direction(fig_id: int) -> str:
    return "reverse" if fig_id in (2, 3) else "direct"


def figure_series(
    fig_id: int,
    v_s: float = DEFAULT_V_S,
    loss_db_per_km: float = 0.2,
) -> tuple[list[str], list[list]]:
    """Columns and rows of one figure preset."""
    if fig_id not in FIGURE_IDS:
        raise ValueError(f"figure id must be one of {FIGURE_IDS}, got {fig_id!r}")
    if fig_id in (2, 4):
        return _transmission_table(_direction(fig_id), v_s)
    return _attenuation_table(_direction(fig_id), v_s, loss_db_per_km)


def _transmission_table(direction: str, v_s: float) -> tuple[list[str], list[list]]:
    columns = ["t"]
    for eta in ETA_SERIES:
        columns += [f"k_pseudo_eta{eta:g}", f"k_true_eta{eta:g}"]
    chi = holevo_ae if direction == "direct" else holevo_be
    rows = []
    for t in transmission_grid():
        row: list = [float(t)]
        for eta in ETA_SERIES:
            if t == 1.0 and eta < 1.0:
                # no loss port: the tuned attack is undefined, but Bob's
                # pseudo rate from the substituted parameters still exists
                i_ab = 0.5 * math.log2(v_s + 1.0)
                row += [i_ab - chi(v_s + 1.0, eta, 1.0), None]
                continue
            rep = keyrates(ProtocolParams(v_s, float(t), eta, None, direction))
            row += [rep.k_pseudo, rep.k_true]
        rows.append(row)
    return columns, rows


def _attenuation_table(
    direction: str, v_s: float, loss_db_per_km: float
) -> tuple[list[str], list[list]]:
    columns = ["one_minus_eta"]
    for d in DISTANCE_SERIES_KM:
        columns += [f"k_pseudo_{d:g}km", f"intercepted_{d:g}km"]
    transmissions = [
        transmission_from_distance(LinkBudget(d, loss_db_per_km))
        for d in DISTANCE_SERIES_KM
    ]
    rows = []
    for x in attenuation_grid():
        row: list = [float(x)]
        eta = 1.0 - float(x)
        for t in transmissions:
            rep = keyrates(ProtocolParams(v_s, t, eta, None, direction))
            row += [rep.k_pseudo, rep.intercepted]
        rows.append(row)
    return columns, rows


def format_cell(value) -> str:
    """One CSV cell: empty for missing, lowercase booleans, 9 significant digits."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    return f"{float(value):.9g}"


def write_csv(path: str | Path, columns: list[str], rows: list[list]) -> None:
    """UTF-8 CSV with a header row, '.' decimal separator, LF line endings."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(format_cell(cell) for cell in row) + "\n")


def write_json(path: str | Path, columns: list[str], rows: list[list], **meta) -> None:
    """JSON mirror of a table: {"columns": [...], "rows": [[...], ...]}."""
    payload = dict(meta)
    payload["columns"] = list(columns)
    payload["rows"] = [
        [bool(c) if isinstance(c, (bool, np.bool_)) else c for c in row]
        for row in rows
    ]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
