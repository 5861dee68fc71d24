"""Serialization of states (JSON) and sweep records (CSV)."""

from __future__ import annotations

import json
import math
from typing import Iterable, Mapping

import numpy as np

from .analysis import EtaSweepRecord
from .states import Basis, TwoModeState


def fmt(x) -> str:
    """17 significant digits; non-finite values become the token nan."""
    if isinstance(x, str):
        return x
    x = float(x)
    if not math.isfinite(x):
        return "nan"
    return f"{x:.17g}"


def state_to_json(state: TwoModeState, summary: Mapping | None = None) -> str:
    """{"n_total", "basis", "amplitudes": [[re, im], ...]} plus an optional summary block.

    Numbers are written with 17 significant digits, so the text is built by hand
    rather than with json.dumps (which writes shortest round-trip reprs).
    """
    amps = ",\n    ".join(f"[{fmt(c.real)}, {fmt(c.imag)}]" for c in state.amplitudes)
    parts = [
        f'  "n_total": {state.n_total}',
        f'  "basis": "{state.basis.value}"',
        f'  "amplitudes": [\n    {amps}\n  ]',
    ]
    if summary:
        items = []
        for key, val in summary.items():
            if isinstance(val, str):
                items.append(f"    {json.dumps(key)}: {json.dumps(val)}")
            elif isinstance(val, (float, int, np.floating)) and not math.isfinite(float(val)):
                items.append(f"    {json.dumps(key)}: null")
            else:
                items.append(f"    {json.dumps(key)}: {fmt(val)}")
        parts.append('  "summary": {\n' + ",\n".join(items) + "\n  }")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def state_from_json(text: str) -> TwoModeState:
    data = json.loads(text)
    amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
    return TwoModeState(int(data["n_total"]), Basis(data["basis"]), amps)


def sweep_csv_lines(records: Iterable[EtaSweepRecord]):
    yield ",".join(EtaSweepRecord.columns())
    for rec in records:
        yield ",".join(fmt(v.value if hasattr(v, "value") else v) for v in rec.row())
