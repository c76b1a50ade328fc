"""JSON file formats for networks and measurement plans.

Network files describe either a named family or an explicit edge list:

    {"family": "complete", "n": 8}
    {"family": "k_partite", "parts": [2, 3, 4]}
    {"family": "explicit", "n": 4, "edges": [[0, 1, "1"], [1, 2, "3/2"], ...]}

Plan files hold the probe list with provenance:

    {"mode": "removed", "measurements": [[0, 1], [1, 2]], "provenance": ["butterfly", ...]}

All rationals travel as strings ("3/2", "2") so nothing is ever rounded.
The CLI also accepts family shorthands like K8 or K2,3,4 wherever a
network file is expected.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .families import (
    KPartiteShape,
    complete_network,
    complete_orbit_representatives,
    kpartite_network,
    measurement_orbit_representatives,
)
from .network import (
    INFINITE,
    FaultMode,
    Measurement,
    Network,
    Resistance,
)
from .strategies import MeasurementPlan


class FileFormatError(ValueError):
    """A network or plan document failed validation; message carries context."""


@dataclass(frozen=True)
class NetworkSpec:
    """A parsed network plus the family information the closed forms need."""

    family: str  # "complete" | "k_partite" | "explicit"
    network: Network
    n: int
    parts: tuple[int, ...] | None = None

    @property
    def shape(self) -> KPartiteShape | None:
        return KPartiteShape(self.parts) if self.parts else None

    def orbit_representatives(self) -> list[Measurement] | None:
        if self.family == "complete":
            return complete_orbit_representatives(self.n)
        if self.family == "k_partite":
            return measurement_orbit_representatives(self.shape)
        return None

    def describe(self) -> str:
        if self.family == "complete":
            return f"complete({self.n})"
        if self.family == "k_partite":
            return f"k_partite{self.parts}"
        return f"explicit(n={self.n})"


_SHORTHAND = re.compile(r"^[Kk](\d+(?:,\d+)*)$")


def parse_shorthand(text: str) -> NetworkSpec | None:
    """Recognize K<n> and K<a,b,...> family shorthands; None if not one."""
    match = _SHORTHAND.match(text.strip())
    if not match:
        return None
    nums = [int(x) for x in match.group(1).split(",")]
    if len(nums) == 1:
        return NetworkSpec("complete", complete_network(nums[0]), nums[0])
    shape = KPartiteShape(tuple(sorted(nums)))
    return NetworkSpec("k_partite", kpartite_network(shape), shape.n, shape.parts)


def network_spec_from_dict(data: dict) -> NetworkSpec:
    family = data.get("family")
    if family == "complete":
        n = _require_int(data, "n")
        return NetworkSpec("complete", complete_network(n), n)
    if family == "k_partite":
        parts = data.get("parts")
        if not isinstance(parts, list) or not parts:
            raise FileFormatError('k_partite network needs a nonempty "parts" list')
        shape = KPartiteShape(tuple(sorted(int(p) for p in parts)))
        return NetworkSpec("k_partite", kpartite_network(shape), shape.n, shape.parts)
    if family == "explicit":
        n = _require_int(data, "n")
        raw = data.get("edges")
        if not isinstance(raw, list):
            raise FileFormatError('explicit network needs an "edges" list')
        edges = []
        for pos, item in enumerate(raw):
            try:
                u, v, w = item
                edges.append((int(u), int(v), Fraction(str(w))))
            except (ValueError, TypeError, ZeroDivisionError) as exc:
                raise FileFormatError(f"edges[{pos}]: {exc}") from exc
            if edges[-1][2] <= 0:
                raise FileFormatError(f"edges[{pos}]: conductance must be positive")
        try:
            return NetworkSpec("explicit", Network.from_edge_list(n, edges), n)
        except ValueError as exc:
            raise FileFormatError(str(exc)) from exc
    raise FileFormatError(f"unknown network family {family!r}")


def load_network(path_or_shorthand: str) -> NetworkSpec:
    spec = parse_shorthand(path_or_shorthand)
    if spec is not None:
        return spec
    return network_spec_from_dict(_load_json(path_or_shorthand))


def plan_to_dict(plan: MeasurementPlan) -> dict:
    return {
        "mode": plan.mode.value,
        "measurements": [[m.r, m.s] for m in plan.measurements],
        "provenance": list(plan.provenance),
    }


def plan_from_dict(data: dict, family: str = "file") -> MeasurementPlan:
    mode_text = data.get("mode", "removed")
    try:
        mode = FaultMode(mode_text)
    except ValueError as exc:
        raise FileFormatError(f'unknown mode {mode_text!r} (use "removed" or "shorted")') from exc
    raw = data.get("measurements")
    if not isinstance(raw, list):
        raise FileFormatError('plan needs a "measurements" list')
    measurements = []
    for pos, item in enumerate(raw):
        try:
            r, s = item
            measurements.append(Measurement(int(r), int(s)))
        except (ValueError, TypeError) as exc:
            raise FileFormatError(f"measurements[{pos}]: {exc}") from exc
    provenance = data.get("provenance")
    if provenance is None:
        provenance = ["file"] * len(measurements)
    if len(provenance) != len(measurements):
        raise FileFormatError("provenance length must match measurements")
    try:
        return MeasurementPlan(
            tuple(measurements), tuple(str(t) for t in provenance), family, mode
        )
    except ValueError as exc:
        raise FileFormatError(str(exc)) from exc


def load_plan(path: str) -> MeasurementPlan:
    return plan_from_dict(_load_json(path))


def validate_plan_for(plan: MeasurementPlan, net: Network):
    for m in plan.measurements:
        if m.s >= net.n:
            raise FileFormatError(
                f"measurement ({m.r}, {m.s}) references vertex {m.s}, "
                f"but the network has n={net.n}"
            )


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise FileFormatError(f"{path}: no such file") from exc
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _require_int(data: dict, key: str) -> int:
    value = data.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise FileFormatError(f'field "{key}" must be an integer')
    return value


def resistance_text(value: Resistance) -> str:
    """Exact rendering: "p/q" (or plain integer) for finite, "inf" for open circuit."""
    if value == INFINITE:
        return "inf"
    return str(value)


def resistance_with_decimal(value: Resistance) -> str:
    """Exact text plus a float annotation for human eyes."""
    if value == INFINITE:
        return "inf"
    return f"{value} (~{float(value):.6g})"
