"""JSON scenario files in, fixed-layout text and CSV out."""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from springkit.ode import (
    DEFAULT_END_TIME,
    DEFAULT_GRAVITY,
    DEFAULT_OUTPUT_INTERVAL,
    DEFAULT_TIME_STEP,
    SpringScenario,
    Trajectory,
)

REQUIRED_KEYS = (
    "masses",
    "spring constant",
    "rest length",
    "initial positions",
    "initial velocities",
)

DEFAULTS: dict[str, Any] = {
    "friction": [0.0, 0.0],
    "gravity": DEFAULT_GRAVITY,
    "end time": DEFAULT_END_TIME,
    "time step": DEFAULT_TIME_STEP,
    "output interval": DEFAULT_OUTPUT_INTERVAL,
}

# JSON key -> shape: () scalar, (2,) pair, (2, 3) two 3-vectors
_SHAPES: dict[str, tuple[int, ...]] = {
    "masses": (2,),
    "spring constant": (),
    "rest length": (),
    "initial positions": (2, 3),
    "initial velocities": (2, 3),
    "friction": (2,),
    "gravity": (),
    "end time": (),
    "time step": (),
    "output interval": (),
}

TRAJECTORY_HEADER = "t,x1x,x1y,x1z,x2x,x2y,x2z,v1x,v1y,v1z,v2x,v2y,v2z"


class ScenarioError(ValueError):
    """Invalid scenario document.

    ``kind`` is one of ``"json"``, ``"missing"``, ``"unknown"``, ``"type"``,
    ``"arity"``, ``"nonfinite"`` or ``"constraint"``; ``key`` names the
    offending JSON key (``None`` for malformed JSON).
    """

    def __init__(self, kind: str, key: str | None, message: str):
        where = f"'{key}': " if key is not None else ""
        super().__init__(f"{where}{message}")
        self.kind = kind
        self.key = key


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _coerce(key: str, value: Any, shape: tuple[int, ...]):
    if not shape:
        if not _is_number(value):
            raise ScenarioError("type", key, f"expected a number, got {value!r}")
        value = float(value)
        if not math.isfinite(value):
            raise ScenarioError("nonfinite", key, "value must be finite")
        return value
    if not isinstance(value, list):
        raise ScenarioError("type", key, f"expected an array of {shape[0]}, got {value!r}")
    if len(value) != shape[0]:
        raise ScenarioError("arity", key, f"expected {shape[0]} entries, got {len(value)}")
    return tuple(_coerce(key, item, shape[1:]) for item in value)


def parse_scenario(text: str) -> SpringScenario:
    """Build a :class:`SpringScenario` from a JSON document.

    Optional keys absent from the document take their values from
    ``DEFAULTS``; unknown keys are rejected so that a misspelled key in a
    copied test file cannot silently fall back to a default.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError("json", None, f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioError("json", None, "top level must be a JSON object")

    for key in doc:
        if key not in _SHAPES:
            raise ScenarioError("unknown", key, "unknown key")
    for key in REQUIRED_KEYS:
        if key not in doc:
            raise ScenarioError("missing", key, "required key is missing")

    values = {key: _coerce(key, doc.get(key, DEFAULTS.get(key)), shape)
              for key, shape in _SHAPES.items()}

    masses = values["masses"]
    friction = values["friction"]
    if min(masses) <= 0:
        raise ScenarioError("constraint", "masses", "masses must be positive")
    if values["spring constant"] < 0:
        raise ScenarioError("constraint", "spring constant", "must be non-negative")
    if values["rest length"] < 0:
        raise ScenarioError("constraint", "rest length", "must be non-negative")
    if min(friction) < 0:
        raise ScenarioError("constraint", "friction", "coefficients must be non-negative")
    if values["end time"] <= 0:
        raise ScenarioError("constraint", "end time", "must be positive")
    dt = values["time step"]
    if dt <= 0:
        raise ScenarioError("constraint", "time step", "must be positive")
    if dt > values["end time"]:
        raise ScenarioError("constraint", "time step", "must not exceed the end time")
    if values["output interval"] < dt:
        raise ScenarioError("constraint", "output interval",
                            "must be at least the time step")

    return SpringScenario(
        masses=masses,
        spring_constant=values["spring constant"],
        rest_length=values["rest length"],
        initial_positions=values["initial positions"],
        initial_velocities=values["initial velocities"],
        friction=friction,
        gravity=values["gravity"],
        end_time=values["end time"],
        time_step=dt,
        output_interval=values["output interval"],
    )


def format_number(value: float) -> str:
    """Scientific notation with 9 fractional digits; -0 is printed as 0."""
    value = float(value)
    if value == 0.0:
        value = 0.0
    return f"{value:.9e}"


def _join(values) -> str:
    return " ".join(format_number(v) for v in values)


def format_result(final: np.ndarray) -> str:
    final = np.asarray(final, dtype=float)
    return (
        f"final position body 1: {_join(final[0:3])}\n"
        f"final position body 2: {_join(final[3:6])}\n"
        f"final velocity body 1: {_join(final[6:9])}\n"
        f"final velocity body 2: {_join(final[9:12])}\n"
    )


def format_trajectory(traj: Trajectory) -> str:
    lines = [TRAJECTORY_HEADER]
    for t, state in zip(traj.times, traj.states):
        lines.append(",".join(format_number(v) for v in (t, *state)))
    return "\n".join(lines) + "\n"
