"""Right-hand side and fixed-step RK4 integration of two bodies joined by a spring.

The first-order state vector has 12 entries: the positions of body 1 and
body 2, followed by their velocities, each as (x, y, z).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

Vec3 = tuple[float, float, float]
Derivative = Callable[[float, np.ndarray], np.ndarray]

# Below this separation the spring direction is undefined and its force is dropped.
COINCIDENCE_THRESHOLD = 1e-12

DEFAULT_GRAVITY = 9.81
DEFAULT_END_TIME = 5.0
DEFAULT_TIME_STEP = 1e-3
DEFAULT_OUTPUT_INTERVAL = 0.01


class IntegrationError(RuntimeError):
    """Raised when the state stops being finite during integration."""

    def __init__(self, t: float, message: str = "non-finite state"):
        super().__init__(f"{message} at t={t!r}")
        self.t = t


def _vec3(values: Sequence[float]) -> Vec3:
    if len(values) != 3:
        raise ValueError(f"expected 3 components, got {len(values)}")
    return (float(values[0]), float(values[1]), float(values[2]))


@dataclass(frozen=True)
class SpringScenario:
    """Physical and numerical configuration of one simulation run.

    Units are SI throughout. Gravity acts along -z with magnitude ``gravity``.
    """

    masses: tuple[float, float]
    spring_constant: float
    rest_length: float
    initial_positions: tuple[Vec3, Vec3]
    initial_velocities: tuple[Vec3, Vec3]
    friction: tuple[float, float] = (0.0, 0.0)
    gravity: float = DEFAULT_GRAVITY
    end_time: float = DEFAULT_END_TIME
    time_step: float = DEFAULT_TIME_STEP
    output_interval: float = DEFAULT_OUTPUT_INTERVAL

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "masses", (float(self.masses[0]), float(self.masses[1])))
        set_(self, "friction", (float(self.friction[0]), float(self.friction[1])))
        set_(self, "initial_positions", tuple(_vec3(p) for p in self.initial_positions))
        set_(self, "initial_velocities", tuple(_vec3(v) for v in self.initial_velocities))
        for name in ("spring_constant", "rest_length", "gravity", "end_time",
                     "time_step", "output_interval"):
            set_(self, name, float(getattr(self, name)))
        self._validate()

    def _validate(self):
        flat = [*self.masses, *self.friction, self.spring_constant, self.rest_length,
                self.gravity, self.end_time, self.time_step, self.output_interval]
        for vec in (*self.initial_positions, *self.initial_velocities):
            flat.extend(vec)
        if len(self.initial_positions) != 2 or len(self.initial_velocities) != 2:
            raise ValueError("need initial positions and velocities for exactly two bodies")
        if not all(math.isfinite(v) for v in flat):
            raise ValueError("all scenario values must be finite")
        if min(self.masses) <= 0:
            raise ValueError("masses must be positive")
        if self.spring_constant < 0:
            raise ValueError("spring constant must be non-negative")
        if self.rest_length < 0:
            raise ValueError("rest length must be non-negative")
        if min(self.friction) < 0:
            raise ValueError("friction coefficients must be non-negative")
        if self.end_time <= 0:
            raise ValueError("end time must be positive")
        if not 0 < self.time_step <= self.end_time:
            raise ValueError("time step must lie in (0, end time]")
        if self.output_interval < self.time_step:
            raise ValueError("output interval must be at least the time step")

    def initial_state(self) -> np.ndarray:
        return np.array([*self.initial_positions[0], *self.initial_positions[1],
                         *self.initial_velocities[0], *self.initial_velocities[1]],
                        dtype=float)


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution; ``times[k]`` pairs with row ``states[k]``."""

    times: np.ndarray
    states: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


def rhs(t: float, y: np.ndarray, sc: SpringScenario) -> np.ndarray:
    """Time derivative of the 12-component state.

    The spring pulls the bodies together when stretched beyond the rest
    length and pushes them apart when compressed. Drag is quadratic in the
    speed and opposes each body's velocity.
    """
    # scalar arithmetic: numpy call overhead dominates on 3-vectors
    x1x, x1y, x1z, x2x, x2y, x2z, v1x, v1y, v1z, v2x, v2y, v2z = y.tolist()
    sx, sy, sz = x2x - x1x, x2y - x1y, x2z - x1z
    dist = math.sqrt(sx * sx + sy * sy + sz * sz)
    if dist < COINCIDENCE_THRESHOLD:
        fx = fy = fz = 0.0
    else:
        k = sc.spring_constant * (dist - sc.rest_length)
        fx, fy, fz = k * (sx / dist), k * (sy / dist), k * (sz / dist)

    m1, m2 = sc.masses
    c1, c2 = sc.friction
    drag1 = c1 * math.sqrt(v1x * v1x + v1y * v1y + v1z * v1z)
    drag2 = c2 * math.sqrt(v2x * v2x + v2y * v2y + v2z * v2z)
    g = sc.gravity
    return np.array([
        v1x, v1y, v1z, v2x, v2y, v2z,
        0.0 + (fx - drag1 * v1x) / m1,
        0.0 + (fy - drag1 * v1y) / m1,
        -g + (fz - drag1 * v1z) / m1,
        0.0 + (-fx - drag2 * v2x) / m2,
        0.0 + (-fy - drag2 * v2y) / m2,
        -g + (-fz - drag2 * v2z) / m2,
    ])


def rk4_step(f: Derivative, t: float, y: np.ndarray, dt: float) -> np.ndarray:
    """One classical fourth-order Runge-Kutta step of size ``dt``."""
    k1 = f(t, y)
    k2 = f(t + dt / 2, y + dt / 2 * k1)
    k3 = f(t + dt / 2, y + dt / 2 * k2)
    k4 = f(t + dt, y + dt * k3)
    for k in (k1, k2, k3, k4):
        if not np.all(np.isfinite(k)):
            raise IntegrationError(t, "non-finite derivative")
    y_new = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    if not np.all(np.isfinite(y_new)):
        raise IntegrationError(t + dt)
    return y_new


def _step_times(end_time: float, dt: float) -> list[float]:
    """Grid 0, dt, 2dt, ... ending exactly on ``end_time``.

    A trailing remainder shorter than ``dt`` becomes one shortened step;
    a remainder within rounding of zero is folded into the last full step.
    """
    n = round(end_time / dt)
    if n >= 1 and abs(n * dt - end_time) <= 1e-9 * dt:
        times = [i * dt for i in range(n)]
    else:
        times = [i * dt for i in range(math.floor(end_time / dt) + 1)]
    times.append(end_time)
    return times


def integrate(sc: SpringScenario, derivative: Callable | None = None) -> Trajectory:
    """March the scenario from t=0 to its end time with fixed-step RK4.

    ``derivative(t, y, sc)`` defaults to :func:`rhs`. A sample is kept at
    the first step time reaching each multiple of the output interval, plus
    always at t=0 and at the end time.
    """
    deriv = rhs if derivative is None else derivative

    def f(t, y):
        return deriv(t, y, sc)

    grid = _step_times(sc.end_time, sc.time_step)
    y = sc.initial_state()
    if not np.all(np.isfinite(y)):
        raise IntegrationError(0.0)
    times = [0.0]
    states = [y]
    interval = sc.output_interval
    next_output = 1
    tol = 1e-9 * sc.time_step
    for k in range(len(grid) - 1):
        t0, t1 = grid[k], grid[k + 1]
        y = rk4_step(f, t0, y, t1 - t0)
        last = k == len(grid) - 2
        if last or t1 >= next_output * interval - tol:
            times.append(t1)
            states.append(y)
            while next_output * interval - tol <= t1:
                next_output += 1
    return Trajectory(np.array(times), np.array(states))
