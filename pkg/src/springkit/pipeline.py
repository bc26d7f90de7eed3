"""Input text to output text, shared by ``spring run`` and the test harness."""

from __future__ import annotations

import dataclasses

from springkit import ode, scenario


def simulate(text: str, time_step: float | None = None) -> tuple[str, ode.Trajectory]:
    sc = scenario.parse_scenario(text)
    if time_step is not None:
        sc = dataclasses.replace(sc, time_step=time_step)
    traj = ode.integrate(sc)
    return scenario.format_result(traj.final_state), traj
