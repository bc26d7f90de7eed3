"""Two-body spring simulator with a golden-file regression toolkit."""

from springkit.ode import (
    IntegrationError,
    SpringScenario,
    Trajectory,
    integrate,
    rhs,
    rk4_step,
)
from springkit.numdiff import Tolerance, compare, numbers_equal, tokenize
from springkit.scenario import (
    ScenarioError,
    format_result,
    format_trajectory,
    parse_scenario,
)

__all__ = [
    "IntegrationError",
    "ScenarioError",
    "SpringScenario",
    "Tolerance",
    "Trajectory",
    "compare",
    "format_result",
    "format_trajectory",
    "integrate",
    "numbers_equal",
    "parse_scenario",
    "rhs",
    "rk4_step",
    "tokenize",
]

__version__ = "0.1.0"
