"""Weak barrier coverage of a rectangle by mobile sensors: exact
solvers for the movement-optimization problems (fewest relocated
sensors, least total movement, least maximal movement), line-blocking
decision search, hardness-gadget generators, and brute-force oracles.
"""

from .core import Configuration, CoverageReport, Sensor, Solution, \
    is_blocking, solution_costs
from .errors import WcrError
from .minmax import VHInstance, decide_vh, solve_minmax
from .minnum import brute_minnum, max_free_set, solve_minnum
from .minsum import Line1DInstance, solve_minsum_1d, solve_minsum_manhattan

__all__ = [
    "Configuration", "CoverageReport", "Sensor", "Solution", "WcrError",
    "VHInstance", "Line1DInstance",
    "is_blocking", "solution_costs",
    "solve_minnum", "brute_minnum", "max_free_set",
    "solve_minsum_1d", "solve_minsum_manhattan",
    "decide_vh", "solve_minmax",
]

__version__ = "0.1.0"
