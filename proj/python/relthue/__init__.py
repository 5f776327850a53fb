"""Small solutions of relative Thue equations over number fields.

The heavy lifting lives in the C++ extension ``relthue._core``; this package
re-exports its surface.
"""

from ._core import (
    ProblemSpec,
    RelthueError,
    complex_roots,
    constants,
    enumerate_quadratic,
    lll_reduce,
    load_problem,
    load_problem_file,
    oracle_search,
    plan_intervals,
    solve,
    work_estimate,
    __version__,
)

__all__ = [
    "ProblemSpec",
    "RelthueError",
    "complex_roots",
    "constants",
    "enumerate_quadratic",
    "lll_reduce",
    "load_problem",
    "load_problem_file",
    "oracle_search",
    "plan_intervals",
    "solve",
    "work_estimate",
    "__version__",
]
