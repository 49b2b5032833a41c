from .data import generate_data
from .scenario import (Scenario, PowerResult, load_scenario, SUBGROUP,
                       MONTE_CARLO)
from .estimate import estimate
from .figures import (figure_points, reproduce_figure, CurvePoint,
                      FIGURE_IDS, FULL, DESK)
from .io import write_results, read_results, read_data_csv, RESULT_COLUMNS

__all__ = [
    "generate_data",
    "Scenario",
    "PowerResult",
    "load_scenario",
    "SUBGROUP",
    "MONTE_CARLO",
    "estimate",
    "figure_points",
    "reproduce_figure",
    "CurvePoint",
    "FIGURE_IDS",
    "FULL",
    "DESK",
    "write_results",
    "read_results",
    "read_data_csv",
    "RESULT_COLUMNS",
    ]
