# License: MIT

import numpy as np
import pandas as pd

from ..utils import check_data

RESULT_COLUMNS = ["figure", "panel", "curve", "x", "power", "se", "fwer",
                  "se_fwer", "runtime_s", "seed"]
FLOAT_FORMAT = "%.6g"


def write_results(rows, path, omit_runtime=False):
    """
    Writes a result table as CSV.

    Parameters
    ----------
    rows : pandas.DataFrame or list of dict
        Records with the columns ``figure, panel, curve, x, power, se,
        fwer, se_fwer, runtime_s, seed``.

    path : str, pathlib.Path or file-like
        Destination.

    omit_runtime : boolean, default=False
        If True, ``runtime_s`` is written as 0 so that repeated runs give
        identical files.

    Returns
    -------
    table : pandas.DataFrame
        The table as written.
    """
    table = pd.DataFrame(rows)
    missing = [c for c in RESULT_COLUMNS if c not in table.columns]
    if missing:
        raise ValueError(f"Result rows lack columns {missing}")
    table = table[RESULT_COLUMNS].copy()
    if omit_runtime:
        table["runtime_s"] = 0.0
    table.to_csv(path, index=False, float_format=FLOAT_FORMAT,
                 lineterminator="\n")
    return table


def read_results(path):
    """Reads a CSV written by :func:`write_results`."""
    table = pd.read_csv(path)
    if list(table.columns) != RESULT_COLUMNS:
        raise ValueError(
            f"Unexpected header {list(table.columns)}, "
            f"expected {RESULT_COLUMNS}"
        )
    return table


def read_data_csv(path):
    """
    Reads a data matrix from a headerless CSV.

    Parameters
    ----------
    path : str, pathlib.Path or file-like
        Rows are observations, columns are hypotheses.

    Returns
    -------
    X : numpy.ndarray, shape (n, p)
    """
    frame = pd.read_csv(path, header=None, dtype=np.float64)
    return check_data(frame.to_numpy())
