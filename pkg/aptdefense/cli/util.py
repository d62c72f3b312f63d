import os

import numpy as np
import pandas as pd

from aptdefense.components.dynamics.model import ModelParams
from aptdefense.components.errors import InvalidParameterError
from aptdefense.components.experiments.sweep import (
    POINT_COLUMNS,
    ComparisonTable,
    SweepRow,
)
from aptdefense.components.solver.fbsm import SolveReport

FLOAT_FORMAT = "%.12g"


def write_table(frame: pd.DataFrame, directory: str, filename: str) -> str:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, filename)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def solution_frame(report: SolveReport, params: ModelParams) -> pd.DataFrame:
    """t, then C_i, x_i, y_i, lambda_i for every node i."""
    columns = {"t": params.times}
    state = report.c_star.values
    for i in range(state.shape[1]):
        columns[f"C_{i}"] = state[:, i]
        columns[f"x_{i}"] = report.u_star.x[:, i]
        columns[f"y_{i}"] = report.u_star.y[:, i]
        columns[f"lambda_{i}"] = report.lambda_star.values[:, i]
    return pd.DataFrame(columns)


def curves_frame(report: SolveReport, params: ModelParams) -> pd.DataFrame:
    return pd.DataFrame(
        {"t": params.times, "CE": report.curves.ce, "SC": report.curves.sc}
    )


def summary_frame(report: SolveReport) -> pd.DataFrame:
    summary = report.summary()
    summary["converged"] = str(summary["converged"]).lower()
    return pd.DataFrame([summary])


def comparison_frame(table: ComparisonTable) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "label": row.label,
                "J": row.j,
                "Loss": row.loss,
                "Cost": row.cost,
                "converged": str(row.converged).lower(),
                "iterations": row.iterations,
            }
            for row in table.rows
        ]
    )


def comparison_curves_frame(table: ComparisonTable) -> pd.DataFrame:
    """t, then CE and SC of every strategy in table order."""
    columns = {"t": table.times}
    for row in table.rows:
        columns[f"CE_{row.label}"] = table.curves[row.label].ce
        columns[f"SC_{row.label}"] = table.curves[row.label].sc
    return pd.DataFrame(columns)


def sweep_frame(rows: list[SweepRow], scenario: str) -> pd.DataFrame:
    names = POINT_COLUMNS[scenario]
    records = []
    for row in rows:
        record = dict(zip(names, row.point))
        record.update(
            {
                "OL": row.ol,
                "OC": row.oc,
                "OJ": row.oj,
                "converged_fraction": row.converged_fraction,
                "replicates": row.replicates,
                "seeds": ";".join(str(seed) for seed in row.seeds),
                "skipped": row.skipped,
            }
        )
        records.append(record)
    columns = names + [
        "OL", "OC", "OJ", "converged_fraction", "replicates", "seeds", "skipped"
    ]
    return pd.DataFrame(records, columns=columns)


def parse_points(text: str) -> list[tuple[float, ...]]:
    """Comma separated values, with `lo:hi` for bound pairs."""
    points = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            points.append(tuple(float(value) for value in item.split(":")))
        except ValueError:
            raise InvalidParameterError(f"Cannot read grid point {item!r}")
    return points


def all_converged(rows: list[SweepRow]) -> bool:
    return all(
        row.converged_fraction == 1.0 for row in rows if not np.isnan(row.oj)
    )
