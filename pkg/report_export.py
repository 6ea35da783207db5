#!/usr/bin/env python3
"""
Report Export
Tabular census and recipe reports as CSV or Excel workbooks
"""

import logging
import sys
from pathlib import Path

import pandas as pd

from block_engine import CensusReport
from recipe_replay import RecipeReport
from weights import sector

logger = logging.getLogger(__name__)

CENSUS_COLUMNS = ["weight", "parity", "sector", "representative_weight",
                  "representative_parity", "steps", "verified"]
RECIPE_COLUMNS = ["recipe", "a", "i", "n", "p", "status", "claim", "steps"]


def census_to_frame(report: CensusReport) -> pd.DataFrame:
    """One row per census key"""
    rows = []
    for key in sorted(report.rows):
        row = report.rows[key]
        rows.append({
            "weight": str(key.weight),
            "parity": key.parity,
            "sector": sector(key).name,
            "representative_weight": str(row.representative.weight),
            "representative_parity": row.representative.parity,
            "steps": len(row.certificate.steps),
            "verified": row.verdict.ok,
        })
    return pd.DataFrame(rows, columns=CENSUS_COLUMNS)


def recipe_report_to_frame(report: RecipeReport) -> pd.DataFrame:
    """One row per applicable (recipe, a, i, n, p)"""
    rows = []
    for outcome in report.outcomes:
        rows.append({
            "recipe": outcome.recipe,
            "a": outcome.a,
            "i": outcome.i,
            "n": outcome.n,
            "p": outcome.p,
            "status": "succeeded" if outcome.succeeded else "failed",
            "claim": outcome.claim or "",
            "steps": len(outcome.certificate.steps) if outcome.certificate else 0,
        })
    return pd.DataFrame(rows, columns=RECIPE_COLUMNS)


def export_frame(frame: pd.DataFrame, path: str) -> str:
    """Write `frame` as .csv or .xlsx, picked by suffix"""
    suffix = Path(path).suffix.lower()
    if suffix == ".csv":
        frame.to_csv(path, index=False)
    elif suffix == ".xlsx":
        frame.to_excel(path, index=False, engine="openpyxl")
    else:
        raise ValueError(f"unsupported export format {suffix!r}; use .csv or .xlsx")
    logger.info(f"Exported {len(frame)} rows to {path}")
    print(f"💾 Report saved to: {path}", file=sys.stderr)
    return path
