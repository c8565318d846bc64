"""
ResultTable - Column-ordered result rows written as CSV
"""
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd


class ResultTable:
    """Tabular results with a fixed column order"""

    def __init__(self, columns: Optional[List[str]] = None, rows: Optional[List[Dict[str, Any]]] = None):
        self.columns: List[str] = list(columns or [])
        self.rows: List[Dict[str, Any]] = []
        for row in rows or []:
            self.add_row(row)

    def add_row(self, row: Dict[str, Any]):
        """Append a row; unseen keys become new trailing columns"""
        for key in row:
            if key not in self.columns:
                self.columns.append(key)
        self.rows.append(dict(row))

    def sort_by_column(self, column: str, ascending: bool = True):
        """Sort rows by a column; mixed types are compared as strings"""
        try:
            self.rows.sort(key=lambda row: row.get(column, ''), reverse=not ascending)
        except TypeError:
            self.rows.sort(key=lambda row: str(row.get(column, '')), reverse=not ascending)

    def column(self, name: str) -> List[Any]:
        """Values of one column, None where a row lacks it"""
        return [row.get(name) for row in self.rows]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=self.columns)

    def to_csv(self, path: Union[str, Path]):
        """Write the table with full float precision"""
        self.to_frame().to_csv(path, index=False, float_format="%.17g")

    @classmethod
    def read_csv(cls, path: Union[str, Path]) -> "ResultTable":
        frame = pd.read_csv(path, float_precision="round_trip")
        return cls(columns=list(frame.columns), rows=frame.to_dict(orient="records"))

    def __len__(self) -> int:
        return len(self.rows)
