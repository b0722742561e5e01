"""Experiment report model."""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator


# Metrics holding an accuracy (or accuracy-like rate) in [0, 1].
ACCURACY_METRICS = {
    "a_train",
    "a_test",
    "a_bl",
    "a_bl01",
    "a_nn",
    "a_bb",
    "a_wb",
    "a_ref_bl",
    "a_ref_bb",
    "a_ref_wb",
    "a_adaptive",
}

# Column layout of the defense comparison table.
TABLE_COLUMNS = ["e_gen", "a_test", "a_wb", "a_bb", "a_bl", "a_nn"]


class ReportRow(BaseModel):
    """One (experiment, metric, value) triple."""

    experiment_id: str = Field(..., min_length=1, description="Experiment identifier")
    metric: str = Field(..., min_length=1, description="Metric name")
    value: float = Field(..., description="Metric value")

    @field_validator("experiment_id", "metric")
    @classmethod
    def validate_token(cls, v):
        if "," in v or "\n" in v:
            raise ValueError("identifiers cannot contain commas or newlines")
        return v.strip()


class ExperimentReport(BaseModel):
    """Named metric table serialized as experiment_id,metric,value CSV."""

    rows: List[ReportRow] = Field(default_factory=list, description="Metric rows in insertion order")

    def add(self, experiment_id: str, metric: str, value: float) -> "ExperimentReport":
        """Append a metric after checking its range.

        Raises:
            ValueError: If an accuracy is outside [0, 1] or e_gen outside [-1, 1]
        """
        value = float(value)
        if metric in ACCURACY_METRICS and not (0.0 <= value <= 1.0):
            raise ValueError(f"{metric}={value} is not in [0, 1]")
        if metric == "e_gen" and not (-1.0 <= value <= 1.0):
            raise ValueError(f"e_gen={value} is not in [-1, 1]")
        self.rows.append(ReportRow(experiment_id=experiment_id, metric=metric, value=value))
        return self

    def extend(self, other: "ExperimentReport") -> "ExperimentReport":
        for row in other.rows:
            self.add(row.experiment_id, row.metric, row.value)
        return self

    def get(self, experiment_id: str, metric: str) -> Optional[float]:
        """Last value recorded for (experiment_id, metric)."""
        value = None
        for row in self.rows:
            if row.experiment_id == experiment_id and row.metric == metric:
                value = row.value
        return value

    def experiments(self) -> List[str]:
        seen: Dict[str, None] = {}
        for row in self.rows:
            seen.setdefault(row.experiment_id, None)
        return list(seen)

    def as_table(self, columns: List[str] = TABLE_COLUMNS) -> Dict[str, Dict[str, Optional[float]]]:
        """Pivot into {experiment_id: {metric: value}} for the given columns."""
        return {
            experiment: {metric: self.get(experiment, metric) for metric in columns}
            for experiment in self.experiments()
        }

    def __len__(self) -> int:
        return len(self.rows)
