from .aggregate import BaselineRow, ReportRow, aggregate
from .boundary import aggregate_boundary, emit_boundary, run_boundary_sweep
from .config import DEFAULTS, HarnessConfig, config_with, load_config, write_config
from .report import emit_report, read_results_csv, write_results_csv
from .runner import CellKey, HarnessError, RunRecord, arm_rates, cell_keys, run_cell, run_grid

__all__ = [
    "BaselineRow", "CellKey", "DEFAULTS", "HarnessConfig", "HarnessError",
    "ReportRow", "RunRecord", "aggregate", "aggregate_boundary", "arm_rates",
    "cell_keys", "config_with", "emit_boundary", "emit_report", "load_config",
    "read_results_csv", "run_boundary_sweep", "run_cell", "run_grid",
    "write_config", "write_results_csv",
]
