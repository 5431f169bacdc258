"""Data ingestion, configuration, evaluation orchestration and reporting."""
from .config import EvaluationConfig, load_config, parse_wavelet_name
from .evaluate import EvaluationReport, run_evaluation
from .io import archive_dir, load_panel_csv, load_series_csv, write_series_csv
from .report import emit_report

__all__ = [
    "EvaluationConfig",
    "EvaluationReport",
    "archive_dir",
    "emit_report",
    "load_config",
    "load_panel_csv",
    "load_series_csv",
    "parse_wavelet_name",
    "run_evaluation",
    "write_series_csv",
]
