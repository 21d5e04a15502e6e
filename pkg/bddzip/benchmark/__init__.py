# benchmark/__init__.py

from .bench import (
    CSV_COLUMNS,
    BenchRow,
    BenchSummary,
    is_non_increasing_within_noise,
    measure_one,
    read_csv,
    run_benchmark,
    summarize,
    write_csv,
)
from .stats import LevelStats, StatsReport, build_stats_report, render_table

__all__ = [
    'CSV_COLUMNS',
    'BenchRow',
    'BenchSummary',
    'LevelStats',
    'StatsReport',
    'build_stats_report',
    'is_non_increasing_within_noise',
    'measure_one',
    'read_csv',
    'render_table',
    'run_benchmark',
    'summarize',
    'write_csv',
]
