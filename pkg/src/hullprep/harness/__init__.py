"""Benchmark harness: data ingestion, timed pipelines, CSV and trend reports."""
from .bench import (BenchRecord, emit_csv, parse_csv, run_matrix, run_pipeline)
from .datasets import DatasetSpec, generate, load_points, parse_points
from .stats import extract_bench, fit_linear, stats_report
