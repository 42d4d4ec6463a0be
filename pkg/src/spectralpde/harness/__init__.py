"""Experiment orchestration, benchmarking and file I/O."""
