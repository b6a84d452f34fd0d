"""Experiment harness: data, configs, drivers, plotting, CLI."""
